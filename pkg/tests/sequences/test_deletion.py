import pytest

from src.errors import MalformedSequence, ParseError
from src.family.core import make_family
from src.sequences.deletion import DeletionSequence, SequenceKind, search_sequence, validate_sequence


class TestSequenceKind:
    @pytest.mark.parametrize(
        "text, kind",
        [
            ("plain", SequenceKind.plain()),
            ("uc", SequenceKind.union_closed()),
            ("ideal:2", SequenceKind.ideal(2)),
            ("optimal:1", SequenceKind.optimal(1)),
        ],
    )
    def test_parse_and_label(self, text, kind):
        assert SequenceKind.parse(text) == kind
        assert kind.label == text

    @pytest.mark.parametrize("text", ["bogus", "ideal", "ideal:x", "uc:1"])
    def test_parse_rejects(self, text):
        with pytest.raises(ParseError):
            SequenceKind.parse(text)

    def test_element_required(self):
        with pytest.raises(ValueError):
            SequenceKind("ideal")
        with pytest.raises(ValueError):
            SequenceKind("plain", 1)


class TestStructure:
    def test_deleted_twice(self, pair_only):
        with pytest.raises(MalformedSequence):
            DeletionSequence(2, pair_only, (1, 1))

    def test_deleting_a_target_member(self, pair_only):
        with pytest.raises(MalformedSequence):
            DeletionSequence(2, pair_only, (1, 3))

    def test_not_a_partition(self, pair_only):
        with pytest.raises(MalformedSequence):
            DeletionSequence(2, pair_only, (1,))

    def test_replay_reaches_target(self, top_and_point):
        sequence = DeletionSequence(3, top_and_point, (1, 2, 3, 5, 6))
        assert sequence.replay() == top_and_point
        assert sequence.families()[-1] == top_and_point
        assert len(sequence.families()) == sequence.length + 1


class TestValidate:
    def test_union_closed(self, pair_only):
        report = validate_sequence(DeletionSequence(2, pair_only, (1, 2), SequenceKind.union_closed()))
        assert report.valid
        assert [s.union_closed for s in report.steps] == [True, True]

    def test_ideal_order_matters(self, pair_only):
        wrong = DeletionSequence(2, pair_only, (1, 2), SequenceKind.ideal(1))
        right = DeletionSequence(2, pair_only, (2, 1), SequenceKind.ideal(1))
        assert not validate_sequence(wrong).valid
        assert validate_sequence(right).valid

    def test_intermediate_family_not_closed(self):
        target = make_family(2, [[1], [2]])
        plain = DeletionSequence(2, target, (3,))
        closed = DeletionSequence(2, target, (3,), SequenceKind.union_closed())
        assert validate_sequence(plain).valid
        report = validate_sequence(closed)
        assert not report.valid
        assert report.steps[0].witness == (1, 2)

    def test_optimal_clauses(self, pair_only):
        good = DeletionSequence(2, pair_only, (2, 1), SequenceKind.optimal(1))
        bad = DeletionSequence(2, pair_only, (1, 2), SequenceKind.optimal(1))
        assert validate_sequence(good).valid
        assert not validate_sequence(bad).valid

    def test_optimal_needs_two_deletions(self):
        target = make_family(2, [[2], [1, 2]])
        sequence = DeletionSequence(2, target, (1,), SequenceKind.optimal(1))
        assert not validate_sequence(sequence).valid


class TestSearch:
    def test_least_union_closed(self, pair_only):
        assert search_sequence(pair_only, SequenceKind.union_closed()).deletions == (1, 2)

    def test_least_ideal(self, pair_only):
        assert search_sequence(pair_only, SequenceKind.ideal(1)).deletions == (2, 1)

    def test_optimal(self, pair_only):
        found = search_sequence(pair_only, SequenceKind.optimal(1))
        assert found.deletions == (2, 1)
        assert validate_sequence(found).valid

    def test_no_optimal_when_every_deletion_contains_i(self):
        target = make_family(2, [[2]])
        assert search_sequence(target, SequenceKind.optimal(1)) is None
