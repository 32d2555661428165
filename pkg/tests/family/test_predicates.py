import pytest
from hypothesis import given, strategies as st

from src.audit import oracle
from src.errors import ElementOutOfRange, EmptySetRejected, FranklError, NotAMember, NotInComplement
from src.family.core import (
    complement_family,
    elements_of,
    full_universe,
    make_family,
    mask_from_elements,
    popcount,
)
from src.family.predicates import (
    complement_shape,
    extension,
    is_quasiminimal,
    is_vincolated,
    is_vincolated_to,
    minimal_elements,
)
from src.sequences.deletion import validate_sequence
from tests.conftest import closed_families


class TestExtension:
    def test_extension_of_singleton(self):
        assert extension(1, 6, 3).members == (1, 3, 5, 7)

    def test_extension_with_subset_is_base_only(self):
        assert extension(3, 1, 3).members == (3,)

    def test_empty_base(self):
        with pytest.raises(EmptySetRejected):
            extension(0, 1, 3)

    def test_out_of_range(self):
        with pytest.raises(ElementOutOfRange):
            extension(1, 8, 3)

    @given(st.data())
    def test_contains_base_and_union_with_expected_size(self, data):
        n = data.draw(st.integers(1, 6))
        y = data.draw(st.integers(1, (1 << n) - 1))
        x = data.draw(st.integers(0, (1 << n) - 1))
        ext = extension(y, x, n)
        assert y in ext and (y | x) in ext
        assert len(ext) == 2 ** popcount(x & ~y)
        assert all(t & y == y and t | x | y == x | y for t in ext)


class TestVincolated:
    def test_vincolated_with_witness(self, top_and_point):
        result = is_vincolated(top_and_point, 1)
        assert result
        assert (result.witness.y, result.witness.result) == (4, 5)

    def test_not_vincolated(self, top_and_point):
        assert not is_vincolated(top_and_point, 3)

    def test_member_of_family_is_rejected(self, top_and_point):
        with pytest.raises(NotInComplement):
            is_vincolated(top_and_point, 4)

    def test_vincolated_to(self, top_and_point):
        assert is_vincolated_to(top_and_point, 1, 5)
        assert not is_vincolated_to(top_and_point, 3, 5)

    def test_vincolated_to_needs_distinct_sets(self, top_and_point):
        with pytest.raises(FranklError):
            is_vincolated_to(top_and_point, 1, 1)

    @pytest.mark.parametrize("family", closed_families(3), ids=str)
    def test_agrees_with_definition(self, family):
        inst = oracle.Instance(family.universe_size, family.element_lists())
        for x in complement_family(family):
            as_set = frozenset(elements_of(x))
            assert bool(is_vincolated(family, x)) == oracle.vincolated(inst.family, as_set)

    @pytest.mark.slow
    def test_agrees_with_definition_at_four_elements(self):
        checked = 0
        for family in closed_families(4):
            inst = oracle.Instance(4, family.element_lists())
            for x in complement_family(family):
                assert bool(is_vincolated(family, x)) == oracle.vincolated(inst.family, frozenset(elements_of(x)))
                checked += 1
        assert checked > 0


class TestMinimalElements:
    def test_example(self):
        complement = make_family(3, [[1], [2], [1, 2], [1, 3], [2, 3]])
        assert minimal_elements(complement) == [3]

    def test_ties(self, pair_only):
        assert minimal_elements(complement_family(pair_only)) == [1, 2]


class TestQuasiminimal:
    def test_holds_with_certificate(self):
        family = full_universe(2)
        result = is_quasiminimal(family, 1, 2, 1)
        assert result
        sequence = result.certificate.sequence
        assert sequence.deletions == (2, 1)
        assert validate_sequence(sequence).valid

    def test_clause_one(self):
        result = is_quasiminimal(full_universe(2), 1, 1, 2)
        assert not result and result.failed_clause == 1

    def test_clause_two(self):
        result = is_quasiminimal(full_universe(2), 1, 1, 3)
        assert not result and result.failed_clause == 2

    def test_requires_members(self, pair_only):
        with pytest.raises(NotAMember):
            is_quasiminimal(pair_only, 1, 2, 3)

    def test_requires_distinct_sets(self):
        with pytest.raises(FranklError):
            is_quasiminimal(full_universe(2), 1, 3, 3)

    @pytest.mark.parametrize("family", closed_families(3), ids=str)
    def test_agrees_with_definition(self, family):
        inst = oracle.Instance(family.universe_size, family.element_lists())
        for i, y1, y2 in inst.quasiminimal_candidates(None):
            n = family.universe_size
            ours = bool(is_quasiminimal(family, i, mask_from_elements(y1, n), mask_from_elements(y2, n)))
            assert ours == inst.quasiminimal(i, y1, y2)


class TestComplementShape:
    def test_empty(self):
        assert complement_shape(full_universe(2)).kind == "empty"

    def test_singleton(self):
        shape = complement_shape(make_family(2, [[2], [1, 2]]))
        assert (shape.size, shape.kind, shape.expected) == (1, "singleton", True)

    def test_two_singletons(self, pair_only):
        assert complement_shape(pair_only).kind == "two-singletons"

    def test_singleton_and_pair(self):
        family = full_universe(3).without_masks([1, 3])
        assert complement_shape(family).kind == "singleton-and-pair"

    @pytest.mark.parametrize("family", closed_families(3), ids=str)
    def test_small_complements_have_expected_shapes(self, family):
        assert complement_shape(family).expected
