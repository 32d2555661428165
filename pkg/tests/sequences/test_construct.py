import pytest

from src.errors import EmptyDi, EmptyFamily, NotUnionClosed
from src.family.core import Family, complement_family, make_family, subfamily_containing
from src.sequences.construct import (
    STRATEGIES,
    build_ideal_sequence,
    build_union_closed_sequence,
    greedy_basis_deletions,
)
from src.sequences.deletion import validate_sequence
from tests.conftest import closed_families


def test_greedy_pair(pair_only):
    assert greedy_basis_deletions(pair_only) == [1, 2]


def test_by_size_order(top_and_point):
    sequence = build_union_closed_sequence(top_and_point, "by-size")
    assert sequence.deletions == (1, 2, 3, 5, 6)
    assert validate_sequence(sequence).valid


def test_ideal_pair(pair_only):
    assert build_ideal_sequence(pair_only, 1).deletions == (2, 1)


def test_ideal_two_phases(top_and_point):
    sequence = build_ideal_sequence(top_and_point, 1)
    assert sequence.deletions == (2, 6, 1, 3, 5)
    assert validate_sequence(sequence).valid


def test_ideal_requires_deleted_sets_with_i():
    with pytest.raises(EmptyDi):
        build_ideal_sequence(make_family(2, [[1], [1, 2]]), 1)


def test_rejects_non_closed_target():
    with pytest.raises(NotUnionClosed):
        build_union_closed_sequence(make_family(3, [[1], [2]]))


def test_rejects_empty_target():
    with pytest.raises(EmptyFamily):
        build_union_closed_sequence(Family(2, ()))


def test_unknown_strategy(pair_only):
    with pytest.raises(ValueError):
        build_union_closed_sequence(pair_only, "random")


def _check_constructors(family):
    for strategy in STRATEGIES:
        sequence = build_union_closed_sequence(family, strategy)
        assert validate_sequence(sequence).valid, (strategy, family)
        assert sequence.replay() == family
    complement = complement_family(family)
    for i in range(1, family.universe_size + 1):
        if len(subfamily_containing(complement, i)):
            assert validate_sequence(build_ideal_sequence(family, i)).valid, (i, family)


@pytest.mark.parametrize("family", closed_families(3), ids=str)
def test_constructors_validate(family):
    _check_constructors(family)


@pytest.mark.slow
def test_constructors_validate_at_four_elements():
    for family in closed_families(4):
        _check_constructors(family)
