import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import (
    AuditInconsistency,
    ElementOutOfRange,
    EmptyFamily,
    EmptySetRejected,
    UniverseTooLarge,
)
from src.family.core import (
    Family,
    check_conjecture,
    closure_of_masks,
    complement_family,
    elements_of,
    format_mask,
    full_universe,
    is_union_closed,
    make_family,
    mask_from_elements,
    subfamily_avoiding,
    subfamily_containing,
    union_closure,
)
from src.family.predicates import minimal_elements
from src.search.sampler import draw_subsets
from tests.conftest import closed_families, families


class TestFamily:
    def test_make_family_sorts_and_deduplicates(self):
        family = make_family(3, [[1, 2], [1], [2, 1]])
        assert family.members == (1, 3)
        assert family.element_lists() == [[1], [1, 2]]

    def test_rejects_empty_set(self):
        with pytest.raises(EmptySetRejected):
            make_family(2, [[]])

    def test_rejects_out_of_range_element(self):
        with pytest.raises(ElementOutOfRange):
            make_family(2, [[3]])
        with pytest.raises(ElementOutOfRange):
            Family(2, (4,))

    def test_universe_bounds(self):
        with pytest.raises(UniverseTooLarge):
            full_universe(17)
        with pytest.raises(UniverseTooLarge):
            full_universe(0)

    def test_members_must_be_strictly_ascending(self):
        with pytest.raises(ValueError):
            Family(2, (3, 1))

    def test_full_universe_size(self):
        for n in range(1, 6):
            assert len(full_universe(n)) == 2 ** n - 1

    def test_code_round_trip(self, top_and_point):
        assert Family.from_code(3, top_and_point.code()) == top_and_point

    def test_mask_helpers(self):
        assert mask_from_elements([1, 3], 3) == 5
        assert elements_of(5) == [1, 3]
        assert format_mask(5) == "{1,3}"
        assert str(make_family(2, [[1], [1, 2]])) == "{{1}, {1,2}}"

    @given(families())
    def test_frequencies_count_members_per_element(self, family):
        freqs = family.frequencies()
        for i in range(1, family.universe_size + 1):
            assert freqs[i - 1] == sum(1 for x in family if i in elements_of(x))


class TestUnionClosed:
    def test_two_singletons_are_not_closed(self):
        check = is_union_closed(make_family(3, [[1], [2]]))
        assert not check
        assert check.witness == (1, 2)

    def test_full_universe_is_closed(self):
        assert is_union_closed(full_universe(4))

    def test_single_member_is_closed(self):
        assert is_union_closed(make_family(4, [[2, 4]]))

    @given(families())
    def test_witness_is_a_real_violation(self, family):
        check = is_union_closed(family)
        if not check:
            x, y = check.witness
            assert x in family and y in family
            assert x | y not in family

    @given(families())
    @settings(max_examples=60)
    def test_closure_is_idempotent_and_minimal(self, family):
        closed = union_closure(family)
        assert is_union_closed(closed)
        assert all(x in closed for x in family)
        assert union_closure(closed) == closed
        # every member of the closure is a union of original members
        for x in closed:
            assert x == np.bitwise_or.reduce([m for m in family if m & ~x == 0])

    def test_closure_rejects_negative_masks(self):
        with pytest.raises(ElementOutOfRange):
            closure_of_masks(3, [1, -1])

    def test_closure_of_two_singletons(self):
        assert union_closure(make_family(3, [[1], [2]])).members == (1, 2, 3)

    @pytest.mark.slow
    def test_closure_at_sixteen_elements(self):
        generators = draw_subsets(16, 1000, seed=3)
        closed = closure_of_masks(16, generators)
        top = 0
        for g in generators:
            top |= g
            assert g in closed
        assert top in closed


class TestComplementAndSubfamilies:
    def test_complement(self, pair_only):
        assert complement_family(pair_only).members == (1, 2)

    def test_containing_and_avoiding_partition(self):
        universe = full_universe(3)
        with_one = subfamily_containing(universe, 1)
        without_one = subfamily_avoiding(universe, 1)
        assert len(with_one) == 4
        assert sorted(with_one.members + without_one.members) == list(universe.members)

    def test_element_out_of_range(self, pair_only):
        with pytest.raises(ElementOutOfRange):
            subfamily_containing(pair_only, 3)


class TestCheckConjecture:
    def test_small_example(self):
        verdict = check_conjecture(make_family(2, [[1], [1, 2]]))
        assert verdict.holds
        assert 1 in verdict.abundant_elements
        assert verdict.identity_checked
        assert verdict.family_size == 2
        assert verdict.complement_size == 1
        assert [link.element for link in verdict.chain] == [1]

    def test_empty_family(self):
        with pytest.raises(EmptyFamily):
            check_conjecture(Family(3, ()))

    @pytest.mark.parametrize("family", closed_families(3), ids=str)
    def test_holds_with_identity_on_small_closed_families(self, family):
        verdict = check_conjecture(family)
        assert verdict.holds
        assert verdict.identity_checked
        half = 2 ** (family.universe_size - 1)
        complement = complement_family(family)
        assert len(family) == 2 * half - 1 - len(complement)
        assert list(family.frequencies()) == [half - c for c in complement.frequencies()]

    @pytest.mark.slow
    def test_holds_at_four_elements(self):
        for family in closed_families(4):
            verdict = check_conjecture(family)
            assert verdict.holds and verdict.identity_checked

    def test_chain_bound_implies_abundance(self):
        # AuditInconsistency would surface here if the arithmetic were off
        for family in closed_families(3):
            try:
                verdict = check_conjecture(family)
            except AuditInconsistency:  # pragma: no cover
                pytest.fail(f"chain inconsistent on {family}")
            for link in verdict.chain:
                if link.bound_holds:
                    assert link.abundant


def _relabel(family, order):
    n = family.universe_size
    return make_family(n, [[order[i - 1] for i in elements_of(x)] for x in family])


@given(families(), st.randoms(use_true_random=False))
def test_relabeling_elements_preserves_structure(family, rnd):
    n = family.universe_size
    order = list(range(1, n + 1))
    rnd.shuffle(order)
    moved = _relabel(family, order)
    assert bool(is_union_closed(moved)) == bool(is_union_closed(family))
    assert sorted(moved.frequencies()) == sorted(family.frequencies())
    assert len(union_closure(moved)) == len(union_closure(family))
    moved_freqs = moved.frequencies()
    freqs = family.frequencies()
    for i in range(1, n + 1):
        assert moved_freqs[order[i - 1] - 1] == freqs[i - 1]
    assert minimal_elements(moved) == sorted(order[j - 1] for j in minimal_elements(family))
    complement = complement_family(family)
    assert minimal_elements(complement_family(moved)) == sorted(
        order[j - 1] for j in minimal_elements(complement)
    )
