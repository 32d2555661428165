"""
Shared fixtures and hypothesis strategies.
"""

import pytest
from hypothesis import strategies as st

from src.family.core import Family, make_family
from src.search.enumerator import enumerate_union_closed


@st.composite
def families(draw, min_n: int = 1, max_n: int = 4, max_sets: int = 12) -> Family:
    """Arbitrary nonempty families, union-closed or not."""
    n = draw(st.integers(min_n, max_n))
    masks = draw(st.lists(st.integers(1, (1 << n) - 1), min_size=1, max_size=max_sets))
    return Family.from_masks(n, masks)


@pytest.fixture
def top_and_point():
    """F = {{3}, {1,2,3}} over [3]."""
    return make_family(3, [[3], [1, 2, 3]])


@pytest.fixture
def pair_only():
    """F = {{1,2}} over [2]."""
    return make_family(2, [[1, 2]])


def closed_families(max_n: int = 3):
    return [f for n in range(1, max_n + 1) for f in enumerate_union_closed(n)]
