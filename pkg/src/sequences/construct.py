"""
Constructive procedures for union-closed and ideal sequences.
"""

import logging
from typing import List

from src.errors import ConstructionBlocked, EmptyDi, EmptyFamily, NotUnionClosed
from src.family.basis import basis
from src.family.core import (
    Family,
    SetMask,
    complement_family,
    format_mask,
    full_universe,
    is_union_closed,
    popcount,
    subfamily_containing,
)
from src.sequences.deletion import DeletionSequence, SequenceKind

logger = logging.getLogger(__name__)

STRATEGIES = ("greedy-basis", "by-size")


def _by_size(masks) -> List[SetMask]:
    return sorted(masks, key=lambda m: (popcount(m), m))


def _require_union_closed(family: Family) -> None:
    if len(family) == 0:
        raise EmptyFamily("target family must be nonempty")
    check = is_union_closed(family)
    if not check:
        x, y = check.witness
        raise NotUnionClosed(
            f"target is not union-closed: {format_mask(x)} | {format_mask(y)} is missing"
        )


def greedy_basis_deletions(family: Family) -> List[SetMask]:
    """
    Delete, at each step, the least basis member of A_{r-1} outside F.

    Raises:
        ConstructionBlocked: every basis member of A_{r-1} already lies in F
    """
    current = full_universe(family.universe_size)
    deletions: List[SetMask] = []
    while len(current) > len(family):
        candidates = [x for x in basis(current).members if x not in family]
        if not candidates:
            remaining = [x for x in current.members if x not in family]
            logger.warning(
                "greedy construction blocked at step %d for %s", len(deletions) + 1, family
            )
            raise ConstructionBlocked(
                f"B(A_{len(deletions)}) is contained in the target", len(deletions) + 1, remaining
            )
        x = candidates[0]
        deletions.append(x)
        current = current.without_masks([x])
    return deletions


def build_union_closed_sequence(family: Family, strategy: str = "greedy-basis") -> DeletionSequence:
    """
    Build a union-closed sequence from A to F.

    Args:
        family: Nonempty union-closed target
        strategy: 'greedy-basis' (basis deletions, least bits first) or
            'by-size' (D in nondecreasing cardinality, ties by bits)

    Returns:
        DeletionSequence of kind union_closed
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}, expected one of {STRATEGIES}")
    _require_union_closed(family)

    if strategy == "by-size":
        deletions = _by_size(complement_family(family).members)
    else:
        deletions = greedy_basis_deletions(family)
    return DeletionSequence(family.universe_size, family, tuple(deletions), SequenceKind.union_closed())


def ideal_deletions(family: Family, i: int) -> List[SetMask]:
    """
    Deletion order of an ideal sequence for i, tolerating an empty D^i.

    A greedy union-closed sequence down to F | D^i, then D^i by size.
    """
    d_i = subfamily_containing(complement_family(family), i)
    staging = family.union(d_i)
    head = greedy_basis_deletions(staging)
    return head + _by_size(d_i.members)


def build_ideal_sequence(family: Family, i: int) -> DeletionSequence:
    """
    Build an ideal sequence for i from A to F.

    Args:
        family: Nonempty union-closed target
        i: Element with D^i nonempty

    Returns:
        DeletionSequence of kind ideal(i)

    Raises:
        NotUnionClosed, EmptyDi
    """
    _require_union_closed(family)
    if len(subfamily_containing(complement_family(family), i)) == 0:
        raise EmptyDi(f"no deleted set contains element {i}")
    deletions = ideal_deletions(family, i)
    return DeletionSequence(family.universe_size, family, tuple(deletions), SequenceKind.ideal(i))
