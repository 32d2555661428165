"""
Basis of a family and decomposition of members into basis unions.

X is a basis member of F when no Y, Z in F - {X} (Y = Z allowed) have
Y | Z == X. Any such Y, Z are proper subsets of X, so only those are scanned.
"""

from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from src.errors import NotAMember
from src.family.core import Family, SetMask, format_mask


@dataclass(frozen=True)
class BasisDecomposition:
    """X written as the union of basis members."""

    target: SetMask
    parts: Tuple[SetMask, ...]

    def union(self) -> SetMask:
        out = 0
        for part in self.parts:
            out |= part
        return out


def _proper_subsets(family: Family, x: SetMask) -> np.ndarray:
    members = family.array
    return members[((members & ~x) == 0) & (members != x)]


def _least_split(family: Family, x: SetMask):
    """Least (Y, Z) in lexicographic order with Y | Z == X, or None."""
    subs = _proper_subsets(family, x)
    for y in subs:
        hits = np.flatnonzero((subs | y) == x)
        if hits.size:
            return int(y), int(subs[hits[0]])
    return None


def is_basis_member(family: Family, x: SetMask) -> bool:
    if x not in family:
        raise NotAMember(f"{format_mask(x)} is not a member of the family")
    subs = _proper_subsets(family, x)
    if subs.size < 2:
        return True
    return not bool(((subs[:, None] | subs[None, :]) == x).any())


def basis(family: Family) -> Family:
    """
    Compute B(F).

    Args:
        family: Any family, union-closed or not

    Returns:
        The members of F that are not the union of two other members
    """
    kept = tuple(x for x in family.members if is_basis_member(family, x))
    return Family(family.universe_size, kept)


def decompose(family: Family, x: SetMask) -> BasisDecomposition:
    """
    Write a member as a union of basis members.

    Follows the induction on |X|: a basis member is its own decomposition,
    otherwise X = Y | Z with the least split (Y, Z) and both halves are
    decomposed recursively.

    Args:
        family: Any family
        x: A member of the family

    Returns:
        BasisDecomposition with sorted, distinct parts

    Raises:
        NotAMember: x is not in the family
    """
    if x not in family:
        raise NotAMember(f"{format_mask(x)} is not a member of the family")

    cache: Dict[SetMask, Tuple[SetMask, ...]] = {}

    def parts_of(target: SetMask, depth: int) -> Tuple[SetMask, ...]:
        # each split strictly shrinks the set, so depth never exceeds n
        assert depth <= family.universe_size, "decomposition recursion exceeded |X|"
        if target in cache:
            return cache[target]
        split = _least_split(family, target)
        if split is None:
            result = (target,)
        else:
            y, z = split
            result = tuple(sorted(set(parts_of(y, depth + 1)) | set(parts_of(z, depth + 1))))
        cache[target] = result
        return result

    return BasisDecomposition(x, parts_of(x, 0))
