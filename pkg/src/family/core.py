"""
Sets and families over the universe [n] = {1, ..., n}.

A set is an int bit mask: bit (i - 1) is set iff element i belongs to it.
A Family is an immutable, sorted, duplicate-free tuple of nonempty masks;
two families are equal iff their member tuples are identical.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from src.config import MAX_UNIVERSE
from src.errors import (
    AuditInconsistency,
    ElementOutOfRange,
    EmptyFamily,
    EmptySetRejected,
    UniverseTooLarge,
)

SetMask = int


def check_universe(n: int) -> int:
    """Validate a universe size and return it."""
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_UNIVERSE:
        raise UniverseTooLarge(f"universe size must be in 1..{MAX_UNIVERSE}, got {n}")
    return int(n)


def element_bit(i: int, n: int) -> SetMask:
    """Mask of the single element i of [n]."""
    if not 1 <= i <= n:
        raise ElementOutOfRange(f"element {i} is outside 1..{n}")
    return 1 << (i - 1)


def mask_from_elements(elements: Iterable[int], n: int) -> SetMask:
    """
    Build a mask from 1-based element indices.

    Args:
        elements: Element indices, each in 1..n
        n: Universe size

    Returns:
        The mask (0 for an empty iterable)
    """
    mask = 0
    for i in elements:
        mask |= element_bit(int(i), n)
    return mask


def elements_of(mask: SetMask) -> List[int]:
    """1-based elements of a mask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(mask: SetMask) -> int:
    return bin(mask).count("1")


def format_mask(mask: SetMask) -> str:
    """Human-readable form, e.g. {1,3}."""
    return "{" + ",".join(str(i) for i in elements_of(mask)) + "}"


@dataclass(frozen=True)
class Family:
    """A finite family of distinct nonempty subsets of [n]."""

    universe_size: int
    members: Tuple[SetMask, ...]

    def __post_init__(self):
        n = check_universe(self.universe_size)
        full = (1 << n) - 1
        previous = 0
        for mask in self.members:
            if mask == 0:
                raise EmptySetRejected("the empty set cannot be a family member")
            if mask > full or mask < 0:
                raise ElementOutOfRange(f"member {mask:#x} has elements outside 1..{n}")
            if mask <= previous:
                raise ValueError("family members must be strictly ascending")
            previous = mask

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[SetMask]) -> "Family":
        """Deduplicate and sort masks into a Family."""
        return cls(n, tuple(sorted(set(int(m) for m in masks))))

    @property
    def full_mask(self) -> SetMask:
        return (1 << self.universe_size) - 1

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[SetMask]:
        return iter(self.members)

    def __contains__(self, mask: object) -> bool:
        return mask in self.member_set

    def __str__(self) -> str:
        return "{" + ", ".join(format_mask(m) for m in self.members) + "}"

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    @cached_property
    def array(self) -> np.ndarray:
        """Members as an int64 vector."""
        return np.array(self.members, dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        """Membership table of length 2^n, indexed by mask."""
        table = np.zeros(1 << self.universe_size, dtype=bool)
        if self.members:
            table[self.array] = True
        return table

    def frequencies(self) -> np.ndarray:
        """|F^i| for i = 1..n, as a vector indexed from 0."""
        shifts = np.arange(self.universe_size, dtype=np.int64)
        return ((self.array[:, None] >> shifts) & 1).sum(axis=0).astype(np.int64)

    def with_masks(self, masks: Iterable[SetMask]) -> "Family":
        return Family.from_masks(self.universe_size, [*self.members, *masks])

    def without_masks(self, masks: Iterable[SetMask]) -> "Family":
        drop = set(masks)
        return Family(self.universe_size, tuple(m for m in self.members if m not in drop))

    def union(self, other: "Family") -> "Family":
        return self.with_masks(other.members)

    def element_lists(self) -> List[List[int]]:
        return [elements_of(m) for m in self.members]

    def code(self) -> int:
        """Bit-vector of the family: bit (X - 1) is set iff mask X is a member."""
        code = 0
        for m in self.members:
            code |= 1 << (m - 1)
        return code

    @classmethod
    def from_code(cls, n: int, code: int) -> "Family":
        members = []
        mask = 1
        while code:
            if code & 1:
                members.append(mask)
            code >>= 1
            mask += 1
        return cls(n, tuple(members))


@dataclass(frozen=True)
class UnionClosedness:
    """Result of a union-closedness test; truthy iff closed."""

    holds: bool
    witness: Optional[Tuple[SetMask, SetMask]] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class ChainLink:
    """One minimal element of D checked against the closing inequality."""

    element: int
    complement_frequency: int
    bound_holds: bool
    abundant: bool


@dataclass(frozen=True)
class ConjectureVerdict:
    holds: bool
    abundant_elements: Tuple[int, ...]
    identity_checked: bool
    frequencies: Tuple[int, ...]
    family_size: int
    complement_size: int
    chain: Tuple[ChainLink, ...] = ()


def make_family(n: int, sets: Sequence[Sequence[int]]) -> Family:
    """
    Build a Family from element lists.

    Args:
        n: Universe size (1..16)
        sets: Member sets as lists of 1-based elements

    Returns:
        Deduplicated, sorted Family

    Raises:
        UniverseTooLarge, ElementOutOfRange, EmptySetRejected
    """
    n = check_universe(n)
    masks = []
    for elements in sets:
        mask = mask_from_elements(elements, n)
        if mask == 0:
            raise EmptySetRejected("the empty set cannot be a family member")
        masks.append(mask)
    return Family.from_masks(n, masks)


def full_universe(n: int) -> Family:
    """A = all nonempty subsets of [n]."""
    n = check_universe(n)
    return Family(n, tuple(range(1, 1 << n)))


def is_union_closed(family: Family) -> UnionClosedness:
    """
    Test union-closedness.

    Args:
        family: Family to test

    Returns:
        UnionClosedness; on failure the witness is the least violating pair
        (X, Y) in lexicographic order of (bits(X), bits(Y))
    """
    members = family.array
    table = family.table
    for idx, x in enumerate(family.members):
        # a violation (Y, X) with Y < X would already have been found at Y
        missing = ~table[members[idx:] | x]
        if missing.any():
            y = int(members[idx + int(np.argmax(missing))])
            return UnionClosedness(False, (x, y))
    return UnionClosedness(True)


def closure_of_masks(n: int, masks: Iterable[SetMask]) -> Family:
    """Union closure of arbitrary nonempty masks over [n]."""
    n = check_universe(n)
    present = np.zeros(1 << n, dtype=bool)
    for g in masks:
        if g == 0:
            raise EmptySetRejected("the empty set cannot be a family member")
        if not 0 < g < len(present):
            raise ElementOutOfRange(f"mask {g:#x} has elements outside 1..{n}")
        if present[g]:
            continue
        # the processed part stays union-closed, so one pass per generator suffices
        present[np.flatnonzero(present) | g] = True
        present[g] = True
    return Family(n, tuple(int(m) for m in np.flatnonzero(present)))


def union_closure(family: Family) -> Family:
    """Smallest union-closed family containing the given one."""
    return closure_of_masks(family.universe_size, family.members)


def subfamily_containing(family: Family, i: int) -> Family:
    """F^i = members of F containing element i."""
    bit = element_bit(i, family.universe_size)
    return Family(family.universe_size, tuple(m for m in family.members if m & bit))


def subfamily_avoiding(family: Family, i: int) -> Family:
    """F - F^i."""
    bit = element_bit(i, family.universe_size)
    return Family(family.universe_size, tuple(m for m in family.members if not m & bit))


def complement_family(family: Family) -> Family:
    """D = A - F."""
    absent = np.flatnonzero(~family.table)
    return Family(family.universe_size, tuple(int(m) for m in absent if m))


def check_conjecture(family: Family) -> ConjectureVerdict:
    """
    Look for abundant elements and check the counting identities.

    Args:
        family: Nonempty family

    Returns:
        ConjectureVerdict listing every i with 2|F^i| >= |F|, whether
        |F| = 2|A^i| - 1 - |D| and |F^i| = |A^i| - |D^i| hold for every i,
        and the closing inequality evaluated at each minimal element of D
    """
    if len(family) == 0:
        raise EmptyFamily("the conjecture is stated for nonempty families")

    n = family.universe_size
    size = len(family)
    freqs = family.frequencies()
    abundant = tuple(int(i) + 1 for i in np.flatnonzero(2 * freqs >= size))

    complement = complement_family(family)
    dfreqs = complement.frequencies()
    half = 1 << (n - 1)
    identity = size == 2 * half - 1 - len(complement) and bool(np.all(freqs == half - dfreqs))

    chain = []
    if len(complement):
        lowest = dfreqs.min()
        for j in np.flatnonzero(dfreqs == lowest):
            element = int(j) + 1
            bound = bool(2 * dfreqs[j] <= len(complement) + 1)
            link = ChainLink(element, int(dfreqs[j]), bound, element in abundant)
            if link.bound_holds and not link.abundant:
                raise AuditInconsistency(
                    f"element {element} meets 2|D^j| <= |D|+1 but is not abundant in {family}"
                )
            chain.append(link)

    return ConjectureVerdict(
        holds=bool(abundant),
        abundant_elements=abundant,
        identity_checked=identity,
        frequencies=tuple(int(f) for f in freqs),
        family_size=size,
        complement_size=len(complement),
        chain=tuple(chain),
    )
