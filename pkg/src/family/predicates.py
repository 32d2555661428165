"""
Pointwise predicates on a family F and its complement D = A - F:
extensions, vincolated sets, minimal and quasiminimal elements.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

from src.errors import (
    AuditInconsistency,
    ConstructionBlocked,
    ElementOutOfRange,
    EmptySetRejected,
    FranklError,
    NotAMember,
    NotInComplement,
)
from src.family.core import (
    Family,
    SetMask,
    check_universe,
    complement_family,
    element_bit,
    format_mask,
    is_union_closed,
    popcount,
)
from src.sequences.construct import ideal_deletions
from src.sequences.deletion import (
    DeletionSequence,
    SequenceKind,
    search_sequence,
    validate_sequence,
)

logger = logging.getLogger(__name__)

QUASIMINIMAL_EXHAUSTIVE_LIMIT = 3


@dataclass(frozen=True)
class VincolatedWitness:
    x: SetMask
    y: SetMask
    result: SetMask


@dataclass(frozen=True)
class Vincolation:
    """Outcome of is_vincolated; truthy iff X is vincolated."""

    vincolated: bool
    witness: Optional[VincolatedWitness] = None

    def __bool__(self) -> bool:
        return self.vincolated


@dataclass(frozen=True)
class QuasiminimalCertificate:
    i: int
    y1: SetMask
    y2: SetMask
    sequence: DeletionSequence


@dataclass(frozen=True)
class Quasiminimality:
    """Outcome of is_quasiminimal; failed_clause is 1..4 when it does not hold."""

    holds: bool
    certificate: Optional[QuasiminimalCertificate] = None
    failed_clause: Optional[int] = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class ComplementShape:
    size: int
    kind: str
    expected: bool


def extension(y: SetMask, x: SetMask, n: int) -> Family:
    """
    E_X(Y) = {T in A : Y <= T <= Y | X}.

    Args:
        y: Nonempty base set
        x: Set extending it
        n: Universe size

    Returns:
        Family of size 2^|X - Y|
    """
    n = check_universe(n)
    full = (1 << n) - 1
    if y == 0:
        raise EmptySetRejected("the extension base must be nonempty")
    for mask in (x, y):
        if mask < 0 or mask & ~full:
            raise ElementOutOfRange(f"mask {mask:#x} has elements outside 1..{n}")
    free = x & ~y
    found = []
    sub = free
    while True:
        found.append(y | sub)
        if sub == 0:
            break
        sub = (sub - 1) & free
    return Family.from_masks(n, found)


def _require_in_complement(family: Family, x: SetMask) -> None:
    if x <= 0 or x > family.full_mask or x in family:
        raise NotInComplement(f"{format_mask(x)} is not in D = A - F")


def is_vincolated(family: Family, x: SetMask) -> Vincolation:
    """
    Decide whether X in D is vincolated (F | {X} is not union-closed).

    The witness is the least Y in F whose union with X is missing from
    F | {X}, i.e. lies in D and differs from X.

    Args:
        family: The family F
        x: A member of D

    Returns:
        Vincolation with the least witness Y when vincolated
    """
    _require_in_complement(family, x)

    witness = None
    for y in family.members:
        joined = x | y
        if joined != x and joined not in family:
            witness = VincolatedWitness(x, y, joined)
            break

    extended_closed = bool(is_union_closed(family.with_masks([x])))
    base_closed = bool(is_union_closed(family))
    if (not extended_closed) != (witness is not None or not base_closed):
        raise AuditInconsistency(
            f"vincolated characterisations disagree for {format_mask(x)} on {family}"
        )
    return Vincolation(witness is not None, witness)


def is_vincolated_to(family: Family, x: SetMask, y: SetMask) -> bool:
    """X is vincolated to Y: F | {X} is not union-closed but F | {X, Y} is."""
    if x == y:
        raise FranklError("X and Y must be distinct")
    _require_in_complement(family, x)
    _require_in_complement(family, y)
    if is_union_closed(family.with_masks([x])):
        return False
    return bool(is_union_closed(family.with_masks([x, y])))


def minimal_elements(complement: Family) -> List[int]:
    """Elements j with |D^j| <= |D^k| for every k, ascending."""
    freqs = complement.frequencies()
    lowest = freqs.min()
    return [int(j) + 1 for j in range(complement.universe_size) if freqs[j] == lowest]


def is_quasiminimal(family: Family, i: int, y1: SetMask, y2: SetMask) -> Quasiminimality:
    """
    Check the four quasiminimality clauses for i and {Y1, Y2}.

    Clause 4 asks for an optimal-for-i sequence from A to F - {Y1, Y2}
    whose last two deletions are Y1 then Y2. The ideal prefix to F is
    built constructively first; for n <= 3 an exhaustive search over
    deletion orders backs it up.

    Args:
        family: Union-closed family F
        i: Element of [n]
        y1: Member of F avoiding i
        y2: Member of F containing i

    Returns:
        Quasiminimality with a certificate when all clauses hold
    """
    n = family.universe_size
    bit = element_bit(i, n)
    for mask in (y1, y2):
        if mask not in family:
            raise NotAMember(f"{format_mask(mask)} is not a member of the family")
    if y1 == y2:
        raise FranklError("Y1 and Y2 must be distinct")

    if not y2 & bit:
        return Quasiminimality(False, failed_clause=1, reason=f"{i} not in Y2")
    if y1 & bit:
        return Quasiminimality(False, failed_clause=2, reason=f"{i} in Y1")
    complement = complement_family(family)
    if i not in minimal_elements(complement.with_masks([y1, y2])):
        return Quasiminimality(False, failed_clause=3, reason=f"{i} not minimal on D | Y")

    target = family.without_masks([y1, y2])
    for stage in (family, family.without_masks([y1]), target):
        if not is_union_closed(stage):
            return Quasiminimality(
                False, failed_clause=4, reason=f"intermediate family {stage} is not union-closed"
            )

    kind = SequenceKind.optimal(i)
    try:
        prefix = ideal_deletions(family, i)
    except ConstructionBlocked as exc:
        logger.info("ideal prefix construction blocked for i=%d on %s: %s", i, family, exc)
        prefix = None

    if prefix is not None:
        sequence = DeletionSequence(n, target, tuple(prefix) + (y1, y2), kind)
        if validate_sequence(sequence).valid:
            return Quasiminimality(True, QuasiminimalCertificate(i, y1, y2, sequence))
        logger.info("constructed quasiminimal sequence rejected for i=%d on %s", i, family)

    if n <= QUASIMINIMAL_EXHAUSTIVE_LIMIT:
        found = search_sequence(family, SequenceKind.ideal(i))
        if found is not None:
            sequence = DeletionSequence(n, target, found.deletions + (y1, y2), kind)
            if validate_sequence(sequence).valid:
                return Quasiminimality(True, QuasiminimalCertificate(i, y1, y2, sequence))
        return Quasiminimality(False, failed_clause=4, reason="no optimal sequence exists")

    return Quasiminimality(False, failed_clause=4, reason="constructive search failed")


def complement_shape(family: Family) -> ComplementShape:
    """
    Classify D when it has at most two sets.

    For union-closed F the only possibilities are D = {{j}} and
    D = {{j}, {k}} or {{j}, {j, k}}; anything else is flagged unexpected.
    """
    complement = complement_family(family)
    size = len(complement)
    if size == 0:
        return ComplementShape(0, "empty", True)
    if size == 1:
        single = popcount(complement.members[0]) == 1
        return ComplementShape(1, "singleton" if single else "unexpected", single)
    if size == 2:
        a, b = complement.members
        sizes = sorted((popcount(a), popcount(b)))
        if sizes == [1, 1]:
            return ComplementShape(2, "two-singletons", True)
        small, large = (a, b) if popcount(a) < popcount(b) else (b, a)
        if sizes == [1, 2] and small & large == small:
            return ComplementShape(2, "singleton-and-pair", True)
        return ComplementShape(2, "unexpected", False)
    return ComplementShape(size, "larger", True)
