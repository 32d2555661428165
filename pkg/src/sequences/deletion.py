"""
Deletion sequences from A to a target family, and their validation.

A sequence deletes X_1, ..., X_t from A = A_0; A_r = A_{r-1} - {X_r} and
A_t is the target. The kind decides which extra clauses the validator
enforces:

    plain         structure only
    union_closed  every A_r is union-closed
    ideal(i)      union-closed, and every deletion avoiding i comes first
    optimal(i)    union-closed, X_t contains i, X_{t-1} avoids i, and the
                  prefix X_1..X_{t-2} has the ideal split
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from src.errors import MalformedSequence, ParseError
from src.family.core import (
    Family,
    SetMask,
    check_universe,
    complement_family,
    element_bit,
    format_mask,
    full_universe,
    is_union_closed,
)

logger = logging.getLogger(__name__)

KIND_NAMES = ("plain", "union_closed", "ideal", "optimal")


@dataclass(frozen=True)
class SequenceKind:
    name: str
    element: Optional[int] = None

    def __post_init__(self):
        if self.name not in KIND_NAMES:
            raise ValueError(f"unknown sequence kind {self.name!r}")
        if (self.name in ("ideal", "optimal")) != (self.element is not None):
            raise ValueError(f"kind {self.name!r} element mismatch: {self.element!r}")

    @classmethod
    def plain(cls) -> "SequenceKind":
        return cls("plain")

    @classmethod
    def union_closed(cls) -> "SequenceKind":
        return cls("union_closed")

    @classmethod
    def ideal(cls, i: int) -> "SequenceKind":
        return cls("ideal", int(i))

    @classmethod
    def optimal(cls, i: int) -> "SequenceKind":
        return cls("optimal", int(i))

    @property
    def label(self) -> str:
        """File syntax: plain, uc, ideal:i or optimal:i."""
        if self.name == "union_closed":
            return "uc"
        if self.element is None:
            return self.name
        return f"{self.name}:{self.element}"

    @classmethod
    def parse(cls, text: str) -> "SequenceKind":
        text = text.strip()
        if text == "plain":
            return cls.plain()
        if text == "uc":
            return cls.union_closed()
        name, _, element = text.partition(":")
        if name in ("ideal", "optimal") and element.strip().isdigit():
            return cls(name, int(element))
        raise ParseError(f"unknown sequence kind {text!r}")


@dataclass(frozen=True)
class DeletionSequence:
    """Ordered deletions X_1..X_t taking A to the target family."""

    universe_size: int
    target: Family
    deletions: Tuple[SetMask, ...]
    kind: SequenceKind = field(default_factory=SequenceKind.plain)

    def __post_init__(self):
        n = check_universe(self.universe_size)
        if self.target.universe_size != n:
            raise MalformedSequence("target universe does not match the sequence")
        full = (1 << n) - 1
        seen = set()
        for x in self.deletions:
            if not 0 < x <= full:
                raise MalformedSequence(f"deletion {x:#x} is not a nonempty subset of 1..{n}")
            if x in seen:
                raise MalformedSequence(f"{format_mask(x)} is deleted twice")
            if x in self.target:
                raise MalformedSequence(f"{format_mask(x)} belongs to the target")
            seen.add(x)
        if len(self.target) + len(self.deletions) != full:
            raise MalformedSequence("deletions and target do not partition A")
        if self.kind.element is not None:
            element_bit(self.kind.element, n)

    @property
    def length(self) -> int:
        return len(self.deletions)

    def families(self) -> List[Family]:
        """A_0, A_1, ..., A_t."""
        current = list(range(1, 1 << self.universe_size))
        out = [Family(self.universe_size, tuple(current))]
        for x in self.deletions:
            current.remove(x)
            out.append(Family(self.universe_size, tuple(current)))
        return out

    def replay(self) -> Family:
        """Apply every deletion to A; equals the target for a well-formed sequence."""
        return full_universe(self.universe_size).without_masks(self.deletions)


@dataclass(frozen=True)
class StepReport:
    index: int
    removed: SetMask
    union_closed: bool
    witness: Optional[Tuple[SetMask, SetMask]] = None


@dataclass(frozen=True)
class SequenceReport:
    kind: SequenceKind
    steps: Tuple[StepReport, ...]
    valid: bool
    reasons: Tuple[str, ...] = ()


def _split_violations(deletions: Sequence[SetMask], bit: int, offset: int = 0) -> List[str]:
    """Positions breaking 'every set avoiding i precedes every set containing i'."""
    avoiding = sum(1 for x in deletions if not x & bit)
    reasons = []
    for pos, x in enumerate(deletions, start=1):
        if pos <= avoiding and x & bit:
            reasons.append(f"X_{pos + offset} = {format_mask(x)} contains the element too early")
        elif pos > avoiding and not x & bit:
            reasons.append(f"X_{pos + offset} = {format_mask(x)} avoids the element too late")
    return reasons


def validate_sequence(sequence: DeletionSequence) -> SequenceReport:
    """
    Check every step of a sequence against its kind.

    Args:
        sequence: A structurally valid DeletionSequence

    Returns:
        SequenceReport with one StepReport per deletion and the verdict
    """
    steps = []
    for index, stage in enumerate(sequence.families()[1:], start=1):
        check = is_union_closed(stage)
        steps.append(StepReport(index, sequence.deletions[index - 1], check.holds, check.witness))

    kind = sequence.kind
    reasons: List[str] = []
    if kind.name != "plain":
        reasons.extend(
            f"A_{s.index} is not union-closed ({format_mask(s.witness[0])} | {format_mask(s.witness[1])})"
            for s in steps
            if not s.union_closed
        )

    deletions = sequence.deletions
    if kind.name == "ideal":
        bit = element_bit(kind.element, sequence.universe_size)
        reasons.extend(_split_violations(deletions, bit))
    elif kind.name == "optimal":
        bit = element_bit(kind.element, sequence.universe_size)
        t = len(deletions)
        if t < 2:
            reasons.append("an optimal sequence needs at least two deletions")
        else:
            if not deletions[-1] & bit:
                reasons.append(f"X_t = {format_mask(deletions[-1])} does not contain {kind.element}")
            if deletions[-2] & bit:
                reasons.append(f"X_(t-1) = {format_mask(deletions[-2])} contains {kind.element}")
            reasons.extend(_split_violations(deletions[:-2], bit))

    return SequenceReport(kind, tuple(steps), not reasons, tuple(reasons))


def search_sequence(target: Family, kind: SequenceKind) -> Optional[DeletionSequence]:
    """
    Exhaustively search for the least sequence of the given kind.

    Depth-first over deletion orders, trying candidates in ascending bits,
    so the first complete sequence is the lexicographically least one.
    Dead states are memoised. Intended for n <= 4.

    Args:
        target: Destination family (union-closed for any non-plain kind)
        kind: Kind the sequence must satisfy

    Returns:
        The least valid DeletionSequence, or None if none exists
    """
    n = target.universe_size
    complement = complement_family(target)
    if kind.name == "plain":
        return DeletionSequence(n, target, complement.members, kind)

    bit = element_bit(kind.element, n) if kind.element is not None else 0
    dead: Dict[Tuple[frozenset, bool], bool] = {}
    path: List[SetMask] = []

    def allowed(x: SetMask, remaining: int, entered: bool, pending_avoiding: int) -> bool:
        if kind.name == "ideal":
            return bool(x & bit) == (pending_avoiding == 0)
        if kind.name == "optimal":
            if remaining == 1:
                return bool(x & bit)
            if remaining == 2:
                return not x & bit
            return bool(x & bit) or not entered
        return True

    def walk(left: frozenset, entered: bool) -> bool:
        if not left:
            return True
        key = (left, entered)
        if key in dead:
            return False
        pending_avoiding = sum(1 for x in left if not x & bit) if bit else 0
        for x in sorted(left):
            if not allowed(x, len(left), entered, pending_avoiding):
                continue
            rest = left - {x}
            stage = Family(n, tuple(sorted(target.member_set | rest)))
            if not is_union_closed(stage):
                continue
            path.append(x)
            now_entered = entered or (kind.name == "optimal" and len(left) > 2 and bool(x & bit))
            if walk(rest, now_entered):
                return True
            path.pop()
        dead[key] = True
        return False

    if not walk(frozenset(complement.members), False):
        return None
    return DeletionSequence(n, target, tuple(path), kind)
