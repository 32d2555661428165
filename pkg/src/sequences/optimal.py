"""
Vincolated-pair witnesses and optimal sequences.

Both procedures follow a constructive argument that is under audit, so
every branch the argument calls impossible still returns a value: a
PreconditionNotMet outcome when hypotheses fail, a RefutationReport when
the construction breaks.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Union

from src.errors import ConstructionBlocked, PreconditionNotMet
from src.family.core import (
    Family,
    SetMask,
    complement_family,
    element_bit,
    format_mask,
    is_union_closed,
    popcount,
    subfamily_avoiding,
    subfamily_containing,
)
from src.family.predicates import extension, is_vincolated, is_vincolated_to
from src.sequences.construct import ideal_deletions
from src.sequences.deletion import DeletionSequence, SequenceKind, validate_sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefutationReport:
    """A constructive step that should succeed and did not."""

    claim: str
    family: Family
    element: Optional[int]
    reason: str
    details: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class ProofTrace:
    """How far the maximum-cardinality argument gets on one instance."""

    y_max: SetMask
    partner: Optional[SetMask]
    union: Optional[SetMask]
    extension_in_complement: Optional[bool]
    union_is_y_plus_i: Optional[bool]
    y_plus_i_vincolated: Optional[bool]


@dataclass(frozen=True)
class Theorem3Witness:
    y: SetMask
    r: SetMask
    checks: Dict[str, bool]
    constructed_by_proof: bool
    trace: Optional[ProofTrace] = None


@dataclass(frozen=True)
class Theorem3Outcome:
    """status is 'witness', 'precondition-not-met' or 'refuted'."""

    status: str
    witness: Optional[Theorem3Witness] = None
    reason: str = ""
    trace: Optional[ProofTrace] = None
    pairs_checked: int = 0


def _descending(masks) -> List[SetMask]:
    return sorted(masks, key=lambda m: (-popcount(m), m))


def _proof_trace(family: Family, i: int, avoiding: Family) -> ProofTrace:
    n = family.universe_size
    bit = element_bit(i, n)
    complement = complement_family(family)
    y_max = _descending(avoiding.members)[0]
    vinc = is_vincolated(family, y_max)
    plus_i = y_max | bit
    plus_i_vinc = None
    if plus_i in complement:
        plus_i_vinc = bool(is_vincolated(family, plus_i))
    if not vinc:
        return ProofTrace(y_max, None, None, None, plus_i == y_max, plus_i_vinc)
    partner = vinc.witness.y
    union = vinc.witness.result
    ext = extension(y_max, partner, n)
    in_complement = all(t in complement for t in ext.members)
    return ProofTrace(y_max, partner, union, in_complement, union == plus_i, plus_i_vinc)


def _pair_checks(family: Family, y: SetMask, r: SetMask) -> Dict[str, bool]:
    return {
        "y_vincolated": bool(is_vincolated(family, y)),
        "r_not_vincolated": not is_vincolated(family, r),
        "y_vincolated_to_r": is_vincolated_to(family, y, r),
    }


def find_theorem3_witness(family: Family, i: int) -> Theorem3Outcome:
    """
    Look for Y in D - D^i vincolated to a non-vincolated R in D^i.

    The proof's own choice (Y of maximum cardinality, R = Y | {i}) is tried
    first; otherwise every pair is scanned, Y and R each by descending
    cardinality then ascending bits.

    Args:
        family: Union-closed family F
        i: Element of [n]

    Returns:
        Theorem3Outcome: a witness, an unmet hypothesis, or a refutation
            (no pair exists although every Y in D - D^i is vincolated)
    """
    bit = element_bit(i, family.universe_size)
    if not is_union_closed(family):
        return Theorem3Outcome("precondition-not-met", reason="F is not union-closed")
    complement = complement_family(family)
    avoiding = subfamily_avoiding(complement, i)
    containing = subfamily_containing(complement, i)
    if len(avoiding) == 0:
        return Theorem3Outcome("precondition-not-met", reason="D - D^i is empty")
    for x in avoiding.members:
        if not is_vincolated(family, x):
            return Theorem3Outcome(
                "precondition-not-met", reason=f"{format_mask(x)} in D - D^i is not vincolated"
            )

    trace = _proof_trace(family, i, avoiding)
    ys = _descending(avoiding.members)
    top = popcount(ys[0])
    for y in ys:
        if popcount(y) != top:
            break
        r = y | bit
        if r in containing:
            checks = _pair_checks(family, y, r)
            if all(checks.values()):
                return Theorem3Outcome("witness", Theorem3Witness(y, r, checks, True, trace), trace=trace)

    pairs = 0
    for y in ys:
        for r in _descending(containing.members):
            pairs += 1
            checks = _pair_checks(family, y, r)
            if all(checks.values()):
                return Theorem3Outcome(
                    "witness", Theorem3Witness(y, r, checks, False, trace), trace=trace, pairs_checked=pairs
                )

    logger.info("no vincolated pair for i=%d on %s after %d pairs", i, family, pairs)
    return Theorem3Outcome(
        "refuted", reason="no Y in D - D^i is vincolated to a non-vincolated R in D^i",
        trace=trace, pairs_checked=pairs,
    )


def build_optimal_sequence(family: Family, i: int) -> Union[DeletionSequence, RefutationReport]:
    """
    Build an optimal sequence for i from A to F.

    Case 1 (every set of D - D^i vincolated): take the vincolated pair
    (Y, R), build an ideal sequence to F | {Y, R} and append Y then R.
    Case 2 (some X* in D - D^i not vincolated): build an ideal sequence to
    F | {X*} and swap X* in before its last deletion.

    Args:
        family: Union-closed family F
        i: Element with D^i neither empty nor all of D

    Returns:
        A validated DeletionSequence of kind optimal(i), or a
        RefutationReport when the construction fails

    Raises:
        PreconditionNotMet: F not union-closed, D^i empty, or D^i = D
    """
    n = family.universe_size
    if not is_union_closed(family):
        raise PreconditionNotMet("F is not union-closed")
    complement = complement_family(family)
    containing = subfamily_containing(complement, i)
    avoiding = subfamily_avoiding(complement, i)
    if len(containing) == 0:
        raise PreconditionNotMet(f"D^{i} is empty, so no deletion can contain {i}")
    if len(avoiding) == 0:
        raise PreconditionNotMet(f"D^{i} = D")

    free = [x for x in avoiding.members if not is_vincolated(family, x)]
    details: Dict[str, Any] = {"case": 2 if free else 1}
    try:
        if not free:
            outcome = find_theorem3_witness(family, i)
            if outcome.status != "witness":
                return RefutationReport(
                    "L6", family, i, f"case 1 needs a vincolated pair: {outcome.reason}",
                    {**details, "theorem3": outcome.status},
                )
            y, r = outcome.witness.y, outcome.witness.r
            staging = family.with_masks([y, r])
            if not is_union_closed(staging):
                return RefutationReport("L6", family, i, "F | {Y, R} is not union-closed", details)
            deletions = ideal_deletions(staging, i) + [y, r]
        else:
            x_star = free[0]
            details["x_star"] = x_star
            prefix = ideal_deletions(family.with_masks([x_star]), i)
            deletions = prefix[:-1] + [x_star, prefix[-1]]
    except ConstructionBlocked as exc:
        return RefutationReport("L6", family, i, f"ideal prefix blocked: {exc}", details)

    sequence = DeletionSequence(n, family, tuple(deletions), SequenceKind.optimal(i))
    report = validate_sequence(sequence)
    if not report.valid:
        return RefutationReport(
            "L6", family, i, "constructed sequence is not optimal",
            {**details, "deletions": list(deletions), "reasons": list(report.reasons)},
        )
    return sequence
