"""
Independent evaluation of every audited claim.

Families are frozensets of frozensets of 1-based elements and every
definition is written out directly: no bit masks, no caches shared with
the main code path. Sequence claims are decided by exhaustive search, so
this module is only practical for n <= 4.

Set ordering follows the members' descending element tuples, which is the
same order as the bit-mask order used elsewhere, so bindings come out in
the same order as in the auditor.
"""

import itertools
from typing import Any, Callable, Dict, FrozenSet, Iterable, List, Optional, Tuple

from src.audit.results import ClaimId, ClaimResult, Verdict

Members = FrozenSet[FrozenSet[int]]
Params = Dict[str, Any]

STRATEGY_NAMES = ("greedy-basis", "by-size")


def _order(s: FrozenSet[int]) -> Tuple[int, ...]:
    return tuple(sorted(s, reverse=True))


def _ordered(sets: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    return sorted(sets, key=_order)


def _as_list(s: FrozenSet[int]) -> List[int]:
    return sorted(s)


def union_closed(family: Members) -> bool:
    return all(a | b in family for a in family for b in family)


def basis(family: Members) -> Members:
    """Members that are not the union of two other members."""
    kept = set()
    for x in family:
        others = family - {x}
        if not any(y | z == x for y in others for z in others):
            kept.add(x)
    return frozenset(kept)


def vincolated(family: Members, x: FrozenSet[int]) -> bool:
    return not union_closed(family | {x})


def vincolated_to(family: Members, x: FrozenSet[int], y: FrozenSet[int]) -> bool:
    return vincolated(family, x) and union_closed(family | {x, y})


def containing(family: Iterable[FrozenSet[int]], i: int) -> Members:
    return frozenset(s for s in family if i in s)


def minimal_elements(n: int, deleted: Members) -> List[int]:
    counts = {j: len(containing(deleted, j)) for j in range(1, n + 1)}
    lowest = min(counts.values())
    return [j for j in range(1, n + 1) if counts[j] == lowest]


class Instance:
    """One family together with A and D, all as frozensets."""

    def __init__(self, n: int, element_lists: Iterable[Iterable[int]]):
        self.n = n
        self.family: Members = frozenset(frozenset(s) for s in element_lists)
        self.universe: Members = frozenset(
            frozenset(c)
            for r in range(1, n + 1)
            for c in itertools.combinations(range(1, n + 1), r)
        )
        self.deleted: Members = self.universe - self.family

    @classmethod
    def of(cls, result: ClaimResult) -> "Instance":
        return cls(result.family.universe_size, result.family.element_lists())

    @property
    def closed(self) -> bool:
        return union_closed(self.family)

    def descends(self, start: Members, stop: Members, memo: Dict[Members, bool]) -> bool:
        """Can start be reduced to stop one set at a time, every stage union-closed?"""
        if start == stop:
            return True
        if start in memo:
            return memo[start]
        found = False
        for x in _ordered(start - stop):
            smaller = start - {x}
            if union_closed(smaller) and self.descends(smaller, stop, memo):
                found = True
                break
        memo[start] = found
        return found

    def has_union_closed_sequence(self, target: Optional[Members] = None) -> bool:
        return self.descends(self.universe, self.family if target is None else target, {})

    def has_ideal_sequence(self, i: int, target: Optional[Members] = None) -> bool:
        target = self.family if target is None else target
        staging = target | containing(self.universe - target, i)
        return self.descends(self.universe, staging, {}) and self.descends(staging, target, {})

    def has_optimal_sequence(self, i: int) -> bool:
        """Some X_(t-1) avoiding i, X_t containing i, ideal before them, all stages closed."""
        for last in _ordered(containing(self.deleted, i)):
            for before in _ordered(self.deleted - containing(self.deleted, i)):
                tail_start = self.family | {last, before}
                if not union_closed(self.family | {last}) or not union_closed(tail_start):
                    continue
                if self.has_ideal_sequence(i, tail_start):
                    return True
        return False

    def quasiminimal(self, i: int, y1: FrozenSet[int], y2: FrozenSet[int]) -> bool:
        if i not in y2 or i in y1:
            return False
        if i not in minimal_elements(self.n, self.deleted | {y1, y2}):
            return False
        stages = (self.family, self.family - {y1}, self.family - {y1, y2})
        if not all(union_closed(stage) for stage in stages):
            return False
        return self.has_ideal_sequence(i)

    def quasiminimal_candidates(self, budget: Optional[int]) -> List[Tuple[int, FrozenSet[int], FrozenSet[int]]]:
        """(i, Y1, Y2) meeting the first three quasiminimality clauses, in binding order."""
        found = []
        for i in range(1, self.n + 1):
            with_i = _ordered(containing(self.family, i))
            without_i = _ordered(self.family - containing(self.family, i))
            minimal_cache: Dict[Tuple[FrozenSet[int], FrozenSet[int]], bool] = {}
            for y1 in without_i:
                for y2 in with_i:
                    key = (y1, y2)
                    if key not in minimal_cache:
                        minimal_cache[key] = i in minimal_elements(self.n, self.deleted | {y1, y2})
                    if minimal_cache[key]:
                        found.append((i, y1, y2))
        if budget is not None and self.n >= 4:
            return found[:budget]
        return found

    def bound_holds(self, i: int, y1: FrozenSet[int], y2: FrozenSet[int]) -> bool:
        grown = self.deleted | {y1, y2}
        return 2 * len(containing(grown, i)) <= len(grown) + 1


def _verdict(ok: bool) -> Verdict:
    return Verdict.HOLDS if ok else Verdict.FAILS


def _gate(claim: ClaimId, inst: Instance) -> Optional[str]:
    """Reason the whole instance is out of scope for the claim, if any."""
    if not inst.family:
        return "empty family"
    if claim not in (ClaimId.L1, ClaimId.L3) and not inst.closed:
        return "not union-closed"
    if claim is ClaimId.L3 and not inst.family - basis(inst.family):
        return "every member is a basis member"
    if claim is ClaimId.L5 and not inst.deleted:
        return "D is empty"
    if claim is ClaimId.T5 and len(inst.deleted) <= 1:
        return "|D| <= 1"
    return None


def _bindings(claim: ClaimId, inst: Instance, budget: Optional[int]) -> List[Params]:
    members = _ordered(inst.family)
    elements = range(1, inst.n + 1)
    if claim is ClaimId.L1:
        return [{"X": _as_list(x)} for x in members]
    if claim is ClaimId.L2:
        return [{"B": _as_list(b)} for b in _ordered(basis(inst.family))]
    if claim is ClaimId.L3:
        return [{"Z": _as_list(z)} for z in _ordered(inst.family - basis(inst.family))]
    if claim is ClaimId.L4:
        return [{"j": j} for j in elements]
    if claim is ClaimId.L5:
        return [{"i": i} for i in elements if containing(inst.deleted, i)]
    if claim in (ClaimId.L6, ClaimId.T3):
        return [{"i": i} for i in elements]
    if claim in (ClaimId.T1, ClaimId.T4A):
        return [{}]
    if claim is ClaimId.T2:
        return [{"strategy": s} for s in STRATEGY_NAMES]
    if claim is ClaimId.T4B:
        return [
            {"i": i, "Y1": _as_list(y1), "Y2": _as_list(y2)}
            for i, y1, y2 in inst.quasiminimal_candidates(budget)
        ]
    if claim is ClaimId.T5:
        return [{"j": j} for j in minimal_elements(inst.n, inst.deleted)]
    raise ValueError(f"unsupported claim {claim}")


def _t1(inst: Instance) -> bool:
    size = len(inst.family)
    half = 2 ** (inst.n - 1)
    abundant = [i for i in range(1, inst.n + 1) if 2 * len(containing(inst.family, i)) >= size]
    identity = size == 2 * half - 1 - len(inst.deleted) and all(
        len(containing(inst.family, i)) == half - len(containing(inst.deleted, i))
        for i in range(1, inst.n + 1)
    )
    return bool(abundant) and identity


def _t3(inst: Instance, i: int) -> Verdict:
    avoiding = inst.deleted - containing(inst.deleted, i)
    if not avoiding or not all(vincolated(inst.family, x) for x in avoiding):
        return Verdict.PRECONDITION_NOT_MET
    found = any(
        not vincolated(inst.family, r) and vincolated_to(inst.family, y, r)
        for y in avoiding
        for r in containing(inst.deleted, i)
    )
    return _verdict(found)


def _l6(inst: Instance, i: int) -> Verdict:
    with_i = containing(inst.deleted, i)
    if not with_i or with_i == inst.deleted:
        return Verdict.PRECONDITION_NOT_MET
    return _verdict(inst.has_optimal_sequence(i))


def _t4a(inst: Instance, budget: Optional[int]) -> Verdict:
    per_element: Dict[int, List[bool]] = {}
    for i, y1, y2 in inst.quasiminimal_candidates(budget):
        if inst.quasiminimal(i, y1, y2):
            per_element.setdefault(i, []).append(inst.bound_holds(i, y1, y2))
    if not per_element:
        return Verdict.PRECONDITION_NOT_MET
    return _verdict(any(all(per_element.get(i, [])) for i in range(1, inst.n + 1)))


def _t4b(inst: Instance, params: Params) -> Verdict:
    i = params["i"]
    y1, y2 = frozenset(params["Y1"]), frozenset(params["Y2"])
    if not inst.quasiminimal(i, y1, y2):
        return Verdict.PRECONDITION_NOT_MET
    return _verdict(inst.bound_holds(i, y1, y2))


def binding_verdict(claim: ClaimId, inst: Instance, params: Params, budget: Optional[int] = None) -> Verdict:
    """Evaluate one binding of a claim from the definitions."""
    if _gate(claim, inst) is not None:
        return Verdict.PRECONDITION_NOT_MET
    family = inst.family
    evaluate: Dict[ClaimId, Callable[[], Any]] = {
        ClaimId.L1: lambda: _verdict(
            frozenset().union(*(b for b in basis(family) if b <= frozenset(params["X"])))
            == frozenset(params["X"])
        ),
        ClaimId.L2: lambda: _verdict(union_closed(family - {frozenset(params["B"])})),
        ClaimId.L3: lambda: _verdict(basis(family) <= basis(family - {frozenset(params["Z"])})),
        ClaimId.L4: lambda: _verdict(union_closed(family | containing(inst.deleted, params["j"]))),
        ClaimId.L5: lambda: _verdict(inst.has_ideal_sequence(params["i"])),
        ClaimId.L6: lambda: _l6(inst, params["i"]),
        ClaimId.T1: lambda: _verdict(_t1(inst)),
        ClaimId.T2: lambda: _verdict(inst.has_union_closed_sequence()),
        ClaimId.T3: lambda: _t3(inst, params["i"]),
        ClaimId.T4A: lambda: _t4a(inst, budget),
        ClaimId.T4B: lambda: _t4b(inst, params),
        ClaimId.T5: lambda: _verdict(
            2 * len(containing(inst.deleted, params["j"])) <= len(inst.deleted) + 1
        ),
    }
    return evaluate[claim]()


def brute_force_verdicts(
    claim: ClaimId, n: int, element_lists: Iterable[Iterable[int]], budget: Optional[int] = None
) -> List[Tuple[Params, Verdict]]:
    """
    Every binding of a claim on one family with its verdict.

    Args:
        claim: Claim to evaluate
        n: Universe size
        element_lists: Members of F as 1-based element lists
        budget: Quasiminimality candidate cap (applied at n >= 4 only)

    Returns:
        (params, verdict) pairs in binding order
    """
    inst = Instance(n, element_lists)
    reason = _gate(claim, inst)
    if reason is not None:
        return [({}, Verdict.PRECONDITION_NOT_MET)]
    return [(params, binding_verdict(claim, inst, params, budget)) for params in _bindings(claim, inst, budget)]


def recheck_failure(result: ClaimResult, budget: Optional[int] = None) -> bool:
    """True when the oracle also finds the reported binding failing."""
    return binding_verdict(result.claim, Instance.of(result), result.params, budget) is Verdict.FAILS


def has_sequence(kind: str, n: int, element_lists: Iterable[Iterable[int]], i: Optional[int] = None) -> bool:
    """Existence of a union_closed, ideal or optimal sequence from A to F."""
    inst = Instance(n, element_lists)
    if kind == "union_closed":
        return inst.has_union_closed_sequence()
    if kind == "ideal":
        return inst.has_ideal_sequence(i)
    if kind == "optimal":
        return inst.has_optimal_sequence(i)
    raise ValueError(f"unknown sequence kind {kind!r}")
