"""
Audit driver: run every requested claim over the enumerated union-closed
families (and an arbitrary-family supply for L1 and L3), aggregate per
claim, and fingerprint the ordered results.

Work is cut into fixed-size batches of families. Batches are evaluated in
worker processes when jobs > 1 and merged in submission order, and the
digest is built from per-batch digests, so neither the report nor the
digest depends on the worker count.
"""

import hashlib
import itertools
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from tqdm import tqdm

from src import __version__
from src.audit.claims import audit_claim, candidates_truncated
from src.audit.oracle import recheck_failure
from src.audit.results import ALL_CLAIMS, ARBITRARY_FAMILY_CLAIMS, ClaimId, ClaimResult, Verdict
from src.config import AuditSettings
from src.errors import AuditInconsistency
from src.family.core import Family, SetMask
from src.search.enumerator import GOLDEN_COUNTS, check_enumerable, enumerate_union_closed
from src.search.sampler import random_families

logger = logging.getLogger(__name__)

BATCH_SIZE = 64

# all nonempty families are audited for L1/L3 up to this universe size
EXHAUSTIVE_ARBITRARY_LIMIT = 3

WorkItem = Tuple[Tuple[SetMask, ...], Tuple[ClaimId, ...]]


@dataclass
class ClaimStats:
    """Aggregated outcome of one claim over every audited instance."""

    instances_checked: int = 0
    bindings_checked: int = 0
    preconditions_skipped: int = 0
    constructions_failed: int = 0
    candidates_truncated: int = 0
    failures: List[ClaimResult] = field(default_factory=list)

    @property
    def holds(self) -> int:
        return self.bindings_checked - self.preconditions_skipped - len(self.failures)

    def absorb(self, other: "ClaimStats") -> None:
        self.instances_checked += other.instances_checked
        self.bindings_checked += other.bindings_checked
        self.preconditions_skipped += other.preconditions_skipped
        self.constructions_failed += other.constructions_failed
        self.candidates_truncated += other.candidates_truncated
        self.failures.extend(other.failures)


@dataclass
class AuditReport:
    universe_size: int
    claims: Tuple[ClaimId, ...]
    stats: Dict[ClaimId, ClaimStats]
    digest: str
    candidate_budget: int
    version: str = __version__
    elapsed: float = 0.0

    @property
    def failures(self) -> List[ClaimResult]:
        return [f for claim in self.claims for f in self.stats[claim].failures]

    @property
    def all_hold(self) -> bool:
        return not self.failures


def arbitrary_families(n: int, settings: AuditSettings) -> Iterator[Family]:
    """
    Families audited for the claims stated without union-closedness.

    Every nonempty family of nonempty subsets for n <= 3; beyond that,
    settings.random_families seeded random families.
    """
    if n <= EXHAUSTIVE_ARBITRARY_LIMIT:
        for code in range(1, 1 << ((1 << n) - 1)):
            yield Family.from_code(n, code)
    else:
        yield from random_families(n, settings.random_families, settings.seed)


def _arbitrary_count(n: int, settings: AuditSettings) -> int:
    if n <= EXHAUSTIVE_ARBITRARY_LIMIT:
        return (1 << ((1 << n) - 1)) - 1
    return settings.random_families


def plan_work(n: int, claims: Sequence[ClaimId], settings: AuditSettings) -> Tuple[Iterator[WorkItem], int]:
    """
    Ordered stream of (family members, claims to run on it) and its length.

    At small n the claims stated for arbitrary families run on the
    arbitrary supply only, which already contains every union-closed family.
    """
    arbitrary = tuple(c for c in claims if c in ARBITRARY_FAMILY_CLAIMS)
    if n <= EXHAUSTIVE_ARBITRARY_LIMIT:
        closed = tuple(c for c in claims if c not in ARBITRARY_FAMILY_CLAIMS)
    else:
        closed = tuple(claims)

    total = 0
    streams: List[Iterable[WorkItem]] = []
    if closed:
        total += GOLDEN_COUNTS[n]
        streams.append((f.members, closed) for f in enumerate_union_closed(n, long_run=settings.long_run))
    if arbitrary:
        total += _arbitrary_count(n, settings)
        streams.append((f.members, arbitrary) for f in arbitrary_families(n, settings))
    return itertools.chain.from_iterable(streams), total


def _confirm(result: ClaimResult, budget: Optional[int]) -> None:
    if not recheck_failure(result, budget):
        raise AuditInconsistency(
            f"{result.claim.value} failure on {result.family} with {result.params} "
            "is not confirmed by independent recomputation"
        )
    logger.warning("%s fails on %s with %s", result.claim.value, result.family, result.params)


def _audit_batch(task: Tuple[int, List[WorkItem], Optional[int]]) -> Tuple[Dict[ClaimId, ClaimStats], str, int]:
    n, items, budget = task
    stats: Dict[ClaimId, ClaimStats] = {}
    hasher = hashlib.sha256()
    for members, claims in items:
        family = Family(n, members)
        for claim in claims:
            entry = stats.setdefault(claim, ClaimStats())
            entry.instances_checked += 1
            if claim in (ClaimId.T4A, ClaimId.T4B):
                entry.candidates_truncated += candidates_truncated(family, budget)
            for result in audit_claim(claim, family, budget):
                hasher.update(result.canonical().encode("utf-8") + b"\n")
                entry.bindings_checked += 1
                if result.verdict is Verdict.PRECONDITION_NOT_MET:
                    entry.preconditions_skipped += 1
                if "construction_failed" in result.witness:
                    entry.constructions_failed += 1
                if result.failed:
                    _confirm(result, budget)
                    entry.failures.append(result)
    return stats, hasher.hexdigest(), len(items)


def _batches(items: Iterator[WorkItem], n: int, budget: Optional[int]) -> Iterator[Tuple[int, List[WorkItem], Optional[int]]]:
    while True:
        chunk = list(itertools.islice(items, BATCH_SIZE))
        if not chunk:
            return
        yield n, chunk, budget


def audit_all(
    n: int,
    claims: Optional[Iterable[ClaimId]] = None,
    jobs: Optional[int] = None,
    settings: Optional[AuditSettings] = None,
) -> AuditReport:
    """
    Audit claims over every small instance.

    Args:
        n: Universe size (within the enumeration limits)
        claims: Claims to audit (all of them when None)
        jobs: Worker processes (settings.jobs when None)
        settings: Budget, long-run switch, random supply and progress knobs

    Returns:
        AuditReport whose content and digest are independent of jobs

    Raises:
        UniverseTooLarge: n beyond the enumeration limits
        AuditInconsistency: a failure the independent recomputation rejects
    """
    settings = settings or AuditSettings()
    jobs = settings.jobs if jobs is None else jobs
    n = check_enumerable(n, settings.long_run)
    requested = set(ALL_CLAIMS if claims is None else claims)
    ordered = tuple(c for c in ALL_CLAIMS if c in requested)
    budget = settings.candidate_budget

    start = time.perf_counter()
    items, total = plan_work(n, ordered, settings)
    logger.info("auditing %s on %d instances at n=%d with %d job(s)", [c.value for c in ordered], total, n, jobs)

    stats = {claim: ClaimStats() for claim in ordered}
    batch_digests = []
    progress = tqdm(total=total, desc=f"audit n={n}", unit="family", file=sys.stderr, disable=not settings.progress)

    def merge(outcome: Tuple[Dict[ClaimId, ClaimStats], str, int]) -> None:
        batch_stats, digest, families = outcome
        batch_digests.append(digest)
        for claim, entry in batch_stats.items():
            stats[claim].absorb(entry)
        progress.update(families)

    tasks = _batches(items, n, budget)
    try:
        if jobs <= 1:
            for task in tasks:
                merge(_audit_batch(task))
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                for outcome in pool.map(_audit_batch, tasks):
                    merge(outcome)
    finally:
        progress.close()

    digest = hashlib.sha256("\n".join(batch_digests).encode("ascii")).hexdigest()
    elapsed = time.perf_counter() - start
    failures = sum(len(s.failures) for s in stats.values())
    logger.info("audit n=%d finished in %.1fs with %d failure(s)", n, elapsed, failures)
    return AuditReport(n, ordered, stats, digest, budget, elapsed=elapsed)

