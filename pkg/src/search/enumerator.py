"""
Exhaustive supply of union-closed families for small universes.

The pruned enumerator decides membership of every mask from 2^n - 1 down
to 1, trying "include" before "exclude". Including X is allowed only when
X | Y is X or an already included set for every included Y; since all
larger masks are decided first, each leaf is union-closed and every
union-closed family is reached exactly once. The order is therefore fixed:
A itself comes first.

Partitions fix the decisions for the k largest masks. Concatenating the
partitions in prefix order (include before exclude) reproduces the
sequential order, so partitions can run in parallel and be merged.
"""

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from src.config import ENUMERATION_CAP, LONG_RUN_CAP
from src.errors import UniverseTooLarge
from src.family.core import Family, check_universe, is_union_closed
from src.search.sampler import XorShift64Star

logger = logging.getLogger(__name__)

# nonempty, emptyset-free union-closed families of subsets of [n]
GOLDEN_COUNTS = {1: 1, 2: 6, 3: 60, 4: 2479, 5: 1385551}

Prefix = Tuple[bool, ...]


def check_enumerable(n: int, long_run: bool = False) -> int:
    n = check_universe(n)
    cap = LONG_RUN_CAP if long_run else ENUMERATION_CAP
    if n > cap:
        hint = "" if long_run or n > LONG_RUN_CAP else " (pass the long-run flag for n = 5)"
        raise UniverseTooLarge(f"exhaustive enumeration is limited to n <= {cap}{hint}")
    return n


def _can_include(mask: int, present: bytearray, included: List[int]) -> bool:
    for y in included:
        joined = mask | y
        if joined != mask and not present[joined]:
            return False
    return True


def _apply_prefix(n: int, prefix: Prefix) -> Optional[Tuple[bytearray, List[int]]]:
    present = bytearray(1 << n)
    included: List[int] = []
    mask = (1 << n) - 1
    for take in prefix:
        if take:
            if not _can_include(mask, present, included):
                return None
            present[mask] = 1
            included.append(mask)
        mask -= 1
    return present, included


def _walk(n: int, prefix: Prefix) -> Iterator[Tuple[int, ...]]:
    state = _apply_prefix(n, prefix)
    if state is None:
        return
    present, included = state
    start = (1 << n) - 1 - len(prefix)

    def descend(mask: int) -> Iterator[Tuple[int, ...]]:
        if mask == 0:
            if included:
                yield tuple(reversed(included))
            return
        if _can_include(mask, present, included):
            present[mask] = 1
            included.append(mask)
            yield from descend(mask - 1)
            included.pop()
            present[mask] = 0
        yield from descend(mask - 1)

    yield from descend(start)


def partition_prefixes(n: int, k: int) -> List[Prefix]:
    """All decision prefixes for the k largest masks, in enumeration order."""
    k = max(0, min(k, (1 << n) - 1))
    return list(itertools.product((True, False), repeat=k))


def enumerate_partition(n: int, prefix: Prefix) -> Iterator[Family]:
    """Union-closed families whose k largest masks are decided by prefix."""
    for members in _walk(n, prefix):
        yield Family(n, members)


def _partition_members(args: Tuple[int, Prefix]) -> List[Tuple[int, ...]]:
    n, prefix = args
    return list(_walk(n, prefix))


def enumerate_union_closed(n: int, jobs: int = 1, long_run: bool = False) -> Iterator[Family]:
    """
    Every nonempty union-closed subfamily of A, each exactly once.

    Args:
        n: Universe size (1..4, or 5 with long_run)
        jobs: Worker processes; the output order does not depend on it
        long_run: Unlock n = 5

    Returns:
        Iterator of Family in canonical order
    """
    n = check_enumerable(n, long_run)
    if jobs <= 1:
        for members in _walk(n, ()):
            yield Family(n, members)
        return

    k = min((1 << n) - 1, max(1, (4 * jobs - 1).bit_length()))
    tasks = [(n, prefix) for prefix in partition_prefixes(n, k)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for chunk in pool.map(_partition_members, tasks):
            for members in chunk:
                yield Family(n, members)


def count_union_closed(n: int, long_run: bool = False) -> int:
    """Number of nonempty union-closed subfamilies of A."""
    n = check_enumerable(n, long_run)
    return sum(1 for _ in _walk(n, ()))


def brute_force_union_closed(n: int) -> Iterator[Family]:
    """
    Oracle: filter all 2^(2^n - 1) subfamilies by is_union_closed.

    Yields families in increasing order of their membership code.
    """
    n = check_enumerable(n)
    for code in range(1, 1 << ((1 << n) - 1)):
        family = Family.from_code(n, code)
        if is_union_closed(family):
            yield family


def brute_force_count(n: int) -> int:
    return sum(1 for _ in brute_force_union_closed(n))


@dataclass
class OracleSample:
    n: int
    checked: int = 0
    closed_hits: int = 0
    mismatches: List[int] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return not self.mismatches


def oracle_sample_check(n: int, fraction: float = 0.01, seed: int = 1, long_run: bool = True) -> OracleSample:
    """
    Compare the enumerator with the oracle on a seeded sample of candidates.

    Each sampled candidate code must be union-closed exactly when the
    enumerator produced it.

    Args:
        n: Universe size
        fraction: Share of the 2^(2^n - 1) - 1 candidate codes to test
        seed: PRNG seed
        long_run: Allow n = 5

    Returns:
        OracleSample with every disagreeing code
    """
    n = check_enumerable(n, long_run)
    produced = {family.code() for family in enumerate_union_closed(n, long_run=long_run)}
    space = (1 << ((1 << n) - 1)) - 1
    rng = XorShift64Star(seed)
    result = OracleSample(n)
    for _ in range(max(1, int(space * fraction))):
        code = 1 + rng.below(space)
        closed = bool(is_union_closed(Family.from_code(n, code)))
        result.checked += 1
        result.closed_hits += closed
        if closed != (code in produced):
            result.mismatches.append(code)
    logger.info("oracle sample n=%d: %d candidates, %d mismatches", n, result.checked, len(result.mismatches))
    return result


class EnumerationCursor:
    """
    Resumable walk over the union-closed families of [n].

    The position is the number of families already yielded; a cursor
    built with that position continues exactly where another stopped.
    """

    def __init__(self, n: int, position: int = 0, long_run: bool = False):
        self.universe_size = check_enumerable(n, long_run)
        self.position = position
        self._stream = itertools.islice(_walk(self.universe_size, ()), position, None)

    def __iter__(self) -> "EnumerationCursor":
        return self

    def __next__(self) -> Family:
        members = next(self._stream)
        self.position += 1
        return Family(self.universe_size, members)

    def take(self, count: int) -> List[Family]:
        return list(itertools.islice(self, count))
