"""
Seeded random families.

The generator is xorshift64* (shifts 12, 25, 27; multiplier
0x2545F4914F6CDD1D) with its state seeded through one splitmix64 step.
Everything is plain 64-bit unsigned arithmetic, so a seed reproduces the
same stream on every platform and in any language.
"""

from typing import Iterator, List

from src.errors import EmptyFamily
from src.family.core import Family, SetMask, check_universe, closure_of_masks

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def splitmix64(value: int) -> int:
    z = (value + GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class XorShift64Star:
    """Portable 64-bit PRNG used for every random draw in the package."""

    MULTIPLIER = 0x2545F4914F6CDD1D

    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK64) or GOLDEN_GAMMA

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & MASK64

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection on the top bits."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        bits = (bound - 1).bit_length()
        if bits == 0:
            return 0
        while True:
            value = self.next_u64() >> (64 - bits)
            if value < bound:
                return value

    def nonempty_subset(self, n: int) -> SetMask:
        """Uniform nonempty subset of [n]."""
        return 1 + self.below((1 << n) - 1)


def draw_subsets(n: int, count: int, seed: int) -> List[SetMask]:
    rng = XorShift64Star(seed)
    return [rng.nonempty_subset(n) for _ in range(count)]


def sample_union_closed(n: int, generator_count: int, seed: int) -> Family:
    """
    Union closure of uniformly drawn generators.

    The distribution over union-closed families is not uniform.

    Args:
        n: Universe size (1..16)
        generator_count: Number of random nonempty subsets to draw
        seed: PRNG seed

    Returns:
        A union-closed Family, identical for identical arguments
    """
    n = check_universe(n)
    if generator_count < 1:
        raise EmptyFamily("at least one generator is needed")
    return closure_of_masks(n, draw_subsets(n, generator_count, seed))


def sample_family(n: int, count: int, seed: int) -> Family:
    """Arbitrary (not closed) family of up to count distinct random sets."""
    n = check_universe(n)
    if count < 1:
        raise EmptyFamily("at least one set is needed")
    return Family.from_masks(n, draw_subsets(n, count, seed))


def random_families(n: int, how_many: int, seed: int, max_sets: int = 24) -> Iterator[Family]:
    """
    Stream of arbitrary random families, each with 1..max_sets draws.

    Family k uses the seed derived from (seed, k), so any prefix of the
    stream is reproducible on its own.
    """
    n = check_universe(n)
    sizes = XorShift64Star(seed)
    for k in range(how_many):
        count = 1 + sizes.below(max_sets)
        yield sample_family(n, count, splitmix64(seed ^ (k * GOLDEN_GAMMA & MASK64)))
