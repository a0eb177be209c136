"""SplitMix64, a portable 64-bit generator with a documented output sequence.

The simulator threads state explicitly through these functions so that its
output depends only on the seed, never on Python's `random` module. The
algorithm is Steele, Lea and Flood's SplitMix64 (as used to seed xoshiro):

    state += 0x9E3779B97F4A7C15
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    return z ^ (z >> 31)

all modulo 2**64. From seed 0 the first three outputs are
0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15
MIX1 = 0xBF58476D1CE4E5B9
MIX2 = 0x94D049BB133111EB


def next_u64(state: int) -> tuple[int, int]:
    """Return ``(output, new_state)``."""
    state = (state + GOLDEN_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * MIX1) & MASK64
    z = ((z ^ (z >> 27)) * MIX2) & MASK64
    return z ^ (z >> 31), state


def next_unit(state: int) -> tuple[float, int]:
    """Uniform float in [0, 1) built from the top 53 bits."""
    x, state = next_u64(state)
    return (x >> 11) * 2.0**-53, state


def next_below(state: int, n: int) -> tuple[int, int]:
    """Uniform integer in [0, n) by rejection, free of modulo bias."""
    if n <= 0:
        raise ValueError("n must be positive")
    limit = (1 << 64) - ((1 << 64) % n)
    while True:
        x, state = next_u64(state)
        if x < limit:
            return x % n, state


def next_normal(state: int, mean: float = 0.0, sd: float = 1.0) -> tuple[float, int]:
    """One Box-Muller draw (cosine branch); consumes exactly two outputs."""
    u1, state = next_unit(state)
    u2, state = next_unit(state)
    z = math.sqrt(-2.0 * math.log(1.0 - u1)) * math.cos(2.0 * math.pi * u2)
    return mean + sd * z, state


class SplitMix64:
    """Mutable convenience wrapper over the pure functions above."""

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")
        self.state = seed

    def u64(self) -> int:
        x, self.state = next_u64(self.state)
        return x

    def below(self, n: int) -> int:
        x, self.state = next_below(self.state, n)
        return x

    def normal(self, mean: float = 0.0, sd: float = 1.0) -> float:
        x, self.state = next_normal(self.state, mean, sd)
        return x
