"""Seeded 64-bit PRNG pinned for cross-platform reproducibility.

The algorithm is splitmix64 (Steele, Lea, Flood 2014), chosen because it
is tiny, fast, and fully specified by three published constants, so
generated corpora are bit-identical on every platform and Python version.
It is statistically solid for corpus construction and emphatically not a
cryptographic generator.
"""

from __future__ import annotations

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4B528
_MIX2 = 0x94D049BB133111EB

ALGORITHM_ID = "splitmix64"


class SplitMix64:
    """Deterministic stream of 64-bit words from one integer seed."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def next_below(self, bound: int) -> int:
        """Uniform integer in [0, bound), bias-free via rejection."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (2**64 // bound) * bound
        while True:
            value = self.next_u64()
            if value < limit:
                return value % bound

    def next_float(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle driven by this stream."""
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]
