"""Closed-form information measures over symbol patterns.

All measures are in bits. For a pattern of length n over an alphabet of
size k the two combinatorial anchors are

    min_info  = log2(n + 1)                 (constant patterns)
    max_info  = log2(sum_{i=0}^{n} k**i)    (uniform-frequency patterns)

and the frequency-adjusted measure interpolates between them by replacing
k with c = 2**h, where h is the entropy in bits of the pattern's relative
frequencies. Geometric sums are evaluated exactly over Python integers
while the result fits comfortably in a double's exponent budget, and in
the log domain past that, so every function here is total for any n.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Callable, Sequence

from .core import (
    DegenerateAlphabetError,
    EmptyPatternError,
    FrequencyTable,
    Pattern,
    frequency_table,
)

_LN2 = math.log(2.0)

# Largest log2 of a geometric sum evaluated via exact big-int arithmetic.
# Above it the log-domain closed form is exact to double precision anyway.
EXACT_SUM_LOG2_LIMIT = 512.0

# Absolute tolerance for "exact" floating-point comparisons downstream.
EXACT_TOL = 1e-9


class EstimatorKind(Enum):
    """Stable identifiers for the measures exposed by this package."""

    MIN = "min"
    MAX = "max"
    SHANNON_CLASSIC = "shannon"
    MODIFIED_SHANNON = "mshannon"
    COMPRESSION = "gzip"
    ORACLE_NORMALIZED = "knorm"
    ENSEMBLE_MIN = "ensemble"


def _log_expm1(x: float) -> float:
    # log(e**x - 1) for x > 0 without overflow or cancellation
    if x > _LN2:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def log2_geometric_series(log2_base: float, n: int) -> float:
    """log2 of sum_{i=0}^{n} base**i for base > 1, stable for any n.

    The closed form (base**(n+1) - 1) / (base - 1) is evaluated entirely in
    the log domain, so neither factor is ever materialized.
    """
    if log2_base <= 0.0:
        raise ValueError("log2_base must be positive")
    if n == 0:
        return 0.0
    lc = log2_base * _LN2
    return (_log_expm1((n + 1) * lc) - _log_expm1(lc)) / _LN2


def min_info(p: Pattern) -> float:
    """Lower bound log2(n + 1): the bits needed to pin down a constant pattern."""
    return math.log2(len(p) + 1)


def max_info(n: int, k: int) -> float:
    """Upper bound log2(sum_{i=0}^{n} k**i) for length n over k symbols."""
    if n < 0:
        raise ValueError("pattern length must be >= 0")
    if n == 0:
        return 0.0
    if k <= 0:
        raise DegenerateAlphabetError("alphabet size must be >= 1 for a non-empty pattern")
    if k == 1:
        return math.log2(n + 1)
    if (n + 1) * math.log2(k) <= EXACT_SUM_LOG2_LIMIT:
        return math.log2((k ** (n + 1) - 1) // (k - 1))
    return log2_geometric_series(math.log2(k), n)


def frequency_entropy(table: FrequencyTable) -> float:
    """Entropy h in bits of the relative frequencies; 0 for the empty table."""
    if table.n == 0:
        return 0.0
    return -math.fsum(r * math.log2(r) for r in table.relative.values()) + 0.0


def modified_shannon_info(p: Pattern) -> float:
    """Frequency-adjusted combinatorial measure log2(sum_{i=0}^{n} c**i).

    c = 2**h with h the entropy of the pattern's relative frequencies.
    Reduces to min_info for constant patterns (c = 1) and to max_info
    when every occurring symbol is equally frequent (c = k).
    """
    n = len(p)
    if n == 0:
        return 0.0
    h = frequency_entropy(frequency_table(p))
    if h == 0.0:
        return math.log2(n + 1)
    if (n + 1) * h <= EXACT_SUM_LOG2_LIMIT:
        return math.log2(math.fsum(2.0 ** (h * i) for i in range(n + 1)))
    return log2_geometric_series(h, n)


def shannon_classic_info(p: Pattern) -> float:
    """Plain Shannon information n * h; undefined for the empty pattern."""
    n = len(p)
    if n == 0:
        raise EmptyPatternError("classic Shannon information needs at least one symbol")
    return n * frequency_entropy(frequency_table(p))


def ensemble_min_info(p: Pattern, methods: Sequence[Callable[[Pattern], float]]) -> float:
    """Minimum over several measurement methods; ties keep the earliest value."""
    if not methods:
        raise ValueError("at least one measurement method is required")
    return min(method(p) for method in methods)


def combinatorial_entropy(p: Pattern, info: Callable[[Pattern], float]) -> float:
    """Average per-element information info(p) / (n + 1); 0 for empty patterns."""
    n = len(p)
    if n == 0:
        return 0.0
    return info(p) / (n + 1)


def bounds(p: Pattern, k: int | None = None) -> tuple[float, float]:
    """(min_info, max_info) for p, with k defaulting to the declared alphabet size."""
    size = p.alphabet.k if k is None else k
    if len(p) == 0:
        return 0.0, 0.0
    return min_info(p), max_info(len(p), size)


def clamp_bits(value: float, low: float, high: float) -> float:
    """Clamp an estimate into [low, high]."""
    return min(max(value, low), high)
