"""Executable inequality checks over seeded corpora.

Each check turns one claimed property of an information estimator into a
violation count: normalization (estimates stay inside the combinatorial
bounds), subadditivity under concatenation, invariance under reversal,
monotonicity over contiguous subpatterns, bounded deviation under whole-
pattern repetition, and the bound-ordering chain with its reduction
equalities for constant and uniform-count patterns.

Checks come in two classes. ASSERT properties are mathematically
guaranteed for the estimator and fail the suite when violated. OBSERVE
properties hold only empirically or asymptotically (everything involving
the compressor; frequency-adjusted subadditivity and monotonicity over
general corpora); their violation counts are reported but never affect
the exit status. A zero-violation report always means every generated
instance satisfied the inequality at the stated tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Mapping, Sequence

from .compression import (
    CalibrationCache,
    Compressor,
    calibrate,
    compression_info,
    default_compressor,
    default_mode,
    oracle_normalized_info,
)
from .core import Pattern, frequency_table
from .estimators import (
    EXACT_TOL,
    bounds,
    clamp_bits,
    max_info,
    min_info,
    modified_shannon_info,
    shannon_classic_info,
)
from .generators import default_symbols
from .rng import SplitMix64

Estimator = Callable[[Pattern], float]

DEFAULT_SUITE_SEED = 1
DEFAULT_TRIALS = 1000

# Wide-bound tolerances, in bits, for empirical compressor behavior.
REVERSAL_BITS_BOUND = 64.0
REPEAT_BITS_BOUND = 128.0


class PropertyId(Enum):
    NORMALIZATION = "normalization"
    SUBADDITIVITY = "subadditivity"
    REVERSIBILITY = "reversibility"
    MONOTONICITY = "monotonicity"
    REDUNDANCY = "redundancy"
    ORDERING_CHAIN = "chain"


class CheckClass(Enum):
    ASSERT = "assert"
    OBSERVE = "observe"


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of one property check over one corpus."""

    property_id: PropertyId
    estimator_id: str
    trials: int
    violations: int
    worst_violation_bits: float
    tolerance_bits: float
    seed: int
    check_class: CheckClass = CheckClass.ASSERT

    def __post_init__(self) -> None:
        if self.violations > self.trials:
            raise ValueError("violations cannot exceed trials")
        if self.worst_violation_bits < 0.0:
            raise ValueError("violation magnitude must be >= 0")

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_json_dict(self) -> dict:
        return {
            "property_id": self.property_id.value,
            "estimator_id": self.estimator_id,
            "trials": self.trials,
            "violations": self.violations,
            "worst_violation_bits": self.worst_violation_bits,
            "tolerance_bits": self.tolerance_bits,
            "seed": self.seed,
            "check_class": self.check_class.value,
        }


def _tally(magnitudes: Sequence[float], tolerance: float) -> tuple[int, int, float]:
    trials = len(magnitudes)
    violations = [m for m in magnitudes if m > tolerance]
    worst = max(violations) if violations else 0.0
    return trials, len(violations), worst


def check_normalization(
    estimator: Estimator,
    corpus: Sequence[Pattern],
    tolerance: float = EXACT_TOL,
    estimator_id: str = "estimator",
    seed: int = 0,
    check_class: CheckClass = CheckClass.ASSERT,
) -> PropertyReport:
    """Count estimates escaping [min_info, max_info] by more than tolerance."""
    magnitudes = []
    for p in corpus:
        low, high = bounds(p)
        value = estimator(p)
        magnitudes.append(max(low - value, value - high, 0.0))
    trials, violations, worst = _tally(magnitudes, tolerance)
    return PropertyReport(
        PropertyId.NORMALIZATION, estimator_id, trials, violations, worst, tolerance, seed, check_class
    )


def check_subadditivity(
    estimator: Estimator,
    pairs: Sequence[tuple[Pattern, Pattern]],
    tolerance: float = EXACT_TOL,
    estimator_id: str = "estimator",
    seed: int = 0,
    check_class: CheckClass = CheckClass.ASSERT,
) -> PropertyReport:
    """Count pairs where E(pq) exceeds E(p) + E(q) + tolerance."""
    magnitudes = [estimator(p + q) - estimator(p) - estimator(q) for p, q in pairs]
    magnitudes = [max(m, 0.0) for m in magnitudes]
    trials, violations, worst = _tally(magnitudes, tolerance)
    return PropertyReport(
        PropertyId.SUBADDITIVITY, estimator_id, trials, violations, worst, tolerance, seed, check_class
    )


def check_reversibility(
    estimator: Estimator,
    corpus: Sequence[Pattern],
    bound: float = EXACT_TOL,
    estimator_id: str = "estimator",
    seed: int = 0,
    check_class: CheckClass = CheckClass.ASSERT,
) -> PropertyReport:
    """Count patterns where |E(p) - E(reversed p)| exceeds the bound."""
    magnitudes = [abs(estimator(p) - estimator(p.reversed_())) for p in corpus]
    trials, violations, worst = _tally(magnitudes, bound)
    return PropertyReport(
        PropertyId.REVERSIBILITY, estimator_id, trials, violations, worst, bound, seed, check_class
    )


def check_monotonicity(
    estimator: Estimator,
    pairs: Sequence[tuple[Pattern, Pattern]],
    tolerance: float = EXACT_TOL,
    estimator_id: str = "estimator",
    seed: int = 0,
    check_class: CheckClass = CheckClass.ASSERT,
) -> PropertyReport:
    """Count (subpattern, superpattern) pairs where E(sub) > E(super) + tolerance."""
    magnitudes = [max(estimator(sub) - estimator(sup), 0.0) for sub, sup in pairs]
    trials, violations, worst = _tally(magnitudes, tolerance)
    return PropertyReport(
        PropertyId.MONOTONICITY, estimator_id, trials, violations, worst, tolerance, seed, check_class
    )


def check_redundancy(
    estimator: Estimator,
    cases: Sequence[tuple[Pattern, int]],
    bound: float = 1.0,
    estimator_id: str = "estimator",
    seed: int = 0,
    check_class: CheckClass = CheckClass.ASSERT,
) -> PropertyReport:
    """Count (base, r) cases where |E(base^r) - (E(base) + log2 r)| exceeds the bound."""
    magnitudes = [
        abs(estimator(base.repeated(r)) - (estimator(base) + math.log2(r))) for base, r in cases
    ]
    trials, violations, worst = _tally(magnitudes, bound)
    return PropertyReport(
        PropertyId.REDUNDANCY, estimator_id, trials, violations, worst, bound, seed, check_class
    )


def check_ordering_chain(
    corpus: Sequence[Pattern],
    tolerance: float = EXACT_TOL,
    extra_estimates: Mapping[str, Estimator] | None = None,
    seed: int = 0,
    check_class: CheckClass = CheckClass.ASSERT,
) -> PropertyReport:
    """Verify the bound ordering and its reduction equalities on each pattern.

    For every pattern: min_info <= modified_shannon <= max_info; constant
    patterns collapse the frequency-adjusted value onto min_info and
    uniform-count patterns onto max_info. Any extra estimates supplied
    (already clamped) must also land inside [min_info, max_info].
    """
    extras = dict(extra_estimates or {})
    magnitudes = []
    for p in corpus:
        low, high = bounds(p)
        value = modified_shannon_info(p)
        worst = max(low - value, value - high, 0.0)
        if len(p) > 0:
            table = frequency_table(p)
            if table.is_constant():
                worst = max(worst, abs(value - low))
            elif table.is_uniform():
                # equal counts collapse onto the bound for the occurring symbols
                worst = max(worst, abs(value - max_info(len(p), table.distinct)))
        for estimate in extras.values():
            e = estimate(p)
            worst = max(worst, low - e, e - high)
        magnitudes.append(worst)
    trials, violations, worst = _tally(magnitudes, tolerance)
    estimator_id = ",".join(["min", "mshannon", "max", *extras.keys()])
    return PropertyReport(
        PropertyId.ORDERING_CHAIN, estimator_id, trials, violations, worst, tolerance, seed, check_class
    )


# ---------------------------------------------------------------------------
# Seeded corpora


def pattern_corpus(
    trials: int,
    seed: int,
    max_n: int = 512,
    alphabet_sizes: Sequence[int] = (1, 2, 4, 26, 256),
) -> list[Pattern]:
    """Mixed corpus of constant, uniform-count, skewed, and uniform random patterns."""
    rng = SplitMix64(seed)
    out: list[Pattern] = []
    for _ in range(trials):
        k = alphabet_sizes[rng.next_below(len(alphabet_sizes))]
        n = rng.next_below(max_n + 1)
        syms = default_symbols(k)
        style = rng.next_below(10)
        if k == 1 or style < 2:
            sym = syms[rng.next_below(k)]
            out.append(Pattern.of((sym,) * n, alphabet=syms))
        elif style < 4 and k <= n:
            items = [s for s in syms for _ in range(n // k)]
            rng.shuffle(items)
            out.append(Pattern.of(items, alphabet=syms))
        elif style < 5:
            body = tuple(syms[min(rng.next_below(k), rng.next_below(k))] for _ in range(n))
            out.append(Pattern.of(body, alphabet=syms))
        else:
            body = tuple(syms[rng.next_below(k)] for _ in range(n))
            out.append(Pattern.of(body, alphabet=syms))
    return out


def pattern_pairs(
    trials: int,
    seed: int,
    max_n: int = 256,
    alphabet_sizes: Sequence[int] = (1, 2, 4, 26, 256),
) -> list[tuple[Pattern, Pattern]]:
    """Seeded pairs sharing a declared alphabet, for concatenation checks."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(trials):
        k = alphabet_sizes[rng.next_below(len(alphabet_sizes))]
        syms = default_symbols(k)

        def body(n: int) -> Pattern:
            if k == 1 or rng.next_below(5) == 0:
                return Pattern.of((syms[rng.next_below(k)],) * n, alphabet=syms)
            return Pattern.of(tuple(syms[rng.next_below(k)] for _ in range(n)), alphabet=syms)

        out.append((body(rng.next_below(max_n + 1)), body(rng.next_below(max_n + 1))))
    return out


def concat_fixture_pairs() -> list[tuple[Pattern, Pattern]]:
    """The five constant-pattern length pairs pinned as subadditivity fixtures."""
    sizes = [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]
    alphabet = ("a",)
    return [
        (Pattern.of("a" * n1, alphabet=alphabet), Pattern.of("a" * n2, alphabet=alphabet))
        for n1, n2 in sizes
    ]


def subpattern_pairs(
    trials: int,
    seed: int,
    max_n: int = 512,
    alphabet_sizes: Sequence[int] = (1, 2, 4, 26, 256),
) -> list[tuple[Pattern, Pattern]]:
    """(contiguous slice, whole pattern) pairs: prefixes, suffixes, middles."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(trials):
        k = alphabet_sizes[rng.next_below(len(alphabet_sizes))]
        syms = default_symbols(k)
        n = 1 + rng.next_below(max_n)
        whole = Pattern.of(tuple(syms[rng.next_below(k)] for _ in range(n)), alphabet=syms)
        shape = rng.next_below(3)
        if shape == 0:
            sub = whole.slice(0, rng.next_below(n + 1))
        elif shape == 1:
            sub = whole.slice(rng.next_below(n + 1), n)
        else:
            start = rng.next_below(n)
            stop = start + 1 + rng.next_below(n - start)
            sub = whole.slice(start, stop)
        out.append((sub, whole))
    return out


def redundancy_cases(
    trials: int,
    seed: int,
    max_base: int = 64,
    max_repeats: int = 64,
    alphabet_sizes: Sequence[int] = (1, 2, 4, 26),
) -> list[tuple[Pattern, int]]:
    """(base pattern, repeat count) cases for the repetition deviation check."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(trials):
        k = alphabet_sizes[rng.next_below(len(alphabet_sizes))]
        syms = default_symbols(k)
        n = 1 + rng.next_below(max_base)
        base = Pattern.of(tuple(syms[rng.next_below(k)] for _ in range(n)), alphabet=syms)
        out.append((base, 1 + rng.next_below(max_repeats)))
    return out


# ---------------------------------------------------------------------------
# Suite orchestration


@dataclass(frozen=True)
class CheckPolicy:
    tolerance_bits: float
    check_class: CheckClass


_A = CheckClass.ASSERT
_O = CheckClass.OBSERVE

# (estimator id, property) -> policy. ASSERT entries are mathematically
# guaranteed; see the module docstring for the OBSERVE rationale. The
# repetition bound for the length-driven upper-bound estimator grows with
# n and r, so no constant bound can be asserted there.
CHECK_POLICY: dict[tuple[str, PropertyId], CheckPolicy] = {
    ("min", PropertyId.NORMALIZATION): CheckPolicy(EXACT_TOL, _A),
    ("min", PropertyId.SUBADDITIVITY): CheckPolicy(EXACT_TOL, _A),
    ("min", PropertyId.REVERSIBILITY): CheckPolicy(EXACT_TOL, _A),
    ("min", PropertyId.MONOTONICITY): CheckPolicy(EXACT_TOL, _A),
    ("min", PropertyId.REDUNDANCY): CheckPolicy(1.0, _A),
    ("max", PropertyId.NORMALIZATION): CheckPolicy(EXACT_TOL, _A),
    ("max", PropertyId.SUBADDITIVITY): CheckPolicy(EXACT_TOL, _A),
    ("max", PropertyId.REVERSIBILITY): CheckPolicy(EXACT_TOL, _A),
    ("max", PropertyId.MONOTONICITY): CheckPolicy(EXACT_TOL, _A),
    ("max", PropertyId.REDUNDANCY): CheckPolicy(REPEAT_BITS_BOUND, _O),
    ("mshannon", PropertyId.NORMALIZATION): CheckPolicy(EXACT_TOL, _A),
    ("mshannon", PropertyId.REVERSIBILITY): CheckPolicy(EXACT_TOL, _A),
    ("mshannon", PropertyId.SUBADDITIVITY): CheckPolicy(EXACT_TOL, _O),
    ("mshannon", PropertyId.MONOTONICITY): CheckPolicy(EXACT_TOL, _O),
    ("mshannon", PropertyId.REDUNDANCY): CheckPolicy(1.0, _O),
    ("shannon", PropertyId.REVERSIBILITY): CheckPolicy(EXACT_TOL, _A),
    ("shannon", PropertyId.NORMALIZATION): CheckPolicy(EXACT_TOL, _O),
    ("shannon", PropertyId.SUBADDITIVITY): CheckPolicy(EXACT_TOL, _O),
    ("shannon", PropertyId.MONOTONICITY): CheckPolicy(EXACT_TOL, _O),
    ("shannon", PropertyId.REDUNDANCY): CheckPolicy(1.0, _O),
    ("gzip", PropertyId.NORMALIZATION): CheckPolicy(EXACT_TOL, _O),
    ("gzip", PropertyId.SUBADDITIVITY): CheckPolicy(EXACT_TOL, _O),
    ("gzip", PropertyId.REVERSIBILITY): CheckPolicy(REVERSAL_BITS_BOUND, _O),
    ("gzip", PropertyId.MONOTONICITY): CheckPolicy(EXACT_TOL, _O),
    ("gzip", PropertyId.REDUNDANCY): CheckPolicy(REPEAT_BITS_BOUND, _O),
    ("knorm", PropertyId.NORMALIZATION): CheckPolicy(EXACT_TOL, _O),
    ("knorm", PropertyId.SUBADDITIVITY): CheckPolicy(EXACT_TOL, _O),
    ("knorm", PropertyId.REVERSIBILITY): CheckPolicy(REVERSAL_BITS_BOUND, _O),
    ("knorm", PropertyId.MONOTONICITY): CheckPolicy(EXACT_TOL, _O),
    ("knorm", PropertyId.REDUNDANCY): CheckPolicy(REPEAT_BITS_BOUND, _O),
}

CHAIN_POLICY = CheckPolicy(EXACT_TOL, _A)

CHECKABLE_ESTIMATORS = ("min", "max", "shannon", "mshannon", "gzip", "knorm")
DEFAULT_CHECK_ESTIMATORS = ("min", "max", "shannon", "mshannon")


def estimator_callable(
    estimator_id: str,
    compressor: Compressor | None = None,
    cache: CalibrationCache | None = None,
    calibration_seed: int = 1,
) -> Estimator:
    """The checkable (clamped, contract-level) form of one estimator."""
    if estimator_id == "min":
        return min_info
    if estimator_id == "max":
        return lambda p: max_info(len(p), p.alphabet.k) if len(p) else 0.0
    if estimator_id == "shannon":
        return shannon_classic_info
    if estimator_id == "mshannon":
        return modified_shannon_info
    comp = compressor or default_compressor()
    store = cache if cache is not None else CalibrationCache()
    if estimator_id == "gzip":

        def gzip_estimate(p: Pattern) -> float:
            cal = calibrate(len(p), p.alphabet.k, comp, default_mode(p), seed=calibration_seed, cache=store)
            return compression_info(p, cal, comp)

        return gzip_estimate
    if estimator_id == "knorm":

        def knorm_estimate(p: Pattern) -> float:
            value = oracle_normalized_info(p, compressor=comp)
            return clamp_bits(value, *bounds(p))

        return knorm_estimate
    raise ValueError(f"unknown estimator id: {estimator_id!r}")


def _needs_nonempty(estimator_id: str) -> bool:
    return estimator_id == "shannon"


@dataclass(frozen=True)
class SuiteConfig:
    estimator_ids: tuple[str, ...] = DEFAULT_CHECK_ESTIMATORS
    property_ids: tuple[PropertyId, ...] = tuple(PropertyId)
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SUITE_SEED


def run_suite(
    config: SuiteConfig,
    compressor: Compressor | None = None,
    cache: CalibrationCache | None = None,
) -> list[PropertyReport]:
    """Run every configured (estimator, property) check over seeded corpora."""
    corpus = pattern_corpus(config.trials, config.seed)
    pairs = concat_fixture_pairs() + pattern_pairs(config.trials, config.seed + 1)
    slices = subpattern_pairs(config.trials, config.seed + 2)
    repeats = redundancy_cases(config.trials, config.seed + 3)

    reports: list[PropertyReport] = []
    for est_id in config.estimator_ids:
        estimator = estimator_callable(est_id, compressor, cache)
        nonempty = _needs_nonempty(est_id)
        for prop in config.property_ids:
            policy = CHECK_POLICY.get((est_id, prop))
            if policy is None:
                continue
            tol, cls = policy.tolerance_bits, policy.check_class
            if prop is PropertyId.NORMALIZATION:
                pats = [p for p in corpus if len(p) > 0] if nonempty else corpus
                reports.append(check_normalization(estimator, pats, tol, est_id, config.seed, cls))
            elif prop is PropertyId.SUBADDITIVITY:
                cases = [(p, q) for p, q in pairs if not nonempty or (len(p) and len(q))]
                reports.append(check_subadditivity(estimator, cases, tol, est_id, config.seed, cls))
            elif prop is PropertyId.REVERSIBILITY:
                pats = [p for p in corpus if len(p) > 0] if nonempty else corpus
                reports.append(check_reversibility(estimator, pats, tol, est_id, config.seed, cls))
            elif prop is PropertyId.MONOTONICITY:
                cases = [(s, w) for s, w in slices if not nonempty or len(s)]
                reports.append(check_monotonicity(estimator, cases, tol, est_id, config.seed, cls))
            elif prop is PropertyId.REDUNDANCY:
                reports.append(check_redundancy(estimator, repeats, tol, est_id, config.seed, cls))
    if PropertyId.ORDERING_CHAIN in config.property_ids:
        extras = {
            est_id: estimator_callable(est_id, compressor, cache)
            for est_id in config.estimator_ids
            if est_id in ("gzip", "knorm")
        }
        reports.append(
            check_ordering_chain(
                corpus,
                CHAIN_POLICY.tolerance_bits,
                extras,
                config.seed,
                CHAIN_POLICY.check_class,
            )
        )
    return reports


def assert_failures(reports: Sequence[PropertyReport]) -> list[PropertyReport]:
    """The ASSERT-class reports that recorded at least one violation."""
    return [r for r in reports if r.check_class is CheckClass.ASSERT and r.violations > 0]
