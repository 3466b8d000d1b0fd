"""Deterministic, seeded construction of test corpora and pattern families.

Every kind is reproducible bit-for-bit from its spec: randomness comes
only from the pinned splitmix64 stream, and each kind documents how many
stream values it consumes per emitted symbol, so generated corpora are
stable across platforms and releases.

Stream consumption per kind:
  UNIFORM_RANDOM    one bounded draw per symbol
  REDUNDANT_RANDOM  one bounded draw for the first symbol, then one float
                    per position plus one bounded draw when not copying
  MARKOV            one bounded draw for the initial state, then one float
                    per transition
Other kinds consume no stream values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .core import Pattern, PatinfoError, Symbol
from .rng import ALGORITHM_ID, SplitMix64

__all__ = [
    "GeneratorError",
    "GeneratorKind",
    "GeneratorSpec",
    "default_symbols",
    "generate",
    "PRNG_ALGORITHM",
]

PRNG_ALGORITHM = ALGORITHM_ID

# Readable one-character symbols for alphabets up to 62; integers beyond.
_SYMBOL_TABLE = "0123456789abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"

DEFAULT_COPY_PROBABILITY = 0.3
DEFAULT_RING_STEP = 3
DEFAULT_RING_THICKNESS = 1


class GeneratorError(PatinfoError):
    """A generator spec was incomplete or inconsistent."""


class GeneratorKind(Enum):
    CONSTANT = "constant"
    UNIFORM_RANDOM = "random"
    REDUNDANT_RANDOM = "redundant-random"
    MARKOV = "markov"
    FIBONACCI_DIGITS = "fib"
    STRUCTURED_CIRCLES = "circles"
    REDUNDANT_REPEAT = "repeat"
    ENGLISH_TEXT_FILE = "text-file"


@dataclass(frozen=True)
class GeneratorSpec:
    """Complete description of one deterministic pattern construction."""

    kind: GeneratorKind
    length: int | None = None
    alphabet_size: int | None = None
    seed: int = 0
    symbol: Symbol = "a"
    symbols: tuple[Symbol, ...] | None = None
    transition: tuple[tuple[float, ...], ...] | None = None
    base: tuple[Symbol, ...] | str | None = None
    repeats: int = 1
    width: int = 40
    height: int = 25
    ring_step: int = DEFAULT_RING_STEP
    ring_thickness: int = DEFAULT_RING_THICKNESS
    copy_probability: float = DEFAULT_COPY_PROBABILITY
    path: str | None = None


def default_symbols(k: int) -> tuple[Symbol, ...]:
    """Canonical alphabet of size k: digits/letters up to 62, integers after."""
    if k < 0:
        raise GeneratorError("alphabet size must be >= 0")
    if k <= len(_SYMBOL_TABLE):
        return tuple(_SYMBOL_TABLE[:k])
    return tuple(range(k))


def _require_length(spec: GeneratorSpec) -> int:
    if spec.length is None or spec.length < 0:
        raise GeneratorError(f"kind {spec.kind.value} needs a length >= 0")
    return spec.length


def _spec_symbols(spec: GeneratorSpec) -> tuple[Symbol, ...]:
    if spec.symbols is not None:
        if not spec.symbols:
            raise GeneratorError("explicit symbol set must be non-empty")
        return tuple(spec.symbols)
    k = spec.alphabet_size
    if k is None or k < 1:
        raise GeneratorError(f"kind {spec.kind.value} needs alphabet_size >= 1 or explicit symbols")
    return default_symbols(k)


def _gen_constant(spec: GeneratorSpec) -> Pattern:
    n = _require_length(spec)
    return Pattern.of((spec.symbol,) * n, alphabet=(spec.symbol,))


def _gen_uniform_random(spec: GeneratorSpec) -> Pattern:
    n = _require_length(spec)
    syms = _spec_symbols(spec)
    rng = SplitMix64(spec.seed)
    k = len(syms)
    out = tuple(syms[rng.next_below(k)] for _ in range(n))
    return Pattern.of(out, alphabet=syms)


def _gen_redundant_random(spec: GeneratorSpec) -> Pattern:
    n = _require_length(spec)
    if spec.symbols is None and spec.alphabet_size is None:
        syms = default_symbols(2)
    else:
        syms = _spec_symbols(spec)
    if not 0.0 <= spec.copy_probability < 1.0:
        raise GeneratorError("copy probability must lie in [0, 1)")
    rng = SplitMix64(spec.seed)
    k = len(syms)
    out: list[Symbol] = []
    for i in range(n):
        if i > 0 and rng.next_float() < spec.copy_probability:
            out.append(out[-1])
        else:
            out.append(syms[rng.next_below(k)])
    return Pattern.of(out, alphabet=syms)


def _gen_markov(spec: GeneratorSpec) -> Pattern:
    n = _require_length(spec)
    if spec.transition is None:
        raise GeneratorError("markov generation needs a transition matrix")
    rows = spec.transition
    k = len(rows)
    if k == 0 or any(len(row) != k for row in rows):
        raise GeneratorError("transition matrix must be square and non-empty")
    for row in rows:
        if any(x < 0.0 for x in row):
            raise GeneratorError("transition probabilities must be non-negative")
        if abs(math.fsum(row) - 1.0) > 1e-9:
            raise GeneratorError("each transition row must sum to 1 within 1e-9")
    syms = spec.symbols or default_symbols(k)
    if len(syms) != k:
        raise GeneratorError("symbol count must match the transition matrix size")
    rng = SplitMix64(spec.seed)
    out: list[Symbol] = []
    if n > 0:
        state = rng.next_below(k)
        out.append(syms[state])
        for _ in range(n - 1):
            u = rng.next_float()
            acc = 0.0
            nxt = k - 1
            for j, prob in enumerate(rows[state]):
                acc += prob
                if u < acc:
                    nxt = j
                    break
            state = nxt
            out.append(syms[state])
    return Pattern.of(out, alphabet=syms)


def _gen_fibonacci_digits(spec: GeneratorSpec) -> Pattern:
    n = _require_length(spec)
    digits: list[str] = []
    a, b = 0, 1
    while len(digits) < n:
        digits.extend(str(a))
        a, b = b, a + b
    return Pattern.of(digits[:n], alphabet=tuple("0123456789"))


def _gen_structured_circles(spec: GeneratorSpec) -> Pattern:
    w, h = spec.width, spec.height
    if w < 1 or h < 1:
        raise GeneratorError("raster needs width >= 1 and height >= 1")
    if spec.length is not None and spec.length != w * h:
        raise GeneratorError(f"length {spec.length} contradicts the {w}x{h} raster")
    step, thick = spec.ring_step, spec.ring_thickness
    if step < 1 or not 1 <= thick <= step:
        raise GeneratorError("ring step must be >= 1 and thickness in [1, step]")
    cx, cy = w / 2, h / 2
    cells = []
    for y in range(h):
        for x in range(w):
            r = round(math.hypot(x - cx, y - cy))
            ringed = r != 0 and (r % step) < thick
            cells.append("1" if ringed else "0")
    return Pattern.of(cells, alphabet=("0", "1"))


def _gen_redundant_repeat(spec: GeneratorSpec) -> Pattern:
    if spec.base is None:
        raise GeneratorError("repeat generation needs a base pattern")
    base = tuple(spec.base)
    if spec.repeats < 1:
        raise GeneratorError("repeat count must be >= 1")
    out = base * spec.repeats
    if spec.length is not None and spec.length != len(out):
        raise GeneratorError(f"length {spec.length} contradicts |base| * repeats = {len(out)}")
    return Pattern.of(out)


def _gen_english_text_file(spec: GeneratorSpec) -> Pattern:
    if spec.path is None:
        raise GeneratorError("text-file generation needs a path")
    try:
        with open(spec.path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GeneratorError(f"cannot read text file: {exc}") from exc
    if spec.length is not None:
        if spec.length > len(text):
            raise GeneratorError(f"file holds {len(text)} characters, {spec.length} requested")
        text = text[: spec.length]
    return Pattern.of(text)


_DISPATCH = {
    GeneratorKind.CONSTANT: _gen_constant,
    GeneratorKind.UNIFORM_RANDOM: _gen_uniform_random,
    GeneratorKind.REDUNDANT_RANDOM: _gen_redundant_random,
    GeneratorKind.MARKOV: _gen_markov,
    GeneratorKind.FIBONACCI_DIGITS: _gen_fibonacci_digits,
    GeneratorKind.STRUCTURED_CIRCLES: _gen_structured_circles,
    GeneratorKind.REDUNDANT_REPEAT: _gen_redundant_repeat,
    GeneratorKind.ENGLISH_TEXT_FILE: _gen_english_text_file,
}


def generate(spec: GeneratorSpec) -> Pattern:
    """Build the pattern described by spec; identical specs yield identical patterns."""
    return _DISPATCH[spec.kind](spec)
