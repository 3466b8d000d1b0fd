"""Compressed-size measurement, calibration, and compression-based estimators.

The built-in backend is deflate in gzip framing at maximum level, driven
through zlib with a zeroed header so identical inputs always produce
identical bytes. Patterns are serialized under one of three pinned modes:

  byte   symbols are integers 0..255, emitted verbatim
  utf8   symbols are strings, concatenated and UTF-8 encoded
  u32le  arbitrary symbols, densely re-indexed by first occurrence and
         emitted as little-endian unsigned 32-bit words

A raw compressed size carries framing overhead and compressor-specific
slack, so estimates are calibrated: the compressed size of a constant
reference maps to the pattern's lower information bound and the median
compressed size of seeded uniform random references maps to the upper
bound, with everything else interpolated affinely between them.
Calibrations are cached in a JSON file keyed by "n:k:mode:compressor:seed";
the PATINFO_CACHE environment variable overrides the cache location.
"""

from __future__ import annotations

import json
import os
import statistics
import struct
import tempfile
import threading
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .core import Pattern, PatinfoError
from .estimators import clamp_bits, max_info, min_info, modified_shannon_info
from .generators import default_symbols
from .rng import SplitMix64

SERIALIZATION_MODES = ("byte", "utf8", "u32le")
CALIBRATION_FLAVORS = ("raw", "imark")
DEFAULT_CALIBRATION_SEED = 1
# Odd so the median of the random references is itself a sample.
DEFAULT_CALIBRATION_SAMPLES = 11


class CompressionBackendError(PatinfoError):
    """The underlying compressor failed."""


class CalibrationMismatchError(PatinfoError):
    """A calibration was applied to a pattern it was not built for."""


@dataclass(frozen=True)
class Compressor:
    """A deterministic lossless codec measured by output size."""

    name: str
    version: str
    compress: Callable[[bytes], bytes]
    decompress: Callable[[bytes], bytes]

    @property
    def label(self) -> str:
        return f"{self.name} (zlib {self.version})"


def _gzip_compress(data: bytes) -> bytes:
    try:
        engine = zlib.compressobj(9, zlib.DEFLATED, 31)
        return engine.compress(data) + engine.flush()
    except zlib.error as exc:
        raise CompressionBackendError(f"deflate failed: {exc}") from exc


def _gzip_decompress(data: bytes) -> bytes:
    try:
        return zlib.decompress(data, 31)
    except zlib.error as exc:
        raise CompressionBackendError(f"inflate failed: {exc}") from exc


def default_compressor() -> Compressor:
    """The pinned backend: gzip framing, deflate level 9, empty header."""
    return Compressor(
        name="gzip9",
        version=zlib.ZLIB_RUNTIME_VERSION,
        compress=_gzip_compress,
        decompress=_gzip_decompress,
    )


def serialize_pattern(p: Pattern, mode: str) -> bytes:
    """Encode p's symbols under the named serialization mode."""
    if mode == "byte":
        try:
            return bytes(p.symbols)
        except (TypeError, ValueError) as exc:
            raise ValueError("byte mode needs integer symbols in 0..255") from exc
    if mode == "utf8":
        if not all(isinstance(s, str) for s in p.symbols):
            raise ValueError("utf8 mode needs string symbols")
        return "".join(p.symbols).encode("utf-8")
    if mode == "u32le":
        index: dict = {}
        codes = [index.setdefault(s, len(index)) for s in p.symbols]
        if len(index) > 0xFFFFFFFF:
            raise ValueError("u32le mode supports at most 2**32 distinct symbols")
        return struct.pack(f"<{len(codes)}I", *codes)
    raise ValueError(f"unknown serialization mode: {mode!r}")


def default_mode(p: Pattern) -> str:
    """Pick the densest mode the symbols allow."""
    syms = p.alphabet.members
    if syms and all(isinstance(s, int) and 0 <= s <= 255 for s in syms):
        return "byte"
    if syms and all(isinstance(s, str) and len(s) == 1 for s in syms):
        return "utf8"
    return "u32le"


def compressed_bits(p: Pattern, compressor: Compressor | None = None, mode: str | None = None) -> float:
    """8 x the compressed byte length of p under the given mode."""
    comp = compressor or default_compressor()
    return float(8 * len(comp.compress(serialize_pattern(p, mode or default_mode(p)))))


def _reference_symbols(k: int, mode: str) -> tuple:
    if k < 1:
        raise ValueError("calibration needs an alphabet size >= 1")
    if mode == "byte":
        if k > 256:
            raise ValueError("byte mode supports at most 256 symbols")
        return tuple(range(k))
    if mode == "utf8" and k > 62:
        # consecutive code points past the readable table, pinned for determinism
        return tuple(chr(0x100 + i) for i in range(k))
    return default_symbols(k)


def constant_reference(n: int, k: int, mode: str) -> Pattern:
    """The all-first-symbol pattern of length n used as the calibration floor."""
    syms = _reference_symbols(k, mode)
    return Pattern.of((syms[0],) * n, alphabet=syms)


def random_reference(n: int, k: int, mode: str, seed: int, index: int) -> Pattern:
    """The index-th seeded uniform random reference of length n over k symbols."""
    syms = _reference_symbols(k, mode)
    rng = SplitMix64((seed << 8) + index)
    return Pattern.of(tuple(syms[rng.next_below(k)] for _ in range(n)), alphabet=syms)


@dataclass(frozen=True)
class CompressionCalibration:
    """Reference measurements anchoring the affine size-to-bits map."""

    n: int
    k: int
    mode: str
    compressor_id: str
    seed: int
    samples: int
    low_bits: float
    high_bits: float
    flavor: str = "raw"

    def __post_init__(self) -> None:
        if self.low_bits > self.high_bits + 1e-9:
            raise ValueError("calibration floor exceeds its ceiling")

    @property
    def key(self) -> str:
        return f"{self.n}:{self.k}:{self.mode}:{self.compressor_id}:{self.seed}"


class CalibrationCache:
    """Persistent JSON store of calibration measurements.

    One document maps key strings to {low_bits, high_bits, samples}. Writes
    go through an atomic replace after re-merging the on-disk state, so
    concurrent readers always see a consistent file and concurrent writers
    converge (values are deterministic, last writer wins).
    """

    def __init__(self, path: str | os.PathLike | None = None) -> None:
        if path is None:
            env = os.environ.get("PATINFO_CACHE")
            path = env if env else Path.home() / ".cache" / "patinfo" / "calibrations.json"
        self._path = Path(path)
        self._lock = threading.Lock()

    @property
    def path(self) -> Path:
        return self._path

    def _read(self) -> dict:
        try:
            with open(self._path, encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, ValueError):
            return {}
        return data if isinstance(data, dict) else {}

    def get(self, key: str) -> dict | None:
        with self._lock:
            entry = self._read().get(key)
        if not isinstance(entry, dict):
            return None
        try:
            return {
                "low_bits": float(entry["low_bits"]),
                "high_bits": float(entry["high_bits"]),
                "samples": int(entry["samples"]),
            }
        except (KeyError, TypeError, ValueError):
            return None

    def put(self, key: str, low_bits: float, high_bits: float, samples: int) -> None:
        entry = {"low_bits": low_bits, "high_bits": high_bits, "samples": samples}
        with self._lock:
            merged = self._read()
            merged[key] = entry
            self._path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp = tempfile.mkstemp(dir=self._path.parent, suffix=".tmp")
            try:
                with os.fdopen(fd, "w", encoding="utf-8") as fh:
                    json.dump(merged, fh, sort_keys=True)
                os.replace(tmp, self._path)
            except BaseException:
                try:
                    os.unlink(tmp)
                except OSError:
                    pass
                raise


def _flavored_id(compressor: Compressor, flavor: str) -> str:
    return compressor.name if flavor == "raw" else f"{compressor.name}~{flavor}"


def _measure(p: Pattern, compressor: Compressor, mode: str, flavor: str) -> float:
    if flavor == "raw":
        return compressed_bits(p, compressor, mode)
    # imark flavor: frequency-adjusted information of the compressed bytes
    compressed = compressor.compress(serialize_pattern(p, mode))
    return modified_shannon_info(Pattern.of(compressed))


def calibrate(
    n: int,
    k: int,
    compressor: Compressor | None = None,
    mode: str = "u32le",
    seed: int = DEFAULT_CALIBRATION_SEED,
    samples: int = DEFAULT_CALIBRATION_SAMPLES,
    flavor: str = "raw",
    cache: CalibrationCache | None = None,
) -> CompressionCalibration:
    """Measure (or recall) the low/high reference sizes for (n, k, mode).

    low_bits comes from the constant reference, high_bits from the median
    of `samples` seeded uniform random references; sample i draws from the
    stream seeded with (seed << 8) + i.
    """
    if n < 0:
        raise ValueError("pattern length must be >= 0")
    if mode not in SERIALIZATION_MODES:
        raise ValueError(f"unknown serialization mode: {mode!r}")
    if flavor not in CALIBRATION_FLAVORS:
        raise ValueError(f"unknown calibration flavor: {flavor!r}")
    if samples < 1:
        raise ValueError("calibration needs at least one random sample")
    comp = compressor or default_compressor()
    cid = _flavored_id(comp, flavor)
    key = f"{n}:{k}:{mode}:{cid}:{seed}"
    store = cache if cache is not None else CalibrationCache()
    hit = store.get(key)
    if hit is not None and hit["samples"] == samples:
        return CompressionCalibration(n, k, mode, cid, seed, samples, hit["low_bits"], hit["high_bits"], flavor)
    low = _measure(constant_reference(n, k, mode), comp, mode, flavor)
    highs = [_measure(random_reference(n, k, mode, seed, i), comp, mode, flavor) for i in range(samples)]
    high = float(statistics.median(highs))
    store.put(key, low, high, samples)
    return CompressionCalibration(n, k, mode, cid, seed, samples, low, high, flavor)


def compression_info(
    p: Pattern,
    calibration: CompressionCalibration,
    compressor: Compressor | None = None,
    k: int | None = None,
    clamp: bool = True,
) -> float:
    """Affine map of p's measured size onto [min_info, max_info].

    The calibration floor maps to min_info(p), its ceiling to
    max_info(n, k); a degenerate calibration (floor = ceiling) yields the
    midpoint. With clamp=False the interpolated value is returned without
    being clamped into the target interval.
    """
    comp = compressor or default_compressor()
    cid = _flavored_id(comp, calibration.flavor)
    if cid != calibration.compressor_id:
        raise CalibrationMismatchError(
            f"calibration was built for {calibration.compressor_id!r}, not {cid!r}"
        )
    if len(p) != calibration.n:
        raise CalibrationMismatchError(f"calibration is for n={calibration.n}, pattern has n={len(p)}")
    k_eff = p.alphabet.k if k is None else k
    if k_eff != calibration.k:
        raise CalibrationMismatchError(f"calibration is for k={calibration.k}, pattern has k={k_eff}")
    n = len(p)
    low, high = (0.0, 0.0) if n == 0 else (min_info(p), max_info(n, calibration.k))
    measured = _measure(p, comp, calibration.mode, calibration.flavor)
    spread = calibration.high_bits - calibration.low_bits
    if spread <= 1e-9:
        value = (low + high) / 2.0
    else:
        value = low + (measured - calibration.low_bits) * (high - low) / spread
    return clamp_bits(value, low, high) if clamp else value


def oracle_normalized_info(
    p: Pattern,
    oracle: Callable[[Pattern], float] | None = None,
    compressor: Compressor | None = None,
    mode: str | None = None,
    clamp: bool = True,
) -> float:
    """Size of p relative to the constant pattern of the same length.

    Returns oracle(p) - oracle(constant of length n) + min_info(p), floored
    at 0 (clamp=False skips the floor). The constant comparator repeats p's
    own first symbol, so the value is exactly min_info for constant inputs.
    The default oracle is compressed_bits with the pinned backend.
    """
    n = len(p)
    if n == 0:
        return 0.0
    if oracle is None:
        comp = compressor or default_compressor()
        fixed_mode = mode or default_mode(p)
        oracle = lambda q: compressed_bits(q, comp, fixed_mode)
    constant = Pattern((p.symbols[0],) * n, p.alphabet)
    value = oracle(p) - oracle(constant) + min_info(p)
    return max(0.0, value) if clamp else value
