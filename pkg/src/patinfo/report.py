"""Per-pattern estimate reports and their table/CSV/JSON/SVG renderings.

A report carries, for each requested estimator, the raw value the
estimator produced and that value clamped into the pattern's
[min_info, max_info] interval, plus the per-element entropy of the
clamped value. Formatting is pinned: tables and CSV print floats with six
decimals, JSON carries full doubles, and field order never varies, so
identical invocations render byte-identical output.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .compression import (
    CalibrationCache,
    Compressor,
    DEFAULT_CALIBRATION_SEED,
    calibrate,
    compression_info,
    default_compressor,
    default_mode,
    oracle_normalized_info,
)
from .core import Pattern, infer_alphabet
from .estimators import (
    clamp_bits,
    max_info,
    min_info,
    modified_shannon_info,
    shannon_classic_info,
)
from .properties import PropertyReport

ESTIMATOR_IDS = ("min", "max", "shannon", "mshannon", "gzip", "knorm", "ensemble")
DEFAULT_ESTIMATORS = ("min", "max", "shannon", "mshannon")
_COMPRESSOR_BACKED = ("gzip", "knorm", "ensemble")

# Tokenization-mode to serialization-mode mapping for compressor-backed
# estimators. Line and token symbols are whole strings, so they go through
# the re-indexing serializer rather than lossy concatenation.
TOKEN_MODE_SERIALIZATION = {"byte": "byte", "char": "utf8", "line": "u32le", "token": "u32le"}


@dataclass(frozen=True)
class ReportContext:
    """Shared machinery for compressor-backed estimates."""

    compressor: Compressor = field(default_factory=default_compressor)
    cache: CalibrationCache = field(default_factory=CalibrationCache)
    calibration_seed: int = DEFAULT_CALIBRATION_SEED
    serialization_mode: str | None = None


@dataclass(frozen=True)
class EstimateReport:
    """All requested estimates for one named pattern."""

    name: str
    mode: str
    n: int
    k_inferred: int
    k_declared: int | None
    estimates: Mapping[str, tuple[float, float]]
    entropy: Mapping[str, float]
    compressor_id: str | None
    calibration_key: str | None

    def clamped(self, estimator_id: str) -> float:
        return self.estimates[estimator_id][1]

    def raw(self, estimator_id: str) -> float:
        return self.estimates[estimator_id][0]

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "mode": self.mode,
            "n": self.n,
            "k_inferred": self.k_inferred,
            "k_declared": self.k_declared,
            "estimates": {
                est: {"raw_bits": raw, "clamped_bits": clamped}
                for est, (raw, clamped) in self.estimates.items()
            },
            "entropy": dict(self.entropy),
            "compressor_id": self.compressor_id,
            "calibration_key": self.calibration_key,
        }


def build_report(
    name: str,
    pattern: Pattern,
    mode: str,
    estimator_ids: Sequence[str] = DEFAULT_ESTIMATORS,
    declared_k: int | None = None,
    context: ReportContext | None = None,
) -> EstimateReport:
    """Evaluate the requested estimators on one pattern."""
    unknown = [e for e in estimator_ids if e not in ESTIMATOR_IDS]
    if unknown:
        raise ValueError(f"unknown estimator name: {', '.join(unknown)}")
    ctx = context or ReportContext()
    n = len(pattern)
    k_inferred = infer_alphabet(pattern).k
    k_eff = declared_k if declared_k is not None else pattern.alphabet.k
    low = 0.0 if n == 0 else min_info(pattern)
    high = 0.0 if n == 0 else max_info(n, k_eff)
    ser_mode = ctx.serialization_mode or TOKEN_MODE_SERIALIZATION.get(mode) or default_mode(pattern)

    needs_backend = any(e in _COMPRESSOR_BACKED for e in estimator_ids)
    calibration = None
    # n == 0 reports 0 bits by convention and never touches the compressor
    if n > 0 and any(e in ("gzip", "ensemble") for e in estimator_ids):
        calibration = calibrate(
            n, k_eff, ctx.compressor, ser_mode, seed=ctx.calibration_seed, cache=ctx.cache
        )

    def raw_value(est: str) -> float:
        if est == "min":
            return 0.0 if n == 0 else min_info(pattern)
        if est == "max":
            return high
        if est == "shannon":
            # empty patterns report 0 by convention; the op itself rejects them
            return 0.0 if n == 0 else shannon_classic_info(pattern)
        if est == "mshannon":
            return modified_shannon_info(pattern)
        if est == "gzip":
            if n == 0:
                return 0.0
            return compression_info(pattern, calibration, ctx.compressor, k=k_eff, clamp=False)
        if est == "knorm":
            return oracle_normalized_info(pattern, compressor=ctx.compressor, mode=ser_mode)
        # ensemble: minimum of the clamped non-trivial estimates
        members = (
            clamp_bits(raw_value("mshannon"), low, high),
            clamp_bits(raw_value("gzip"), low, high),
            clamp_bits(raw_value("knorm"), low, high),
        )
        return min(members)

    estimates: dict[str, tuple[float, float]] = {}
    entropy: dict[str, float] = {}
    for est in ESTIMATOR_IDS:
        if est not in estimator_ids:
            continue
        raw = raw_value(est)
        clamped = clamp_bits(raw, low, high)
        estimates[est] = (raw, clamped)
        entropy[est] = 0.0 if n == 0 else clamped / (n + 1)

    return EstimateReport(
        name=name,
        mode=mode,
        n=n,
        k_inferred=k_inferred,
        k_declared=declared_k,
        estimates=estimates,
        entropy=entropy,
        compressor_id=ctx.compressor.label if needs_backend else None,
        calibration_key=calibration.key if calibration is not None else None,
    )


# ---------------------------------------------------------------------------
# Rendering


def _fmt(value: float) -> str:
    return f"{value:.6f}"


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * widths[i] for i in range(len(headers))),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines) + "\n"


def _estimate_rows(reports: Sequence[EstimateReport]) -> list[list[str]]:
    rows = []
    for r in reports:
        for est, (raw, clamped) in r.estimates.items():
            rows.append(
                [
                    r.name,
                    r.mode,
                    str(r.n),
                    str(r.k_inferred),
                    "" if r.k_declared is None else str(r.k_declared),
                    est,
                    _fmt(raw),
                    _fmt(clamped),
                    _fmt(r.entropy[est]),
                    r.compressor_id or "",
                    r.calibration_key or "",
                ]
            )
    return rows


_ESTIMATE_HEADER = [
    "name",
    "mode",
    "n",
    "k_inferred",
    "k_declared",
    "estimator",
    "raw_bits",
    "clamped_bits",
    "entropy_hc",
    "compressor_id",
    "calibration_key",
]


def render_reports_table(reports: Sequence[EstimateReport]) -> str:
    return _table(_ESTIMATE_HEADER, _estimate_rows(reports))


def render_reports_csv(reports: Sequence[EstimateReport]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_ESTIMATE_HEADER)
    writer.writerows(_estimate_rows(reports))
    return out.getvalue()


_PROPERTY_HEADER = [
    "property_id",
    "estimator_id",
    "check_class",
    "trials",
    "violations",
    "worst_violation_bits",
    "tolerance_bits",
    "seed",
]


def _property_rows(reports: Sequence[PropertyReport]) -> list[list[str]]:
    return [
        [
            r.property_id.value,
            r.estimator_id,
            r.check_class.value,
            str(r.trials),
            str(r.violations),
            _fmt(r.worst_violation_bits),
            _fmt(r.tolerance_bits),
            str(r.seed),
        ]
        for r in reports
    ]


def render_properties_table(reports: Sequence[PropertyReport]) -> str:
    return _table(_PROPERTY_HEADER, _property_rows(reports))


def render_properties_csv(reports: Sequence[PropertyReport]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(_PROPERTY_HEADER)
    writer.writerows(_property_rows(reports))
    return out.getvalue()


def render_json(
    reports: Sequence[EstimateReport] = (),
    property_reports: Sequence[PropertyReport] = (),
    extra: Mapping | None = None,
) -> str:
    document: dict = {
        "reports": [r.to_json_dict() for r in reports],
        "property_reports": [r.to_json_dict() for r in property_reports],
    }
    if extra:
        document.update(extra)
    return json.dumps(document, indent=2) + "\n"


def render_comparison_svg(rows: Sequence[tuple[str, Mapping[str, float]]]) -> str:
    """Grouped bar chart of the estimate columns, one group per corpus row."""
    columns = list(rows[0][1].keys()) if rows else []
    palette = {"M": "#94a3b8", "S": "#2563eb", "T": "#dc2626", "K": "#059669"}
    bar_w, gap, group_gap, left, top = 28, 6, 36, 70, 30
    chart_h = 220
    group_w = len(columns) * (bar_w + gap) - gap
    width = left + 20 + len(rows) * (group_w + group_gap)
    height = top + chart_h + 70
    peak = max((v for _, vals in rows for v in vals.values()), default=1.0) or 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + chart_h}" stroke="#334155"/>',
        f'<line x1="{left}" y1="{top + chart_h}" x2="{width - 10}" y2="{top + chart_h}" stroke="#334155"/>',
        f'<text x="{left - 6}" y="{top + 4}" text-anchor="end">{_fmt(peak)}</text>',
        f'<text x="{left - 6}" y="{top + chart_h + 4}" text-anchor="end">0</text>',
    ]
    x = left + 20
    for name, values in rows:
        for i, col in enumerate(columns):
            v = values[col]
            h = 0.0 if peak <= 0 else chart_h * (v / peak)
            bx = x + i * (bar_w + gap)
            by = top + chart_h - h
            color = palette.get(col, "#64748b")
            parts.append(
                f'<rect x="{bx}" y="{by:.2f}" width="{bar_w}" height="{h:.2f}" fill="{color}"/>'
            )
            parts.append(
                f'<text x="{bx + bar_w / 2:.1f}" y="{top + chart_h + 14}" text-anchor="middle">{col}</text>'
            )
        parts.append(
            f'<text x="{x + group_w / 2:.1f}" y="{top + chart_h + 32}" text-anchor="middle">{name}</text>'
        )
        x += group_w + group_gap
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
