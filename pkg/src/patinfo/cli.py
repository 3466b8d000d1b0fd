"""Command-line surface: analyze, generate, compare, check.

Exit codes: 0 on success, 1 when an ASSERT-class property check recorded
violations, 2 on usage or input errors. Identical invocations over
identical inputs produce byte-identical table, CSV, and JSON output.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib.resources import files
from pathlib import Path
from typing import Sequence

from .compression import CalibrationCache, default_compressor
from .core import Pattern, PatinfoError
from .generators import GeneratorKind, GeneratorSpec, generate
from .properties import (
    CHECKABLE_ESTIMATORS,
    DEFAULT_CHECK_ESTIMATORS,
    DEFAULT_SUITE_SEED,
    DEFAULT_TRIALS,
    PropertyId,
    SuiteConfig,
    assert_failures,
    run_suite,
)
from .report import (
    DEFAULT_ESTIMATORS,
    ESTIMATOR_IDS,
    ReportContext,
    build_report,
    render_comparison_svg,
    render_json,
    render_properties_csv,
    render_properties_table,
    render_reports_csv,
    render_reports_table,
)

TOKENIZE_MODES = ("byte", "char", "line", "token")
COMPARE_ROWS = ("fibonacci", "english", "random", "structured")
# Figure-style column labels over clamped estimates.
COMPARE_COLUMNS = {"M": "max", "S": "mshannon", "T": "gzip", "K": "knorm"}

_GENERATE_KINDS = {
    "constant": GeneratorKind.CONSTANT,
    "random": GeneratorKind.UNIFORM_RANDOM,
    "redundant-random": GeneratorKind.REDUNDANT_RANDOM,
    "markov": GeneratorKind.MARKOV,
    "fib": GeneratorKind.FIBONACCI_DIGITS,
    "circles": GeneratorKind.STRUCTURED_CIRCLES,
    "repeat": GeneratorKind.REDUNDANT_REPEAT,
}


def tokenize(data: bytes, mode: str) -> Pattern:
    """Split raw input bytes into a pattern under the named mode."""
    if mode == "byte":
        return Pattern.of(tuple(data))
    text = data.decode("utf-8", errors="replace")
    if mode == "char":
        return Pattern.of(tuple(text))
    if mode == "line":
        return Pattern.of(tuple(text.splitlines()))
    if mode == "token":
        return Pattern.of(tuple(text.split()))
    raise PatinfoError(f"unknown tokenization mode: {mode!r}")


def _split_csv_arg(raw: str) -> tuple[str, ...]:
    return tuple(part.strip() for part in raw.split(",") if part.strip())


def _read_input(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise PatinfoError(f"cannot read {path}: {exc}") from exc


def _fixture_bytes(corpus_dir: str | None, name: str) -> bytes:
    filename = f"{name}.txt"
    if corpus_dir is not None:
        path = Path(corpus_dir) / filename
        if not path.is_file():
            raise PatinfoError(f"missing corpus fixture: {path}")
        return path.read_bytes()
    resource = files("patinfo").joinpath("data").joinpath(filename)
    if not resource.is_file():
        raise PatinfoError(f"missing packaged fixture: {filename}")
    return resource.read_bytes()


def _context(args: argparse.Namespace) -> ReportContext:
    return ReportContext(
        compressor=default_compressor(),
        cache=CalibrationCache(),
        calibration_seed=args.calibration_seed,
    )


def _cmd_analyze(args: argparse.Namespace) -> int:
    estimator_ids = _split_csv_arg(args.estimators)
    unknown = [e for e in estimator_ids if e not in ESTIMATOR_IDS]
    if unknown:
        raise PatinfoError(f"unknown estimator name: {', '.join(unknown)}")
    context = _context(args)
    inputs = args.files or ["-"]
    reports = []
    for path in inputs:
        pattern = tokenize(_read_input(path), args.mode)
        if args.alphabet_size is not None and args.alphabet_size < pattern.alphabet.k:
            raise PatinfoError(
                f"--alphabet-size {args.alphabet_size} is below the "
                f"{pattern.alphabet.k} distinct symbols in {path}"
            )
        name = "<stdin>" if path == "-" else path
        reports.append(
            build_report(name, pattern, args.mode, estimator_ids, args.alphabet_size, context)
        )
    if args.format == "table":
        sys.stdout.write(render_reports_table(reports))
    elif args.format == "csv":
        sys.stdout.write(render_reports_csv(reports))
    else:
        sys.stdout.write(render_json(reports=reports))
    return 0


def _cmd_generate(args: argparse.Namespace) -> int:
    kind = _GENERATE_KINDS[args.kind]
    transition = None
    if args.transition is not None:
        try:
            rows = json.loads(args.transition)
            transition = tuple(tuple(float(x) for x in row) for row in rows)
        except (ValueError, TypeError) as exc:
            raise PatinfoError(f"--transition must be a JSON matrix: {exc}") from exc
    spec = GeneratorSpec(
        kind=kind,
        length=args.length,
        alphabet_size=args.alphabet_size,
        seed=args.seed,
        symbol=args.symbol,
        transition=transition,
        base=args.base,
        repeats=args.repeats,
        width=args.width,
        height=args.height,
        ring_step=args.ring_step,
        ring_thickness=args.ring_thickness,
        copy_probability=args.copy_prob,
    )
    pattern = generate(spec)
    if not all(isinstance(s, str) for s in pattern.symbols):
        raise PatinfoError("alphabets beyond 62 symbols cannot be rendered as text")
    text = "".join(pattern.symbols)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _comparison_rows(args: argparse.Namespace) -> tuple[list, list]:
    context = _context(args)
    estimator_ids = tuple(COMPARE_COLUMNS.values())
    reports = []
    for name in COMPARE_ROWS:
        pattern = tokenize(_fixture_bytes(args.corpus, name), "token")
        reports.append(build_report(name, pattern, "token", estimator_ids, None, context))
    by_name = {r.name: r for r in reports}

    def col(row: str, label: str) -> float:
        return by_name[row].clamped(COMPARE_COLUMNS[label])

    checks = [
        ("structured_compression_below_mshannon", col("structured", "T") < col("structured", "S")),
        (
            "english_compression_tracks_mshannon",
            abs(col("english", "S") - col("english", "T")) / col("english", "S") <= 0.25,
        ),
        (
            "all_estimates_within_max",
            all(
                col(row, label) <= col(row, "M")
                for row in COMPARE_ROWS
                for label in ("S", "T", "K")
            ),
        ),
        ("fibonacci_compression_at_most_mshannon", col("fibonacci", "T") <= col("fibonacci", "S")),
    ]
    return reports, checks


def _cmd_compare(args: argparse.Namespace) -> int:
    reports, checks = _comparison_rows(args)
    wide = [
        (
            r.name,
            {label: r.clamped(est) for label, est in COMPARE_COLUMNS.items()},
        )
        for r in reports
    ]
    if args.svg:
        Path(args.svg).write_text(render_comparison_svg(wide), encoding="utf-8")
    if args.format == "table":
        headers = ["corpus", "n", "k", "M", "S", "T", "K"]
        rows = []
        for r in reports:
            rows.append(
                [
                    r.name,
                    str(r.n),
                    str(r.k_inferred),
                    f"{r.clamped('max'):.6f}",
                    f"{r.clamped('mshannon'):.6f}",
                    f"{r.clamped('gzip'):.6f}",
                    f"{r.clamped('knorm'):.6f}",
                ]
            )
        widths = [max(len(h), *(len(row[i]) for row in rows)) for i, h in enumerate(headers)]
        lines = [
            "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
            "  ".join("-" * w for w in widths),
        ]
        lines += ["  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip() for row in rows]
        lines.append("")
        for name, passed in checks:
            lines.append(f"{'PASS' if passed else 'FAIL'}  {name}")
        sys.stdout.write("\n".join(lines) + "\n")
    elif args.format == "csv":
        lines = ["corpus,n,k,M,S,T,K"]
        for r in reports:
            lines.append(
                f"{r.name},{r.n},{r.k_inferred},{r.clamped('max'):.6f},"
                f"{r.clamped('mshannon'):.6f},{r.clamped('gzip'):.6f},{r.clamped('knorm'):.6f}"
            )
        lines.append("")
        lines.append("check,passed")
        lines += [f"{name},{str(passed).lower()}" for name, passed in checks]
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        extra = {"checks": [{"check": name, "passed": passed} for name, passed in checks]}
        sys.stdout.write(render_json(reports=reports, extra=extra))
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    estimator_ids = _split_csv_arg(args.estimators)
    if estimator_ids == ("all",):
        estimator_ids = CHECKABLE_ESTIMATORS
    unknown = [e for e in estimator_ids if e not in CHECKABLE_ESTIMATORS]
    if unknown:
        raise PatinfoError(f"unknown estimator name: {', '.join(unknown)}")
    property_names = _split_csv_arg(args.properties)
    if property_names == ("all",):
        property_ids = tuple(PropertyId)
    else:
        by_value = {p.value: p for p in PropertyId}
        missing = [name for name in property_names if name not in by_value]
        if missing:
            raise PatinfoError(f"unknown property name: {', '.join(missing)}")
        property_ids = tuple(by_value[name] for name in property_names)
    config = SuiteConfig(
        estimator_ids=estimator_ids,
        property_ids=property_ids,
        trials=args.trials,
        seed=args.seed,
    )
    reports = run_suite(config, default_compressor(), CalibrationCache())
    if args.format == "table":
        sys.stdout.write(render_properties_table(reports))
    elif args.format == "csv":
        sys.stdout.write(render_properties_csv(reports))
    else:
        sys.stdout.write(render_json(property_reports=reports))
    return 1 if assert_failures(reports) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patinfo",
        description="Combinatorial information measures and entropy for finite symbol patterns.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="estimate information content of files or stdin")
    analyze.add_argument("--mode", choices=TOKENIZE_MODES, default="byte")
    analyze.add_argument("--estimators", default=",".join(DEFAULT_ESTIMATORS))
    analyze.add_argument("--alphabet-size", type=int, default=None)
    analyze.add_argument("--format", choices=("table", "csv", "json"), default="table")
    analyze.add_argument("--calibration-seed", type=int, default=1)
    analyze.add_argument("files", nargs="*", metavar="FILE")
    analyze.set_defaults(func=_cmd_analyze)

    gen = sub.add_parser("generate", help="emit a deterministic pattern")
    gen.add_argument("--kind", choices=sorted(_GENERATE_KINDS), required=True)
    gen.add_argument("--length", type=int, default=None)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--symbol", default="a")
    gen.add_argument("--alphabet-size", type=int, default=None)
    gen.add_argument("--copy-prob", type=float, default=0.3)
    gen.add_argument("--transition", default=None, help="JSON row-stochastic matrix")
    gen.add_argument("--base", default=None)
    gen.add_argument("--repeats", type=int, default=1)
    gen.add_argument("--width", type=int, default=40)
    gen.add_argument("--height", type=int, default=25)
    gen.add_argument("--ring-step", type=int, default=3)
    gen.add_argument("--ring-thickness", type=int, default=1)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=_cmd_generate)

    compare = sub.add_parser("compare", help="estimate the bundled corpora side by side")
    compare.add_argument("--corpus", default=None, help="directory of fixture files")
    compare.add_argument("--format", choices=("table", "csv", "json"), default="table")
    compare.add_argument("--svg", default=None, help="write a bar chart to this path")
    compare.add_argument("--calibration-seed", type=int, default=1)
    compare.set_defaults(func=_cmd_compare)

    check = sub.add_parser("check", help="run property checks over seeded corpora")
    check.add_argument("--properties", default="all")
    check.add_argument("--estimators", default=",".join(DEFAULT_CHECK_ESTIMATORS))
    check.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    check.add_argument("--seed", type=int, default=DEFAULT_SUITE_SEED)
    check.add_argument("--format", choices=("table", "csv", "json"), default="table")
    check.set_defaults(func=_cmd_check)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PatinfoError as exc:
        print(f"patinfo: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"patinfo: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"patinfo: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
