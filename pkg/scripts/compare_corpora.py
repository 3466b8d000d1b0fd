#!/usr/bin/env python3
"""Side-by-side information estimates for text corpora.

Defaults to the four bundled fixtures (fibonacci, english, random,
structured) in whitespace-token mode with the figure-style estimator
columns; point it at any files instead. Writes a wide CSV of clamped
estimates and, optionally, a grouped bar chart:

    python3 scripts/compare_corpora.py --svg chart.svg
    python3 scripts/compare_corpora.py --mode char my_corpus/*.txt
"""

from __future__ import annotations

import argparse
import csv
import sys
from importlib.resources import files
from pathlib import Path

from patinfo.cli import tokenize
from patinfo.report import ReportContext, build_report, render_comparison_svg

BUNDLED = ("fibonacci", "english", "random", "structured")
DEFAULT_ESTIMATORS = ("max", "mshannon", "gzip", "knorm")


def bundled_inputs() -> list[tuple[str, bytes]]:
    data = files("patinfo").joinpath("data")
    return [(name, data.joinpath(f"{name}.txt").read_bytes()) for name in BUNDLED]


def file_inputs(paths: list[str]) -> list[tuple[str, bytes]]:
    return [(path, Path(path).read_bytes()) for path in paths]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--mode", default="token", choices=("byte", "char", "line", "token"))
    parser.add_argument("--estimators", default=",".join(DEFAULT_ESTIMATORS))
    parser.add_argument("--calibration-seed", type=int, default=1)
    parser.add_argument("--svg", default=None, help="also write a bar chart here")
    parser.add_argument("files", nargs="*", help="corpus files (default: bundled fixtures)")
    args = parser.parse_args(argv)

    estimator_ids = tuple(e.strip() for e in args.estimators.split(",") if e.strip())
    inputs = file_inputs(args.files) if args.files else bundled_inputs()
    context = ReportContext(calibration_seed=args.calibration_seed)

    reports = [
        build_report(name, tokenize(blob, args.mode), args.mode, estimator_ids, None, context)
        for name, blob in inputs
    ]

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["corpus", "n", "k", *estimator_ids])
    for r in reports:
        writer.writerow(
            [r.name, r.n, r.k_inferred, *(f"{r.clamped(e):.6f}" for e in estimator_ids)]
        )

    if args.svg:
        rows = [(r.name, {e: r.clamped(e) for e in estimator_ids}) for r in reports]
        Path(args.svg).write_text(render_comparison_svg(rows), encoding="utf-8")
    return 0


if __name__ == "__main__":
    sys.exit(main())
