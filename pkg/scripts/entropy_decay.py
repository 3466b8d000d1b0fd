#!/usr/bin/env python3
"""Sweep per-element entropy against pattern length.

Emits a long-form CSV (family, estimator, n, info_bits, entropy_hc) for a
few canonical pattern families. The constant family decays like
log2(n+1)/(n+1); the balanced binary family climbs toward one bit per
element. Useful for eyeballing convergence behavior:

    python3 scripts/entropy_decay.py --max-n 10000 > decay.csv
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass, field

from patinfo import Pattern, combinatorial_entropy
from patinfo.generators import GeneratorKind, GeneratorSpec, generate
from patinfo.properties import estimator_callable

FAMILIES = ("constant", "balanced", "random")


@dataclass(frozen=True)
class SweepConfig:
    families: tuple[str, ...] = FAMILIES
    estimator_ids: tuple[str, ...] = ("min", "mshannon")
    max_n: int = 10_000
    points: int = 25
    seed: int = 1


def geometric_lengths(max_n: int, points: int) -> list[int]:
    """Roughly log-spaced integer lengths from 1 to max_n, deduplicated."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    ratio = max_n ** (1 / max(points - 1, 1))
    raw = {round(ratio**i) for i in range(points)}
    return sorted(n for n in raw if 1 <= n <= max_n) or [1]


def build_pattern(family: str, n: int, seed: int) -> Pattern:
    if family == "constant":
        return Pattern.of("a" * n, alphabet=("a",))
    if family == "balanced":
        return Pattern.of(("ab" * ((n + 1) // 2))[:n], alphabet="ab")
    if family == "random":
        return generate(
            GeneratorSpec(kind=GeneratorKind.UNIFORM_RANDOM, length=n, alphabet_size=2, seed=seed)
        )
    raise ValueError(f"unknown pattern family: {family!r}")


def sweep(config: SweepConfig, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["family", "estimator", "n", "info_bits", "entropy_hc"])
    estimators = {eid: estimator_callable(eid) for eid in config.estimator_ids}
    for family in config.families:
        for n in geometric_lengths(config.max_n, config.points):
            p = build_pattern(family, n, config.seed)
            for eid, estimator in estimators.items():
                info = estimator(p)
                writer.writerow(
                    [family, eid, n, f"{info:.6f}", f"{combinatorial_entropy(p, estimator):.6f}"]
                )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--families", default=",".join(FAMILIES))
    parser.add_argument("--estimators", default="min,mshannon")
    parser.add_argument("--max-n", type=int, default=10_000)
    parser.add_argument("--points", type=int, default=25)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = parser.parse_args(argv)

    config = SweepConfig(
        families=tuple(args.families.split(",")),
        estimator_ids=tuple(args.estimators.split(",")),
        max_n=args.max_n,
        points=args.points,
        seed=args.seed,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            sweep(config, fh)
    else:
        sweep(config, sys.stdout)
    return 0


if __name__ == "__main__":
    sys.exit(main())
