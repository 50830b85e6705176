#!/usr/bin/env python3
"""Scan the Potts negative-correlation threshold across small matroids.

For each matroid, bisect for the largest q in (0, 1] that sampling fails to
refute.  Uniform matroids get the exact exchangeable check instead; for the
rest this is a heuristic bracket, useful for spotting where the property
starts to break, not for proving anything.

Usage: qc_scan.py [--resolution N] [--budget N] [--seed N]
"""

import argparse
import sys

from rayleigh_forge.matroids import (
    complete_graph,
    cycle_graph,
    graphic_matroid,
    path_graph,
    two_sum,
    uniform_matroid,
)
from rayleigh_forge.prng import DEFAULT_SEED
from rayleigh_forge.rayleigh import estimate_qc
from rayleigh_forge.scalars import format_rat


def _relabel_uniform(m, r, prefix):
    return uniform_matroid(m, r, [f"{prefix}{i}" for i in range(1, m)] + ["g"])


def subjects():
    yield "uniform-4-2", uniform_matroid(4, 2)
    yield "uniform-6-3", uniform_matroid(6, 3)
    yield "triangle", graphic_matroid(cycle_graph(3))
    yield "square", graphic_matroid(cycle_graph(4))
    yield "k4", graphic_matroid(complete_graph(4))
    yield "path-4", graphic_matroid(path_graph(4))
    yield "u42+u42", two_sum(_relabel_uniform(4, 2, "a"), _relabel_uniform(4, 2, "b"), "g")


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolution", type=int, default=8)
    ap.add_argument("--budget", type=int, default=64)
    ap.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    args = ap.parse_args()
    for name, matroid in subjects():
        bracket = estimate_qc(
            matroid, resolution=args.resolution, budget=args.budget, seed=args.seed
        )
        refuted = format_rat(bracket.refuted) if bracket.refuted is not None else "none"
        tag = "exact" if bracket.exact else "sampled"
        print(
            f"{name:<12} m={matroid.ground.m:<3} passed<={format_rat(bracket.passed):<12} "
            f"refuted>={refuted:<12} [{tag}]"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
