#!/usr/bin/env python3
"""Print the condition ladder across the one-parameter family
(1, 12, 60, 20*gamma, 60, 12, 1) and bracket where the pair check turns.

The window conditions have clean rational thresholds (a4 on [4, 8], a2 on
[3, 15], a1 down to 3, a0 to 0); the pairwise-correlation threshold for the
matching symmetric weight function sits strictly inside the a2 window, and
the script narrows it by bisection over the collapsed coefficient test.

Usage: gamma_table.py [--steps N]
"""

import argparse
import sys
from fractions import Fraction

from rayleigh_forge.polynomials import SymSeq, symseq_to_poly
from rayleigh_forge.rayleigh import exchangeable_check
from rayleigh_forge.scalars import format_rat
from rayleigh_forge.sequences import check_many, seq_from_values


def family(gamma: Fraction):
    return [1, 12, 60, 20 * gamma, 60, 12, 1]


def pair_ok(gamma: Fraction) -> bool:
    entries = [Fraction(v, 20) for v in family(gamma)]
    return exchangeable_check(SymSeq(entries), find_witness=False).verified


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", type=int, default=20)
    args = ap.parse_args()

    print("gamma      a0    a1    a2    a3    a4    pairwise")
    for gamma in (0, 1, 2, 3, Fraction(26, 10), 4, 6, 8, 10, 15, 16):
        gamma = Fraction(gamma)
        seq = seq_from_values(family(gamma), m=6)
        verdicts = check_many(seq, ("a0", "a1", "a2", "a3", "a4"))
        cells = "  ".join("ok  " if verdicts[c].holds else "FAIL" for c in sorted(verdicts))
        print(f"{format_rat(gamma):<9}  {cells}  {'ok' if pair_ok(gamma) else 'FAIL'}")

    lo, hi = Fraction(2), Fraction(3)  # pair check fails at 2 and holds at 3
    assert not pair_ok(lo) and pair_ok(hi)
    for _ in range(args.steps):
        mid = (lo + hi) / 2
        if pair_ok(mid):
            hi = mid
        else:
            lo = mid
    print(f"\npairwise threshold in ({format_rat(lo)}, {format_rat(hi)}]")
    print(f"                    ~ ({float(lo):.6f}, {float(hi):.6f}]")
    return 0


if __name__ == "__main__":
    sys.exit(main())
