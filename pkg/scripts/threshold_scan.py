"""Scan p across the critical exponent of a diagonal model and tabulate rates and quadrature.

    python3 scripts/threshold_scan.py --weights 1,2 --lo 2 --hi 4 --step 1/4
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from lpcoh.cli import threshold_payload, threshold_text
from lpcoh.threshold import rational_grid


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--weights", default="1,2")
    ap.add_argument("--lo", type=Fraction, default=Fraction(2))
    ap.add_argument("--hi", type=Fraction, default=Fraction(4))
    ap.add_argument("--step", type=Fraction, default=Fraction(1, 4))
    ap.add_argument("--cutoff", type=float, default=None)
    ap.add_argument("--resolution", type=int, default=64)
    args = ap.parse_args()
    weights = [Fraction(w) for w in args.weights.split(",")]
    d = threshold_payload(weights, rational_grid(args.lo, args.hi, args.step), args.cutoff, args.resolution)
    print(threshold_text(d), end="")


if __name__ == "__main__":
    main()
