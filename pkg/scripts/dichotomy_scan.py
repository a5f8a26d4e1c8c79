"""Isoperimetric dichotomy on growing balls: amenable unimodular groups against the 3-regular tree."""

from __future__ import annotations

import argparse

from lpcoh.cli import scan_payload, scan_text


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--models", nargs="+", default=["grid:2", "sol", "heisenberg", "tree:3"])
    ap.add_argument("--radii", default="2,3,4,5,6")
    ap.add_argument("--p", type=float, default=1.0)
    args = ap.parse_args()
    radii = [int(r) for r in args.radii.split(",")]
    for m in args.models:
        print(scan_text(scan_payload(m, radii, args.p)))


if __name__ == "__main__":
    main()
