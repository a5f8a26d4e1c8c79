"""Classify the built-in catalog and show per-entry timing."""

from __future__ import annotations

import argparse
import time

from lpcoh.catalog import builtin_catalog
from lpcoh.classifier import classify, harmonic_l2_query


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.parse_args()
    total = time.perf_counter()
    for e in builtin_catalog():
        start = time.perf_counter()
        c = classify(e.algebra)
        dt = time.perf_counter() - start
        exp = "-" if c.exponent is None else str(c.exponent[0]) if c.exponent[0] == c.exponent[1] else str(c.exponent)
        ok = "ok" if c.verdict == e.expected_verdict else "MISMATCH"
        print(f"{e.key:<12} {c.verdict:<17} {exp:<6} harmonic-L2={harmonic_l2_query(e.algebra)!s:<5} {ok:<8} {dt:.3f}s")
    print(f"total {time.perf_counter() - total:.2f}s")


if __name__ == "__main__":
    main()
