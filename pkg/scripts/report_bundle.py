"""Write every deterministic report the package produces into one JSON bundle.

Two runs on the same machine must produce byte-identical files; the
acceptance suite checks this by running the script twice.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from fractions import Fraction

from lpcoh.catalog import builtin_catalog
from lpcoh.classifier import classify
from lpcoh.cli import catalog_payload, scan_payload, threshold_payload
from lpcoh.io import algebra_file_from_algebra, build_report
from lpcoh.threshold import FlowBump, HeintzeModel, TestFunction, flow_decay_check


def bundle() -> dict:
    reports = {}
    for e in builtin_catalog():
        afile = algebra_file_from_algebra(e.algebra)
        reports[e.key] = build_report(afile, classify(e.algebra), None).to_dict()
    model = HeintzeModel([1, 2])
    flow = FlowBump(TestFunction.for_model(model))
    decay = {f"p={p} t={t}": [flow_decay_check(model, flow, p, t, n) for n in (16, 32, 64, 128)]
             for p in (2, 3) for t in (0.5, 1.0)}
    ps = [Fraction(2), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(4)]
    return {
        "schema": "lpcoh.bundle/1",
        "catalog": catalog_payload(),
        "reports": reports,
        "threshold": threshold_payload([1, 2], ps, None, 64),
        "flow_decay": decay,
        "scans": {m: scan_payload(m, [2, 3, 4, 5, 6], 1) for m in ("grid:2", "sol", "tree:3")},
        "scan_p2": scan_payload("heisenberg", [2, 3, 4], 2),
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-", help="output path, - for stdout")
    args = ap.parse_args(argv)
    text = json.dumps(bundle(), indent=1, sort_keys=True) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(hashlib.sha256(text.encode()).hexdigest(), file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
