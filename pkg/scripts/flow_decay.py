"""Convergence table for the flow-decay identity under resolution doubling."""

from __future__ import annotations

import argparse

from lpcoh.threshold import FlowBump, HeintzeModel, TestFunction, flow_decay_check


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--weights", default="1,2")
    ap.add_argument("--p", type=float, nargs="+", default=[2.0, 3.0])
    ap.add_argument("--t", type=float, nargs="+", default=[0.5, 1.0])
    args = ap.parse_args()
    model = HeintzeModel([int(w) for w in args.weights.split(",")])
    f = FlowBump(TestFunction.for_model(model))
    res = (16, 32, 64, 128)
    print(f"{'p':>4} {'t':>5} " + " ".join(f"{n:>10}" for n in res))
    for p in args.p:
        for t in args.t:
            errs = [flow_decay_check(model, f, p, t, n) for n in res]
            print(f"{p:>4} {t:>5} " + " ".join(f"{e:>10.2e}" for e in errs))


if __name__ == "__main__":
    main()
