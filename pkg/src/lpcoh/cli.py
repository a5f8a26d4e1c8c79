"""Command-line entry point: ``lpcoh <command> ...``.

Exit codes: 0 ok, 2 algebra not solvable, 3 invalid input, 4 parse error,
5 exponent requested for a non-Heintze algebra.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .catalog import builtin_catalog
from .classifier import HEINTZE, InvalidAlgebra, NotSolvable, classify
from .io import ParseError, algebra_file_from_algebra, build_report, classification_dict, load_algebra_file
from .isoperimetry import EmptyInterior, dichotomy_scan, parse_model
from .isoperimetry import InvalidModel as InvalidBallModel
from .liealg import validate
from .rational import fraction_str
from .spectral import default_tol
from .threshold import (
    HeintzeModel,
    InvalidCutoff,
    InvalidModel,
    TestFunction,
    compare_cutoffs,
    quadrature_agrees,
    rational_grid,
)

EXIT_OK = 0
EXIT_NOT_SOLVABLE = 2
EXIT_INVALID = 3
EXIT_PARSE = 4
EXIT_NOT_HEINTZE = 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_rational(text: str) -> Fraction:
    q = _rational_arg(text)
    if q <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return q


def _rational_list(text: str) -> list[Fraction]:
    return [_rational_arg(t) for t in text.split(",") if t.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def _scan_arg(text: str) -> list[Fraction]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("scan must look like lo:hi:step")
    try:
        return rational_grid(*(_rational_arg(p) for p in parts))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


def _load(path: str):
    afile = load_algebra_file(path)
    return afile, afile.to_algebra()


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> int:
    _, alg = _load(args.path)
    report = validate(alg)
    payload = {
        "schema": "lpcoh.validation/1",
        "ok": report.ok,
        "violations": [{"kind": v.kind, "indices": [i + 1 for i in v.indices], "value": fraction_str(v.value)}
                       for v in report.violations],
    }
    lines = [f"{'ok' if report.ok else 'invalid'}: {len(report.violations)} violations\n"]
    for v in payload["violations"]:
        lines.append(f"  {v['kind']} at {tuple(v['indices'])}: {v['value']}\n")
    _emit(payload, "".join(lines), args.format)
    return EXIT_OK if report.ok else EXIT_INVALID


def cmd_classify(args) -> int:
    afile, alg = _load(args.path)
    start = time.perf_counter()
    c = classify(alg, args.tol)
    elapsed = None if args.no_timing else time.perf_counter() - start
    report = build_report(afile, c, elapsed)
    if args.format == "json":
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_exponent(args) -> int:
    afile, alg = _load(args.path)
    c = classify(alg, args.tol)
    if c.verdict != HEINTZE:
        print(f"no critical exponent: verdict is {c.verdict}", file=sys.stderr)
        return EXIT_NOT_HEINTZE
    lo, hi = (fraction_str(x) for x in c.exponent)
    _emit({"schema": "lpcoh.exponent/1", "lo": lo, "hi": hi}, f"{lo} {hi}\n", args.format)
    return EXIT_OK


def threshold_payload(weights, ps, cutoff, resolution) -> dict:
    model = HeintzeModel(weights)
    fn = TestFunction.for_model(model)
    rows = []
    for p in ps:
        comp = compare_cutoffs(model, fn, p, cutoff, resolution)
        a = comp.analysis
        rows.append({
            "p": fraction_str(a.p),
            "verdict": a.verdict,
            "rates": [fraction_str(r) for r in a.rates],
            "decisive_rate": fraction_str(a.decisive_rate),
            "q_T": comp.value_t,
            "q_2T": comp.value_2t,
            "relative_change": comp.relative_change,
            "measured_rate": comp.measured_rate,
            "quadrature_agrees": quadrature_agrees(comp),
        })
    return {
        "schema": "lpcoh.threshold/1",
        "weights": [fraction_str(w) for w in model.weights],
        "tau": fraction_str(model.tau),
        "critical_exponent": fraction_str(model.critical_exponent),
        "cutoff": 10 * fn.width if cutoff is None else float(cutoff),
        "resolution": resolution,
        "rows": rows,
    }


def threshold_text(d: dict) -> str:
    out = [f"weights {' '.join(d['weights'])}  tau {d['tau']}  critical exponent {d['critical_exponent']}\n",
           f"cutoff T = {d['cutoff']!r}, resolution {d['resolution']}\n",
           f"{'p':>6} {'verdict':>10} {'rates':>12} {'Q(T)':>24} {'Q(2T)':>24} {'rel.change':>24}"
           f" {'measured rate':>24} agrees\n"]
    for r in d["rows"]:
        out.append(f"{r['p']:>6} {r['verdict']:>10} {','.join(r['rates']):>12} {r['q_T']!r:>24} {r['q_2T']!r:>24}"
                   f" {r['relative_change']!r:>24} {r['measured_rate']!r:>24} {r['quadrature_agrees']}\n")
    return "".join(out)


def cmd_verify_threshold(args) -> int:
    ps = args.scan if args.scan is not None else [args.p]
    d = threshold_payload(args.weights, ps, args.cutoff, args.resolution)
    _emit(d, threshold_text(d), args.format)
    return EXIT_OK


def scan_payload(model_text: str, radii, p) -> dict:
    scan = dichotomy_scan(parse_model(model_text), radii, p)
    rows = [{
        "radius": r.radius, "vertices": r.vertices, "edges": r.edges, "interior": r.interior,
        "dirichlet": r.dirichlet.to_dict(),
        "sobolev": {"value": r.sobolev.value, "method": r.sobolev.method, "iterations": r.sobolev.iterations,
                    "crosscheck": r.sobolev.crosscheck,
                    "exact": None if r.sobolev.exact is None else str(r.sobolev.exact)},
    } for r in scan.rows]
    return {"schema": "lpcoh.dichotomy/1", "model": scan.model, "p": scan.p, "rows": rows,
            "summary": scan.summary()}


def scan_text(d: dict) -> str:
    out = [f"model {d['model']}  p = {d['p']!r}\n",
           f"{'radius':>6} {'vertices':>8} {'edges':>6} {'interior':>8} {'dirichlet lower':>22}"
           f" {'dirichlet upper':>22} {'exact':>8} {'sobolev':>22} {'iters':>5} {'p=2 eigen check':>22} method\n"]
    for r in d["rows"]:
        s = r["sobolev"]
        out.append(f"{r['radius']:>6} {r['vertices']:>8} {r['edges']:>6} {r['interior']:>8}"
                   f" {r['dirichlet']['lower']!r:>22} {r['dirichlet']['upper']!r:>22} {r['dirichlet']['exact'] or '-':>8}"
                   f" {s['value']!r:>22} {s['iterations']:>5} {repr(s['crosscheck']) if s['crosscheck'] is not None else '-':>22}"
                   f" {s['method']}\n")
    s = d["summary"]
    out.append(f"trend: {s['trend']} (decay factor {s['decay_factor']!r}, min lower bound {s['min_lower_bound']!r},"
               f" monotone {s['monotone_decreasing']})\n")
    return "".join(out)


def cmd_cheeger(args) -> int:
    d = scan_payload(args.model, args.radii, args.p)
    _emit(d, scan_text(d), args.format)
    return EXIT_OK


def catalog_payload(tol=None) -> dict:
    entries = []
    for e in builtin_catalog():
        c = classify(e.algebra, tol)
        exp = e.expected_exponent
        got = classification_dict(c)
        match = c.verdict == e.expected_verdict and (exp is None or c.exponent == (exp, exp))
        entries.append({
            "key": e.key, "dim": e.algebra.dim,
            "expected_verdict": e.expected_verdict,
            "expected_exponent": None if exp is None else fraction_str(exp),
            "verdict": got["verdict"], "exponent": got["exponent"],
            "match": match, "note": e.note,
        })
    return {"schema": "lpcoh.catalog/1", "tool_version": __version__, "entries": entries}


def catalog_text(d: dict) -> str:
    out = [f"{'key':<12} {'dim':>3} {'expected':<17} {'computed':<17} {'exponent':<10} match  note\n"]
    for e in d["entries"]:
        ex = e["exponent"]
        exs = "-" if ex is None else (ex["lo"] if ex["lo"] == ex["hi"] else f"[{ex['lo']},{ex['hi']}]")
        out.append(f"{e['key']:<12} {e['dim']:>3} {e['expected_verdict']:<17} {e['verdict']:<17} {exs:<10}"
                   f" {str(e['match']):<6} {e['note']}\n")
    return "".join(out)


def cmd_catalog(args) -> int:
    if args.export:
        outdir = Path(args.export)
        outdir.mkdir(parents=True, exist_ok=True)
        for e in builtin_catalog():
            exp = e.expected_exponent
            expected = {"verdict": e.expected_verdict}
            if exp is not None:
                expected["exponent"] = fraction_str(exp)
            afile = algebra_file_from_algebra(e.algebra, expected)
            (outdir / f"{e.key}.json").write_text(json.dumps(afile.to_dict(), indent=2) + "\n", encoding="utf-8")
    d = catalog_payload(args.tol)
    _emit(d, catalog_text(d), args.format)
    return EXIT_OK if all(e["match"] for e in d["entries"]) else EXIT_INVALID


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lpcoh", description="First L^p-cohomology of solvable Lie groups.")
    ap.add_argument("--version", action="version", version=f"lpcoh {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    def tol(p):
        p.add_argument("--tol", type=_positive_rational, default=None,
                       help="width of exponent enclosures (rational; default LPCOH_TOL or 2^-64)")

    p = sub.add_parser("validate", help="check antisymmetry and the Jacobi identity")
    p.add_argument("path")
    fmt(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("classify", help="verdict, critical exponent and per-p statements")
    p.add_argument("path")
    tol(p)
    fmt(p)
    p.add_argument("--no-timing", action="store_true", help="omit wall-clock timing (bit-identical output)")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("exponent", help="critical exponent interval only")
    p.add_argument("path")
    tol(p)
    fmt(p)
    p.set_defaults(func=cmd_exponent)

    p = sub.add_parser("verify-threshold", help="rate analysis and quadrature on a diagonal model")
    p.add_argument("--weights", type=_rational_list, required=True, help="comma-separated, e.g. 1,2")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", type=_positive_rational)
    g.add_argument("--scan", type=_scan_arg, help="lo:hi:step with rational entries")
    p.add_argument("--cutoff", type=float, default=None)
    p.add_argument("--resolution", type=int, default=64)
    fmt(p)
    p.set_defaults(func=cmd_verify_threshold)

    p = sub.add_parser("cheeger", help="isoperimetric and Sobolev constants over growing balls")
    p.add_argument("--model", required=True, help="grid:D, tree:K, heisenberg, sol[:a,b,c,d]")
    p.add_argument("--radii", type=_int_list, required=True, help="comma-separated, increasing")
    p.add_argument("--p", type=_positive_rational, default=Fraction(1))
    fmt(p)
    p.set_defaults(func=cmd_cheeger)

    p = sub.add_parser("catalog", help="built-in algebras with expected and computed verdicts")
    tol(p)
    fmt(p)
    p.add_argument("--export", metavar="DIR", help="also write each entry as an algebra JSON file")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "tol", None) is None and hasattr(args, "tol"):
            args.tol = default_tol()
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotSolvable as exc:
        print(f"not solvable: {exc}", file=sys.stderr)
        return EXIT_NOT_SOLVABLE
    except InvalidAlgebra as exc:
        print(f"invalid algebra: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InvalidModel, InvalidBallModel, InvalidCutoff, EmptyInterior) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        # includes a malformed LPCOH_TOL
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
