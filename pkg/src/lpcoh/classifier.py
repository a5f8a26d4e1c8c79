"""Three-way verdict for the first L^p-cohomology of a solvable group.

Decision procedure on a rational solvable Lie algebra G:

* tr ad vanishes identically (unimodular)  -> ClosedAtInfinity
* otherwise pick xi0 with tau(xi0) = 1 and K = ker tau;
  K nilpotent and every eigenvalue of ad_xi0 on K with real part > 0
  -> Heintze, critical exponent (sum of real parts) / (smallest real part)
* anything else -> Vanishing

The procedure assumes the algebra is presented in real-root (triangular)
form; passing from an arbitrary homogeneous space to such a group is a
manual reduction the caller performs first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .liealg import (
    LieAlgebra,
    Subspace,
    adjoint,
    derived_series,
    is_nilpotent,
    kernel_of_tau,
    modular_character,
    restrict_operator,
    validate,
)
from .polynomial import RatPolynomial
from .rational import fraction_str
from .spectral import RealPartReport, char_poly, default_tol, real_part_report

CLOSED = "ClosedAtInfinity"
HEINTZE = "Heintze"
VANISHING = "Vanishing"
VERDICTS = (CLOSED, HEINTZE, VANISHING)


class InvalidAlgebra(ValueError):
    def __init__(self, report):
        self.report = report
        first = report.violations[0]
        super().__init__(f"{len(report.violations)} violated identities, first: {first.kind} at basis indices "
                         f"{tuple(i + 1 for i in first.indices)}")


class NotSolvable(ValueError):
    def __init__(self, step: int, dim: int):
        self.step = step
        self.dim = dim
        super().__init__(
            f"derived series stabilizes at step {step} on a nonzero ideal of dimension {dim}; "
            "replace the algebra by a cocompact solvable subalgebra (radical plus the AN part "
            "of an Iwasawa decomposition of the Levi factor) before classifying"
        )


class Indeterminate(RuntimeError):
    pass


@dataclass(frozen=True)
class Statement:
    """One assertion about a cohomology space over a range of exponents p."""

    space: str  # "T" torsion, "R" reduced, "H" full
    p_range: tuple[str, str, str, str]  # (open bracket, lo, hi, close bracket)
    vanishes: bool
    note: str = ""

    def render(self) -> str:
        lb, lo, hi, rb = self.p_range
        rel = "= 0" if self.vanishes else "!= 0"
        text = f"{self.space}^{{1,p}} {rel} for p in {lb}{lo}, {hi}{rb}"
        return f"{text} ({self.note})" if self.note else text


@dataclass(frozen=True)
class Classification:
    verdict: str
    exponent: tuple[Fraction, Fraction] | None
    statements: tuple[Statement, ...]
    provenance: dict = field(compare=False)
    spectral: RealPartReport | None = None
    char_poly: RatPolynomial | None = None
    xi0: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if (self.exponent is not None) != (self.verdict == HEINTZE):
            raise ValueError("an exponent is reported exactly for Heintze verdicts")
        if self.exponent is not None and not (1 <= self.exponent[0] <= self.exponent[1]):
            raise ValueError("exponent interval must satisfy 1 <= lo <= hi")


def _statements(verdict: str, exponent: tuple[Fraction, Fraction] | None) -> tuple[Statement, ...]:
    if verdict == CLOSED:
        return (
            Statement("T", ("(", "1", "inf", ")"), False),
            Statement("R", ("(", "1", "inf", ")"), True,
                      "cited: reduced cohomology of unimodular solvable groups vanishes (Tessera); not computed"),
        )
    if verdict == VANISHING:
        return (Statement("H", ("(", "1", "inf", ")"), True),)
    lo, hi = exponent
    crit = fraction_str(lo) if lo == hi else f"[{fraction_str(lo)}, {fraction_str(hi)}]"
    return (
        Statement("T", ("[", "1", "inf", ")"), True),
        Statement("H", ("(", "1", crit, "]"), True),
        Statement("R", ("(", crit, "inf", ")"), False),
    )


def choose_xi0(tau: tuple[Fraction, ...]) -> list[Fraction]:
    """First basis vector e_i with tau_i != 0, rescaled so that tau(xi0) = 1."""
    i = next(k for k, t in enumerate(tau) if t)
    xi = [Fraction(0)] * len(tau)
    xi[i] = 1 / tau[i]
    return xi


def classify(alg: LieAlgebra, tol: Fraction | None = None,
             xi0: list[Fraction] | None = None) -> Classification:
    """Classify ``alg``; ``xi0`` overrides the default choice (must satisfy tau(xi0) > 0)."""
    tol = default_tol() if tol is None else Fraction(tol)
    report = validate(alg)
    if not report.ok:
        raise InvalidAlgebra(report)
    series = derived_series(alg)
    if series[-1].dim != 0:
        raise NotSolvable(len(series) - 1, series[-1].dim)

    tau = modular_character(alg)
    prov = {"tau": [fraction_str(t) for t in tau.tau], "tau_zero": tau.is_zero}
    if tau.is_zero:
        return Classification(CLOSED, None, _statements(CLOSED, None), prov)

    if xi0 is None:
        xi = choose_xi0(tau.tau)
    else:
        t = tau(xi0)
        if t <= 0:
            raise ValueError("xi0 must have positive trace")
        xi = [Fraction(x) / t for x in xi0]
    kernel: Subspace = kernel_of_tau(alg)
    nilp = is_nilpotent(alg, kernel)
    prov["xi0"] = [fraction_str(x) for x in xi]
    prov["kernel_dim"] = kernel.dim
    prov["kernel_nilpotent"] = nilp
    if not nilp:
        return Classification(VANISHING, None, _statements(VANISHING, None), prov, xi0=tuple(xi))

    op = restrict_operator(adjoint(alg, xi), kernel)
    cp = char_poly(op)
    rep = real_part_report(cp, tol)
    prov["real_parts"] = {"positive": rep.count_positive, "zero": rep.count_zero,
                          "negative": rep.count_negative, "method": rep.method}
    if not rep.all_positive:
        return Classification(VANISHING, None, _statements(VANISHING, None), prov, rep, cp, tuple(xi))
    lo, hi = rep.min_positive_real_part
    # the exponent is at least 1 because the sum dominates the smallest part
    exponent = (max(Fraction(1), rep.sum_real_parts / hi), rep.sum_real_parts / lo)
    return Classification(HEINTZE, exponent, _statements(HEINTZE, exponent), prov, rep, cp, tuple(xi))


def harmonic_l2_query(alg: LieAlgebra, tol: Fraction | None = None, max_refinements: int = 8) -> bool:
    """True iff the group carries non-constant harmonic functions with L^2 gradient.

    That happens exactly for Heintze verdicts with critical exponent < 2.  An
    exponent interval straddling 2 is refined by shrinking tol.
    """
    tol = default_tol() if tol is None else Fraction(tol)
    for _ in range(max_refinements + 1):
        c = classify(alg, tol)
        if c.verdict != HEINTZE:
            return False
        lo, hi = c.exponent
        if hi < 2:
            return True
        if lo >= 2:
            return False
        tol /= 2 ** 32
    raise Indeterminate("critical exponent interval still contains 2 after refinement")
