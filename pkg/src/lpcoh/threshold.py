"""Numerical checks of the critical exponent on diagonal Heintze models.

Model: G = R^m x R with [xi0, x_i] = lambda_i x_i.  In coordinates (x, t)
the left-invariant metric is dt^2 + sum_i e^{2 lambda_i t} dx_i^2 and the
volume element is e^{tau t} dx dt, tau = sum lambda_i.  The flow of xi0 is
phi_s(x, t) = (x, t + s); it scales L^p norms by e^{-s tau / p}.

Test function u(x, t) = chi(t) ubar(x): a smooth step in t times a bump in x.
Its gradient has squared length chi'^2 ubar^2 + chi^2 sum_i e^{-2 lambda_i t} (d_i ubar)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .liealg import LieAlgebra
from .rational import to_fraction

CONVERGENT = "Convergent"
DIVERGENT = "Divergent"


class InvalidModel(ValueError):
    pass


class InvalidCutoff(ValueError):
    pass


class SupportEscapesWindow(ValueError):
    pass


@dataclass(frozen=True)
class HeintzeModel:
    """Diagonal model; weights are stored in increasing order."""

    weights: tuple[Fraction, ...]

    def __init__(self, weights: Sequence):
        ws = tuple(sorted(to_fraction(w) for w in weights))
        if not ws:
            raise InvalidModel("at least one weight is needed")
        if ws[0] <= 0:
            raise InvalidModel(f"weights must be positive, got {[str(w) for w in ws]}")
        object.__setattr__(self, "weights", ws)

    @property
    def dim_n(self) -> int:
        return len(self.weights)

    @property
    def tau(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    @property
    def critical_exponent(self) -> Fraction:
        return self.tau / self.weights[0]

    def algebra(self) -> LieAlgebra:
        from .catalog import diagonal_extension
        return diagonal_extension(self.weights, name="heintze" + "".join(f"-{w}" for w in self.weights))

    def scaled(self, c) -> HeintzeModel:
        c = to_fraction(c)
        return HeintzeModel([c * w for w in self.weights])


@dataclass(frozen=True)
class TestFunction:
    """u(x, t) = chi(t) * prod_i (1 - ((x_i - c_i)/r)^2)^k on the cube |x_i - c_i| < r.

    chi is the degree-7 smoothstep rising from 0 at t = a to 1 at t = b.
    """

    __test__ = False  # not a pytest class

    center: tuple[float, ...] = (0.0,)
    radius: float = 1.0
    power: int = 4
    transition: tuple[float, float] = (0.0, 1.0)
    amplitude: float = 1.0

    def __post_init__(self):
        if self.radius <= 0 or self.power < 2:
            raise InvalidModel("bump needs radius > 0 and power >= 2")
        a, b = self.transition
        if not b > a:
            raise InvalidModel("transition interval must have positive length")

    @classmethod
    def for_model(cls, model: HeintzeModel, **kw) -> TestFunction:
        kw.setdefault("center", (0.0,) * model.dim_n)
        return cls(**kw)

    @property
    def width(self) -> float:
        return self.transition[1] - self.transition[0]

    def chi(self, t: np.ndarray) -> np.ndarray:
        a, _ = self.transition
        s = np.clip((t - a) / self.width, 0.0, 1.0)
        return s ** 4 * (35 - 84 * s + 70 * s ** 2 - 20 * s ** 3)

    def dchi(self, t: np.ndarray) -> np.ndarray:
        a, _ = self.transition
        s = np.clip((t - a) / self.width, 0.0, 1.0)
        return 140 * s ** 3 * (1 - s) ** 3 / self.width

    def bump_1d(self, y: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Factor (1 - y^2)^k and its derivative in x (y = (x - c)/r)."""
        inside = np.abs(y) < 1
        base = np.where(inside, 1 - y * y, 0.0)
        val = base ** self.power
        der = np.where(inside, -2 * self.power * y * base ** (self.power - 1) / self.radius, 0.0)
        return val, der


def _gl(n: int) -> tuple[np.ndarray, np.ndarray]:
    return _gl_cached(n)


@lru_cache(maxsize=None)
def _gl_cached(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_panel(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _gl(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w


def composite_gauss(a: float, b: float, n: int, per_panel: int = 4) -> tuple[np.ndarray, np.ndarray]:
    """n nodes in equal panels of ``per_panel`` Gauss-Legendre points."""
    panels = max(1, n // per_panel)
    edges = np.linspace(a, b, panels + 1)
    x, w = _gl(per_panel)
    h = (b - a) / panels
    nodes = (edges[:-1, None] + 0.5 * h * (x[None, :] + 1)).ravel()
    return nodes, np.tile(0.5 * h * w, panels)


# ---------------------------------------------------------------- exact rates


@dataclass(frozen=True)
class RateAnalysis:
    verdict: str
    p: Fraction
    rates: tuple[Fraction, ...]  # tau - p lambda_i, one per weight
    critical_exponent: Fraction
    smallest_weight: Fraction
    note: str = field(default="", compare=False)

    @property
    def decisive_rate(self) -> Fraction:
        return max(self.rates)


def rate_analysis(model: HeintzeModel, p) -> RateAnalysis:
    """Exact growth rates of |du|^p dvol as t -> +inf.

    Term i behaves like e^{(tau - p lambda_i) t}; the chi' term lives on the
    compact transition interval and never decides.  The integral converges
    iff every rate is negative.  A zero rate integrates a constant over a
    half-line and counts as divergent.
    """
    if not isinstance(model, HeintzeModel):
        raise InvalidModel("rate analysis needs a HeintzeModel")
    p = to_fraction(p)
    if p <= 0:
        raise InvalidModel("p must be positive")
    rates = tuple(model.tau - p * w for w in model.weights)
    verdict = CONVERGENT if max(rates) < 0 else DIVERGENT
    note = "tie at the critical exponent" if max(rates) == 0 else ""
    return RateAnalysis(verdict, p, rates, model.critical_exponent, model.weights[0], note)


def threshold_scan(model: HeintzeModel, ps: Sequence) -> list[RateAnalysis]:
    return [rate_analysis(model, p) for p in ps]


def rational_grid(lo, hi, step) -> list[Fraction]:
    lo, hi, step = to_fraction(lo), to_fraction(hi), to_fraction(step)
    if step <= 0:
        raise ValueError("step must be positive")
    out = []
    p = lo
    while p <= hi:
        out.append(p)
        p += step
    return out


# ---------------------------------------------------------------- quadrature


def _x_grid(fn: TestFunction, resolution: int):
    """Per-axis Gauss nodes on the bump support, with bump values and derivatives."""
    axes = []
    for c in fn.center:
        x, w = gauss_panel(c - fn.radius, c + fn.radius, resolution)
        val, der = fn.bump_1d((x - c) / fn.radius)
        axes.append((w, val, der))
    return axes


def _tensor(axes, pick) -> np.ndarray:
    out = np.ones(())
    for idx, ax in enumerate(axes):
        out = np.multiply.outer(out, pick(idx, ax))
    return out


def quadrature_norm(model: HeintzeModel, fn: TestFunction, p, cutoff: float | None = None,
                    resolution: int = 64) -> float:
    """||du||_p^p over t in [-T, T] by tensor Gauss-Legendre quadrature.

    The t axis is split at the transition endpoints so every panel sees a
    smooth integrand; each panel and each x axis gets ``resolution`` nodes.
    Slice contributions are reduced with math.fsum, so the result does not
    depend on summation order.
    """
    if len(fn.center) != model.dim_n:
        raise InvalidModel(f"test function lives on R^{len(fn.center)}, model on R^{model.dim_n}")
    p = float(p)
    if p <= 0:
        raise InvalidModel("p must be positive")
    a, b = fn.transition
    T = 10 * fn.width if cutoff is None else float(cutoff)
    if not (T > b and -T < a):
        raise InvalidCutoff(f"cutoff {T} must enclose the transition interval [{a}, {b}]")
    if resolution < 16:
        raise InvalidCutoff("resolution must be at least 16 nodes per axis")
    if fn.amplitude == 0:
        return 0.0

    axes = _x_grid(fn, resolution)
    wx = _tensor(axes, lambda i, ax: ax[0])
    amp2 = fn.amplitude ** 2
    u2 = amp2 * _tensor(axes, lambda i, ax: ax[1]) ** 2
    grads2 = []
    for i in range(model.dim_n):
        grads2.append(amp2 * _tensor(axes, lambda j, ax, i=i: ax[2] if j == i else ax[1]) ** 2)
    lam = [float(w) for w in model.weights]
    tau = float(model.tau)

    slices = []
    for lo, hi in ((-T, a), (a, b), (b, T)):
        ts, wt = gauss_panel(lo, hi, resolution)
        chi = fn.chi(ts)
        dchi = fn.dchi(ts)
        for t, w, c, dc in zip(ts, wt, chi, dchi):
            if c == 0.0 and dc == 0.0:
                continue
            g2 = dc * dc * u2
            for lam_i, gi in zip(lam, grads2):
                g2 = g2 + (c * c * math.exp(-2 * lam_i * t)) * gi
            slices.append(w * math.exp(tau * t) * float(np.sum(wx * g2 ** (p / 2))))
    return math.fsum(slices)


@dataclass(frozen=True)
class CutoffComparison:
    cutoff: float
    value_t: float
    value_2t: float
    analysis: RateAnalysis

    @property
    def ratio(self) -> float:
        return self.value_2t / self.value_t

    @property
    def relative_change(self) -> float:
        return abs(self.value_2t - self.value_t) / self.value_2t

    @property
    def measured_rate(self) -> float:
        """ln(Q(2T) / Q(T)) / T, the growth rate seen between the two cutoffs."""
        return math.log(self.ratio) / self.cutoff

    @property
    def numerically_divergent(self) -> bool:
        rho = float(self.analysis.decisive_rate)
        return rho >= 0 and self.ratio > math.exp(rho * self.cutoff / 2)


def compare_cutoffs(model: HeintzeModel, fn: TestFunction, p, cutoff: float | None = None,
                    resolution: int = 64) -> CutoffComparison:
    T = 10 * fn.width if cutoff is None else float(cutoff)
    q1 = quadrature_norm(model, fn, p, T, resolution)
    q2 = quadrature_norm(model, fn, p, 2 * T, resolution)
    return CutoffComparison(T, q1, q2, rate_analysis(model, p))


RATE_TOLERANCE = 0.1
CAUCHY_TOLERANCE = 0.01


def quadrature_agrees(comp: CutoffComparison) -> bool:
    """Does the cutoff comparison confirm the exact verdict?

    Convergent: Q(T) and Q(2T) within 1%.  Divergent: growth beyond
    e^{rho T / 2} and measured rate within 10% of rho; at rho = 0 the
    relative test is void, so the rate must lie within a tenth of the
    smallest weight of zero instead.
    """
    a = comp.analysis
    if a.verdict == CONVERGENT:
        return comp.relative_change <= CAUCHY_TOLERANCE
    rho = float(a.decisive_rate)
    slack = RATE_TOLERANCE * (rho if rho > 0 else float(a.smallest_weight))
    return comp.numerically_divergent and abs(comp.measured_rate - rho) <= slack


# ---------------------------------------------------------------- flow decay


@dataclass(frozen=True)
class FlowBump:
    """Compactly supported f(x, t) = ubar(x) * (1 - ((t - t0)/r)^2)^k."""

    spatial: TestFunction
    t_center: float = 0.0
    t_radius: float = 1.0
    power: int = 6

    def t_support(self, shift: float = 0.0) -> tuple[float, float]:
        return self.t_center - self.t_radius - shift, self.t_center + self.t_radius - shift

    def xi0_profile(self, t: np.ndarray) -> np.ndarray:
        """d/dt of the t factor; xi0 f = ubar(x) * this."""
        y = (t - self.t_center) / self.t_radius
        inside = np.abs(y) < 1
        return np.where(inside, -2 * self.power * y * (1 - y * y) ** (self.power - 1) / self.t_radius, 0.0)


DEFAULT_FLOW_WINDOW = (-2.5, 2.5)


def _flow_lp_norm(model: HeintzeModel, f: FlowBump, p: float, shift: float,
                  window: tuple[float, float], resolution: int) -> float:
    axes = _x_grid(f.spatial, resolution)
    wx = _tensor(axes, lambda i, ax: ax[0])
    ux = np.abs(_tensor(axes, lambda i, ax: ax[1])) ** p
    ts, wt = composite_gauss(window[0], window[1], resolution)
    prof = np.abs(f.xi0_profile(ts + shift)) ** p * np.exp(float(model.tau) * ts)
    xs = float(np.sum(wx * ux))
    total = math.fsum(float(v) for v in wt * prof) * xs
    return total ** (1 / p)


def flow_decay_check(model: HeintzeModel, f: FlowBump, p, t, resolution: int = 128,
                     window: tuple[float, float] = DEFAULT_FLOW_WINDOW) -> float:
    """Relative error |‖(xi0 f) o phi_t‖_p - e^{-t tau/p} ‖xi0 f‖_p| / (e^{-t tau/p} ‖xi0 f‖_p).

    Both norms use the same composite Gauss-Legendre grid on the t window.
    """
    p = float(p)
    t = float(t)
    if len(f.spatial.center) != model.dim_n:
        raise InvalidModel("flow bump and model disagree on dimension")
    for shift in (0.0, t):
        lo, hi = f.t_support(shift)
        if lo < window[0] or hi > window[1]:
            raise SupportEscapesWindow(
                f"support [{lo}, {hi}] after translation by {shift} leaves the window {window}")
    lhs = _flow_lp_norm(model, f, p, t, window, resolution)
    rhs = math.exp(-t * float(model.tau) / p) * _flow_lp_norm(model, f, p, 0.0, window, resolution)
    return abs(lhs - rhs) / rhs
