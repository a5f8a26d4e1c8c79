"""Exact spectra of rational matrices: characteristic polynomials and real-part tallies.

Sign decisions (how many eigenvalues have positive, zero or negative real
part) are exact.  Only the numeric value of the smallest real part is an
interval, and it collapses to a point whenever that value is rational.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .polynomial import (
    RatPolynomial,
    SturmSequence,
    ZeroPolynomial,
    cauchy_index,
    count_real_roots_with_multiplicity,
    isolate_smallest_root,
    poly_gcd,
    rational_root_in,
)
from .rational import RatMatrix

DEFAULT_TOL = Fraction(1, 2 ** 64)


class NonSquare(ValueError):
    pass


def default_tol() -> Fraction:
    """2^-64 unless the LPCOH_TOL environment variable holds a rational."""
    env = os.environ.get("LPCOH_TOL")
    if env:
        tol = Fraction(env.strip())
        if tol <= 0:
            raise ValueError("LPCOH_TOL must be positive")
        return tol
    return DEFAULT_TOL


def char_poly(m: RatMatrix) -> RatPolynomial:
    """det(tI - M) by Berkowitz's division-free recurrence."""
    if m.rows != m.cols:
        raise NonSquare(f"characteristic polynomial of a {m.rows}x{m.cols} matrix")
    a = m.to_rows()
    n = m.rows
    p = [Fraction(1)]  # highest degree first
    for r in range(n):
        row = a[r][:r]
        v = [a[i][r] for i in range(r)]
        sub = [x[:r] for x in a[:r]]
        col = [Fraction(1), -a[r][r]]
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(row, v)), Fraction(0)))
            v = [sum((x * y for x, y in zip(srow, v)), Fraction(0)) for srow in sub]
        p = [sum((col[i - j] * p[j] for j in range(r + 1) if 0 <= i - j < len(col)), Fraction(0))
             for i in range(r + 2)]
    return RatPolynomial(reversed(p))


def _axis_parts(q: RatPolynomial) -> tuple[RatPolynomial, RatPolynomial]:
    """Real and imaginary parts of w -> q(i w): q(s) = E(s^2) + s O(s^2) gives E(-w^2) and w O(-w^2)."""
    re = [Fraction(0)] * len(q.coeffs)
    im = [Fraction(0)] * len(q.coeffs)
    for k, c in enumerate(q.coeffs):
        sign = -1 if (k // 2) % 2 else 1
        if k % 2 == 0:
            re[k] = sign * c
        else:
            im[k] = sign * c
    return RatPolynomial(re), RatPolynomial(im)


def _strip_zero_roots(p: RatPolynomial) -> tuple[int, RatPolynomial]:
    m = next(i for i, c in enumerate(p.coeffs) if c)
    return m, RatPolynomial(p.coeffs[m:])


def imaginary_axis_roots(p: RatPolynomial) -> int:
    """Number of roots with zero real part, counted with multiplicity."""
    if p.is_zero():
        raise ZeroPolynomial("imaginary-axis count of the zero polynomial")
    m, q = _strip_zero_roots(p)
    re, im = _axis_parts(q)
    g = poly_gcd(re, im)
    return m + count_real_roots_with_multiplicity(g)


def routh_first_column(p: RatPolynomial) -> list[Fraction] | None:
    """First column of the Routh array, or None when a zero pivot makes the table degenerate."""
    if p.is_zero():
        raise ZeroPolynomial("Routh array of the zero polynomial")
    desc = list(reversed(p.coeffs))
    n = p.degree
    if n == 0:
        return [desc[0]]
    r0 = desc[0::2]
    r1 = desc[1::2]
    width = len(r0)
    r0 = r0 + [Fraction(0)] * (width - len(r0))
    r1 = r1 + [Fraction(0)] * (width - len(r1))
    first = [r0[0]]
    for _ in range(n):
        if r1[0] == 0:
            return None
        first.append(r1[0])
        nxt = [(r1[0] * r0[i + 1] - r0[0] * r1[i + 1]) / r1[0] for i in range(width - 1)] + [Fraction(0)]
        r0, r1 = r1, nxt
    return first


def _sign_changes(values: list[Fraction]) -> int:
    return sum(1 for a, b in zip(values, values[1:]) if (a > 0) != (b > 0))


@dataclass(frozen=True)
class SignTally:
    positive: int
    zero: int
    negative: int
    method: str  # "routh" | "cauchy-index"


def _tally_by_cauchy_index(p: RatPolynomial) -> SignTally:
    n = p.degree
    m, q = _strip_zero_roots(p)
    re, im = _axis_parts(q)
    g = poly_gcd(re, im)
    axis = m + count_real_roots_with_multiplicity(g)
    re_red, im_red = re // g, im // g
    # roots of q off the axis: (left - right) from the argument change of q(i w)
    if re_red.degree >= im_red.degree:
        left_minus_right = -cauchy_index(im_red, re_red)
    else:
        left_minus_right = cauchy_index(re_red, im_red)
    off = n - axis
    right = (off - left_minus_right) // 2
    return SignTally(right, axis, off - right, "cauchy-index")


def sign_tally(p: RatPolynomial) -> SignTally:
    """Exact counts of roots with positive, zero and negative real part."""
    if p.is_zero():
        raise ZeroPolynomial("sign tally of the zero polynomial")
    col = routh_first_column(p)
    if col is not None:
        right = _sign_changes(col)
        return SignTally(right, 0, p.degree - right, "routh")
    return _tally_by_cauchy_index(p)


def all_roots_positive_real_part(p: RatPolynomial) -> bool:
    """Routh test on p(-t); degenerate arrays fall back to the exact Cauchy-index tally."""
    if p.is_zero():
        raise ZeroPolynomial("stability test of the zero polynomial")
    col = routh_first_column(p.reflect())
    if col is not None:
        return _sign_changes(col) == 0
    return _tally_by_cauchy_index(p).positive == p.degree


def _power_sums(monic: RatPolynomial, count: int) -> list[Fraction]:
    n = monic.degree
    a = monic.coeffs  # a[n] == 1
    s = [Fraction(n)]
    for k in range(1, count):
        acc = Fraction(0)
        for i in range(1, min(k, n + 1)):
            acc += a[n - i] * s[k - i]
        if k <= n:
            acc += k * a[n - k]
        s.append(-acc)
    return s


def pair_sum_polynomial(p: RatPolynomial) -> RatPolynomial:
    """Monic polynomial whose roots are r_i + r_j over unordered pairs i <= j of roots of p.

    Its square equals Res_x(p(x), p(z - x)) * p(z / 2) up to a constant.  It
    is built from power sums and Newton's identities; half its smallest real
    root is the smallest real part among the roots of p.
    """
    if p.degree < 1:
        raise ValueError("pair-sum polynomial needs degree >= 1")
    n = p.degree
    big = n * (n + 1) // 2
    s = _power_sums(p.monic(), big + 1)
    sums = [(sum((math.comb(k, j) * s[j] * s[k - j] for j in range(k + 1)), Fraction(0)) + 2 ** k * s[k]) / 2
            for k in range(big + 1)]
    b = [Fraction(1)]
    for k in range(1, big + 1):
        acc = sums[k] + sum((b[i] * sums[k - i] for i in range(1, k)), Fraction(0))
        b.append(-acc / k)
    return RatPolynomial(reversed(b))


@dataclass(frozen=True)
class RealPartReport:
    count_positive: int
    count_zero: int
    count_negative: int
    min_positive_real_part: tuple[Fraction, Fraction] | None
    sum_real_parts: Fraction
    method: str

    @property
    def degree(self) -> int:
        return self.count_positive + self.count_zero + self.count_negative

    @property
    def all_positive(self) -> bool:
        return self.count_zero == 0 and self.count_negative == 0


def min_real_part_interval(p: RatPolynomial, tol: Fraction) -> tuple[Fraction, Fraction]:
    """Certified enclosure of min Re(root), of width <= tol; a point when the value is rational."""
    q = pair_sum_polynomial(p)
    # every real root of q is a sum of two real parts, and 2 Re r is one of them
    sturm = SturmSequence(q)
    lo, hi = isolate_smallest_root(q, 2 * tol, sturm)
    if lo != hi:
        exact = rational_root_in(q, lo, hi, sturm)
        if exact is not None:
            lo = hi = exact
    return lo / 2, hi / 2


def real_part_report(p: RatPolynomial, tol: Fraction | None = None) -> RealPartReport:
    if p.is_zero():
        raise ZeroPolynomial("real-part report of the zero polynomial")
    tol = default_tol() if tol is None else Fraction(tol)
    n = p.degree
    total = -p[n - 1] / p.lc if n >= 1 else Fraction(0)
    tally = sign_tally(p)
    interval = None
    if n >= 1 and tally.zero == 0 and tally.negative == 0:
        interval = min_real_part_interval(p, tol)
        # the minimum is known to be positive; tighten until the enclosure says so too
        while interval[0] <= 0:
            tol /= 256
            interval = min_real_part_interval(p, tol)
    return RealPartReport(tally.positive, tally.zero, tally.negative, interval, total, tally.method)
