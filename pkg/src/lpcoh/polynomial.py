"""Univariate polynomials over Q and exact real-root machinery (Sturm sequences)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .rational import to_fraction


class ZeroPolynomial(ValueError):
    pass


@dataclass(frozen=True)
class RatPolynomial:
    """Coefficients in ascending degree; trailing zeros are stripped."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):
        cs = [to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_roots(cls, roots: Iterable) -> RatPolynomial:
        p = cls([1])
        for r in roots:
            p = p * cls([-to_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: RatPolynomial) -> RatPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPolynomial(self[i] + other[i] for i in range(n))

    def __neg__(self) -> RatPolynomial:
        return RatPolynomial(-c for c in self.coeffs)

    def __sub__(self, other: RatPolynomial) -> RatPolynomial:
        return self + (-other)

    def __mul__(self, other) -> RatPolynomial:
        if not isinstance(other, RatPolynomial):
            c = to_fraction(other)
            return RatPolynomial(c * a for a in self.coeffs)
        if self.is_zero() or other.is_zero():
            return RatPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RatPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> RatPolynomial:
        out = RatPolynomial([1])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: RatPolynomial) -> tuple[RatPolynomial, RatPolynomial]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return RatPolynomial(), self
        quo = [Fraction(0)] * dq
        lc = other.lc
        m = len(other.coeffs)
        for i in range(dq - 1, -1, -1):
            q = rem[i + m - 1] / lc
            quo[i] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= q * b
        return RatPolynomial(quo), RatPolynomial(rem[:m - 1])

    def __mod__(self, other: RatPolynomial) -> RatPolynomial:
        return self.divmod(other)[1]

    def __floordiv__(self, other: RatPolynomial) -> RatPolynomial:
        q, r = self.divmod(other)
        return q

    def __call__(self, x) -> Fraction:
        x = to_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> RatPolynomial:
        return RatPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def monic(self) -> RatPolynomial:
        return self * (1 / self.lc)

    def reflect(self) -> RatPolynomial:
        """p(-t)."""
        return RatPolynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def shift_scale(self, a) -> RatPolynomial:
        """p(a t)."""
        a = to_fraction(a)
        return RatPolynomial(c * a ** i for i, c in enumerate(self.coeffs))

    def primitive(self) -> RatPolynomial:
        """Positive rational multiple with coprime integer coefficients and positive leading coefficient."""
        if self.is_zero():
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        sgn = 1 if ints[-1] > 0 else -1
        return RatPolynomial(Fraction(sgn * c // g) for c in ints)

    def int_coeffs(self) -> list[int]:
        """Integer coefficients of a positive multiple (sign-preserving)."""
        if self.is_zero():
            return []
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints) or 1
        return [c // g for c in ints]

    def to_strings(self) -> list[str]:
        from .rational import fraction_str
        return [fraction_str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"RatPolynomial({[str(c) for c in self.coeffs]})"


def poly_gcd(a: RatPolynomial, b: RatPolynomial) -> RatPolynomial:
    """Monic gcd (the zero polynomial if both are zero)."""
    while not b.is_zero():
        a, b = b, (a % b).primitive()
    return a.monic() if not a.is_zero() else a


def square_free_part(p: RatPolynomial) -> RatPolynomial:
    if p.degree <= 0:
        return p
    return (p // poly_gcd(p, p.derivative())).primitive()


def square_free_decomposition(p: RatPolynomial) -> list[tuple[RatPolynomial, int]]:
    """Yun's algorithm: [(f_k, k)] with p = lc * prod f_k^k, f_k square-free and coprime."""
    if p.is_zero():
        raise ZeroPolynomial("square-free decomposition of zero")
    out: list[tuple[RatPolynomial, int]] = []
    dp = p.derivative()
    a = poly_gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        f = poly_gcd(b, d)
        if f.degree > 0:
            out.append((f, k))
        b = b // f
        c = d // f
        d = c - b.derivative()
        k += 1
    return out


def int_sign_at(coeffs: Sequence[int], num: int, den: int) -> int:
    """Sign of sum c_i (num/den)^i for den > 0, in pure integer arithmetic."""
    # Horner on the homogenized form sum c_i num^i den^(d - i)
    acc = 0
    pw = 1
    for c in reversed(coeffs):
        acc = acc * num + c * pw
        pw *= den
    return (acc > 0) - (acc < 0)


def _sign_at(coeffs: Sequence[int], x: Fraction) -> int:
    return int_sign_at(coeffs, x.numerator, x.denominator)


def _sign_at_infinity(coeffs: Sequence[int], positive: bool) -> int:
    if not coeffs:
        return 0
    d = len(coeffs) - 1
    s = (coeffs[-1] > 0) - (coeffs[-1] < 0)
    return s if positive or d % 2 == 0 else -s


def signed_remainder_sequence(f: RatPolynomial, g: RatPolynomial) -> list[list[int]]:
    """f, g, -rem(f, g), ... each rescaled by a positive constant to integer coefficients."""
    seq = []
    a, b = f, g
    if a.is_zero():
        return seq
    seq.append(a.int_coeffs())
    while not b.is_zero():
        seq.append(b.int_coeffs())
        r = a % b
        a, b = b, RatPolynomial(_positive_rescale(-r))
    return seq


def _positive_rescale(p: RatPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.int_coeffs()]


def _variations(signs: Iterable[int]) -> int:
    last = 0
    n = 0
    for s in signs:
        if s == 0:
            continue
        if last and s != last:
            n += 1
        last = s
    return n


def variations_at(seq: Sequence[Sequence[int]], x: Fraction | None, positive_inf: bool = True) -> int:
    if x is None:
        return _variations(_sign_at_infinity(c, positive_inf) for c in seq)
    return _variations(_sign_at(c, x) for c in seq)


def cauchy_index(num: RatPolynomial, den: RatPolynomial) -> int:
    """Cauchy index of num/den over the whole real line (jump from -inf to +inf counts +1)."""
    seq = signed_remainder_sequence(den, num)
    return variations_at(seq, None, positive_inf=False) - variations_at(seq, None, positive_inf=True)


class SturmSequence:
    """Sturm chain of the square-free part of a polynomial."""

    def __init__(self, p: RatPolynomial):
        if p.is_zero():
            raise ZeroPolynomial("Sturm sequence of the zero polynomial")
        self.poly = square_free_part(p)
        self.seq = signed_remainder_sequence(self.poly, self.poly.derivative())

    def variations(self, x: Fraction | None, positive_inf: bool = True) -> int:
        return variations_at(self.seq, x, positive_inf)

    def count(self, a: Fraction | None, b: Fraction | None) -> int:
        """Number of distinct real roots in (a, b]; None stands for -inf / +inf."""
        return self.variations(a, positive_inf=False) - self.variations(b, positive_inf=True)

    def total(self) -> int:
        return self.count(None, None)


def root_bound(p: RatPolynomial) -> Fraction:
    """Cauchy bound: every complex root has modulus < 1 + max|c_i / c_n|."""
    lc = p.lc
    return 1 + max((abs(c / lc) for c in p.coeffs[:-1]), default=Fraction(0))


def count_real_roots_with_multiplicity(p: RatPolynomial) -> int:
    if p.degree <= 0:
        return 0
    return sum(k * SturmSequence(f).total() for f, k in square_free_decomposition(p))


def isolate_smallest_root(p: RatPolynomial, tol: Fraction,
                          sturm: SturmSequence | None = None) -> tuple[Fraction, Fraction] | None:
    """Interval [lo, hi] with hi - lo <= tol containing the smallest real root.

    Bisection starts from the symmetric Cauchy bracket, so intervals for a
    smaller tolerance are nested inside those for a larger one.  Exact roots
    hit by a bisection midpoint are returned as point intervals.
    """
    sturm = SturmSequence(p) if sturm is None else sturm
    if sturm.total() == 0:
        return None
    sq = sturm.poly.int_coeffs()
    bound = root_bound(sturm.poly)
    lo, hi = -bound, bound
    v_lo, v_hi = sturm.variations(lo), sturm.variations(hi)
    # invariant: the smallest root lies in (lo, hi]
    while True:
        if _sign_at(sq, hi) == 0 and v_lo - v_hi == 1:
            return hi, hi
        if hi - lo <= tol:
            return lo, hi
        mid = (lo + hi) / 2
        v_mid = sturm.variations(mid)
        if v_lo - v_mid >= 1:
            hi, v_hi = mid, v_mid
        else:
            lo, v_lo = mid, v_mid


def rational_root_in(p: RatPolynomial, lo: Fraction, hi: Fraction,
                     sturm: SturmSequence | None = None) -> Fraction | None:
    """The rational root of ``p`` inside the isolating interval [lo, hi], if there is one.

    A rational root u/v of the primitive integer form has v | lc, so once the
    interval is narrower than 1/(2 lc^2) the best approximation with
    denominator <= lc is the only candidate.
    """
    ints = p.primitive().int_coeffs()
    lead = abs(ints[-1])
    if _sign_at(ints, hi) == 0:
        return hi
    sturm = SturmSequence(p) if sturm is None else sturm
    width = Fraction(1, 4 * lead * lead)
    v_lo = sturm.variations(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        v_mid = sturm.variations(mid)
        if v_lo - v_mid >= 1:
            hi = mid
        else:
            lo, v_lo = mid, v_mid
    cand = ((lo + hi) / 2).limit_denominator(lead)
    if lo < cand <= hi and _sign_at(ints, cand) == 0:
        return cand
    return None
