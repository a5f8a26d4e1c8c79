"""Built-in algebras with their expected verdicts.

Expected exponents are computed from the construction weights alone
(sum / min of the real parts), never by running the classifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classifier import CLOSED, HEINTZE, VANISHING
from .liealg import LieAlgebra, direct_sum


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    algebra: LieAlgebra
    expected_verdict: str
    weights: tuple[Fraction, ...] | None = None  # real parts of ad_xi0 on ker tau, diagonal model
    hyperbolic_plane: bool = False
    note: str = ""

    @property
    def expected_exponent(self) -> Fraction | None:
        if self.expected_verdict != HEINTZE:
            return None
        return sum(self.weights) / min(self.weights)


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra.from_table(n, {}, names=[f"a{i + 1}" for i in range(n)], name=f"abelian-{n}")


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_table(3, {(0, 1): {2: 1}}, names=["x", "y", "z"], name="heisenberg")


def aff() -> LieAlgebra:
    return LieAlgebra.from_table(2, {(0, 1): {1: 1}}, names=["t", "x"], name="aff")


def sol() -> LieAlgebra:
    return LieAlgebra.from_table(3, {(0, 1): {1: 1}, (0, 2): {2: -1}}, names=["t", "x", "y"], name="sol")


def diagonal_extension(weights: Sequence, name: str = "") -> LieAlgebra:
    """R acting on an abelian R^m by diag(weights): [t, x_i] = w_i x_i."""
    m = len(weights)
    table = {(0, i + 1): {i + 1: Fraction(w)} for i, w in enumerate(weights) if w}
    names = ["t"] + [f"x{i + 1}" for i in range(m)]
    return LieAlgebra.from_table(m + 1, table, names=names, name=name)


def real_hyperbolic(n: int) -> LieAlgebra:
    """Solvable model of real hyperbolic n-space (dimension n)."""
    return diagonal_extension([1] * (n - 1), name=f"RH{n}")


def complex_hyperbolic(k: int) -> LieAlgebra:
    """Solvable model of complex hyperbolic k-space (dimension 2k).

    Basis t, x_1..x_{k-1}, y_1..y_{k-1}, z with [x_i, y_i] = z, weight 1 on
    the x, y and weight 2 on the center z.
    """
    m = k - 1
    n = 2 * k
    z = n - 1
    table: dict = {}
    for i in range(m):
        xi, yi = 1 + i, 1 + m + i
        table[(0, xi)] = {xi: 1}
        table[(0, yi)] = {yi: 1}
        table[(xi, yi)] = {z: 1}
    table[(0, z)] = {z: 2}
    names = ["t"] + [f"x{i + 1}" for i in range(m)] + [f"y{i + 1}" for i in range(m)] + ["z"]
    return LieAlgebra.from_table(n, table, names=names, name=f"CH{k}")


def spiral() -> LieAlgebra:
    """ad_t = rotation-dilation [[1, -2], [2, 1]] on (x, y) plus weight 1 on w: eigenvalues 1 +- 2i, 1."""
    table = {(0, 1): {1: 1, 2: 2}, (0, 2): {1: -2, 2: 1}, (0, 3): {3: 1}}
    return LieAlgebra.from_table(4, table, names=["t", "x", "y", "w"], name="spiral")


def jordan() -> LieAlgebra:
    """ad_t a single Jordan block of eigenvalue 1 on (x, y)."""
    table = {(0, 1): {1: 1}, (0, 2): {1: 1, 2: 1}}
    return LieAlgebra.from_table(3, table, names=["t", "x", "y"], name="jordan")


def aff_plus_sol() -> LieAlgebra:
    return direct_sum(aff(), sol(), name="aff+sol")


def aff_plus_line() -> LieAlgebra:
    return direct_sum(aff(), abelian(1), name="aff+R")


def _w(*ws) -> tuple[Fraction, ...]:
    return tuple(Fraction(w) for w in ws)


def builtin_catalog() -> list[CatalogEntry]:
    entries = [
        CatalogEntry("abelian-2", abelian(2), CLOSED),
        CatalogEntry("abelian-3", abelian(3), CLOSED),
        CatalogEntry("heisenberg", heisenberg(), CLOSED, note="nilpotent, hence unimodular"),
        CatalogEntry("sol", sol(), CLOSED, note="trace 1 - 1 = 0"),
        CatalogEntry("aff", aff(), HEINTZE, _w(1), hyperbolic_plane=True),
    ]
    for n in range(2, 6):
        entries.append(CatalogEntry(f"RH{n}", real_hyperbolic(n), HEINTZE, _w(*[1] * (n - 1)),
                                    hyperbolic_plane=(n == 2)))
    for k in range(1, 4):
        entries.append(CatalogEntry(f"CH{k}", complex_hyperbolic(k), HEINTZE,
                                    _w(*([1] * (2 * k - 2) + [2])), hyperbolic_plane=(k == 1),
                                    note="k = 1 is the hyperbolic plane" if k == 1 else ""))
    entries += [
        CatalogEntry("spiral", spiral(), HEINTZE, _w(1, 1, 1), note="complex eigenvalues 1 +- 2i"),
        CatalogEntry("jordan", jordan(), HEINTZE, _w(1, 1), note="non-semisimple derivation"),
        CatalogEntry("mixed-sign", diagonal_extension([2, -1], name="mixed-sign"), VANISHING,
                     note="real parts 2 and -1"),
        CatalogEntry("aff+R", aff_plus_line(), VANISHING, note="zero real part on ker tau"),
        CatalogEntry("aff+sol", aff_plus_sol(), VANISHING, note="ker tau contains sol, not nilpotent"),
    ]
    return entries


def catalog_by_key() -> dict[str, CatalogEntry]:
    return {e.key: e for e in builtin_catalog()}
