"""Lie algebras over Q given by structure constants.

Indices are 0-based in the API; the JSON file format uses 1-based indices
and is translated in :mod:`lpcoh.io`.  ``brackets[i][j][k]`` is the
coefficient of ``e_k`` in ``[e_i, e_j]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .rational import (
    DimensionMismatch,
    RatMatrix,
    SingularMatrix,
    column_basis,
    nullspace,
    solve,
    to_fraction,
)

Vector = Sequence[Fraction]


class TauZero(ValueError):
    """The algebra is unimodular, so the modular character has no kernel hyperplane."""


class NotASubalgebra(ValueError):
    pass


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    basis_names: tuple[str, ...]
    brackets: tuple[tuple[tuple[Fraction, ...], ...], ...]
    name: str = ""
    embedding: RatMatrix | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        if len(self.basis_names) != self.dim:
            raise DimensionMismatch("one basis label per dimension is required")
        n = self.dim
        if len(self.brackets) != n or any(
            len(row) != n or any(len(c) != n for c in row) for row in self.brackets
        ):
            raise DimensionMismatch("bracket table must be dim x dim x dim")

    @classmethod
    def from_table(
        cls,
        dim: int,
        table: Mapping[tuple[int, int], Mapping[int, object]],
        names: Sequence[str] | None = None,
        name: str = "",
        antisymmetrize: bool = True,
    ) -> LieAlgebra:
        """Build from sparse ``{(i, j): {k: coef}}`` entries.

        With ``antisymmetrize`` the entry ``(j, i)`` is filled with the negated
        coefficients unless it was given explicitly; explicit contradictory
        entries are kept so that :func:`validate` can report them.
        """
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        given = set()
        for (i, j), coeffs in table.items():
            for k, coef in coeffs.items():
                c[i][j][k] = to_fraction(coef)
                given.add((i, j, k))
        if antisymmetrize:
            for i, j, k in sorted(given):
                if (j, i, k) not in given:
                    c[j][i][k] = -c[i][j][k]
        if names is None:
            names = [f"e{i + 1}" for i in range(dim)]
        frozen = tuple(tuple(tuple(col) for col in row) for row in c)
        return cls(dim, tuple(names), frozen, name)

    def basis_vector(self, i: int) -> list[Fraction]:
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def bracket(self, x: Vector, y: Vector) -> list[Fraction]:
        n = self.dim
        if len(x) != n or len(y) != n:
            raise DimensionMismatch("bracket arguments must have length dim")
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                cij = self.brackets[i][j]
                w = xi * yj
                for k in range(n):
                    if cij[k]:
                        out[k] += w * cij[k]
        return out

    def is_abelian(self) -> bool:
        return not any(c for row in self.brackets for col in row for c in col)

    def table(self) -> dict[tuple[int, int], dict[int, Fraction]]:
        """Sparse table of the entries with i < j."""
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                nz = {k: c for k, c in enumerate(self.brackets[i][j]) if c}
                if nz:
                    out[(i, j)] = nz
        return out


@dataclass(frozen=True)
class Violation:
    kind: str  # "antisymmetry" | "jacobi"
    indices: tuple[int, ...]
    value: Fraction


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate(alg: LieAlgebra) -> ValidationReport:
    """Exact check of antisymmetry and the Jacobi identity on basis triples."""
    n, c = alg.dim, alg.brackets
    bad: list[Violation] = []
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                s = c[i][j][k] + c[j][i][k]
                if s:
                    bad.append(Violation("antisymmetry", (i, j, k), s))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    s = sum(
                        (c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l]
                         for m in range(n)),
                        Fraction(0),
                    )
                    if s:
                        bad.append(Violation("jacobi", (i, j, k, l), s))
    return ValidationReport(tuple(bad))


def adjoint(alg: LieAlgebra, xi: Vector) -> RatMatrix:
    """Matrix of ad_xi in the given basis; column j holds [xi, e_j]."""
    if len(xi) != alg.dim:
        raise DimensionMismatch(f"vector of length {len(xi)} for a {alg.dim}-dimensional algebra")
    xi = [to_fraction(x) for x in xi]
    cols = [alg.bracket(xi, alg.basis_vector(j)) for j in range(alg.dim)]
    return RatMatrix.from_columns(cols)


@dataclass(frozen=True)
class ModularCharacter:
    tau: tuple[Fraction, ...]

    def __call__(self, xi: Vector) -> Fraction:
        return sum((t * to_fraction(x) for t, x in zip(self.tau, xi)), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not any(self.tau)


def modular_character(alg: LieAlgebra) -> ModularCharacter:
    # tr ad_{e_i} = sum_j c[i][j][j]
    return ModularCharacter(tuple(
        sum((alg.brackets[i][j][j] for j in range(alg.dim)), Fraction(0)) for i in range(alg.dim)
    ))


@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: RatMatrix  # columns are the basis vectors

    def __post_init__(self):
        if self.basis.rows != self.ambient_dim:
            raise DimensionMismatch("basis vectors must live in the ambient space")
        if self.basis.cols and self.basis.rank() != self.basis.cols:
            raise ValueError("subspace basis columns are linearly dependent")

    @classmethod
    def span(cls, vectors: Sequence[Vector], ambient_dim: int) -> Subspace:
        vecs = column_basis(vectors, ambient_dim)
        if not vecs:
            return cls(ambient_dim, RatMatrix(ambient_dim, 0, ()))
        return cls(ambient_dim, RatMatrix.from_columns(vecs))

    @classmethod
    def whole(cls, n: int) -> Subspace:
        return cls(n, RatMatrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.cols

    def vectors(self) -> list[list[Fraction]]:
        return self.basis.columns()

    def coordinates(self, v: Vector) -> list[Fraction] | None:
        if self.dim == 0:
            return [] if not any(v) else None
        return solve(self.basis, v)

    def contains(self, v: Vector) -> bool:
        return self.coordinates(v) is not None

    def contains_subspace(self, other: Subspace) -> bool:
        return all(self.contains(v) for v in other.vectors())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.dim == other.dim
                and self.contains_subspace(other))

    def __hash__(self):
        return hash((self.ambient_dim, self.dim))


def kernel_of_tau(alg: LieAlgebra) -> Subspace:
    tau = modular_character(alg)
    if tau.is_zero:
        raise TauZero("the algebra is unimodular (tr ad vanishes identically)")
    kernel = Subspace(alg.dim, RatMatrix.from_columns(nullspace(RatMatrix.from_rows([tau.tau]))))
    for i in range(alg.dim):
        ei = alg.basis_vector(i)
        for v in kernel.vectors():
            if not kernel.contains(alg.bracket(ei, v)):  # pragma: no cover - tau vanishes on brackets
                raise AssertionError("kernel of the modular character is not an ideal")
    return kernel


def bracket_span(alg: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    return Subspace.span([alg.bracket(a, b) for a in u.vectors() for b in v.vectors()], alg.dim)


def derived_series(alg: LieAlgebra, within: Subspace | None = None) -> list[Subspace]:
    """Terms D0 = S, D(k+1) = [Dk, Dk] until the chain stabilizes (last term repeated once)."""
    term = within if within is not None else Subspace.whole(alg.dim)
    series = [term]
    while True:
        nxt = bracket_span(alg, term, term)
        if nxt.dim == term.dim:
            return series
        series.append(nxt)
        term = nxt


def lower_central_series(alg: LieAlgebra, within: Subspace | None = None) -> list[Subspace]:
    """Terms C0 = S, C(k+1) = [S, Ck] until the chain stabilizes."""
    top = within if within is not None else Subspace.whole(alg.dim)
    term = top
    series = [term]
    while True:
        nxt = bracket_span(alg, top, term)
        if nxt.dim == term.dim:
            return series
        series.append(nxt)
        term = nxt


def is_solvable(alg: LieAlgebra, within: Subspace | None = None) -> bool:
    return derived_series(alg, within)[-1].dim == 0


def is_nilpotent(alg: LieAlgebra, within: Subspace | None = None) -> bool:
    return lower_central_series(alg, within)[-1].dim == 0


def restrict_to_subspace(alg: LieAlgebra, sub: Subspace) -> LieAlgebra:
    """Structure constants of a subalgebra in the basis carried by ``sub``."""
    vecs = sub.vectors()
    m = len(vecs)
    if m == 0:
        raise ValueError("cannot restrict to the zero subspace")
    table: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(m):
        for b in range(m):
            coords = sub.coordinates(alg.bracket(vecs[a], vecs[b]))
            if coords is None:
                raise NotASubalgebra(f"bracket of basis vectors {a} and {b} leaves the subspace")
            nz = {k: x for k, x in enumerate(coords) if x}
            if nz:
                table[(a, b)] = nz
    restricted = LieAlgebra.from_table(m, table, antisymmetrize=False,
                                       name=f"{alg.name}|sub" if alg.name else "")
    return LieAlgebra(restricted.dim, restricted.basis_names, restricted.brackets,
                      restricted.name, embedding=sub.basis)


def restrict_operator(mat: RatMatrix, sub: Subspace) -> RatMatrix:
    """Matrix of a linear map on an invariant subspace, in the subspace basis."""
    cols = []
    for v in sub.vectors():
        coords = sub.coordinates(mat.apply(v))
        if coords is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(coords)
    return RatMatrix.from_columns(cols)


def change_basis(alg: LieAlgebra, p: RatMatrix) -> LieAlgebra:
    """Rewrite the table in the basis f_a = sum_i P[i, a] e_i."""
    if p.rows != alg.dim or p.cols != alg.dim:
        raise DimensionMismatch("basis change must be a dim x dim matrix")
    if p.det() == 0:
        raise SingularMatrix("basis change matrix is singular")
    pinv = p.inverse()
    cols = p.columns()
    n = alg.dim
    table = {}
    for a in range(n):
        for b in range(n):
            coords = pinv.apply(alg.bracket(cols[a], cols[b]))
            nz = {k: x for k, x in enumerate(coords) if x}
            if nz:
                table[(a, b)] = nz
    out = LieAlgebra.from_table(n, table, names=[f"f{i + 1}" for i in range(n)],
                                name=alg.name, antisymmetrize=False)
    return out


def direct_sum(a: LieAlgebra, b: LieAlgebra, name: str = "") -> LieAlgebra:
    n = a.dim + b.dim
    table = {}
    for (i, j), coeffs in a.table().items():
        table[(i, j)] = dict(coeffs)
    for (i, j), coeffs in b.table().items():
        table[(i + a.dim, j + a.dim)] = {k + a.dim: c for k, c in coeffs.items()}
    names = list(a.basis_names) + list(b.basis_names)
    if len(set(names)) != len(names):
        names = [f"{x}'" if i >= a.dim else x for i, x in enumerate(names)]
    return LieAlgebra.from_table(n, table, names=names, name=name)
