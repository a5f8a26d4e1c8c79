from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lpcoh.catalog import aff, builtin_catalog, complex_hyperbolic, heisenberg, sol
from lpcoh.liealg import (
    LieAlgebra,
    NotASubalgebra,
    Subspace,
    TauZero,
    adjoint,
    change_basis,
    derived_series,
    direct_sum,
    is_nilpotent,
    is_solvable,
    kernel_of_tau,
    lower_central_series,
    modular_character,
    restrict_to_subspace,
    validate,
)
from lpcoh.rational import RatMatrix, SingularMatrix

from conftest import invertible_matrices

CATALOG = {e.key: e.algebra for e in builtin_catalog()}


def test_catalog_algebras_are_valid():
    for key, alg in CATALOG.items():
        assert validate(alg).ok, key


def test_validate_reports_broken_jacobi_and_antisymmetry():
    bad = LieAlgebra.from_table(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    rep = validate(bad)
    assert not rep.ok
    assert {v.kind for v in rep.violations} == {"jacobi"}
    skew = LieAlgebra.from_table(2, {(0, 1): {1: 1}, (1, 0): {1: 1}}, antisymmetrize=False)
    assert any(v.kind == "antisymmetry" for v in validate(skew).violations)


def test_bracket_antisymmetric_fill():
    h = heisenberg()
    assert h.bracket([0, 1, 0], [1, 0, 0]) == [0, 0, -1]


def test_modular_characters():
    assert modular_character(aff()).tau == (1, 0)
    assert modular_character(sol()).is_zero
    assert modular_character(heisenberg()).is_zero
    assert modular_character(complex_hyperbolic(2)).tau == (4, 0, 0, 0)
    with pytest.raises(TauZero):
        kernel_of_tau(sol())


def test_kernel_of_tau_aff():
    k = kernel_of_tau(aff())
    assert k == Subspace.span([[0, 1]], 2)


def test_series_heisenberg_and_sol():
    h = heisenberg()
    assert [s.dim for s in derived_series(h)] == [3, 1, 0]
    assert [s.dim for s in lower_central_series(h)] == [3, 1, 0]
    s = sol()
    assert [d.dim for d in derived_series(s)] == [3, 2, 0]
    assert not is_nilpotent(s)
    assert is_solvable(s)


def test_series_within_subspace():
    ch = complex_hyperbolic(2)
    k = kernel_of_tau(ch)
    assert is_nilpotent(ch, k)
    assert [d.dim for d in lower_central_series(ch, k)] == [3, 1, 0]


def test_adjoint_columns_are_brackets():
    s = sol()
    ad = adjoint(s, [1, 0, 0])
    assert ad.to_rows() == [[0, 0, 0], [0, 1, 0], [0, 0, -1]]


def test_restrict_to_subspace():
    s = sol()
    k = Subspace.span([[0, 1, 0], [0, 0, 1]], 3)
    sub = restrict_to_subspace(s, k)
    assert sub.is_abelian()
    with pytest.raises(NotASubalgebra):
        restrict_to_subspace(heisenberg(), Subspace.span([[1, 0, 0], [0, 1, 0]], 3))


def test_direct_sum_dimensions_and_tau():
    ds = direct_sum(aff(), sol())
    assert ds.dim == 5
    assert validate(ds).ok
    assert modular_character(ds).tau == (1, 0, 0, 0, 0)


def test_change_basis_rejects_singular():
    with pytest.raises(SingularMatrix):
        change_basis(aff(), RatMatrix.from_rows([[1, 1], [1, 1]]))


@given(st.sampled_from(sorted(CATALOG)), st.data())
def test_change_basis_preserves_validity_and_transforms_tau(key, data):
    alg = CATALOG[key]
    p = data.draw(invertible_matrices(alg.dim))
    new = change_basis(alg, p)
    assert validate(new).ok
    tau = modular_character(alg).tau
    expected = tuple(sum((p[i, a] * tau[i] for i in range(alg.dim)), Fraction(0)) for a in range(alg.dim))
    assert modular_character(new).tau == expected
    back = change_basis(new, p.inverse())
    assert back.brackets == alg.brackets
