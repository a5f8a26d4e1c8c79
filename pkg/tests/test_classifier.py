from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lpcoh.catalog import (
    aff,
    builtin_catalog,
    catalog_by_key,
    diagonal_extension,
    heisenberg,
    real_hyperbolic,
    sol,
)
from lpcoh.classifier import (
    CLOSED,
    HEINTZE,
    Classification,
    InvalidAlgebra,
    NotSolvable,
    classify,
    harmonic_l2_query,
)
from lpcoh.liealg import LieAlgebra, change_basis, kernel_of_tau

from conftest import invertible_matrices, small_fractions

CATALOG = catalog_by_key()


def sl2() -> LieAlgebra:
    return LieAlgebra.from_table(3, {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}}, names=["h", "e", "f"])


def irrational_heintze() -> LieAlgebra:
    # ad_t = [[2, 1], [2, 2]] on R^2: eigenvalues 2 +- sqrt 2, exponent 4 / (2 - sqrt 2) = 4 + 2 sqrt 2
    return LieAlgebra.from_table(3, {(0, 1): {1: 2, 2: 2}, (0, 2): {1: 1, 2: 2}}, name="irr")


@pytest.mark.parametrize("entry", builtin_catalog(), ids=lambda e: e.key)
def test_catalog_regression(entry):
    c = classify(entry.algebra)
    assert c.verdict == entry.expected_verdict
    if entry.expected_verdict == HEINTZE:
        assert c.exponent == (entry.expected_exponent, entry.expected_exponent)
    else:
        assert c.exponent is None


def test_known_exponents():
    assert classify(aff()).exponent == (1, 1)
    for n in range(2, 6):
        assert classify(real_hyperbolic(n)).exponent == (n - 1, n - 1)
    assert classify(diagonal_extension([1, 2])).exponent == (3, 3)
    assert classify(diagonal_extension([Fraction(1, 2), 3, 3])).exponent == (13, 13)


def test_statements_per_verdict():
    closed = classify(heisenberg())
    assert [s.space for s in closed.statements] == ["T", "R"]
    assert closed.statements[0].vanishes is False
    assert "not computed" in closed.statements[1].note
    h = classify(real_hyperbolic(3))
    assert [s.render() for s in h.statements] == [
        "T^{1,p} = 0 for p in [1, inf)",
        "H^{1,p} = 0 for p in (1, 2]",
        "R^{1,p} != 0 for p in (2, inf)",
    ]
    v = classify(CATALOG["mixed-sign"].algebra)
    assert [s.render() for s in v.statements] == ["H^{1,p} = 0 for p in (1, inf)"]


def test_errors():
    with pytest.raises(NotSolvable) as exc:
        classify(sl2())
    assert exc.value.dim == 3
    assert "cocompact solvable subalgebra" in str(exc.value)
    bad = LieAlgebra.from_table(3, {(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})
    with pytest.raises(InvalidAlgebra):
        classify(bad)


def test_classification_invariants():
    with pytest.raises(ValueError):
        Classification(HEINTZE, None, (), {})
    with pytest.raises(ValueError):
        Classification(CLOSED, (Fraction(1), Fraction(1)), (), {})
    with pytest.raises(ValueError):
        Classification(HEINTZE, (Fraction(1, 2), Fraction(1)), (), {})


def test_irrational_exponent_interval_shrinks_with_tol():
    exact = 4 + 2 * math.sqrt(2)
    coarse = classify(irrational_heintze(), Fraction(1, 2 ** 10))
    fine = classify(irrational_heintze(), Fraction(1, 2 ** 40))
    assert coarse.verdict == HEINTZE
    for c in (coarse, fine):
        lo, hi = c.exponent
        assert lo < hi
        assert float(lo) <= exact <= float(hi)
    assert fine.exponent[1] - fine.exponent[0] < coarse.exponent[1] - coarse.exponent[0]


def test_coarse_tolerance_still_gives_a_valid_interval():
    c = classify(irrational_heintze(), Fraction(4))
    lo, hi = c.exponent
    assert 1 <= lo <= 4 + 2 * math.sqrt(2) <= hi < math.inf


def test_xi0_override_is_normalized():
    c = classify(sol(), xi0=None)
    assert c.verdict == CLOSED
    a = classify(aff(), xi0=[Fraction(5), Fraction(7)])
    assert a.xi0 == (1, Fraction(7, 5))
    assert a.exponent == (1, 1)
    with pytest.raises(ValueError):
        classify(aff(), xi0=[Fraction(-1), 0])


def test_harmonic_query():
    assert harmonic_l2_query(aff())
    assert not harmonic_l2_query(real_hyperbolic(3))
    assert not harmonic_l2_query(heisenberg())
    assert not harmonic_l2_query(CATALOG["aff+sol"].algebra)
    assert not harmonic_l2_query(irrational_heintze(), Fraction(1, 2 ** 8))


NON_UNIMODULAR = [e.key for e in builtin_catalog() if e.expected_verdict != CLOSED]


@given(st.sampled_from(NON_UNIMODULAR), st.data())
def test_basis_change_invariance(key, data):
    alg = CATALOG[key].algebra
    p = data.draw(invertible_matrices(alg.dim))
    before, after = classify(alg), classify(change_basis(alg, p))
    assert after.verdict == before.verdict
    assert after.exponent == before.exponent


@given(st.sampled_from(NON_UNIMODULAR), st.data())
def test_xi0_shift_invariance(key, data):
    alg = CATALOG[key].algebra
    base = classify(alg)
    c = data.draw(small_fractions(1, 6, 3))
    k = kernel_of_tau(alg)
    coeffs = data.draw(st.lists(small_fractions(), min_size=k.dim, max_size=k.dim))
    eta = [sum((a * v[i] for a, v in zip(coeffs, k.vectors())), Fraction(0)) for i in range(alg.dim)]
    xi = [c * x + e for x, e in zip(base.xi0, eta)]
    moved = classify(alg, xi0=xi)
    assert moved.verdict == base.verdict
    assert moved.exponent == base.exponent
