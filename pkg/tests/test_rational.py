from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from lpcoh.rational import (
    DimensionMismatch,
    RatMatrix,
    SingularMatrix,
    fraction_str,
    nullspace,
    solve,
    to_fraction,
)

from conftest import small_fractions


def square(n):
    return st.lists(st.lists(small_fractions(), min_size=n, max_size=n), min_size=n, max_size=n)


def test_to_fraction_accepts_exact_inputs_only():
    assert to_fraction("3/2") == Fraction(3, 2)
    assert to_fraction(" -4 ") == -4
    assert to_fraction(7) == 7
    with pytest.raises(TypeError):
        to_fraction(0.5)
    with pytest.raises(TypeError):
        to_fraction(True)


def test_fraction_str():
    assert fraction_str(Fraction(6, 4)) == "3/2"
    assert fraction_str(Fraction(-8, 4)) == "-2"


@given(st.integers(1, 4).flatmap(square))
def test_det_and_rank_match_sympy(rows):
    m = RatMatrix.from_rows(rows)
    ref = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert m.det() == Fraction(str(ref.det()))
    assert m.rank() == ref.rank()


@given(st.integers(1, 4).flatmap(square))
def test_inverse_roundtrip_or_singular(rows):
    m = RatMatrix.from_rows(rows)
    if m.det() == 0:
        with pytest.raises(SingularMatrix):
            m.inverse()
    else:
        assert m @ m.inverse() == RatMatrix.identity(m.rows)


@given(st.integers(1, 4).flatmap(square))
def test_nullspace_vectors_are_killed(rows):
    m = RatMatrix.from_rows(rows)
    ker = nullspace(m)
    assert len(ker) == m.cols - m.rank()
    for v in ker:
        assert all(x == 0 for x in m.apply(v))


def test_solve_and_shape_errors():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    x = solve(m, [Fraction(5), Fraction(6)])
    assert m.apply(x) == [5, 6]
    with pytest.raises(DimensionMismatch):
        m @ RatMatrix.from_rows([[1, 2, 3]])
    assert solve(RatMatrix.from_rows([[1, 1], [1, 1]]), [Fraction(0), Fraction(1)]) is None


def test_transpose_and_trace():
    m = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert m.T.to_rows() == [[1, 3], [2, 4]]
    assert m.trace() == 5
