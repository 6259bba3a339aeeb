from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from dualbreak.cyclotomic import CyclotomicNumber
from dualbreak.linalg import ExactMatrix, SingularMatrixError, bareiss, format_rational, parse_rational
from dualbreak.polys import SparsePoly, render_univariate, univariate_from_dict

small = st.fractions(min_value=-9, max_value=9, max_denominator=6)


def matrices(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(matrices))
def test_det_rank_inverse_match_sympy(rows):
    M = ExactMatrix(rows)
    S = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    assert M.det() == Fraction(str(S.det()))
    assert M.rank() == S.rank()
    if M.det() != 0:
        inv = M.inverse()
        assert inv @ M == ExactMatrix.identity(M.nrows)
        assert M @ inv == ExactMatrix.identity(M.nrows)
    else:
        v = M.kernel_vector()
        assert v is not None and any(v)
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in M.rows)


def test_solve_vector_and_singular():
    M = ExactMatrix([[2, 1], [1, 3]])
    assert M.solve([3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    with pytest.raises(SingularMatrixError):
        ExactMatrix([[1, 2], [2, 4]]).solve([1, 1])
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2]]).det()
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])


def test_bareiss_sign():
    rows = [[0, 1], [1, 0]]
    r, piv, sign = bareiss(rows)
    assert (r, piv) == (2, [0, 1]) and sign * rows[1][1] == -1


def test_arithmetic_and_text():
    A = ExactMatrix([[1, Fraction(1, 2)], [0, -3]])
    assert (A + A) == 2 * A and (A - A) == ExactMatrix([[0, 0], [0, 0]])
    assert A.transpose().transpose() == A
    assert ExactMatrix.parse(A.dump()) == A
    assert A.dump() == "1 1/2\n0 -3"
    assert parse_rational("-5/10") == Fraction(-1, 2)
    assert format_rational(Fraction(6, 3)) == "2"
    assert (A @ ExactMatrix([[2], [2]])).column(0) == [3, -6]


def test_sparse_poly_algebra():
    x, y = SparsePoly.variable(2, 0), SparsePoly.variable(2, 1)
    p = (x + y) ** 3
    assert p.coeff((2, 1)) == 3 and p.is_homogeneous() and p.degrees() == {3}
    assert (p - p).is_zero()
    assert p.coefficient_sum() == 8
    assert p.specialize([1, 2]).coeff((6,)) == 1
    assert SparsePoly.parse(p.dump()) == p
    assert SparsePoly.from_pairs(2, p.to_pairs()) == p
    with pytest.raises(ValueError):
        SparsePoly(2, {(1,): 1})
    with pytest.raises(ValueError):
        SparsePoly(1, {(-1,): 1})


def test_render_univariate():
    assert render_univariate({0: 1, 25: 4, 40: 20}) == "1 + 4y^25 + 20y^40"
    assert render_univariate({0: 1, 1: 2}, var="t") == "1 + 2t"
    assert univariate_from_dict({0: 1, 3: 2}).coeff((3,)) == 2


def test_cyclotomic_sqrt5():
    z = [CyclotomicNumber.zeta_power(5, k) for k in range(5)]
    s = z[1] - z[2] - z[3] + z[4]
    assert s * s == CyclotomicNumber.rational(5, 5)
    assert (s * s).is_rational and (s * s).rational_value() == 5
    assert sum(z[1:], z[0]) == CyclotomicNumber.rational(5, 0)
    assert z[1] ** 5 == CyclotomicNumber.rational(5, 1)
    assert z[2].conjugate(3) == z[1]


def test_cyclotomic_canonical_form():
    # 1 + zeta + ... + zeta^4 = 0, so shifting every coordinate is the same number
    a = CyclotomicNumber.from_group_ring(5, [1, 2, 3, 4, 5])
    b = CyclotomicNumber.from_group_ring(5, [0, 1, 2, 3, 4])
    assert a == b and hash(a) == hash(b)
    assert CyclotomicNumber.from_group_ring(5, [3, 1, 1, 1, 1]) == CyclotomicNumber.rational(5, 2)
