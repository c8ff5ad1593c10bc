from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qflag.linalg import SingularMatrixError, bareiss_det, bareiss_solve, det_rational, solve_rational
from qflag.poly import Polynomial, VarRegistry, exquo


def _laplace(M):
    if not M:
        return 1
    return sum((-1) ** j * M[0][j] * _laplace([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(len(M)))


square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=80, deadline=None)
@given(square)
def test_det_matches_laplace(M):
    assert det_rational(M) == _laplace(M)


@settings(max_examples=80, deadline=None)
@given(square, st.data())
def test_solve_satisfies_system(M, data):
    b = data.draw(st.lists(st.integers(-9, 9), min_size=len(M), max_size=len(M)))
    if _laplace(M) == 0:
        with pytest.raises(SingularMatrixError):
            solve_rational(M, b)
        return
    x = solve_rational(M, b)
    for row, bi in zip(M, b):
        assert sum(Fraction(a) * xi for a, xi in zip(row, x)) == bi


def test_pivoting_needs_row_swap():
    assert det_rational([[0, 1], [1, 0]]) == -1
    assert solve_rational([[0, 2], [3, 0]], [4, 9]) == [3, 2]


def test_polynomial_entries():
    r = VarRegistry.generic(["s", "t"])
    s, t = Polynomial.variable(r, "s"), Polynomial.variable(r, "t")
    A = [[s, t], [t, s]]
    assert bareiss_det(A, exquo) == s * s - t * t
    y, d = bareiss_solve(A, [s, t], exquo)
    # x = (1, 0)
    assert exquo(y[0], d) == 1 and not y[1]
