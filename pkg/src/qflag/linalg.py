"""Fraction-free (Bareiss) elimination over exact domains.

Works for any entries supporting ``+ - *`` and truthiness, given an exact
division callback: Fractions (``operator.truediv``) or polynomials
(:func:`qflag.poly.exquo`).
"""

from __future__ import annotations

import operator
from fractions import Fraction
from typing import Callable, Sequence

__all__ = ["SingularMatrixError", "bareiss_det", "bareiss_solve", "solve_rational", "det_rational"]


class SingularMatrixError(ArithmeticError):
    pass


def _eliminate(M: list[list], ncols: int, div: Callable):
    """In-place Bareiss forward elimination on the square part; returns swap sign."""
    n = len(M)
    sign = 1
    prev = None
    for k in range(n):
        if not M[k][k]:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                raise SingularMatrixError(f"no pivot in column {k}")
        pk = M[k][k]
        rowk = M[k]
        for i in range(k + 1, n):
            rowi = M[i]
            mik = rowi[k]
            for j in range(k + 1, ncols):
                v = pk * rowi[j] - mik * rowk[j]
                rowi[j] = div(v, prev) if prev is not None else v
            rowi[k] = mik - mik  # zero of the right type
        prev = pk
    return sign


def bareiss_det(A: Sequence[Sequence], div: Callable = operator.truediv):
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    try:
        sign = _eliminate(M, n, div)
    except SingularMatrixError:
        return M[0][0] - M[0][0]
    d = M[n - 1][n - 1]
    return d if sign == 1 else -d


def bareiss_solve(A: Sequence[Sequence], b: Sequence, div: Callable = operator.truediv):
    """Solve ``A x = b`` fraction-free.

    Returns ``(y, d)`` with ``x_i = y_i / d``; every ``y_i`` and ``d`` lie in
    the entry domain (they are Cramer numerators and ±det A).
    """
    n = len(A)
    M = [list(r) + [bi] for r, bi in zip(A, b)]
    _eliminate(M, n + 1, div)
    d = M[n - 1][n - 1]
    y = [None] * n
    for i in range(n - 1, -1, -1):
        s = d * M[i][n]
        for j in range(i + 1, n):
            if M[i][j]:
                s = s - M[i][j] * y[j]
        y[i] = div(s, M[i][i])
    return y, d


def solve_rational(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    A = [[Fraction(x) for x in row] for row in A]
    y, d = bareiss_solve(A, [Fraction(x) for x in b])
    return [v / d for v in y]


def det_rational(A: Sequence[Sequence]) -> Fraction:
    return bareiss_det([[Fraction(x) for x in row] for row in A])
