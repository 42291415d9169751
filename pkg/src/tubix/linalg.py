"""Exact linear algebra over the rationals.

Elimination is fraction-free (Bareiss): rows are scaled to integers once and
every intermediate entry stays an integer minor of the input.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence, Union

Number = Union[int, Fraction]


class Underdetermined(ArithmeticError):
    """The affine system has more than one solution."""


class Inconsistent(ArithmeticError):
    """The affine system has no solution."""


def _integer_row(row: Sequence[Number]) -> list[int]:
    den = 1
    for x in row:
        if isinstance(x, Fraction):
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def bareiss(matrix: Sequence[Sequence[Number]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the echelon matrix (rows scaled to integers first) and the list
    of pivot columns; the rank is ``len(pivots)``.
    """
    m = [_integer_row(r) for r in matrix]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
        top = m[r]
        piv = top[c]
        for i in range(r + 1, rows):
            row = m[i]
            a = row[c]
            if a == 0 and piv == prev:
                continue
            for j in range(c + 1, cols):
                row[j] = (piv * row[j] - a * top[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows: Sequence[Sequence[Number]]) -> int:
    return len(bareiss(rows)[1])


def affine_rank(points: Sequence[Sequence[Number]]) -> int:
    """Rank of the points with a leading 1 appended (affine dimension + 1)."""
    return rank([[1, *p] for p in points])


def _as_coeffs(support, n: int) -> list[Number]:
    if isinstance(support, int):
        return [support >> i & 1 for i in range(n)]
    coeffs = list(support)
    if len(coeffs) != n:
        raise ValueError(f"equation has {len(coeffs)} coefficients, expected {n}")
    return coeffs


def solve_affine(equations: Sequence[tuple[object, Number]], n: int) -> tuple[Number, ...]:
    """Unique solution of ``coeffs . x = rhs`` for each equation.

    A coefficient vector may be given as a node mask (coefficient 1 on its
    members). Raises :class:`Inconsistent` or :class:`Underdetermined` when
    the solution is not unique.
    """
    aug = [_as_coeffs(s, n) + [rhs] for s, rhs in equations]
    if not aug:
        if n == 0:
            return ()
        raise Underdetermined("no equations")
    m, pivots = bareiss(aug)
    if pivots and pivots[-1] == n:
        raise Inconsistent("a combination of the equations reads 0 = nonzero")
    if len(pivots) < n:
        raise Underdetermined(f"rank {len(pivots)} < {n}")
    x: list[Number] = [0] * n
    for r in range(n - 1, -1, -1):
        row = m[r]
        s = Fraction(row[n]) - sum(row[j] * x[j] for j in range(r + 1, n))
        v = s / row[r]
        x[r] = v.numerator if v.denominator == 1 else v
    return tuple(x)
