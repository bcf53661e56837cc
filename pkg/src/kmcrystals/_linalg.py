"""Small exact linear algebra over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence


def solve(rows: Sequence[Sequence], rhs: Sequence) -> Optional[list[Fraction]]:
    """Solve ``rows @ x = rhs`` exactly.

    Returns the unique solution, or ``None`` when the system is inconsistent
    or the columns are linearly dependent.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    pivot_row = 0
    pivots = []
    for col in range(n):
        piv = next((r for r in range(pivot_row, m) if aug[r][col] != 0), None)
        if piv is None:
            return None
        aug[pivot_row], aug[piv] = aug[piv], aug[pivot_row]
        p = aug[pivot_row][col]
        aug[pivot_row] = [v / p for v in aug[pivot_row]]
        for r in range(m):
            if r != pivot_row and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[pivot_row])]
        pivots.append(col)
        pivot_row += 1
    for r in range(pivot_row, m):
        if aug[r][n] != 0:
            return None
    return [aug[r][n] for r in range(n)]


def det(matrix: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(v) for v in row] for row in matrix]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            if a[r][col] != 0:
                factor = a[r][col] / p
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return result


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    cols = []
    for j in range(n):
        e = [1 if i == j else 0 for i in range(n)]
        x = solve(matrix, e)
        if x is None:
            raise ZeroDivisionError("singular matrix")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]
