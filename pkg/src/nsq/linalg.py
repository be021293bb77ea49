"""Small exact linear-algebra helpers over Fraction entries."""

from __future__ import annotations

from fractions import Fraction


def exact_rank(rows: list[list[Fraction]]) -> int:
    """Rank of a rational matrix by fraction-free Gaussian elimination."""
    m = [list(map(Fraction, row)) for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pv = m[rank][col]
        for r in range(rank + 1, len(m)):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                for c in range(col, ncols):
                    m[r][c] -= factor * m[rank][c]
        rank += 1
        if rank == len(m):
            break
    return rank


def exact_det(matrix: list[list[Fraction]]) -> Fraction:
    """Determinant of a square rational matrix."""
    n = len(matrix)
    m = [list(map(Fraction, row)) for row in matrix]
    det = Fraction(1)
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        pv = m[col][col]
        det *= pv
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] / pv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return det


def exact_inverse(matrix: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix; raises on singular input."""
    n = len(matrix)
    m = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]
