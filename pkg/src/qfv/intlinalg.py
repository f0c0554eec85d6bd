"""Exact integer linear algebra: Hermite normal form and integer kernels."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[int]]


def _echelon(rows: Matrix, ncols: int) -> tuple[Matrix, list[int]]:
    """Unimodular row reduction of ``rows`` restricted to the first ``ncols`` columns.

    Works in place on a copy; returns the reduced rows and the pivot columns.
    Columns past ``ncols`` are carried along (used for the transform matrix).
    """
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(rows):
            break
        while True:
            live = [i for i in range(top, len(rows)) if rows[i][col]]
            if not live:
                break
            piv = min(live, key=lambda i: abs(rows[i][col]))
            rows[top], rows[piv] = rows[piv], rows[top]
            p = rows[top][col]
            done = True
            for i in range(top + 1, len(rows)):
                c = rows[i][col]
                if c:
                    q = c // p
                    rows[i] = [a - q * b for a, b in zip(rows[i], rows[top])]
                    if rows[i][col]:
                        done = False
            if done:
                break
        if top < len(rows) and rows[top][col]:
            if rows[top][col] < 0:
                rows[top] = [-a for a in rows[top]]
            pivots.append(col)
            top += 1
    return rows, pivots


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style HNF of the lattice spanned by ``rows`` (zero rows dropped).

    Pivots are positive and every entry above a pivot lies in ``[0, pivot)``,
    which makes the result a canonical basis of the lattice.
    """
    rows = [list(map(int, r)) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    red, pivots = _echelon(rows, ncols)
    red = red[: len(pivots)]
    for i, col in enumerate(pivots):
        p = red[i][col]
        for j in range(i):
            q = red[j][col] // p
            if q:
                red[j] = [a - q * b for a, b in zip(red[j], red[i])]
    return red


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Basis, in Hermite normal form, of ``{u in Z^n : matrix @ u = 0}``."""
    nrows = len(matrix)
    if ncols is None:
        ncols = len(matrix[0]) if nrows else 0
    # rows of [M^T | I]; unimodular reduction of the M^T block exposes the kernel
    aug = [[matrix[r][c] for r in range(nrows)] + [int(c == j) for j in range(ncols)] for c in range(ncols)]
    red, pivots = _echelon(aug, nrows)
    kernel = [row[nrows:] for row in red[len(pivots):]]
    return hermite_normal_form(kernel)


def mat_vec(matrix: Sequence[Sequence[int]], u: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, u)) for row in matrix]


def rational_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return 0
    rank = 0
    ncols = len(rows[0])
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
