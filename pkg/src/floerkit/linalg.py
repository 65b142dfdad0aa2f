"""Exact linear algebra over Fractions.

Matrices are ``list[list]`` (dense) or lists of ``{col: value}`` rows (sparse).
Only what the rest of the package needs: row reduction, rank, kernels,
inverses, products and characteristic polynomials.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def to_sparse(matrix: Sequence[Sequence]) -> list[dict[int, Fraction]]:
    return [{j: Fraction(v) for j, v in enumerate(row) if v} for row in matrix]


def rref_sparse(rows: list[dict[int, Fraction]]) -> tuple[list[dict[int, Fraction]], list[int]]:
    """Reduced row echelon form of sparse rows; returns (rows, pivot columns)."""
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for row in rows:
        row = {j: v for j, v in row.items() if v}
        # pivot rows are kept reduced, so one pass clears every pivot column
        for p in [j for j in row if j in pivot_rows]:
            f = row.get(p)
            if not f:
                continue
            for j, v in pivot_rows[p].items():
                nv = row.get(j, 0) - f * v
                if nv:
                    row[j] = nv
                else:
                    row.pop(j, None)
        if not row:
            continue
        lead = min(row)
        inv = Fraction(1) / row[lead]
        row = {j: v * inv for j, v in row.items()}
        # back-substitute into existing pivot rows
        for prow in pivot_rows.values():
            f = prow.get(lead)
            if f:
                for j, v in row.items():
                    nv = prow.get(j, 0) - f * v
                    if nv:
                        prow[j] = nv
                    else:
                        prow.pop(j, None)
        pivot_rows[lead] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def rank(matrix) -> int:
    rows = matrix if (matrix and isinstance(matrix[0], dict)) else to_sparse(matrix)
    return len(rref_sparse([dict(r) for r in rows])[1])


def nullspace(matrix, ncols: int) -> list[dict[int, Fraction]]:
    """Basis of ``{x : M x = 0}`` as sparse vectors, one per free column."""
    rows = matrix if (matrix and isinstance(matrix[0], dict)) else to_sparse(matrix)
    red, pivots = rref_sparse([dict(r) for r in rows])
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = {free: Fraction(1)}
        for prow, p in zip(red, pivots):
            v = prow.get(free)
            if v:
                vec[p] = -v
        basis.append(vec)
    return basis


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = list(zip(*b)) if b else []
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols] for row in a]


def matvec(a: Matrix, v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def charpoly(a: Matrix) -> list[Fraction]:
    """Coefficients ``[c_0, ..., c_n]`` of ``det(x I - A)`` (monic, c_n = 1).

    Faddeev-LeVerrier; exact over the rationals.
    """
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{n-k+1} I
        am = matmul(a, m) if k > 1 else [[Fraction(0)] * n for _ in range(n)]
        c_prev = coeffs[n - k + 1]
        m = [[am[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        am = matmul(a, m)
        coeffs[n - k] = -sum((am[i][i] for i in range(n)), Fraction(0)) / k
    return coeffs
