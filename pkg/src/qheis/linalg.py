"""Exact linear algebra over the Scalar field.

Plain Gaussian elimination with first-nonzero pivoting; every Scalar
operation canonicalizes (gcd-reduces), so intermediate entries stay small
without separate fraction-free bookkeeping.
"""

from __future__ import annotations

from .qscalar import ONE, ZERO, Scalar


class SingularMatrix(ArithmeticError):
    pass


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = ZERO
            for k in range(m):
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def invert(matrix):
    """Exact inverse by Gauss-Jordan; raises SingularMatrix if rank-deficient."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    inv = identity(n)
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero), None)
        if pivot is None:
            raise SingularMatrix(f"no pivot in column {col}")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        inv[col] = [x / p for x in inv[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return inv


def det(matrix) -> Scalar:
    """Exact determinant by elimination with row-swap sign tracking."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    out = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not a[r][col].is_zero), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            out = -out
        p = a[col][col]
        out = out * p
        for r in range(col + 1, n):
            if not a[r][col].is_zero:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return out
