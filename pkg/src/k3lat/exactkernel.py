"""Exact integer matrix kernel: determinant, Smith normal form, inertia.

Everything here works over arbitrary-precision integers (or Fractions for
the symmetric eliminations); no floating point is ever used.  Matrices are
plain row-major lists of lists of ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

Matrix = list[list[int]]


class DegenerateMatrixError(ValueError):
    """An operation that needs det != 0 was handed a singular matrix."""


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f:
                bk = b[k]
                oi = out[i]
                for j in range(cols):
                    oi[j] += f * bk[j]
    return out


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def is_symmetric(m: Matrix) -> bool:
    n = len(m)
    return all(len(row) == n for row in m) and all(
        m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n)
    )


def det(m: Matrix) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return 1
    if any(len(row) != n for row in m):
        raise ValueError("det needs a square matrix")
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class SnfResult:
    """Diagonalization left*m*right = diag(d) with unimodular transforms.

    The invariant factors satisfy d[i] >= 0 and d[i] | d[i+1] (with the
    convention that everything divides 0).
    """

    d: tuple[int, ...]
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]


def smith_normal_form(m: Matrix) -> SnfResult:
    """Smith normal form with recorded row/column transforms.

    Classic elementary reduction with smallest-pivot selection; the final
    sweep enforces the divisibility chain d1 | d2 | ... .
    """
    rows = len(m)
    cols = len(m[0]) if rows else 0
    a = [row[:] for row in m]
    left = identity(rows)
    right = identity(cols)

    def row_op(i: int, j: int, q: int) -> None:
        # row i -= q * row j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        left[i] = [x - q * y for x, y in zip(left[i], left[j])]

    def col_op(i: int, j: int, q: int) -> None:
        # col i -= q * col j
        for r in range(rows):
            a[r][i] -= q * a[r][j]
        for r in range(cols):
            right[r][i] -= q * right[r][j]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i: int, j: int) -> None:
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            right[r][i], right[r][j] = right[r][j], right[r][i]

    def negate_row(i: int) -> None:
        a[i] = [-x for x in a[i]]
        left[i] = [-x for x in left[i]]

    t = 0
    while t < min(rows, cols):
        # smallest-magnitude nonzero pivot in the trailing block
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:  # remainder becomes the smaller pivot
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide every remaining entry for the chain property
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # row t += offending row, then re-reduce
        if a[t][t] < 0:
            negate_row(t)
        t += 1

    d = tuple(a[i][i] if i < min(rows, cols) else 0 for i in range(min(rows, cols)))
    return SnfResult(d=d, left=tuple(map(tuple, left)), right=tuple(map(tuple, right)))


def inertia(m: Matrix) -> tuple[int, int]:
    """Counts of positive/negative eigenvalues of a symmetric integer matrix.

    Symmetric Gaussian elimination over exact rationals with diagonal
    pivoting; when the remaining diagonal is all zero a 2x2 hyperbolic pivot
    contributes (1, 1).  Raises DegenerateMatrixError when det(m) = 0.
    """
    if not is_symmetric(m):
        raise ValueError("inertia needs a symmetric matrix")
    n = len(m)
    if n == 0:
        return (0, 0)
    if det(m) == 0:
        raise DegenerateMatrixError("inertia of a degenerate matrix")
    a = [[Fraction(x) for x in row] for row in m]

    def swap_sym(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    plus = minus = 0
    i = 0
    while i < n:
        k = next((k for k in range(i, n) if a[k][k] != 0), None)
        if k is not None:
            if k != i:
                swap_sym(i, k)
            p = a[i][i]
            if p > 0:
                plus += 1
            else:
                minus += 1
            for r in range(i + 1, n):
                f = a[r][i] / p
                if f:
                    for c in range(i + 1, n):
                        a[r][c] -= f * a[i][c]
            for r in range(i + 1, n):
                a[r][i] = a[i][r] = Fraction(0)
            i += 1
        else:
            # all remaining diagonal entries vanish; pick an off-diagonal pivot
            pair = next(
                ((r, c) for r in range(i, n) for c in range(r + 1, n) if a[r][c] != 0),
                None,
            )
            if pair is None:
                raise DegenerateMatrixError("inertia of a degenerate matrix")
            r0, c0 = pair
            if r0 != i:
                swap_sym(i, r0)
                # c0 may have been moved by the swap
                c0 = i if c0 == i else c0
            if c0 != i + 1:
                swap_sym(i + 1, c0)
            b = a[i][i + 1]
            plus += 1
            minus += 1
            for r in range(i + 2, n):
                vr, wr = a[r][i], a[r][i + 1]
                if vr or wr:
                    for c in range(i + 2, n):
                        a[r][c] -= (vr * a[i + 1][c] + wr * a[i][c]) / b
            for r in range(i + 2, n):
                a[r][i] = a[i][r] = a[r][i + 1] = a[i + 1][r] = Fraction(0)
            i += 2
    return (plus, minus)


def fraction_matrix_inverse(m: Matrix) -> list[list[Fraction]]:
    """Inverse of a nondegenerate integer matrix, exact over Fractions."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise DegenerateMatrixError("matrix is not invertible")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def unimodular_inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix, returned over the integers."""
    inv = fraction_matrix_inverse(m)
    out: Matrix = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def integer_rank(m: Matrix) -> int:
    """Rank of an integer matrix (exact fraction elimination)."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            if a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        rank += 1
        if r == rows:
            break
    return rank
