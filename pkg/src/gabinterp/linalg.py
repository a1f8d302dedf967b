"""Dense Gaussian elimination over a :class:`~gabinterp.ffield.Field`.

Matrices are lists of row lists of field ints.  Elimination is deterministic:
columns are scanned left to right, the pivot is the first nonzero entry at or
below the current row, and pivot rows are normalized to 1 (reduced echelon
form).  Kernel bases carry one vector per free column, in increasing column
order, with a unit in that column.
"""

from __future__ import annotations

from typing import Sequence

from gabinterp.ffield import Field

Matrix = list[list[int]]


def rref(field: Field, mat: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns; only the first ``ncols`` columns pivot."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    width = len(rows[0]) if ncols is None else ncols
    mul, sub = field.mul, field.sub
    exp, log, n1 = field._exp, field._log, field._n1
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(width):
        if r == nrows:
            break
        piv = r
        while piv < nrows and rows[piv][c] == 0:
            piv += 1
        if piv == nrows:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            shift = n1 - log[lead]
            prow = rows[r] = [exp[log[x] + shift] if x else 0 for x in prow]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f:
                lf = log[f]
                rows[i] = [sub(x, exp[lf + log[y]]) if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(field: Field, mat: Sequence[Sequence[int]]) -> int:
    if not mat or not mat[0]:
        return 0
    return len(rref(field, mat)[1])


def kernel(field: Field, mat: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Right kernel basis of ``mat`` (one vector per free column)."""
    if ncols is None:
        ncols = len(mat[0]) if mat else 0
    if not mat:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(field, mat)
    pivset = set(pivots)
    neg = field.neg
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = neg(row[f])
        basis.append(v)
    return basis


def solve_affine(field: Field, mat: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[list[int] | None, Matrix]:
    """Solve ``mat @ x = rhs``: a particular solution (None if inconsistent) and the kernel basis."""
    ncols = len(mat[0]) if mat else 0
    aug = [list(row) + [b] for row, b in zip(mat, rhs)]
    red, pivots = rref(field, aug, ncols)
    rank_ = len(pivots)
    if any(row[ncols] for row in red[rank_:]):
        return None, kernel(field, mat, ncols)
    x = [0] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    pivset = set(pivots)
    neg = field.neg
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [0] * ncols
        v[f] = 1
        for row, p in zip(red, pivots):
            v[p] = neg(row[f])
        basis.append(v)
    return x, basis


def matvec(field: Field, mat: Sequence[Sequence[int]], vec: Sequence[int]) -> list[int]:
    mul, add = field.mul, field.add
    out = []
    for row in mat:
        acc = 0
        for a, b in zip(row, vec):
            if a and b:
                acc = add(acc, mul(a, b))
        out.append(acc)
    return out


def matmul(field: Field, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    cols = list(zip(*b))
    return [matvec(field, cols, row) for row in a]


def transpose(mat: Sequence[Sequence[int]]) -> Matrix:
    return [list(c) for c in zip(*mat)]


def inverse(field: Field, mat: Sequence[Sequence[int]]) -> Matrix:
    n = len(mat)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = rref(field, aug, n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]
