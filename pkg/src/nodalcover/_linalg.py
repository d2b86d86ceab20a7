"""Dense exact linear algebra over a coefficient field.

Matrices are lists of rows, rows are lists of raw field values.  The
`field` argument is any object following the coefficient-field protocol
of :mod:`nodalcover.arith` (``zero``, ``one``, ``add``, ``sub``, ``mul``,
``inv``, ``neg``, ``is_zero``).  Everything here is exact; there is no
pivoting for numerical stability, only for nonzeroness.
"""

from __future__ import annotations


def row_reduce(rows, field):
    """Reduced row echelon form.

    Returns (rref, pivot_cols).  The input is not modified.
    """
    mat = [list(r) for r in rows]
    pivots = []
    if not mat:
        return mat, pivots
    ncols = len(mat[0])
    row = 0
    for col in range(ncols):
        pivot = None
        for i in range(row, len(mat)):
            if not field.is_zero(mat[i][col]):
                pivot = i
                break
        if pivot is None:
            continue
        mat[row], mat[pivot] = mat[pivot], mat[row]
        inv = field.inv(mat[row][col])
        mat[row] = [field.mul(inv, v) for v in mat[row]]
        for i in range(len(mat)):
            if i != row and not field.is_zero(mat[i][col]):
                c = mat[i][col]
                mat[i] = [field.sub(a, field.mul(c, b)) for a, b in zip(mat[i], mat[row])]
        pivots.append(col)
        row += 1
        if row == len(mat):
            break
    return mat[:row] + [r for r in mat[row:]], pivots


def rank(rows, field):
    _, pivots = row_reduce(rows, field)
    return len(pivots)


def kernel_basis(rows, ncols, field):
    """Basis of the right kernel {v : M v = 0} of an m x ncols matrix."""
    rref, pivots = row_reduce(rows, field)
    pivot_set = set(pivots)
    free = [j for j in range(ncols) if j not in pivot_set]
    basis = []
    for j in free:
        v = [field.zero] * ncols
        v[j] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(rref[r][j])
        basis.append(v)
    return basis


def solve(rows, rhs, field):
    """One solution of M x = rhs, or None if inconsistent."""
    if not rows:
        return None
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = row_reduce(aug, field)
    for r in rref[len(pivots):]:
        if not field.is_zero(r[ncols]):
            return None
    if ncols in pivots:
        return None
    x = [field.zero] * ncols
    for r, pc in zip(rref, pivots):
        x[pc] = r[ncols]
    return x


def invert_matrix(rows, field):
    """Inverse of a square matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + [field.one if i == j else field.zero for j in range(n)]
           for i, r in enumerate(rows)]
    rref, pivots = row_reduce(aug, field)
    if pivots[:n] != list(range(n)):
        return None
    return [r[n:] for r in rref[:n]]
