"""Exact linear algebra over the Gaussian rationals.

Small dense routines, enough for membership solves and cochain fitting.
Matrices are lists of rows; entries anything Scalar.of accepts.
"""

from __future__ import annotations

from .scalar import Scalar, ZERO, ONE


def _rows(mat):
    return [[Scalar.of(v) for v in row] for row in mat]


def row_echelon(mat):
    """Return (echelon rows, pivot column list). Destructive on a copy."""
    rows = _rows(mat)
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def solve(mat, rhs):
    """Solve mat * x = rhs exactly; returns one solution or None.

    mat: m x n, rhs: length m. Free variables are set to zero.
    """
    m = len(mat)
    if m == 0:
        return []
    n = len(mat[0])
    aug = [list(row) + [rhs[i]] for i, row in enumerate(mat)]
    ech, pivots = row_echelon(aug)
    if n in pivots:
        return None  # pivot in the rhs column: inconsistent
    # row_echelon gives the fully reduced form, so with free variables
    # pinned to zero each pivot variable reads off the augmented column
    x = [ZERO] * n
    for r, c in enumerate(pivots):
        x[c] = ech[r][n]
    return x


def nullspace_dim(mat):
    if not mat:
        return 0
    _, pivots = row_echelon(mat)
    return len(mat[0]) - len(pivots)


def in_span(vectors, target):
    """Is target a linear combination of the given vectors?

    vectors: list of coordinate lists (all the same length).
    Returns the coefficient list if solvable, else None.
    """
    if not vectors:
        return [] if all(Scalar.of(t).is_zero() for t in target) else None
    cols = len(vectors)
    rows = len(vectors[0])
    mat = [[vectors[j][i] for j in range(cols)] for i in range(rows)]
    return solve(mat, list(target))
