"""Small exact linear algebra layer on top of the integer kernels.

Rows may contain ints or Fractions at the boundary; internally everything is
scaled to primitive integer vectors (which preserves rank, nullspace, cone
membership and rowspace — all scale-invariant notions used here).
"""

from fractions import Fraction
from math import gcd, lcm

from valperm import kernels


def scale_to_int(row):
    """Scale a rational vector to a primitive integer one (same direction).

    >>> scale_to_int([Fraction(1, 2), Fraction(-3, 4), 0])
    [2, -3, 0]
    """
    mult = 1
    for x in row:
        if isinstance(x, Fraction):
            mult = lcm(mult, x.denominator)
    ints = [int(x * mult) if isinstance(x, Fraction) else x * mult for x in row]
    return kernels.vec_gcd_reduce(ints)


def to_int_rows(rows):
    return [scale_to_int(r) for r in rows]


def rank(rows, ncols):
    if not rows:
        return 0
    return kernels.rank(to_int_rows(rows), ncols)


def rref(rows, ncols):
    if not rows:
        return [], []
    return kernels.rref(to_int_rows(rows), ncols)


def nullspace(rows, ncols):
    """Primitive integer basis of the right nullspace; the full space if no rows."""
    if not rows:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    return kernels.nullspace(to_int_rows(rows), ncols)


def subspace_key(rows, ncols):
    """Canonical key for the rowspace: tuple form of the integer RREF."""
    red, _ = rref(rows, ncols)
    return tuple(tuple(r) for r in red)


def mat_mul(a, b_rows):
    """Product a * b for row-lists (len(a[0]) == len(b_rows))."""
    ncols = len(b_rows[0]) if b_rows else 0
    out = []
    for row in a:
        acc = [0] * ncols
        for coef, brow in zip(row, b_rows):
            if coef:
                for j in range(ncols):
                    acc[j] += coef * brow[j]
        out.append(acc)
    return out


def inverse_columns_primitive(mat):
    """Columns of the inverse of a square integer matrix, each scaled primitive.

    Used to seed the double description run with a simplicial cone: column j
    is the ray sent to a positive multiple of e_j.
    """
    n = len(mat)
    aug = [list(row) + [1 if j == i else 0 for j in range(n)] for i, row in enumerate(mat)]
    red, pivots = kernels.rref(aug, 2 * n)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    cols = []
    for j in range(n):
        col = [Fraction(red[k][n + j], red[k][k]) for k in range(n)]
        cols.append(scale_to_int(col))
    return cols


def orthogonalize(rows, ncols):
    """Gram-Schmidt without normalization; primitive integer output vectors."""
    basis = []
    for row in rows:
        v = [Fraction(x) for x in row]
        for u in basis:
            uu = sum(Fraction(x) * x for x in u)
            vu = sum(a * b for a, b in zip(v, u))
            if vu:
                coef = vu / uu
                v = [a - coef * b for a, b in zip(v, u)]
        if any(v):
            basis.append(scale_to_int(v))
    return basis


def project_off(v, orth_basis):
    """Project v onto the orthogonal complement of span(orth_basis); primitive.

    The basis must already be orthogonal (see :func:`orthogonalize`).
    """
    w = [Fraction(x) for x in v]
    for u in orth_basis:
        uu = sum(Fraction(x) * x for x in u)
        wu = sum(a * b for a, b in zip(w, u))
        if wu:
            coef = wu / uu
            w = [a - coef * b for a, b in zip(w, u)]
    if not any(w):
        return [0] * len(v)
    return scale_to_int(w)
