# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py`` (same API, same exact integer results).

Entries stay Python ints (arbitrary precision); Cython only compiles the loop
scaffolding, which is where the pure version spends most of its time.
"""

from math import gcd

IMPL = "cython"


def vec_gcd_reduce(v):
    cdef Py_ssize_t i, n = len(v)
    g = 0
    for i in range(n):
        g = gcd(g, v[i])
        if g == 1:
            return list(v)
    if g <= 1:
        return list(v)
    return [v[i] // g for i in range(n)]


def dot(a, b):
    cdef Py_ssize_t i, n = len(a)
    s = 0
    for i in range(n):
        s += a[i] * b[i]
    return s


def rref(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows, row_i, col, i, j, k, piv
    cdef list work = []
    for r in rows:
        if any(r):
            work.append(vec_gcd_reduce(r))
    nrows = len(work)
    cdef list pivots = []
    row_i = 0
    cdef list prow, q
    for col in range(ncols):
        piv = -1
        for i in range(row_i, nrows):
            if (<list>work[i])[col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        work[row_i], work[piv] = work[piv], work[row_i]
        prow = <list>work[row_i]
        a = prow[col]
        for i in range(nrows):
            if i == row_i:
                continue
            q = <list>work[i]
            b = q[col]
            if b != 0:
                for j in range(ncols):
                    q[j] = q[j] * a - prow[j] * b
                work[i] = vec_gcd_reduce(q)
        pivots.append(col)
        row_i += 1
        if row_i == nrows:
            break
    cdef list out = []
    for k in range(row_i):
        r = vec_gcd_reduce(work[k])
        if r[<Py_ssize_t>pivots[k]] < 0:
            r = [-x for x in r]
        out.append(r)
    return out, pivots


def rank(rows, Py_ssize_t ncols):
    return len(rref(rows, ncols)[0])


def nullspace(rows, Py_ssize_t ncols):
    red, pivots = rref(rows, ncols)
    cdef set pivot_set = set(pivots)
    cdef list basis = []
    cdef Py_ssize_t free, k, npiv = len(pivots)
    cdef list v
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        lcm = 1
        for k in range(npiv):
            e = (<list>red[k])[<Py_ssize_t>pivots[k]]
            lcm = lcm * e // gcd(lcm, e)
        v[free] = lcm
        for k in range(npiv):
            p = pivots[k]
            v[<Py_ssize_t>p] = -(<list>red[k])[free] * (lcm // (<list>red[k])[<Py_ssize_t>p])
        basis.append(vec_gcd_reduce(v))
    return basis


def combine_ray(pos_ray, neg_ray, wpos, wneg):
    cdef Py_ssize_t i, n = len(pos_ray)
    return vec_gcd_reduce([wpos * neg_ray[i] - wneg * pos_ray[i] for i in range(n)])
