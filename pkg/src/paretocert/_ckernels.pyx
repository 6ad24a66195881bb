# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_kernels_py``; same signatures, same results."""

from math import gcd


def dot(list a, list b):
    cdef Py_ssize_t i, n = len(a)
    s = 0
    for i in range(n):
        x = a[i]
        if x:
            y = b[i]
            if y:
                s += x * y
    return s


def primitive(list v):
    g = gcd(*v)
    if g > 1:
        return [x // g for x in v]
    return list(v)


def pivot(list T, D, Py_ssize_t r, Py_ssize_t c):
    cdef Py_ssize_t i, k, m = len(T)
    cdef list rowr = T[r]
    cdef Py_ssize_t w = len(rowr)
    cdef list row, new
    p = rowr[c]
    for i in range(m):
        if i == r:
            continue
        row = T[i]
        f = row[c]
        if f == 0:
            if p != D:
                new = [None] * w
                for k in range(w):
                    new[k] = (p * row[k]) // D
                T[i] = new
        else:
            new = [None] * w
            for k in range(w):
                new[k] = (p * row[k] - f * rowr[k]) // D
            T[i] = new
    return p


def combine(list p, list n, Py_ssize_t j):
    cdef Py_ssize_t k, w = len(p)
    cdef list out = [None] * w
    a = -n[j]
    b = p[j]
    for k in range(w):
        out[k] = a * p[k] + b * n[k]
    return primitive(out)


def adjacent_pairs(list pos, list neg, list masks):
    cdef list out = []
    cdef Py_ssize_t nm = len(masks)
    cdef Py_ssize_t i, j, k
    cdef bint ok
    for i in pos:
        mi = masks[i]
        for j in neg:
            z = mi & masks[j]
            ok = True
            for k in range(nm):
                if k != i and k != j and (z & masks[k]) == z:
                    ok = False
                    break
            if ok:
                out.append((i, j))
    return out
