"""Pure-Python integer kernels; ``_ckernels.pyx`` mirrors this file line for line."""

from math import gcd


def dot(a, b):
    s = 0
    for x, y in zip(a, b):
        if x and y:
            s += x * y
    return s


def primitive(v):
    g = gcd(*v)
    if g > 1:
        return [x // g for x in v]
    return list(v)


def pivot(T, D, r, c):
    """Integer-preserving pivot on ``T[r][c]``.

    Every row of ``T`` holds numerators over the common denominator ``D``.
    Rows are rewritten in place; the new denominator (the pivot entry) is
    returned. Division by ``D`` is exact because all entries are minors of
    the original integer matrix.
    """
    p = T[r][c]
    rowr = T[r]
    for i in range(len(T)):
        if i == r:
            continue
        row = T[i]
        f = row[c]
        if f == 0:
            if p != D:
                T[i] = [(p * x) // D for x in row]
        else:
            T[i] = [(p * x - f * y) // D for x, y in zip(row, rowr)]
    return p


def combine(p, n, j):
    """Positive combination of rows ``p`` (p[j] > 0) and ``n`` (n[j] < 0) cancelling column ``j``."""
    a = -n[j]
    b = p[j]
    return primitive([a * x + b * y for x, y in zip(p, n)])


def adjacent_pairs(pos, neg, masks):
    """Combinatorial adjacency test of the double description method.

    ``masks[k]`` is the bitset of constraints tight at ray ``k``. Rays ``i``
    and ``j`` are adjacent iff no third ray is tight on every constraint
    both are tight on.
    """
    out = []
    nm = len(masks)
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
