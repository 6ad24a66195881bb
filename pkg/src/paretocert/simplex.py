"""Two-phase primal simplex in exact integer arithmetic.

Solves ``max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq`` with ``x`` free.
Free variables are split as ``x = x+ - x-``. The tableau is kept as
integer numerators over one common denominator (integer-preserving
pivoting), so no Fraction objects are created inside the pivot loop.
Entering and leaving variables follow Bland's smallest-index rule.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .kernels import pivot
from .linalg import common_denominator, primitive_ints

log = logging.getLogger(__name__)

OPTIMAL = "optimal"
UNBOUNDED = "unbounded"
INFEASIBLE = "infeasible"

MAX_PIVOTS = 100_000


@dataclass(frozen=True)
class Outcome:
    status: str
    x: tuple | None = None       # optimal point
    value: Fraction | None = None
    ray: tuple | None = None     # improving recession direction when unbounded


def _scaled(a: Sequence[Fraction], b: Fraction) -> tuple[list[int], int]:
    L = common_denominator([*a, b])
    return [int(x * L) for x in a], int(b * L)


def _iterate(T, D, basis, allowed):
    m = len(T) - 1
    for _ in range(MAX_PIVOTS):
        obj = T[m]
        j = next((j for j in allowed if obj[j] < 0), None)
        if j is None:
            return OPTIMAL, D, None
        best = -1
        br = ba = 0
        for i in range(m):
            a = T[i][j]
            if a > 0:
                rhs = T[i][-1]
                if best < 0:
                    best, br, ba = i, rhs, a
                else:
                    lhs, rh = rhs * ba, br * a
                    if lhs < rh or (lhs == rh and basis[i] < basis[best]):
                        best, br, ba = i, rhs, a
        if best < 0:
            return UNBOUNDED, D, j
        D = pivot(T, D, best, j)
        basis[best] = j
    raise RuntimeError("simplex pivot limit exceeded")


def _dump(T, D, basis, label, force=False):
    # an explicit debug=True request is shown even when DEBUG logging is off
    level = logging.DEBUG if log.isEnabledFor(logging.DEBUG) or not force else logging.WARNING
    log.log(level, "%s tableau (denominator %s), basis %s", label, D, basis)
    for row in T:
        log.log(level, "  %s", " ".join(f"{x:>6}" for x in row))


def solve(c, A_ub=(), b_ub=(), A_eq=(), b_eq=(), *, debug: bool = False) -> Outcome:
    n = len(c)
    m1, m2 = len(A_ub), len(A_eq)
    rows, needs_art = [], []
    for i, (a, b) in enumerate(zip(A_ub, b_ub)):
        ai, bi = _scaled(a, b)
        slack = [0] * m1
        slack[i] = 1
        row = ai + [-x for x in ai] + slack
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
            needs_art.append(True)
        else:
            needs_art.append(False)
        rows.append((row, bi))
    for a, b in zip(A_eq, b_eq):
        ai, bi = _scaled(a, b)
        row = ai + [-x for x in ai] + [0] * m1
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
        rows.append((row, bi))
        needs_art.append(True)

    art_start = 2 * n + m1
    k = sum(needs_art)
    T, basis = [], []
    a_idx = 0
    for i, ((row, bi), art) in enumerate(zip(rows, needs_art)):
        tail = [0] * k
        if art:
            tail[a_idx] = 1
            basis.append(art_start + a_idx)
            a_idx += 1
        else:
            basis.append(2 * n + i)
        T.append(row + tail + [bi])
    N = art_start + k
    m = len(T)

    D = 1
    if k:
        obj = [0] * (N + 1)
        for i in range(m):
            if basis[i] >= art_start:
                obj = [o - x for o, x in zip(obj, T[i])]
        for j in range(art_start, N):
            obj[j] += 1
        T.append(obj)
        status, D, _ = _iterate(T, D, basis, list(range(N)))
        if T[m][-1] < 0:
            if debug or log.isEnabledFor(logging.DEBUG):
                _dump(T, D, basis, "phase 1 (infeasible)", force=debug)
            return Outcome(INFEASIBLE)
        for i in range(m):
            if basis[i] >= art_start:
                j = next((j for j in range(art_start) if T[i][j] != 0), None)
                if j is None:
                    continue  # redundant row; its artificial stays basic at zero
                D = pivot(T, D, i, j)
                basis[i] = j
                if D < 0:
                    for r in range(len(T)):
                        T[r] = [-x for x in T[r]]
                    D = -D
        T.pop()

    L = common_denominator(c)
    cs = [int(x * L) for x in c]
    cfull = cs + [-x for x in cs] + [0] * (m1 + k)
    obj = [-D * cj for cj in cfull] + [0]
    for i in range(m):
        cb = cfull[basis[i]]
        if cb:
            obj = [o + cb * x for o, x in zip(obj, T[i])]
    T.append(obj)
    status, D, entering = _iterate(T, D, basis, list(range(art_start)))
    if debug or log.isEnabledFor(logging.DEBUG):
        _dump(T, D, basis, "final", force=debug)

    if status == UNBOUNDED:
        y = [0] * N
        y[entering] = D
        for i in range(m):
            y[basis[i]] -= T[i][entering]
        ray = primitive_ints([y[j] - y[n + j] for j in range(n)])
        return Outcome(UNBOUNDED, ray=tuple(Fraction(v) for v in ray))

    y = [Fraction(0)] * N
    for i in range(m):
        y[basis[i]] = Fraction(T[i][-1], D)
    x = tuple(y[j] - y[n + j] for j in range(n))
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return Outcome(OPTIMAL, x=x, value=value)
