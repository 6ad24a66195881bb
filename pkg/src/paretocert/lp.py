"""Exact linear programs over polyhedra and finitely generated cones."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import simplex
from .errors import DimensionMismatch, InputError
from .linalg import Vector, canonical_normal, vector
from .polyhedron import Face, HRep, NormalCone, _argmax_face

OPTIMAL = "Optimal"
UNBOUNDED = "Unbounded"
INFEASIBLE = "Infeasible"

_STATUS = {simplex.OPTIMAL: OPTIMAL, simplex.UNBOUNDED: UNBOUNDED, simplex.INFEASIBLE: INFEASIBLE}


@dataclass(frozen=True)
class LPResult:
    status: str
    value: Fraction | None = None
    witness: Vector | None = None  # optimal vertex, or improving ray when unbounded
    _source: object = field(default=None, repr=False, compare=False)
    _phi: Vector | None = field(default=None, repr=False, compare=False)

    @property
    def argmax(self) -> Face | None:
        """The full optimal face, as a face of the queried polyhedron."""
        if self.status != OPTIMAL:
            return None
        src = self._source
        face = src if isinstance(src, Face) else src.whole
        return _argmax_face(face, self._phi, self.value)


def _system(p):
    if isinstance(p, Face):
        h = p.hrep()
    elif isinstance(p, HRep):
        h = p
    else:
        raise TypeError("expected an HRep or a Face")
    return h


def maximize(p, phi: Sequence, *, debug: bool = False) -> LPResult:
    """``max phi.x`` over an HRep or a face of one."""
    h = _system(p)
    phi = vector(phi)
    if len(phi) != h.dim:
        raise DimensionMismatch("objective does not match the polyhedron's dimension")
    if not any(phi):
        raise InputError("objective must be nonzero")
    out = simplex.solve(phi, [a for a, _ in h.ineqs], [b for _, b in h.ineqs],
                        [a for a, _ in h.eqs], [b for _, b in h.eqs], debug=debug)
    status = _STATUS[out.status]
    if status == OPTIMAL:
        return LPResult(OPTIMAL, out.value, out.x, p, phi)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, None, out.ray)
    return LPResult(INFEASIBLE)


def minimize(p, phi: Sequence, **kw) -> LPResult:
    res = maximize(p, tuple(-x for x in vector(phi)), **kw)
    if res.status == OPTIMAL:
        return LPResult(OPTIMAL, -res.value, res.witness)
    return res


def feasible_point(h: HRep) -> Vector | None:
    """Some point of ``h``, or None when ``h`` is empty."""
    h = _system(h)
    out = simplex.solve([Fraction(0)] * h.dim, [a for a, _ in h.ineqs], [b for _, b in h.ineqs],
                        [a for a, _ in h.eqs], [b for _, b in h.eqs])
    return out.x if out.status == simplex.OPTIMAL else None


def cone_contains(cone: NormalCone, phi: Vector) -> bool:
    gens, lin = list(cone.generators), list(cone.lineality)
    k, l = len(gens), len(lin)
    n = len(phi)
    if k + l == 0:
        return not any(phi)
    cols = gens + lin
    A_eq = [[cols[j][i] for j in range(k + l)] for i in range(n)]
    A_ub = [[Fraction(-int(i == j)) for j in range(k + l)] for i in range(k)]
    out = simplex.solve([Fraction(0)] * (k + l), A_ub, [Fraction(0)] * k, A_eq, list(phi))
    return out.status == simplex.OPTIMAL


def _cone_lp(cone: NormalCone, n: int):
    gens, lin = list(cone.generators), list(cone.lineality)
    k, l = len(gens), len(lin)
    cols = gens + lin
    # phi_i = sum_j mu_j g_ji + sum_k nu_k l_ki >= 1  and  mu >= 0
    A_ub = [[-cols[j][i] for j in range(k + l)] for i in range(n)]
    b_ub = [Fraction(-1)] * n
    A_ub += [[Fraction(-int(i == j)) for j in range(k + l)] for i in range(k)]
    b_ub += [Fraction(0)] * k
    return cols, k, l, A_ub, b_ub


def nonnegative_in_cone(cone: NormalCone, n: int) -> Vector | None:
    """Some ``phi >= 0, phi != 0`` in the cone (scaled so its entries sum to at least 1), or None."""
    gens, lin = list(cone.generators), list(cone.lineality)
    k, l = len(gens), len(lin)
    if k + l == 0:
        return None
    cols = gens + lin
    A_ub = [[-cols[j][i] for j in range(k + l)] for i in range(n)]
    b_ub = [Fraction(0)] * n
    A_ub.append([-sum(c) for c in cols])
    b_ub.append(Fraction(-1))
    A_ub += [[Fraction(-int(i == j)) for j in range(k + l)] for i in range(k)]
    b_ub += [Fraction(0)] * k
    out = simplex.solve([Fraction(0)] * (k + l), A_ub, b_ub)
    if out.status != simplex.OPTIMAL:
        return None
    return tuple(sum((out.x[j] * cols[j][i] for j in range(k + l)), Fraction(0)) for i in range(n))


def strictly_positive_in_cone(cone: NormalCone, n: int | None = None) -> Vector | None:
    """A vector of the cone with every entry positive, or None.

    Among ``phi = sum mu_j g_j + lineality`` with every ``phi_i >= 1`` the
    choice minimizes ``sum mu`` first, then ``phi_1``, ``phi_2``, ... in
    turn; the result is scaled to primitive integers.
    """
    if not cone.generators and not cone.lineality:
        return None
    n = n or cone.dim or len((cone.generators + cone.lineality)[0])
    cols, k, l, A_ub, b_ub = _cone_lp(cone, n)
    width = k + l
    c = [Fraction(-1)] * k + [Fraction(0)] * l
    out = simplex.solve(c, A_ub, b_ub)
    if out.status != simplex.OPTIMAL:
        return None
    A_eq = [[Fraction(1)] * k + [Fraction(0)] * l]
    b_eq = [-out.value]
    for i in range(n):
        row = [cols[j][i] for j in range(width)]
        out = simplex.solve([-x for x in row], A_ub, b_ub, A_eq, b_eq)
        if out.status != simplex.OPTIMAL:
            raise AssertionError("lexicographic stage lost feasibility")
        A_eq.append(row)
        b_eq.append(-out.value)
    phi = tuple(b_eq[1:])
    return canonical_normal(phi)
