"""Exchange economies with piecewise-linear concave (PLC) utilities.

Each utility is the minimum of finitely many affine pieces over bundles in
the nonnegative orthant. The module compiles the downward closure of the
utility possibility set into an HRep, checks the monotonicity hypothesis
behind ``U^P = U^+``, and synthesizes strictly positive supporting prices
for a Pareto optimal endowment allocation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DimensionMismatch,
    EndowmentNotParetoError,
    InputError,
    NonMonotoneError,
    NoPositivePriceError,
    NotMinimalError,
    WalrasFailure,
)
from .linalg import Vector, inner_product, is_positive, to_rational, unit, vector
from .lp import maximize, minimize, strictly_positive_in_cone
from .pareto import classify, is_maximal
from .polyhedron import (
    HRep,
    VRep,
    downward_closure,
    hrep_from_vrep,
    minimal_face_at,
    minkowski_sum,
    negate,
    normal_cone_at,
    project_eliminate,
)

ZERO, ONE = Fraction(0), Fraction(1)


@dataclass(frozen=True)
class Piece:
    c: Vector
    d: Fraction

    def __post_init__(self):
        object.__setattr__(self, "c", vector(self.c))
        object.__setattr__(self, "d", to_rational(self.d))

    def __call__(self, x: Sequence) -> Fraction:
        return inner_product(self.c, x) + self.d


@dataclass(frozen=True)
class PLCUtility:
    pieces: tuple

    def __post_init__(self):
        ps = tuple(p if isinstance(p, Piece) else Piece(*p) for p in self.pieces)
        if not ps:
            raise InputError("a PLC utility needs at least one piece")
        m = len(ps[0].c)
        if any(len(p.c) != m for p in ps):
            raise DimensionMismatch("pieces disagree on the number of goods")
        object.__setattr__(self, "pieces", ps)

    @property
    def goods(self) -> int:
        return len(self.pieces[0].c)

    def __call__(self, x: Sequence) -> Fraction:
        return eval_plc(self, x)

    def normalized(self) -> "PLCUtility":
        """Shift offsets so that the utility of the empty bundle is 0."""
        base = min(p.d for p in self.pieces)
        return PLCUtility(tuple(Piece(p.c, p.d - base) for p in self.pieces))


def eval_plc(u: PLCUtility, x: Sequence) -> Fraction:
    x = vector(x)
    if len(x) != u.goods:
        raise DimensionMismatch(f"bundle has {len(x)} goods, utility expects {u.goods}")
    if any(v < 0 for v in x):
        raise InputError("bundles must be nonnegative")
    return min(p(x) for p in u.pieces)


@dataclass(frozen=True)
class Economy:
    utilities: tuple
    endowments: tuple

    def __post_init__(self):
        us = tuple(u if isinstance(u, PLCUtility) else PLCUtility(u) for u in self.utilities)
        es = tuple(vector(e) for e in self.endowments)
        if not us or len(us) != len(es):
            raise InputError("need one endowment per agent and at least one agent")
        m = us[0].goods
        for i, (u, e) in enumerate(zip(us, es)):
            if u.goods != m or len(e) != m:
                raise DimensionMismatch(f"agent {i + 1}: inconsistent number of goods")
            if any(x < 0 for x in e) or not any(e):
                raise InputError(f"agent {i + 1}: endowment must be nonnegative and nonzero")
        object.__setattr__(self, "utilities", tuple(u.normalized() for u in us))
        object.__setattr__(self, "endowments", es)

    @property
    def n(self) -> int:
        return len(self.utilities)

    @property
    def m(self) -> int:
        return self.utilities[0].goods

    @property
    def total(self) -> Vector:
        return tuple(sum(col) for col in zip(*self.endowments))

    def endowment_utilities(self) -> Vector:
        return tuple(u(e) for u, e in zip(self.utilities, self.endowments))


# -- utility possibility set -------------------------------------------------

def _allocation_rows(e: Economy, extra: int):
    """x_{ik} >= 0 and sum_i x_{ik} <= total_k over n*m + extra coordinates."""
    n, m = e.n, e.m
    width = n * m + extra
    rows = []
    for j in range(n * m):
        rows.append((tuple(-x for x in unit(j, width)), ZERO))
    for k in range(m):
        a = [ZERO] * width
        for i in range(n):
            a[i * m + k] = ONE
        rows.append((tuple(a), e.total[k]))
    return rows


def build_dc_utility_set(e: Economy) -> HRep:
    """Downward closure of the utility possibility set, by lift and project."""
    n, m = e.n, e.m
    width = n * m + n
    rows = _allocation_rows(e, n)
    for i, u in enumerate(e.utilities):
        for p in u.pieces:
            a = [ZERO] * width
            a[n * m + i] = ONE
            for k in range(m):
                a[i * m + k] = -p.c[k]
            rows.append((tuple(a), p.d))
    return project_eliminate(HRep(width, tuple(rows)), range(n * m, width))


def utility_floor(e: Economy) -> Vector:
    """Least utility each agent can be left with by a feasible allocation."""
    corners = list(itertools.product(*[(ZERO, t) for t in e.total]))
    return tuple(min(u(x) for x in corners) for u in e.utilities)


def utility_set(e: Economy) -> HRep:
    """The utility possibility set: the downward closure cut at the utility floor."""
    dc = build_dc_utility_set(e)
    n = e.n
    floor = utility_floor(e)
    rows = [(tuple(-x for x in unit(i, n)), -floor[i]) for i in range(n)]
    return dc.intersect(rows).canonical


def dc_utility_set_by_pieces(e: Economy) -> HRep:
    """Same set as ``build_dc_utility_set``, via one polytope per choice of pieces.

    For every combination of active pieces, the allocations where those
    pieces attain the minimum form a polytope on which utilities are
    affine; the hull of all their images plus the negative orthant is the
    downward closure.
    """
    n, m = e.n, e.m
    width = n * m
    base = _allocation_rows(e, 0)
    images = set()
    for combo in itertools.product(*[range(len(u.pieces)) for u in e.utilities]):
        rows = list(base)
        for i, (u, k) in enumerate(zip(e.utilities, combo)):
            pk = u.pieces[k]
            for j, q in enumerate(u.pieces):
                if j == k:
                    continue
                # pk(x_i) <= q(x_i)
                a = [ZERO] * width
                for g in range(m):
                    a[i * m + g] = pk.c[g] - q.c[g]
                if any(a):
                    rows.append((tuple(a), q.d - pk.d))
                elif pk.d > q.d:
                    rows = None
                    break
            if rows is None:
                break
        if rows is None:
            continue
        V = HRep(width, tuple(rows)).vrep
        for x in V.vertices:
            images.add(tuple(u.pieces[k](x[i * m:(i + 1) * m]) for i, (u, k) in enumerate(zip(e.utilities, combo))))
    rays = [tuple(-x for x in unit(i, n)) for i in range(n)]
    return hrep_from_vrep(VRep(n, sorted(images), rays))


# -- monotonicity ------------------------------------------------------------

def strict_monotonicity_sufficient(u: PLCUtility) -> bool:
    """True when every piece has a strictly positive gradient (False is inconclusive)."""
    return all(is_positive(p.c) for p in u.pieces)


def check_up_equals_uplus(e: Economy, sample: Sequence) -> bool:
    for i, u in enumerate(e.utilities):
        if not strict_monotonicity_sufficient(u):
            raise NonMonotoneError(i)
    U = utility_set(e)
    ok = True
    for v in sample:
        c = classify(U, v)
        if c.in_set and c.pareto != c.plus:
            ok = False
    return ok


# -- second welfare theorem --------------------------------------------------

@dataclass(frozen=True)
class AgentOutcome:
    budget: Fraction
    utility: Fraction
    demand: Vector


@dataclass(frozen=True)
class WalrasianResult:
    prices: Vector
    agents: tuple
    verified: bool = True


def upper_contour_set(u: PLCUtility, level: Fraction) -> HRep:
    """Bundles ``x >= 0`` with ``u(x) >= level``."""
    m = u.goods
    rows = [(tuple(-x for x in unit(k, m)), ZERO) for k in range(m)]
    for p in u.pieces:
        if any(p.c):
            rows.append((tuple(-x for x in p.c), p.d - level))
        elif p.d < level:
            return HRep.empty(m)
    return HRep(m, tuple(rows))


def best_affordable(u: PLCUtility, prices: Vector, budget: Fraction):
    """Max ``u(x)`` subject to ``prices . x <= budget, x >= 0`` (epigraph LP)."""
    m = u.goods
    rows = [(tuple(-x for x in unit(k, m + 1)), ZERO) for k in range(m)]
    rows.append((tuple(prices) + (ZERO,), budget))
    for p in u.pieces:
        rows.append((tuple(-x for x in p.c) + (ONE,), p.d))
    res = maximize(HRep(m + 1, tuple(rows)), unit(m, m + 1))
    if res.status != "Optimal":
        return None, None
    return res.value, res.witness[:m]


def second_welfare_prices(e: Economy) -> WalrasianResult:
    """Strictly positive prices that make the endowment allocation a Walrasian equilibrium."""
    n, m = e.n, e.m
    ue = e.endowment_utilities()

    dc = build_dc_utility_set(e)
    ok, dom = is_maximal(dc, ue)
    if not ok:
        raise EndowmentNotParetoError(ue, dom)

    A_parts = [upper_contour_set(u, lvl) for u, lvl in zip(e.utilities, ue)]
    A = A_parts[0].canonical if n == 1 else minkowski_sum(*A_parts)

    total = e.total
    below = [(unit(k, m), total[k]) for k in range(m)]
    res = minimize(A.intersect(below), (ONE,) * m)
    if res.value < sum(total):
        raise NotMinimalError(res.witness)

    negA = downward_closure(negate(A))
    point = tuple(-x for x in total)
    cone = normal_cone_at(negA, minimal_face_at(negA, point))
    p = strictly_positive_in_cone(cone, m)
    if p is None:
        raise NoPositivePriceError("no strictly positive normal supports the aggregate endowment")

    agents = []
    for i, (u, ei) in enumerate(zip(e.utilities, e.endowments)):
        budget = inner_product(p, ei)
        best, demand = best_affordable(u, p, budget)
        if best is None or best != ue[i]:
            raise WalrasFailure(f"agent {i + 1} can afford a strictly better bundle")
        agents.append(AgentOutcome(budget, best, demand))
    return WalrasianResult(p, tuple(agents))
