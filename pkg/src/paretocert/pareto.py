"""Pareto optimality: tests, classification and sequential welfare certificates.

A certificate for ``u`` is a tuple of nonnegative normals whose last
member is strictly positive, such that ``u`` survives every round of
"keep the maximizers of the next normal". Certificates are built on the
downward closure of the set (where every supporting normal is
nonnegative) and then replayed on the set itself.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    CertificateRejected,
    ChainError,
    InputError,
    NoMaximalPointsError,
    NotInSetError,
    NotMaximalError,
    PreconditionError,
    ResourceLimitError,
)
from .linalg import Vector, add, canonical_normal, common_denominator, inner_product, is_positive, sub, support, vector
from .lp import maximize, nonnegative_in_cone, strictly_positive_in_cone
from .polyhedron import (
    Face,
    HRep,
    NormalCone,
    VRep,
    closure,
    downward_closure,
    face_from_active,
    hrep_from_vrep,
    minimal_face_at,
    normal_cone_at,
    same_set,
)

DIRECT = "direct"
FLAG = "flag"


@dataclass(frozen=True)
class GivenChain:
    """Caller-supplied exposure chain: active sets of faces of the downward closure."""

    faces: tuple

    def __init__(self, faces: Iterable):
        object.__setattr__(self, "faces", tuple(f if isinstance(f, Face) else frozenset(f) for f in faces))


@dataclass(frozen=True)
class Certificate:
    normals: tuple
    faces: tuple                  # U^1..U^T as faces of the input set
    lambdas: tuple = ()
    chain: tuple | None = None    # G^1..G^T as faces of the downward closure
    kind: str = "verified"
    verified: bool = True

    @property
    def T(self) -> int:
        return len(self.normals)


@dataclass(frozen=True)
class Classification:
    in_set: bool
    pareto: bool = False
    plus: bool = False
    plus_plus: bool = False
    dominator: Vector | None = None


class Maximality(NamedTuple):
    maximal: bool
    dominator: Vector | None


# -- maximality ------------------------------------------------------------------

def _dominance(h: HRep, u: Vector):
    n = h.dim
    lower = [(tuple(Fraction(-int(i == j)) for j in range(n)), -u[i]) for i in range(n)]
    return maximize(h.intersect(lower), (Fraction(1),) * n)


def is_maximal(h: HRep, u: Sequence) -> Maximality:
    """Solve max sum(v) over h with v >= u; u is maximal iff the optimum is sum(u)."""
    u = vector(u)
    if not h.contains(u):
        raise NotInSetError(u)
    res = _dominance(h, u)
    if res.status == "Unbounded":
        return Maximality(False, add(u, res.witness))
    if res.value == sum(u):
        return Maximality(True, None)
    return Maximality(False, res.witness)


def classify(h: HRep, u: Sequence) -> Classification:
    u = vector(u)
    if len(u) != h.dim or not h.contains(u):
        return Classification(False)
    cone = normal_cone_at(h, minimal_face_at(h, u))
    plus = nonnegative_in_cone(cone, h.dim) is not None
    plus_plus = strictly_positive_in_cone(cone, h.dim) is not None
    pareto, dom = is_maximal(h, u)
    if (plus_plus and not pareto) or (pareto and not plus):
        raise AssertionError(f"containment chain violated at {u}")
    return Classification(True, pareto, plus, plus_plus, dom)


# -- verification ----------------------------------------------------------------

def _replay(h: HRep, u: Vector, normals: Sequence[Vector]) -> list[Face]:
    n = h.dim
    cur = h.whole
    faces = []
    for t, phi in enumerate(normals, 1):
        if len(phi) != n:
            raise CertificateRejected(t, "normal has the wrong dimension")
        if any(x < 0 for x in phi):
            raise CertificateRejected(t, "negative entry")
        if not any(phi):
            raise CertificateRejected(t, "zero normal")
        res = maximize(cur, phi)
        if res.status == "Unbounded":
            raise CertificateRejected(t, "unbounded subproblem")
        if inner_product(phi, u) < res.value:
            raise CertificateRejected(t, "u dropped")
        cur = res.argmax
        faces.append(cur)
    return faces


def _start(h: HRep, u, normals):
    u = vector(u)
    normals = [vector(p) for p in normals]
    if not h.contains(u):
        raise NotInSetError(u)
    if not normals:
        raise CertificateRejected(0, "no normals")
    if len(normals) > h.dim:
        raise CertificateRejected(len(normals), "more normals than coordinates")
    return u, normals


def verify_certificate(h: HRep, u: Sequence, normals: Sequence) -> Certificate:
    """Replay the rounds on ``h``; acceptance certifies that ``u`` is Pareto optimal."""
    u, normals = _start(h, u, normals)
    faces = _replay(h, u, normals)
    if not is_positive(normals[-1]):
        raise CertificateRejected(len(normals), "last normal not strictly positive")
    return Certificate(tuple(normals), tuple(faces))


def verify_partition_certificate(h: HRep, u: Sequence, normals: Sequence) -> Certificate:
    """Like ``verify_certificate`` but the supports must partition the coordinates
    instead of the last normal being strictly positive (serial dictatorship)."""
    u, normals = _start(h, u, normals)
    seen = set()
    for t, phi in enumerate(normals, 1):
        s = support(phi)
        if s & seen:
            raise CertificateRejected(t, "supports overlap")
        seen |= s
    faces = _replay(h, u, normals)
    if seen != set(range(h.dim)):
        raise CertificateRejected(len(normals), "supports do not cover every coordinate")
    return Certificate(tuple(normals), tuple(faces), kind="partition")


# -- construction ----------------------------------------------------------------

def _flag_chain(G: HRep, F: Face) -> list[Face]:
    chain = []
    cur = G.whole
    while cur.active != F.active:
        best = None
        for i in sorted(F.active - cur.active):
            act = closure(G, cur.active | {i})
            f = face_from_active(G, act)
            if f.dim == cur.dim - 1 and (best is None or sorted(f.active) < sorted(best.active)):
                best = f
        if best is None:
            raise AssertionError("no facet of the current face contains the target face")
        chain.append(best)
        cur = best
    return chain


def _given_chain(G: HRep, F: Face, given: GivenChain) -> list[Face]:
    chain = []
    prev = G.whole
    for k, f in enumerate(given.faces, 1):
        act = f.active if isinstance(f, Face) else f
        if any(not 0 <= i < len(G.ineqs) for i in act):
            raise ChainError(f"link {k}: index out of range")
        cl = closure(G, act)
        if cl is None or cl != act:
            raise ChainError(f"link {k}: not the active set of a nonempty face")
        if not prev.active < cl:
            raise ChainError(f"link {k}: not a proper face of its predecessor")
        prev = face_from_active(G, cl)
        chain.append(prev)
    if not chain or prev.active != F.active:
        raise ChainError("chain does not end at the minimal face containing the point")
    return chain


def _lambda(psi: Vector, prev: Vector) -> Fraction:
    return Fraction(1 + max(math.ceil(abs(psi[i]) / prev[i]) for i in support(prev)))


def construct_certificate(h: HRep, u: Sequence, strategy=DIRECT) -> Certificate:
    u = vector(u)
    if not h.contains(u):
        raise NotInSetError(u)
    res = _dominance(h, u)
    if res.status == "Unbounded":
        # a nonnegative recession direction dominates every point of h
        raise NoMaximalPointsError("the set recedes in a nonnegative direction")
    if res.value != sum(u):
        raise NotMaximalError(u, res.witness)
    G = downward_closure(h)
    F = minimal_face_at(G, u)
    top = G.whole
    if F.active == top.active:
        raise NoMaximalPointsError("the point lies in the relative interior of the downward closure")

    if strategy == DIRECT:
        chain = [F]
    elif strategy == FLAG:
        chain = _flag_chain(G, F)
    elif isinstance(strategy, GivenChain):
        chain = _given_chain(G, F, strategy)
    else:
        raise InputError(f"unknown strategy {strategy!r}")

    normals, lambdas = [], []
    prev_face = top
    for t, g in enumerate(chain):
        new = sorted(g.active - prev_face.active)
        psi = tuple(sum(col) for col in zip(*(G.ineqs[i][0] for i in new)))
        if t == 0:
            phi = psi
        else:
            lam = _lambda(psi, normals[-1])
            lambdas.append(lam)
            phi = tuple(lam * a + b for a, b in zip(normals[-1], psi))
        normals.append(canonical_normal(phi))
        prev_face = g

    kind = strategy if isinstance(strategy, str) else "given"
    cert = verify_certificate(h, u, normals)
    if not same_set(cert.faces[-1].hrep(), F.hrep()):
        raise AssertionError("replayed terminal face differs from the target face")
    return Certificate(cert.normals, cert.faces, tuple(lambdas), tuple(chain), kind)


# -- partition search ------------------------------------------------------------

@dataclass(frozen=True)
class PartitionReport:
    """Exhaustive failure of the partition search: one entry per pattern tried."""

    attempts: tuple  # (pattern, failing step, reason)
    feasible: bool = False


def ordered_partitions(n: int, max_blocks: int):
    """Ordered set partitions of range(n), more blocks first."""
    for k in range(min(n, max_blocks), 0, -1):
        for assign in itertools.product(range(k), repeat=n):
            if len(set(assign)) == k:
                yield tuple(frozenset(i for i in range(n) if assign[i] == b) for b in range(k))


def _pattern_normal(cone: NormalCone, block: frozenset, n: int) -> Vector | None:
    """Sum of the extreme rays of cone ∩ {phi >= 0 on block, phi = 0 elsewhere}."""
    origin = (Fraction(0),) * n
    H = hrep_from_vrep(VRep(n, (origin,), cone.generators, cone.lineality))
    extra_ineqs, extra_eqs = [], []
    for i in range(n):
        e = tuple(Fraction(int(i == j)) for j in range(n))
        if i in block:
            extra_ineqs.append((tuple(-x for x in e), Fraction(0)))
        else:
            extra_eqs.append((e, Fraction(0)))
    V = H.intersect(extra_ineqs, extra_eqs).vrep
    if not V.rays:
        return None
    phi = tuple(sum(col) for col in zip(*V.rays))
    if support(phi) != block:
        return None
    return canonical_normal(phi)


def search_partition_certificate(h: HRep, u: Sequence, bound_T: int, *, patterns=None,
                                 cap: int = 10_000):
    """Look for normals whose supports partition the coordinates.

    Each round uses the most interior admissible normal (sum of extreme
    rays), which yields the smallest possible next face, so one greedy pass
    per pattern decides that pattern.
    """
    u = vector(u)
    if not h.contains(u):
        raise NotInSetError(u)
    ok, dom = is_maximal(h, u)
    if not ok:
        raise NotMaximalError(u, dom)
    n = h.dim
    pats = ordered_partitions(n, bound_T) if patterns is None else (
        tuple(frozenset(b) for b in p) for p in patterns)
    attempts = []
    for k, pattern in enumerate(pats):
        if k >= cap:
            raise ResourceLimitError(f"more than {cap} patterns")
        cur = h.whole
        normals = []
        failed = None
        for t, block in enumerate(pattern, 1):
            sub_h = cur.hrep()
            cone = normal_cone_at(sub_h, minimal_face_at(sub_h, u))
            phi = _pattern_normal(cone, block, n)
            if phi is None:
                failed = (t, "no supporting normal with exactly this support")
                break
            normals.append(phi)
            res = maximize(cur, phi)
            cur = res.argmax
        if failed is None:
            cert = verify_partition_certificate(h, u, normals)
            return cert
        attempts.append((pattern, failed[0], failed[1]))
    return PartitionReport(tuple(attempts))


# -- welfare function and bargaining ---------------------------------------------

@dataclass(frozen=True)
class WelfareFunction:
    base: Vector
    normals: tuple

    def __call__(self, v: Sequence) -> Fraction:
        return evaluate(self, v)


def build_welfare(cert: Certificate, u: Sequence) -> WelfareFunction:
    return WelfareFunction(vector(u), tuple(cert.normals))


def evaluate(W: WelfareFunction, v: Sequence) -> Fraction:
    d = sub(vector(v), W.base)
    return min(inner_product(phi, d) for phi in W.normals)


@dataclass(frozen=True)
class Round:
    agents: frozenset
    powers: dict   # agent -> bargaining power
    normal: Vector


@dataclass(frozen=True)
class BargainingPlan:
    base: Vector
    rounds: tuple


def bargaining_plan(cert: Certificate, u: Sequence) -> BargainingPlan:
    u = vector(u)
    if not is_positive(u):
        raise PreconditionError("bargaining needs utilities strictly above the disagreement point 0")
    done: set = set()
    rounds = []
    for phi in cert.normals:
        agents = support(phi) - done
        if not agents:
            continue
        total = sum(phi[j] * u[j] for j in agents)
        powers = {i: phi[i] * u[i] / total for i in sorted(agents)}
        rounds.append(Round(frozenset(agents), powers, tuple(phi)))
        done |= agents
    if done != set(range(len(u))):
        raise PreconditionError("the normals do not reach every agent")
    return BargainingPlan(u, tuple(rounds))


class BargainingCheck(NamedTuple):
    ok: bool
    round: int | None = None
    condition: str | None = None


def _nash_worse(v: Vector, u: Vector, powers: dict) -> bool:
    """Is prod (v_i/u_i)^p_i <= 1?  Exact; no logarithms.

    Weighted AM-GM bounds the product by sum p_i v_i/u_i, which settles
    almost every case cheaply. Otherwise both sides are raised to the
    common denominator of the powers and compared as rationals.
    """
    if any(v[i] <= 0 for i in powers):
        return True
    if sum(p * v[i] / u[i] for i, p in powers.items()) <= 1:
        return True
    D = common_denominator(powers.values())
    lhs = rhs = Fraction(1)
    for i, p in powers.items():
        k = int(p * D)
        lhs *= v[i] ** k
        rhs *= u[i] ** k
    return lhs <= rhs


def check_bargaining(h: HRep, plan: BargainingPlan, u: Sequence, *, max_vertices: int = 500) -> BargainingCheck:
    u = vector(u)
    if not is_positive(u):
        raise PreconditionError("bargaining needs utilities strictly above the disagreement point 0")
    n = h.dim
    fixed: list = []
    for t, rnd in enumerate(plan.rounds, 1):
        fix_eqs = [(tuple(Fraction(int(i == j)) for j in range(n)), u[i]) for i in fixed]
        V = h.intersect(eqs=fix_eqs)
        # (a) u maximizes the round's normal over what is still on the table
        res = maximize(V, rnd.normal)
        if res.status != "Optimal" or res.value != inner_product(rnd.normal, u):
            return BargainingCheck(False, t, "a")
        # (b) powers proportional to weighted utilities
        ps = rnd.powers
        if any(p <= 0 for p in ps.values()) or sum(ps.values()) != 1:
            return BargainingCheck(False, t, "b")
        for i, j in itertools.combinations(sorted(ps), 2):
            if ps[i] * rnd.normal[j] * u[j] != ps[j] * rnd.normal[i] * u[i]:
                return BargainingCheck(False, t, "b")
        # (c) no vertex still available beats u on the round's Nash product
        for v in V.vrep.vertices[:max_vertices]:
            if any(v[i] != u[i] for i in ps) and not _nash_worse(v, u, ps):
                return BargainingCheck(False, t, "c")
        fixed += sorted(rnd.agents)
    return BargainingCheck(True)


def verify_bargaining(h: HRep, plan: BargainingPlan, u: Sequence) -> bool:
    return check_bargaining(h, plan, u).ok
