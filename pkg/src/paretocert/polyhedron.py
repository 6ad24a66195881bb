"""Convex polyhedra in inequality form (HRep) and generator form (VRep).

Conversions use the double description method on the homogenized cone;
projections use Fourier-Motzkin elimination with LP redundancy pruning.
Faces are identified by maximal active sets of the parent's inequalities,
computed through the generator/constraint incidence table, so face
equality is plain set comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from . import simplex
from .errors import DimensionMismatch, EmptyPolyhedronError, InputError, NotInSetError, ResourceLimitError
from .kernels import adjacent_pairs, combine, dot, primitive
from .linalg import (
    Vector,
    affine_rank,
    canonical_normal,
    integer_row,
    rref,
    to_rational,
    unit,
    vector,
)

Constraint = tuple  # (normal: Vector, rhs: Fraction)

DEFAULT_FACE_CAP = 20_000


def _constraint(a, b, dim: int) -> Constraint:
    a = vector(a)
    if len(a) != dim:
        raise DimensionMismatch(f"normal of length {len(a)} in dimension {dim}")
    return a, to_rational(b)


@dataclass(frozen=True)
class HRep:
    """``{x : a.x <= b for (a, b) in ineqs, a.x == b for (a, b) in eqs}``."""

    dim: int
    ineqs: tuple = ()
    eqs: tuple = ()

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("dimension must be positive")
        ineqs = tuple(_constraint(a, b, self.dim) for a, b in self.ineqs)
        eqs = tuple(_constraint(a, b, self.dim) for a, b in self.eqs)
        for a, _ in ineqs + eqs:
            if not any(a):
                raise InputError("zero normal in constraint")
        object.__setattr__(self, "ineqs", ineqs)
        object.__setattr__(self, "eqs", eqs)

    @classmethod
    def empty(cls, dim: int) -> "HRep":
        """The marker for the empty set: x1 <= 0 and -x1 <= -1."""
        e = unit(0, dim)
        return cls(dim, ((tuple(-x for x in e), -1), (e, 0)))

    @classmethod
    def box(cls, lo: Sequence, hi: Sequence) -> "HRep":
        n = len(lo)
        rows = []
        for i in range(n):
            e = unit(i, n)
            rows.append((tuple(-x for x in e), -to_rational(lo[i])))
            rows.append((e, to_rational(hi[i])))
        return cls(n, tuple(rows))

    def contains(self, x: Sequence) -> bool:
        x = vector(x)
        if len(x) != self.dim:
            raise DimensionMismatch(f"point of length {len(x)} in dimension {self.dim}")
        return all(_ip(a, x) <= b for a, b in self.ineqs) and all(_ip(a, x) == b for a, b in self.eqs)

    def tight(self, x: Sequence) -> frozenset:
        """Indices of inequalities that hold with equality at ``x``."""
        return frozenset(i for i, (a, b) in enumerate(self.ineqs) if _ip(a, x) == b)

    def intersect(self, ineqs: Iterable = (), eqs: Iterable = ()) -> "HRep":
        return HRep(self.dim, self.ineqs + tuple(ineqs), self.eqs + tuple(eqs))

    # -- memoized derived data (pure caches) ---------------------------------

    @cached_property
    def vrep(self) -> "VRep":
        return vrep_from_hrep(self)

    @cached_property
    def canonical(self) -> "HRep":
        return hrep_from_vrep(self.vrep)

    @property
    def is_empty(self) -> bool:
        return not self.vrep.vertices

    @cached_property
    def _incidence(self):
        v = self.vrep
        m = len(self.ineqs)
        vmasks = []
        for p in v.vertices:
            mask = 0
            for i, (a, b) in enumerate(self.ineqs):
                if _ip(a, p) == b:
                    mask |= 1 << i
            vmasks.append(mask)
        rmasks = []
        for r in v.rays:
            mask = 0
            for i, (a, _) in enumerate(self.ineqs):
                if _ip(a, r) == 0:
                    mask |= 1 << i
            rmasks.append(mask)
        return vmasks, rmasks, (1 << m) - 1

    @property
    def whole(self) -> "Face":
        """The polyhedron itself as a face of itself."""
        return face_from_active(self, ())


@dataclass(frozen=True)
class VRep:
    """``conv(vertices) + cone(rays) + span(lines)``; no vertices means empty."""

    dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lines: tuple = ()

    def __post_init__(self):
        for name in ("vertices", "rays", "lines"):
            vs = tuple(vector(v) for v in getattr(self, name))
            for v in vs:
                if len(v) != self.dim:
                    raise DimensionMismatch(f"{name[:-1]} of length {len(v)} in dimension {self.dim}")
            if name != "vertices" and any(not any(v) for v in vs):
                raise InputError(f"zero vector among {name}")
            object.__setattr__(self, name, vs)

    @property
    def is_empty(self) -> bool:
        return not self.vertices


@dataclass(frozen=True)
class Face:
    """Face of ``parent`` cut out by turning ``active`` inequalities into equalities."""

    parent: HRep
    active: frozenset
    dim: int

    @property
    def is_empty(self) -> bool:
        return self.dim < 0

    @cached_property
    def generators(self) -> VRep:
        vs, rs = _face_generators(self.parent, self.active)
        return VRep(self.parent.dim, vs, rs, self.parent.vrep.lines)

    @property
    def vertices(self) -> tuple:
        return self.generators.vertices

    def hrep(self) -> HRep:
        p = self.parent
        act = sorted(self.active)
        return HRep(p.dim, tuple(c for i, c in enumerate(p.ineqs) if i not in self.active),
                    p.eqs + tuple(p.ineqs[i] for i in act))

    def contains(self, x: Sequence) -> bool:
        x = vector(x)
        return self.parent.contains(x) and self.active <= self.parent.tight(x)

    def relint_contains(self, x: Sequence) -> bool:
        x = vector(x)
        return self.parent.contains(x) and self.parent.tight(x) == self.active

    def is_subface_of(self, other: "Face") -> bool:
        return self.parent == other.parent and other.active <= self.active


@dataclass(frozen=True)
class NormalCone:
    """``{sum mu_j g_j + sum nu_k l_k : mu >= 0}``."""

    generators: tuple
    lineality: tuple = ()
    dim: int = 0

    def contains(self, phi: Sequence) -> bool:
        from .lp import cone_contains

        return cone_contains(self, vector(phi))


@dataclass(frozen=True)
class Unbounded:
    """Result of a linear maximization with no finite optimum."""

    ray: Vector


def _ip(a, x) -> Fraction:
    s = Fraction(0)
    for p, q in zip(a, x):
        if p and q:
            s += p * q
    return s


# -- double description ------------------------------------------------------

def _dd(d: int, ineqs: list, eqs: list):
    """Generators of the cone ``{y : A y <= 0, E y = 0}`` in Z^d.

    Rows are integer lists. Returns ``(lines, rays)`` with primitive integer
    entries; rays are extreme modulo the lineality space.
    """
    lines = [[int(i == j) for j in range(d)] for i in range(d)]
    for e in eqs:
        k = next((k for k, l in enumerate(lines) if dot(e, l)), None)
        if k is None:
            continue
        l = lines.pop(k)
        s = dot(e, l)
        lines = [_cancel(l2, dot(e, l2), l, s) for l2 in lines]
    rays, masks = [], []
    for j, a in enumerate(ineqs):
        bit = 1 << j
        k = next((k for k, l in enumerate(lines) if dot(a, l)), None)
        if k is not None:
            l = lines.pop(k)
            s = dot(a, l)
            if s > 0:
                l = [-x for x in l]
                s = -s
            lines = [_cancel(l2, dot(a, l2), l, s) for l2 in lines]
            for idx, r in enumerate(rays):
                t = dot(a, r)
                if t:
                    rays[idx] = primitive([-s * x + t * y for x, y in zip(r, l)])
                masks[idx] |= bit
            rays.append(l)
            masks.append(bit - 1)
            continue
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        if not pos:
            for i, v in enumerate(vals):
                if v == 0:
                    masks[i] |= bit
            continue
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays, new_masks = [], []
        for i, pi in adjacent_pairs(pos, neg, masks):
            # feasible combination of an infeasible ray i and a feasible ray pi
            new_rays.append(combine(rays[i] + [vals[i]], rays[pi] + [vals[pi]], d)[:d])
            new_masks.append((masks[i] & masks[pi]) | bit)
        keep = [i for i, v in enumerate(vals) if v <= 0]
        rays = [rays[i] for i in keep] + new_rays
        masks = [masks[i] | (bit if vals[i] == 0 else 0) for i in keep] + new_masks
    return lines, rays


def _cancel(v, t, l, s):
    """Remove the component of ``v`` along line ``l`` (t = a.v, s = a.l)."""
    if not t:
        return v
    return primitive([s * x - t * y for x, y in zip(v, l)])


def _canon_line(v):
    lead = next((x for x in v if x), 0)
    return [-x for x in v] if lead < 0 else list(v)


def vrep_from_hrep(h: HRep) -> VRep:
    d = h.dim
    rows = [[0] * d + [-1]]
    for a, b in h.ineqs:
        rows.append(integer_row(list(a) + [-b]))
    eqs = [integer_row(list(a) + [-b]) for a, b in h.eqs]
    lines, rays = _dd(d + 1, rows, eqs)
    vertices, out_rays = set(), set()
    for r in rays:
        t = r[d]
        if t > 0:
            vertices.add(tuple(Fraction(x, t) for x in r[:d]))
        elif any(r[:d]):
            out_rays.add(tuple(Fraction(x) for x in primitive(r[:d])))
    if not vertices:
        return VRep(d)
    out_lines = sorted({tuple(Fraction(x) for x in _canon_line(primitive(l[:d]))) for l in lines})
    return VRep(d, tuple(sorted(vertices)), tuple(sorted(out_rays)), tuple(out_lines))


def hrep_from_vrep(v: VRep) -> HRep:
    d = v.dim
    if v.is_empty:
        return HRep.empty(d)
    rows = [integer_row(list(p) + [Fraction(-1)]) for p in v.vertices]
    rows += [integer_row(list(r) + [Fraction(0)]) for r in v.rays]
    eqs = [integer_row(list(l) + [Fraction(0)]) for l in v.lines]
    lines, rays = _dd(d + 1, rows, eqs)
    ineqs = [(r[:d], r[d]) for r in rays if any(r[:d])]
    equal = [(l[:d], l[d]) for l in lines]
    return canonical_form(d, ineqs, equal)


def canonical_form(dim: int, ineqs: Iterable, eqs: Iterable) -> HRep:
    """Deterministic normal form of a consistent, irredundant system.

    Equalities are brought to reduced row echelon form, inequalities are
    reduced modulo the equality pivots; every row is then scaled to
    primitive integers (equalities with a positive leading entry) and the
    inequalities are sorted.
    """
    E, pivots = rref([[to_rational(x) for x in a] + [to_rational(b)] for a, b in eqs], dim + 1)
    out_eqs = []
    for row in E:
        c = canonical_normal(row, sign_free=True)
        out_eqs.append((c[:dim], c[dim]))
    out_ineqs = set()
    for a, b in ineqs:
        row = [to_rational(x) for x in a] + [to_rational(b)]
        for er, p in zip(E, pivots):
            f = row[p]
            if f:
                row = [x - f * y for x, y in zip(row, er)]
        if not any(row[:dim]):
            if row[dim] < 0:
                return HRep.empty(dim)
            continue
        out_ineqs.add(canonical_normal(row))
    return HRep(dim, tuple((c[:dim], c[dim]) for c in sorted(out_ineqs)), tuple(out_eqs))


def canonical(h: HRep) -> HRep:
    """Irredundant normal form; two HReps describe the same set iff their canonical forms are equal."""
    return h.canonical


def same_set(p: HRep, q: HRep) -> bool:
    return p.dim == q.dim and p.canonical == q.canonical


def hull(points: Iterable, rays: Iterable = (), dim: int | None = None) -> HRep:
    pts = [vector(p) for p in points]
    rs = [vector(r) for r in rays]
    if dim is None:
        dim = len(pts[0]) if pts else len(rs[0])
    return hrep_from_vrep(VRep(dim, pts, rs))


# -- projection ----------------------------------------------------------------

def _row_key(row):
    return canonical_normal(row)


def _dedupe(rows):
    seen, out = set(), []
    for r in rows:
        k = _row_key(r)
        if k not in seen:
            seen.add(k)
            out.append(list(k))
    return out


def _remove_redundant(rows, eqs, n):
    """Drop inequalities implied by the others (exact LP per row)."""
    kept = list(rows)
    i = 0
    while i < len(kept):
        row = kept[i]
        others = kept[:i] + kept[i + 1:]
        out = simplex.solve(row[:n], [r[:n] for r in others], [r[n] for r in others],
                            [e[:n] for e in eqs], [e[n] for e in eqs])
        if out.status == simplex.OPTIMAL and out.value <= row[n]:
            kept.pop(i)
        elif out.status == simplex.INFEASIBLE:
            return None
        else:
            i += 1
    return kept


def project_eliminate(h: HRep, keep: Iterable[int], *, method: str = "fme") -> HRep:
    """Image of ``h`` under the coordinate projection onto ``keep`` (0-based).

    ``method="fme"`` runs Fourier-Motzkin elimination; ``method="dd"``
    projects the generators instead and re-derives the facets.
    """
    keep = sorted(set(keep))
    n = h.dim
    if not keep or any(not 0 <= k < n for k in keep):
        raise InputError("keep must be a nonempty set of valid coordinates")
    if method == "dd":
        v = h.vrep
        if v.is_empty:
            return HRep.empty(len(keep))
        pick = lambda vs: [tuple(x[k] for k in keep) for x in vs]
        rays = [r for r in pick(v.rays) + pick(v.lines) + [tuple(-x for x in l) for l in pick(v.lines)] if any(r)]
        return hrep_from_vrep(VRep(len(keep), sorted(set(pick(v.vertices))), sorted(set(rays))))
    if method != "fme":
        raise InputError(f"unknown projection method {method!r}")

    elim = [j for j in range(n) if j not in keep]
    ineqs = [list(a) + [b] for a, b in h.ineqs]
    eqs = [list(a) + [b] for a, b in h.eqs]

    # Gaussian substitution first: an equality involving an eliminated
    # coordinate removes it without any blowup.
    remaining = []
    for j in elim:
        k = next((k for k, e in enumerate(eqs) if e[j] != 0), None)
        if k is None:
            remaining.append(j)
            continue
        e = eqs.pop(k)
        piv = e[j]

        def sub(r, e=e, piv=piv, j=j):
            f = r[j]
            return [x - f / piv * y for x, y in zip(r, e)] if f else r

        eqs = [sub(r) for r in eqs]
        ineqs = [sub(r) for r in ineqs]

    for e in eqs:
        if not any(e[:n]) and e[n] != 0:
            return HRep.empty(len(keep))
    eqs = [e for e in eqs if any(e[:n])]

    def clean(rows):
        out = []
        for r in rows:
            if not any(r[:n]):
                if r[n] < 0:
                    return None
                continue
            out.append(r)
        return _remove_redundant(_dedupe(out), eqs, n)

    ineqs = clean(ineqs)
    while ineqs is not None and remaining:
        cost = []
        for j in remaining:
            p = sum(1 for r in ineqs if r[j] > 0)
            q = sum(1 for r in ineqs if r[j] < 0)
            cost.append((p * q, j))
        _, j = min(cost)
        remaining.remove(j)
        pos = [r for r in ineqs if r[j] > 0]
        neg = [r for r in ineqs if r[j] < 0]
        nxt = [r for r in ineqs if r[j] == 0]
        for p in pos:
            for q in neg:
                nxt.append([-q[j] * x + p[j] * y for x, y in zip(p, q)])
        ineqs = clean(nxt)
    if ineqs is None:
        return HRep.empty(len(keep))

    m = len(keep)
    out_ineqs = [(tuple(r[k] for k in keep), r[n]) for r in ineqs]
    out_eqs = [(tuple(e[k] for k in keep), e[n]) for e in eqs]
    raw = HRep(m, tuple(out_ineqs), tuple(out_eqs))
    return raw.canonical


# -- algebra -------------------------------------------------------------------

def cartesian_product(hs: Sequence[HRep]) -> HRep:
    if not hs:
        raise InputError("empty product")
    total = sum(h.dim for h in hs)
    ineqs, eqs = [], []
    off = 0
    for h in hs:
        pad = lambda a, o=off, d=h.dim: (Fraction(0),) * o + tuple(a) + (Fraction(0),) * (total - o - d)
        ineqs += [(pad(a), b) for a, b in h.ineqs]
        eqs += [(pad(a), b) for a, b in h.eqs]
        off += h.dim
    return HRep(total, tuple(ineqs), tuple(eqs))


def minkowski_sum(p: HRep, q: HRep, *more: HRep) -> HRep:
    """``{x + y + ... }`` via the product followed by projection along the sum map."""
    hs = (p, q) + more
    d = p.dim
    if any(h.dim != d for h in hs):
        raise DimensionMismatch("Minkowski summands must share a dimension")
    k = len(hs)
    prod = cartesian_product(list(hs) + [HRep(d)])
    sums = []
    for i in range(d):
        a = [Fraction(0)] * (d * (k + 1))
        a[d * k + i] = Fraction(1)
        for s in range(k):
            a[d * s + i] = Fraction(-1)
        sums.append((tuple(a), Fraction(0)))
    lifted = prod.intersect(eqs=sums)
    return project_eliminate(lifted, range(d * k, d * (k + 1)))


def linear_image(h: HRep, M: Sequence[Sequence], offset: Sequence | None = None) -> HRep:
    """``{M x + offset : x in h}`` by lifting and projecting."""
    M = [vector(r) for r in M]
    m, n = len(M), h.dim
    if any(len(r) != n for r in M):
        raise DimensionMismatch("map does not match the polyhedron's dimension")
    offset = vector(offset) if offset is not None else (Fraction(0),) * m
    lifted = cartesian_product([h, HRep(m)])
    eqs = []
    for i, row in enumerate(M):
        a = tuple(-x for x in row) + unit(i, m)
        eqs.append((a, offset[i]))
    return project_eliminate(lifted.intersect(eqs=eqs), range(n, n + m))


def negate(h: HRep) -> HRep:
    neg = lambda cs: tuple((tuple(-x for x in a), b) for a, b in cs)
    return HRep(h.dim, neg(h.ineqs), neg(h.eqs))


def downward_closure(p):
    """``p`` minus the nonnegative orthant, in the same representation."""
    if isinstance(p, VRep):
        if p.is_empty:
            raise EmptyPolyhedronError("downward closure of an empty set")
        rays = list(p.rays)
        for i in range(p.dim):
            r = tuple(-x for x in unit(i, p.dim))
            if r not in rays:
                rays.append(r)
        return VRep(p.dim, p.vertices, tuple(rays), p.lines)
    v = p.vrep
    if v.is_empty:
        raise EmptyPolyhedronError("downward closure of an empty set")
    return hrep_from_vrep(downward_closure(v))


# -- faces -----------------------------------------------------------------------

def _face_generators(h: HRep, active: frozenset):
    vmasks, rmasks, _ = h._incidence
    need = sum(1 << i for i in active)
    v = h.vrep
    vs = tuple(p for p, m in zip(v.vertices, vmasks) if m & need == need)
    rs = tuple(r for r, m in zip(v.rays, rmasks) if m & need == need)
    return vs, rs


def closure(h: HRep, active: Iterable[int]) -> frozenset | None:
    """Maximal active set of the face cut out by ``active``; None if that face is empty."""
    vmasks, rmasks, full = h._incidence
    need = sum(1 << i for i in set(active))
    acc = full
    hit = False
    for m in vmasks:
        if m & need == need:
            acc &= m
            hit = True
    if not hit:
        return None
    for m in rmasks:
        if m & need == need:
            acc &= m
    return frozenset(i for i in range(len(h.ineqs)) if acc >> i & 1)


def face_from_active(h: HRep, active: Iterable[int]) -> Face:
    act = closure(h, active)
    if act is None:
        return Face(h, frozenset(active), -1)
    vs, rs = _face_generators(h, act)
    return Face(h, act, affine_rank(vs, list(rs) + list(h.vrep.lines)))


def minimal_face_at(h: HRep, u: Sequence) -> Face:
    """The face whose relative interior contains ``u``."""
    u = vector(u)
    if not h.contains(u):
        raise NotInSetError(u)
    act = h.tight(u)
    vs, rs = _face_generators(h, act)
    return Face(h, act, affine_rank(vs, list(rs) + list(h.vrep.lines)))


def _as_face(f) -> Face:
    if isinstance(f, Face):
        return f
    if isinstance(f, HRep):
        return f.whole
    raise TypeError("expected an HRep or a Face")


def exposed_face(h, phi: Sequence) -> Face | Unbounded:
    """Argmax face of ``x -> phi.x`` over ``h`` (an HRep or one of its faces)."""
    from .lp import maximize

    f = _as_face(h)
    phi = vector(phi)
    if len(phi) != f.parent.dim:
        raise DimensionMismatch("normal does not match the polyhedron's dimension")
    if not any(phi):
        raise InputError("normal must be nonzero")
    if f.is_empty or f.parent.is_empty:
        raise EmptyPolyhedronError("exposed face of an empty polyhedron")
    res = maximize(f, phi)
    if res.status == "Unbounded":
        return Unbounded(res.witness)
    return res.argmax


def _argmax_face(f: Face, phi: Vector, beta: Fraction) -> Face:
    h = f.parent
    vmasks, rmasks, full = h._incidence
    v = h.vrep
    need = sum(1 << i for i in f.active)
    acc, hit = full, False
    for p, m in zip(v.vertices, vmasks):
        if m & need == need and _ip(phi, p) == beta:
            acc &= m
            hit = True
    for r, m in zip(v.rays, rmasks):
        if m & need == need and _ip(phi, r) == 0:
            acc &= m
    if not hit:
        raise AssertionError("optimal value not attained at any generator")
    act = frozenset(i for i in range(len(h.ineqs)) if acc >> i & 1)
    vs, rs = _face_generators(h, act)
    return Face(h, act, affine_rank(vs, list(rs) + list(v.lines)))


def normal_cone_at(h: HRep, f: Face) -> NormalCone:
    gens = tuple(h.ineqs[i][0] for i in sorted(f.active))
    lin = tuple(a for a, _ in h.eqs)
    return NormalCone(gens, lin, h.dim)


def enumerate_faces(h: HRep, max_dim: int | None = None, cap: int = DEFAULT_FACE_CAP) -> list[Face]:
    """All nonempty faces, each once, ordered by dimension then active set."""
    start = closure(h, ())
    if start is None:
        return []
    seen = {start}
    frontier = [start]
    m = len(h.ineqs)
    while frontier:
        nxt = []
        for s in frontier:
            for i in range(m):
                if i in s:
                    continue
                t = closure(h, s | {i})
                if t is not None and t not in seen:
                    seen.add(t)
                    if len(seen) > cap:
                        raise ResourceLimitError(f"more than {cap} faces")
                    nxt.append(t)
        frontier = nxt
    faces = []
    lines = list(h.vrep.lines)
    for s in seen:
        vs, rs = _face_generators(h, s)
        faces.append(Face(h, s, affine_rank(vs, list(rs) + lines)))
    if max_dim is not None:
        faces = [f for f in faces if f.dim <= max_dim]
    faces.sort(key=lambda f: (f.dim, sorted(f.active)))
    return faces
