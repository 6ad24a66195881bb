"""JSON encoding of polyhedra, points, certificates and economies.

Rationals are written as ``"p/q"`` strings (``"3"`` for integers). On
input, integers, ``"p/q"`` strings and finite decimals are accepted and
converted exactly; JSON numbers with a fraction part are parsed from their
decimal text, never through binary floating point.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .economy import Economy, Piece, PLCUtility, WalrasianResult
from .errors import InputError
from .linalg import fmt, to_rational
from .pareto import BargainingPlan, Certificate, Classification, PartitionReport, WelfareFunction
from .polyhedron import Face, HRep, VRep, hrep_from_vrep


def loads(text: str):
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def load(source: str):
    """Parse ``source`` as inline JSON if it looks like JSON, else as a file path."""
    s = source.strip()
    if s[:1] in "{[":
        return loads(s)
    try:
        return loads(Path(source).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from exc


def rational(x) -> Fraction:
    try:
        return to_rational(x)
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def vec(xs) -> tuple:
    if not isinstance(xs, list):
        raise InputError(f"expected an array of rationals, got {type(xs).__name__}")
    return tuple(rational(x) for x in xs)


def _field(d, key, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise InputError(f"missing field {key!r}")
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"field {key!r} has the wrong type")
    return v


def enc(q: Fraction) -> str:
    return fmt(q)


def enc_vec(v) -> list:
    return [fmt(x) for x in v]


# -- polyhedra ---------------------------------------------------------------------

def hrep_to_json(h: HRep) -> dict:
    row = lambda c: {"a": enc_vec(c[0]), "b": enc(c[1])}
    return {"dim": h.dim, "ineqs": [row(c) for c in h.ineqs], "eqs": [row(c) for c in h.eqs]}


def vrep_to_json(v: VRep) -> dict:
    d = {"dim": v.dim, "vertices": [enc_vec(x) for x in v.vertices], "rays": [enc_vec(x) for x in v.rays]}
    if v.lines:
        d["lines"] = [enc_vec(x) for x in v.lines]
    return d


def _dim(d):
    n = _field(d, "dim")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise InputError("dim must be a positive integer")
    return n


def hrep_from_json(d) -> HRep:
    n = _dim(d)
    rows = lambda key: tuple((vec(_field(c, "a", list)), rational(_field(c, "b"))) for c in d.get(key, []))
    try:
        return HRep(n, rows("ineqs"), rows("eqs"))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def vrep_from_json(d) -> VRep:
    n = _dim(d)
    try:
        return VRep(n, [vec(x) for x in d.get("vertices", [])], [vec(x) for x in d.get("rays", [])],
                    [vec(x) for x in d.get("lines", [])])
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def polyhedron_from_json(d) -> HRep:
    """Either schema; a generator description is converted to inequalities."""
    if isinstance(d, dict) and "vertices" in d:
        v = vrep_from_json(d)
        if v.is_empty:
            raise InputError("a generator description needs at least one vertex")
        return hrep_from_vrep(v)
    return hrep_from_json(d)


def face_to_json(f: Face) -> dict:
    return {"active": sorted(f.active), "dim": f.dim, "vertices": [enc_vec(v) for v in f.vertices]}


# -- pareto objects ------------------------------------------------------------------

def certificate_to_json(c: Certificate) -> dict:
    d = {
        "normals": [enc_vec(p) for p in c.normals],
        "lambdas": [enc(x) for x in c.lambdas],
        "faces": [{"active": sorted(f.active)} for f in c.faces],
        "verified": c.verified,
        "kind": c.kind,
        "T": c.T,
    }
    if c.chain is not None:
        d["chain"] = [{"active": sorted(f.active)} for f in c.chain]
    return d


def normals_from_json(d) -> list:
    """The normals of a certificate document, or a bare list of normals."""
    if isinstance(d, dict):
        d = _field(d, "normals", list)
    if not isinstance(d, list) or not d:
        raise InputError("expected a nonempty list of normals")
    return [vec(p) for p in d]


def classification_to_json(c: Classification) -> dict:
    d = {"in_set": c.in_set, "pareto": c.pareto, "plus": c.plus, "plus_plus": c.plus_plus}
    if c.dominator is not None:
        d["dominator"] = enc_vec(c.dominator)
    return d


def partition_report_to_json(r: PartitionReport) -> dict:
    return {
        "feasible": False,
        "attempts": [
            {"pattern": [sorted(b) for b in pat], "step": step, "reason": reason}
            for pat, step, reason in r.attempts
        ],
    }


def welfare_to_json(W: WelfareFunction, values=()) -> dict:
    return {
        "base": enc_vec(W.base),
        "normals": [enc_vec(p) for p in W.normals],
        "values": [{"point": enc_vec(p), "value": enc(w)} for p, w in values],
    }


def plan_to_json(p: BargainingPlan) -> dict:
    return {
        "base": enc_vec(p.base),
        "rounds": [
            {"agents": sorted(r.agents), "powers": {str(i): enc(x) for i, x in r.powers.items()},
             "normal": enc_vec(r.normal)}
            for r in p.rounds
        ],
    }


# -- economies -------------------------------------------------------------------------

def economy_from_json(d) -> Economy:
    m = _field(d, "goods")
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise InputError("goods must be a positive integer")
    agents = _field(d, "agents", list)
    utils, ends = [], []
    for a in agents:
        pieces = [Piece(vec(_field(p, "c", list)), rational(_field(p, "d"))) for p in _field(a, "pieces", list)]
        utils.append(PLCUtility(tuple(pieces)))
        ends.append(vec(_field(a, "endowment", list)))
        if len(ends[-1]) != m or any(len(p.c) != m for p in pieces):
            raise InputError("bundle length differs from the number of goods")
    try:
        return Economy(tuple(utils), tuple(ends))
    except (TypeError, ValueError) as exc:
        raise InputError(str(exc)) from exc


def economy_to_json(e: Economy) -> dict:
    return {
        "goods": e.m,
        "agents": [
            {"pieces": [{"c": enc_vec(p.c), "d": enc(p.d)} for p in u.pieces], "endowment": enc_vec(x)}
            for u, x in zip(e.utilities, e.endowments)
        ],
    }


def walras_to_json(r: WalrasianResult) -> dict:
    return {
        "prices": enc_vec(r.prices),
        "verified": r.verified,
        "agents": [
            {"budget": enc(a.budget), "utility": enc(a.utility), "demand": enc_vec(a.demand)} for a in r.agents
        ],
    }


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
