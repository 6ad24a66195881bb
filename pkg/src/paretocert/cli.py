"""Command-line front end.

Exit status: 0 on success, 1 when the core rejects a well-formed question
(a JSON diagnostic is printed), 2 on malformed input.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import serialize as sz
from .economy import build_dc_utility_set, second_welfare_prices
from .errors import DomainError, InputError
from .pareto import (
    DIRECT,
    FLAG,
    GivenChain,
    PartitionReport,
    bargaining_plan,
    build_welfare,
    check_bargaining,
    classify,
    construct_certificate,
    evaluate,
    search_partition_certificate,
    verify_certificate,
    verify_partition_certificate,
)
from .polyhedron import downward_closure, enumerate_faces
from .report import render_report


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paretocert", description="Exact Pareto optimality certificates.")
    p.add_argument("--debug", action="store_true", help="log solver tableaux to stderr")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, help, set_=True, point=False):
        s = sub.add_parser(name, help=help)
        if set_:
            s.add_argument("--set", required=True, help="polyhedron JSON (file path or inline)")
        if point:
            s.add_argument("--point", required=True, help='point as a JSON array, e.g. "[1,1]"')
        s.add_argument("--report", action="store_true", help="print a text report instead of JSON")
        s.add_argument("--output", help="write the result to this file")
        return s

    add("classify", "classify a point of the set", point=True)
    s = add("certify", "build a certificate of Pareto optimality", point=True)
    s.add_argument("--strategy", choices=["direct", "flag", "chain", "partition"], default="direct")
    s.add_argument("--chain", help="JSON list of active-index lists (with --strategy chain)")
    s.add_argument("--bound-t", type=int, default=None, help="max rounds for the partition search")
    s.add_argument("--cap", type=int, default=10_000, help="max patterns for the partition search")
    s = add("verify", "check a certificate", point=True)
    s.add_argument("--certificate", required=True)
    s.add_argument("--partition", action="store_true", help="accept partition-style certificates")
    s = add("dc", "downward closure of a set or of an economy's utility set", set_=False)
    s.add_argument("--set")
    s.add_argument("--economy")
    s = add("welfare", "piecewise-linear welfare function of a certificate", point=True)
    s.add_argument("--certificate")
    s.add_argument("--strategy", choices=["direct", "flag"], default="flag")
    s.add_argument("--eval", action="append", default=[], help="point at which to evaluate (repeatable)")
    s = add("bargain", "sequential bargaining plan of a certificate", point=True)
    s.add_argument("--certificate")
    s.add_argument("--strategy", choices=["direct", "flag"], default="flag")
    s = add("swt", "supporting prices for a Pareto optimal endowment", set_=False)
    s.add_argument("--economy", required=True)
    s = add("faces", "enumerate the faces of a set")
    s.add_argument("--max-dim", type=int, default=None)
    s.add_argument("--cap", type=int, default=20_000)
    return p


def _point(text: str, dim: int):
    v = sz.vec(sz.loads(text))
    if len(v) != dim:
        raise InputError(f"point has {len(v)} coordinates, set has {dim}")
    return v


def _cert(args, h, u):
    if args.certificate:
        normals = sz.normals_from_json(sz.load(args.certificate))
        try:
            return verify_certificate(h, u, normals)
        except DomainError:
            return verify_partition_certificate(h, u, normals)
    return construct_certificate(h, u, args.strategy)


def _run(args):
    """Return ``(json_obj, report_obj)`` for the verb."""
    v = args.verb
    if v in ("swt",) or (v == "dc" and args.economy):
        e = sz.economy_from_json(sz.load(args.economy))
        if v == "swt":
            r = second_welfare_prices(e)
            return sz.walras_to_json(r), r
        h = build_dc_utility_set(e)
        return sz.hrep_to_json(h), h
    if v == "dc" and not args.set:
        raise InputError("dc needs --set or --economy")

    h = sz.polyhedron_from_json(sz.load(args.set))
    if v == "dc":
        d = downward_closure(h)
        return sz.hrep_to_json(d), d
    if v == "faces":
        fs = enumerate_faces(h, args.max_dim, args.cap)
        return {"faces": [sz.face_to_json(f) for f in fs], "count": len(fs)}, fs

    u = _point(args.point, h.dim)
    if v == "classify":
        c = classify(h, u)
        return sz.classification_to_json(c), c
    if v == "certify":
        if args.strategy == "partition":
            r = search_partition_certificate(h, u, args.bound_t or h.dim, cap=args.cap)
            if isinstance(r, PartitionReport):
                return sz.partition_report_to_json(r), r
            return sz.certificate_to_json(r), r
        if args.strategy == "chain":
            if not args.chain:
                raise InputError("--strategy chain needs --chain")
            links = sz.load(args.chain)
            if not isinstance(links, list) or not all(isinstance(x, list) for x in links):
                raise InputError("--chain must be a list of index lists")
            strategy = GivenChain(links)
        else:
            strategy = DIRECT if args.strategy == "direct" else FLAG
        c = construct_certificate(h, u, strategy)
        return sz.certificate_to_json(c), c
    if v == "verify":
        normals = sz.normals_from_json(sz.load(args.certificate))
        check = verify_partition_certificate if args.partition else verify_certificate
        c = check(h, u, normals)
        return sz.certificate_to_json(c), c
    if v == "welfare":
        c = _cert(args, h, u)
        W = build_welfare(c, u)
        pts = [_point(p, h.dim) for p in args.eval] or list(h.vrep.vertices)
        return sz.welfare_to_json(W, [(p, evaluate(W, p)) for p in pts]), W
    if v == "bargain":
        c = _cert(args, h, u)
        plan = bargaining_plan(c, u)
        check = check_bargaining(h, plan, u)
        d = sz.plan_to_json(plan)
        d["verified"] = check.ok
        if not check.ok:
            d["failed"] = {"round": check.round, "condition": check.condition}
        return d, plan
    raise InputError(f"unknown verb {v}")


def _emit(text: str, output: str | None):
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.debug else logging.WARNING, stream=sys.stderr)
    try:
        obj, rep = _run(args)
    except InputError as exc:
        sys.stderr.write(sz.dumps({"error": type(exc).__name__, "message": str(exc)}) + "\n")
        return 2
    except DomainError as exc:
        _emit(sz.dumps(exc.to_json()) + "\n", args.output)
        return 1
    text = render_report(rep) if args.report else sz.dumps(obj) + "\n"
    _emit(text, args.output)
    if isinstance(rep, PartitionReport) or (isinstance(obj, dict) and obj.get("verified") is False):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
