"""Stable plain-text rendering of results. Agents and constraints are numbered from 1."""

from __future__ import annotations

from .economy import WalrasianResult
from .linalg import fmt, fmt_vector
from .pareto import BargainingPlan, Certificate, Classification, PartitionReport, WelfareFunction
from .polyhedron import Face, HRep


def _set(ix) -> str:
    return "{" + ",".join(str(i + 1) for i in sorted(ix)) + "}"


def _certificate(c: Certificate) -> list[str]:
    lines = [f"certificate ({c.kind}), {c.T} step{'s' if c.T != 1 else ''}"]
    for t, (phi, face) in enumerate(zip(c.normals, c.faces), 1):
        line = f"step {t}: normal={fmt_vector(phi)}"
        if t >= 2 and len(c.lambdas) >= t - 1:
            line += f" lambda={fmt(c.lambdas[t - 2])}"
        line += f" active={_set(face.active)} dim={face.dim}"
        lines.append(line)
    lines.append("verified" if c.verified else "not verified")
    return lines


def _classification(c: Classification) -> list[str]:
    if not c.in_set:
        return ["point not in set"]
    yn = lambda b: "yes" if b else "no"
    lines = [f"pareto: {yn(c.pareto)}", f"plus: {yn(c.plus)}", f"plus_plus: {yn(c.plus_plus)}"]
    if c.dominator is not None:
        lines.append(f"dominated by {fmt_vector(c.dominator)}")
    return lines


def _plan(p: BargainingPlan) -> list[str]:
    lines = []
    for t, r in enumerate(p.rounds, 1):
        powers = [fmt(r.powers[i]) for i in sorted(r.agents)]
        label = "power" if len(powers) == 1 else "powers"
        lines.append(f"round {t}: agents {_set(r.agents)}, {label} {', '.join(powers)}")
    return lines


def _walras(r: WalrasianResult) -> list[str]:
    lines = [f"prices {fmt_vector(r.prices)}"]
    for i, a in enumerate(r.agents, 1):
        lines.append(f"agent {i}: budget {fmt(a.budget)}, utility {fmt(a.utility)}, demand {fmt_vector(a.demand)}")
    lines.append("verified" if r.verified else "not verified")
    return lines


def _hrep(h: HRep) -> list[str]:
    def row(a, b, op):
        terms = []
        for i, x in enumerate(a):
            if x == 0:
                continue
            coef = "" if x == 1 else "-" if x == -1 else fmt(x) + "*"
            terms.append(f"{coef}x{i + 1}")
        s = " + ".join(terms).replace("+ -", "- ")
        return f"{s} {op} {fmt(b)}"

    lines = [f"polyhedron in dimension {h.dim}"]
    lines += [row(a, b, "=") for a, b in h.eqs]
    lines += [row(a, b, "<=") for a, b in h.ineqs]
    return lines


def _faces(fs) -> list[str]:
    return [f"dim {f.dim}: active {_set(f.active)}, vertices "
            + (" ".join(fmt_vector(v) for v in f.vertices) or "none") for f in fs]


def render_report(result) -> str:
    if isinstance(result, Certificate):
        lines = _certificate(result)
    elif isinstance(result, Classification):
        lines = _classification(result)
    elif isinstance(result, BargainingPlan):
        lines = _plan(result)
    elif isinstance(result, WalrasianResult):
        lines = _walras(result)
    elif isinstance(result, PartitionReport):
        lines = ["no partition certificate"] + [
            "pattern " + " ".join(_set(b) for b in pat) + f": fails at step {step} ({reason})"
            for pat, step, reason in result.attempts
        ]
    elif isinstance(result, WelfareFunction):
        lines = [f"base {fmt_vector(result.base)}"] + [
            f"piece {t}: normal={fmt_vector(p)}" for t, p in enumerate(result.normals, 1)
        ]
    elif isinstance(result, HRep):
        lines = _hrep(result)
    elif isinstance(result, Face):
        lines = _faces([result])
    elif isinstance(result, (list, tuple)) and all(isinstance(f, Face) for f in result):
        lines = _faces(result)
    else:
        lines = [str(result)]
    return "\n".join(lines) + "\n"
