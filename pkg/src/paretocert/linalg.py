"""Exact rational scalars, vectors and small dense matrices.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator). Vectors are plain tuples of Fractions so they hash, compare
and serialize without ceremony.
"""

from __future__ import annotations

from decimal import Decimal
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]


def to_rational(x) -> Fraction:
    """Convert ``x`` to a Fraction without ever going through binary floats.

    Accepts ints, Fractions, Decimals and strings such as ``"3"``,
    ``"-2/7"`` or ``"0.125"``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Decimal):
        if not x.is_finite():
            raise ValueError(f"non-finite decimal {x}")
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        s = x.strip()
        if not s:
            raise ValueError("empty rational literal")
        try:
            return Fraction(s)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational literal {x!r}") from exc
    if isinstance(x, float):
        raise TypeError(f"refusing binary float {x!r}; pass a string or Fraction")
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def vector(xs: Iterable) -> Vector:
    return tuple(to_rational(x) for x in xs)


def fmt(q: Fraction) -> str:
    """Render as ``"p"`` or ``"p/q"``."""
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_vector(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(fmt(x) for x in v) + ")"


def _check_dims(a: Sequence, b: Sequence) -> None:
    if len(a) != len(b):
        raise DimensionMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")


def inner_product(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    _check_dims(a, b)
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def support(v: Sequence[Fraction]) -> frozenset[int]:
    """Indices (0-based) of the nonzero coordinates."""
    return frozenset(i for i, x in enumerate(v) if x != 0)


def indicator(J: Iterable[int], n: int) -> Vector:
    J = set(J)
    bad = [j for j in J if not 0 <= j < n]
    if bad:
        raise IndexError(f"indices {sorted(bad)} out of range for dimension {n}")
    return tuple(Fraction(1) if i in J else Fraction(0) for i in range(n))


def add(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    _check_dims(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    _check_dims(a, b)
    return tuple(x - y for x, y in zip(a, b))


def scale(alpha, v: Sequence[Fraction]) -> Vector:
    return tuple(alpha * x for x in v)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(i: int, n: int) -> Vector:
    return tuple(Fraction(int(j == i)) for j in range(n))


def geq(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    _check_dims(a, b)
    return all(x >= y for x, y in zip(a, b))


def is_nonnegative(v: Sequence[Fraction]) -> bool:
    """``v > 0`` in the weak sense: every entry >= 0 and v != 0."""
    return all(x >= 0 for x in v) and any(x != 0 for x in v)


def is_positive(v: Sequence[Fraction]) -> bool:
    return all(x > 0 for x in v)


# -- integer scaling ----------------------------------------------------------

def common_denominator(xs: Iterable[Fraction]) -> int:
    return lcm(1, *(x.denominator for x in xs))


def integer_row(xs: Sequence[Fraction]) -> list[int]:
    """Scale by the positive lcm of denominators and return Python ints."""
    L = common_denominator(xs)
    return [int(x * L) for x in xs]


def primitive_ints(v: Sequence[int]) -> list[int]:
    g = gcd(*v)
    if g <= 1:
        return list(v)
    return [x // g for x in v]


def canonical_normal(v: Sequence[Fraction], sign_free: bool = False) -> Vector:
    """Primitive integer multiple of ``v`` (positive factor).

    With ``sign_free`` the first nonzero entry is also made positive, which
    is the right normal form for an equality constraint.
    """
    ints = primitive_ints(integer_row(v))
    if sign_free:
        lead = next((x for x in ints if x != 0), 0)
        if lead < 0:
            ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


# -- Gaussian elimination -----------------------------------------------------

def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None):
    """Reduced row echelon form with full column search.

    Returns ``(rows, pivots)`` with zero rows dropped.
    """
    M = [list(r) for r in rows]
    if not M:
        return [], []
    ncols = len(M[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / Fraction(M[r][c])
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return [tuple(Fraction(x) for x in row) for row in M[:r]], pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Rank via fraction-free elimination with full pivoting."""
    M = [integer_row([to_rational(x) for x in r]) for r in rows]
    M = [r for r in M if any(r)]
    rk = 0
    while M:
        # full pivoting: smallest nonzero magnitude keeps integers short
        i, j = min(
            ((i, j) for i, r in enumerate(M) for j, x in enumerate(r) if x),
            key=lambda ij: abs(M[ij[0]][ij[1]]),
        )
        piv = M.pop(i)
        p = piv[j]
        nxt = []
        for r in M:
            f = r[j]
            row = [p * x - f * y for x, y in zip(r, piv)] if f else r
            if any(row):
                nxt.append(primitive_ints(row))
        M = nxt
        rk += 1
    return rk


def nullspace(rows: Sequence[Sequence[Fraction]], n: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    R, pivots = rref(rows, n) if rows else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def affine_rank(points: Sequence[Sequence[Fraction]], directions=()) -> int:
    """Dimension of aff(points) + span(directions); -1 when there are no points."""
    if not points:
        return -1
    p0 = points[0]
    rows = [sub(p, p0) for p in points[1:]] + [tuple(d) for d in directions]
    return rank(rows) if rows else 0
