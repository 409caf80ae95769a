"""Rational points on ``Y^2 = (X - e1)(X - e2)(X - e3)`` and torsion classification.

Used to corroborate predicted rank 0 on the curves
``y^2 = x (x - 1)(x - (b-2)/(b+2))`` through their integral models.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

# Mazur: a rational torsion point has order at most 12
TORSION_CUTOFF = 12


@dataclass(frozen=True)
class IntegralCubicCurve:
    e1: int
    e2: int
    e3: int

    def __post_init__(self):
        if len({self.e1, self.e2, self.e3}) != 3:
            raise ValueError(f"roots {self.roots} collide: the curve is singular")

    @property
    def roots(self) -> tuple[int, int, int]:
        return (self.e1, self.e2, self.e3)

    @property
    def a_invariants(self) -> tuple[int, int, int]:
        """(a2, a4, a6) with Y^2 = X^3 + a2 X^2 + a4 X + a6."""
        e1, e2, e3 = self.roots
        return (-(e1 + e2 + e3), e1 * e2 + e1 * e3 + e2 * e3, -e1 * e2 * e3)

    def rhs(self, x):
        e1, e2, e3 = self.roots
        return (x - e1) * (x - e2) * (x - e3)

    def contains(self, P: "CurvePoint") -> bool:
        return P.at_infinity or P.Y * P.Y == self.rhs(P.X)


@dataclass(frozen=True)
class CurvePoint:
    X: Fraction = Fraction(0)
    Y: Fraction = Fraction(0)
    at_infinity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "X", Fraction(self.X))
        object.__setattr__(self, "Y", Fraction(self.Y))

    def __neg__(self):
        return self if self.at_infinity else CurvePoint(self.X, -self.Y)

    def __str__(self):
        return "O" if self.at_infinity else f"({self.X}, {self.Y})"


INFINITY = CurvePoint(at_infinity=True)


def curve_from_b(b: int) -> IntegralCubicCurve:
    """Integral model X = (b+2)^2 x, Y = (b+2)^3 y: roots 0, (b+2)^2, b^2 - 4."""
    if b < 3:
        raise ValueError(f"b={b}: the family needs b >= 3")
    return IntegralCubicCurve(0, (b + 2) ** 2, b * b - 4)


def _check(curve, *points):
    for P in points:
        if not curve.contains(P):
            raise ValueError(f"point {P} is not on the curve")


def group_add(curve: IntegralCubicCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    _check(curve, P, Q)
    if P.at_infinity:
        return Q
    if Q.at_infinity:
        return P
    a2, a4, _ = curve.a_invariants
    if P.X == Q.X:
        if P.Y == -Q.Y:
            return INFINITY
        lam = (3 * P.X * P.X + 2 * a2 * P.X + a4) / (2 * P.Y)
    else:
        lam = (Q.Y - P.Y) / (Q.X - P.X)
    x3 = lam * lam - a2 - P.X - Q.X
    y3 = lam * (P.X - x3) - P.Y
    return CurvePoint(x3, y3)


def multiple(curve: IntegralCubicCurve, P: CurvePoint, n: int) -> CurvePoint:
    acc, base = INFINITY, P
    if n < 0:
        n, base = -n, -P
    while n:
        if n & 1:
            acc = group_add(curve, acc, base)
        base = group_add(curve, base, base)
        n >>= 1
    return acc


def classify_torsion(curve: IntegralCubicCurve, P: CurvePoint) -> int | str:
    """Order of ``P`` if it is at most 12, otherwise ``"nontorsion"``."""
    _check(curve, P)
    Q = P
    for n in range(1, TORSION_CUTOFF + 1):
        if Q.at_infinity:
            return n
        Q = group_add(curve, Q, P)
    return "nontorsion"


def point_search(curve: IntegralCubicCurve, height_bound: int) -> list[CurvePoint]:
    """All points X = p/q^2, Y = r/q^3 (lowest terms) with |p|, |q| <= height_bound.

    O and the three 2-torsion points are always included, whatever their height.
    """
    if height_bound < 1:
        raise ValueError("height_bound must be >= 1")
    a2, a4, a6 = curve.a_invariants
    found = {INFINITY} | {CurvePoint(e, 0) for e in curve.roots}
    for q in range(1, height_bound + 1):
        q2 = q * q
        q4, q6 = q2 * q2, q2 * q2 * q2
        for p in range(-height_bound, height_bound + 1):
            if gcd(p, q) != 1:
                continue
            # q^6 * rhs(p / q^2)
            v = p * p * p + a2 * p * p * q2 + a4 * p * q4 + a6 * q6
            if v < 0:
                continue
            r = isqrt(v)
            if r * r != v:
                continue
            X = Fraction(p, q2)
            for y in {r, -r}:
                found.add(CurvePoint(X, Fraction(y, q2 * q)))
    return sorted(found, key=_point_key)


def _point_key(P: CurvePoint):
    return (not P.at_infinity, P.X, P.Y)


def corroborate(b: int, height_bound: int) -> dict:
    curve = curve_from_b(b)
    pts = point_search(curve, height_bound)
    rows = [[_fmt(P.X, P), _fmt(P.Y, P), classify_torsion(curve, P)] for P in pts]
    return {
        "b": b,
        "model_roots": list(curve.roots),
        "height_bound": height_bound,
        "points": rows,
        "all_torsion": all(r[2] != "nontorsion" for r in rows),
        "note": "no nontorsion point up to this height is evidence for rank 0, not a proof",
    }


def _fmt(v: Fraction, P: CurvePoint):
    if P.at_infinity:
        return "inf"
    return v.numerator if v.denominator == 1 else str(v)
