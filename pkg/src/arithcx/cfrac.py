"""Periodic continued fractions of quadratic irrationals.

Notation used throughout: ``[b1, ..., bN; (a1, ..., ak)]`` where the
parenthesised block is the period.  A purely periodic expansion prints as
``[(a1, ..., ak)]``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd, isqrt

from .qi import IntPoly2, QuadSurd, SurdError, minimal_polynomial, normalize_surd


class ContinuedFractionError(ValueError):
    pass


@dataclass(frozen=True)
class PeriodicCF:
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(int(t) for t in self.preperiod))
        object.__setattr__(self, "period", tuple(int(t) for t in self.period))
        if not self.period:
            raise ContinuedFractionError("period must be nonempty")
        if any(t < 1 for t in self.period):
            raise ContinuedFractionError(f"period entries must be >= 1, got {self.period}")
        if any(t < 1 for t in self.preperiod[1:]):
            raise ContinuedFractionError(
                f"partial quotients after the first must be >= 1, got {self.preperiod}"
            )

    @property
    def signature(self) -> tuple[int, int]:
        return (len(self.preperiod), len(self.period))

    @property
    def entries(self) -> tuple[int, ...]:
        """Preperiod followed by one copy of the period (a point of A^(N+k))."""
        return self.preperiod + self.period

    def term(self, i: int) -> int:
        n = len(self.preperiod)
        if i < n:
            return self.preperiod[i]
        return self.period[(i - n) % len(self.period)]

    def terms(self, count: int) -> list[int]:
        return [self.term(i) for i in range(count)]

    def canonical(self) -> "PeriodicCF":
        """Same infinite sequence with minimal period and minimal preperiod."""
        period = list(self.period)
        k = len(period)
        for j in range(1, k + 1):
            if k % j == 0 and period == period[:j] * (k // j):
                period = period[:j]
                break
        pre = list(self.preperiod)
        while pre and pre[-1] == period[-1]:
            pre.pop()
            period = [period[-1]] + period[:-1]
        return PeriodicCF(tuple(pre), tuple(period))

    @property
    def is_minimal(self) -> bool:
        return self.canonical() == self

    def unroll(self) -> "PeriodicCF":
        """Non-minimal representative with the period written out once more."""
        return PeriodicCF(self.preperiod + self.period, self.period)

    def with_signature(self, n: int, k: int) -> "PeriodicCF":
        """Representative of the same number with preperiod length ``n`` and period length ``k``.

        Possible exactly when ``n`` is at least the minimal preperiod length and
        ``k`` is a multiple of the minimal period length.
        """
        base = self.canonical()
        n0, k0 = base.signature
        if n < n0 or k < 1 or k % k0:
            raise ContinuedFractionError(
                f"{format_cf(base)} has no representative with signature ({n}, {k})"
            )
        seq = base.terms(n + k)
        return PeriodicCF(tuple(seq[:n]), tuple(seq[n:]))

    def has_signature(self, n: int, k: int) -> bool:
        n0, k0 = self.canonical().signature
        return n >= n0 and k >= 1 and k % k0 == 0

    def __str__(self):
        return format_cf(self)

    @classmethod
    def parse(cls, text: str) -> "PeriodicCF":
        return parse_cf(text)


@dataclass(frozen=True)
class Mat2:
    e11: int
    e12: int
    e21: int
    e22: int

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    @property
    def det(self) -> int:
        return self.e11 * self.e22 - self.e12 * self.e21

    def inverse(self) -> "Mat2":
        """Inverse of a unimodular matrix (det = +-1)."""
        d = self.det
        if d not in (1, -1):
            raise ContinuedFractionError(f"matrix has determinant {d}, not invertible over Z")
        return Mat2(d * self.e22, -d * self.e12, -d * self.e21, d * self.e11)

    def act(self, theta: QuadSurd) -> QuadSurd:
        return theta.mobius(self.e11, self.e12, self.e21, self.e22)

    def rows(self) -> list[list[int]]:
        return [[self.e11, self.e12], [self.e21, self.e22]]


IDENTITY = Mat2(1, 0, 0, 1)


def convergent_matrix(terms) -> Mat2:
    # balanced product tree; a left fold is quadratic once entries get long
    mats = [Mat2(c, 1, 1, 0) for c in terms]
    if not mats:
        return IDENTITY
    while len(mats) > 1:
        paired = [mats[i] @ mats[i + 1] for i in range(0, len(mats) - 1, 2)]
        if len(mats) % 2:
            paired.append(mats[-1])
        mats = paired
    return mats[0]


def equivalence_matrix(cf: PeriodicCF) -> Mat2:
    p = convergent_matrix(cf.preperiod)
    return p @ convergent_matrix(cf.period) @ p.inverse()


def induced_quadratic(e: Mat2) -> IntPoly2:
    if e.e21 == 0:
        raise ContinuedFractionError("degenerate matrix: E21 = 0")
    try:
        return IntPoly2.from_coeffs(e.e21, e.e22 - e.e11, -e.e12)
    except SurdError as exc:
        raise ContinuedFractionError(f"matrix {e.rows()} fixes no quadratic irrational: {exc}") from None


def _floor_state(p: int, q: int, d: int, rd: int) -> int:
    # floor((p + sqrt(d)) / q) with rd = isqrt(d), d non-square
    if q > 0:
        return (p + rd) // q
    return (-p - rd - 1) // (-q)


def expand(theta: QuadSurd) -> PeriodicCF:
    """Minimal periodic expansion of ``theta``.

    Runs the integer recurrence on states ``(P, Q)`` with
    ``theta_i = (P + sqrt(D)) / Q`` and stops at the first repeated state.
    """
    if not isinstance(theta, QuadSurd):
        raise ContinuedFractionError("expand needs a canonical QuadSurd")
    poly = minimal_polynomial(theta)
    d = poly.discriminant
    # theta is the larger root iff b > 0; Q | D - P^2 holds for both choices
    if theta.b > 0:
        p, q = -poly.B, 2 * poly.A
    else:
        p, q = poly.B, -2 * poly.A
    rd = isqrt(d)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    while (p, q) not in seen:
        seen[(p, q)] = len(terms)
        t = _floor_state(p, q, d, rd)
        terms.append(t)
        p = t * q - p
        q = (d - p * p) // q
    start = seen[(p, q)]
    return PeriodicCF(tuple(terms[:start]), tuple(terms[start:]))


def evaluate(cf: PeriodicCF) -> QuadSurd:
    m = convergent_matrix(cf.period)
    # purely periodic tail y solves m21 y^2 + (m22 - m11) y - m12 = 0; y > 1 so take the + root.
    # Made primitive first: the raw discriminant carries the square of a unit and is huge.
    a, b, c = m.e21, m.e22 - m.e11, -m.e12
    g = gcd(gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    tail = normalize_surd(-b, 1, 2 * a, b * b - 4 * a * c)
    return convergent_matrix(cf.preperiod).act(tail)


def format_cf(cf: PeriodicCF) -> str:
    per = "(" + ", ".join(map(str, cf.period)) + ")"
    if not cf.preperiod:
        return f"[{per}]"
    return "[" + ", ".join(map(str, cf.preperiod)) + "; " + per + "]"


_CF_RE = re.compile(r"^\s*\[\s*(?P<pre>[^;()\[\]]*?)\s*;?\s*\((?P<per>[^()]*)\)\s*\]\s*$")


def parse_cf(text: str) -> PeriodicCF:
    """Parse ``[b1,...,bN; (a1,...,ak)]``; ``[(a1,...)]`` and ``[; (a1,...)]`` also work."""
    m = _CF_RE.match(text)
    if not m:
        raise ContinuedFractionError(f"cannot parse continued fraction {text!r}")

    def ints(s):
        s = s.strip().strip(",")
        return tuple(int(x) for x in s.split(",")) if s.strip() else ()

    try:
        return PeriodicCF(ints(m["pre"]), ints(m["per"]))
    except ValueError as exc:
        if isinstance(exc, ContinuedFractionError):
            raise
        raise ContinuedFractionError(f"bad entry in {text!r}") from None
