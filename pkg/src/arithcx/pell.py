"""Fermat-Pell conics ``C x^2 - B x y + A y^2 = (-1)^k A`` and the Pell equation."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Sequence

from .cfrac import convergent_matrix, expand
from .qi import IntPoly2, is_square, normalize_surd


@dataclass(frozen=True)
class PellConic:
    A: int
    B: int
    C: int
    parity: int  # k mod 2

    def __post_init__(self):
        object.__setattr__(self, "parity", self.parity % 2)
        if self.B * self.B - 4 * self.A * self.C <= 0:
            raise ValueError(f"conic ({self.A}, {self.B}, {self.C}) is not a hyperbola: B^2 - 4AC <= 0")

    @classmethod
    def from_poly(cls, poly: IntPoly2 | Sequence[int], k: int) -> "PellConic":
        A, B, C = poly.coeffs if isinstance(poly, IntPoly2) else poly
        return cls(A, B, C, k)

    @classmethod
    def pell(cls, D: int, sign: int = 1) -> "PellConic":
        """``y^2 - D x^2 = sign``, i.e. A = 1, B = 0, C = -D."""
        return cls(1, 0, -D, 0 if sign == 1 else 1)

    @property
    def rhs(self) -> int:
        return -self.A if self.parity else self.A

    def value(self, x: int, y: int) -> int:
        return self.C * x * x - self.B * x * y + self.A * y * y

    def __str__(self):
        terms = []
        for coef, mono in ((self.C, "x^2"), (-self.B, "x*y"), (self.A, "y^2")):
            if coef:
                mag = "" if abs(coef) == 1 else f"{abs(coef)}*"
                terms.append(("- " if coef < 0 else "+ ") + mag + mono)
        lhs = " ".join(terms)
        lhs = lhs[2:] if lhs.startswith("+ ") else "-" + lhs[2:]
        return f"{lhs} = {self.rhs}"

    def to_json(self) -> dict:
        return {"A": self.A, "B": self.B, "C": self.C, "parity": self.parity, "rhs": self.rhs}


def on_conic(conic: PellConic, p: Sequence[int]) -> bool:
    x, y = p
    return conic.value(x, y) == conic.rhs


def fundamental_pell(D: int, sign: int = 1) -> tuple[int, int] | None:
    """Least positive ``(x, y)`` with ``y^2 - D x^2 = sign``; ``None`` if unsolvable.

    Read off the convergents of sqrt(D) at the end of the first (or, for
    ``sign = +1`` with odd period, second) period.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if D <= 1 or is_square(D):
        raise ValueError(f"D={D} must be a positive non-square")
    cf = expand(normalize_surd(0, 1, 1, D))
    k = len(cf.period)
    if sign == -1 and k % 2 == 0:
        return None
    reps = 2 if (sign == 1 and k % 2) else 1
    # sqrt(D) = [a0; (a1..ak)] with ak = 2 a0; convergent p/q before the last partial quotient
    terms = list(cf.preperiod) + list(cf.period) * reps
    m = convergent_matrix(terms[:-1])
    y, x = m.e11, m.e21
    assert y * y - D * x * x == sign
    return (x, y)


def compose_pell(p0: Sequence[int], p1: Sequence[int], D: int) -> tuple[int, int]:
    """Product of two solutions of ``y^2 - D x^2 = n`` in the unit group sense."""
    x0, y0 = p0
    x1, y1 = p1
    return (x1 * y0 + y1 * x0, y1 * y0 + D * x1 * x0)


def solutions_up_to(conic: PellConic, bound: int, canonical: bool = False) -> list[tuple[int, int]]:
    """All integer points with ``|x|, |y| <= bound``, sorted.

    With ``canonical=True`` each pair ``{(x, y), (-x, -y)}`` is reported once,
    as the member with ``x > 0`` (or ``x = 0, y > 0``).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    found = set()
    A, B, C, r = conic.A, conic.B, conic.C, conic.rhs
    if A == 0:
        for x in range(-bound, bound + 1):
            for y in range(-bound, bound + 1):
                if conic.value(x, y) == r:
                    found.add((x, y))
    else:
        # A y^2 - B x y + (C x^2 - r) = 0, solve for y
        for x in range(-bound, bound + 1):
            disc = B * B * x * x - 4 * A * (C * x * x - r)
            if disc < 0 or not is_square(disc):
                continue
            s = isqrt(disc)
            for num in {B * x + s, B * x - s}:
                if num % (2 * A) == 0:
                    y = num // (2 * A)
                    if abs(y) <= bound:
                        found.add((x, y))
    pts = sorted(found)
    if canonical:
        pts = [p for p in pts if p[0] > 0 or (p[0] == 0 and p[1] > 0)]
    return pts
