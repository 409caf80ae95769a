"""Exact real quadratic irrationals and their minimal polynomials.

Everything here works on Python integers; no floating point is used
except in ``QuadSurd.__float__``, which exists for diagnostics only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt


class SurdError(ValueError):
    pass


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


_TRIAL_LIMIT = 1 << 16


def square_part(n: int) -> tuple[int, int]:
    """Split ``n > 0`` as ``s**2 * m`` with ``m`` squarefree; returns ``(s, m)``.

    Small primes are divided out directly.  Once the cofactor has no prime
    below its cube root it has at most two prime factors and is settled by a
    square test; otherwise it goes to sympy's factorint, which copes with the
    large discriminants that long periods produce.
    """
    if n <= 0:
        raise ValueError("square_part needs a positive integer")
    s, m = 1, 1
    rest = n
    p = 2
    while p <= _TRIAL_LIMIT and p * p * p <= rest:
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    if p * p * p > rest:
        r = isqrt(rest)
        if r * r == rest:
            return s * r, m
        return s, m * rest
    from sympy import factorint

    for q, e in factorint(rest).items():
        s *= q ** (e // 2)
        if e % 2:
            m *= q
    return s, m


def _gcd3(a: int, b: int, c: int) -> int:
    return gcd(gcd(a, b), c)


@dataclass(frozen=True)
class QuadSurd:
    """The real number ``(a + b*sqrt(d)) / c`` in canonical form.

    Build instances with :func:`normalize_surd` or :meth:`parse`; the
    constructor only checks that the fields are already canonical.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.c <= 0 or self.b == 0 or self.d <= 1:
            raise SurdError(f"non-canonical surd fields {self.fields}")
        if _gcd3(self.a, self.b, self.c) != 1 or square_part(self.d)[0] != 1:
            raise SurdError(f"non-canonical surd fields {self.fields}")

    @property
    def fields(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @classmethod
    def parse(cls, text: str) -> "QuadSurd":
        return parse_surd(text)

    def conjugate(self) -> "QuadSurd":
        return QuadSurd(self.a, -self.b, self.c, self.d)

    def floor(self) -> int:
        return floor_surd(self)

    def mobius(self, p: int, q: int, r: int, s: int) -> "QuadSurd":
        """Return ``(p*self + q) / (r*self + s)``."""
        return normalize_surd(*_mobius_raw(p, q, r, s, self.a, self.b, self.c, self.d))

    def __add__(self, n):
        if isinstance(n, int):
            return normalize_surd(self.a + n * self.c, self.b, self.c, self.d)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, n):
        if isinstance(n, int):
            return self + (-n)
        return NotImplemented

    def __neg__(self):
        return normalize_surd(-self.a, -self.b, self.c, self.d)

    def __float__(self):
        from math import sqrt

        return (self.a + self.b * sqrt(self.d)) / self.c

    def __str__(self):
        return format_surd(self)

    def _cmp_rational(self, q: Fraction) -> int:
        # sign of (a - q*c) + b*sqrt(d), all scaled by q.denominator > 0
        u = self.a * q.denominator - q.numerator * self.c
        v = self.b * q.denominator
        return _sign_of(u, v, self.d)

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._cmp_rational(Fraction(other)) < 0
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._cmp_rational(Fraction(other)) > 0
        return NotImplemented


def _sign_of(u: int, v: int, d: int) -> int:
    """Sign of ``u + v*sqrt(d)`` for non-square ``d``."""
    if v == 0:
        return (u > 0) - (u < 0)
    if u == 0 or (u > 0) == (v > 0):
        return 1 if v > 0 else -1
    # opposite signs: compare magnitudes
    if u * u > v * v * d:
        return 1 if u > 0 else -1
    return 1 if v > 0 else -1


def _mobius_raw(p, q, r, s, a, b, c, d):
    # numerator n1 + n2*sqrt(d), denominator m1 + m2*sqrt(d), both over c
    n1, n2 = p * a + q * c, p * b
    m1, m2 = r * a + s * c, r * b
    den = m1 * m1 - d * m2 * m2
    if den == 0:
        raise SurdError("Mobius image has a zero denominator")
    return (n1 * m1 - d * n2 * m2, n2 * m1 - n1 * m2, den, d)


def normalize_surd(a: int, b: int, c: int, d: int) -> QuadSurd:
    """Canonical form of ``(a + b*sqrt(d)) / c``.

    >>> normalize_surd(0, 2, 2, 8)
    QuadSurd(a=0, b=2, c=1, d=2)
    """
    if c == 0:
        raise SurdError("denominator c must be nonzero")
    if d <= 0:
        raise SurdError(f"radicand d={d} must be positive")
    if is_square(d):
        raise SurdError(f"radicand d={d} is a perfect square")
    if b == 0:
        raise SurdError("coefficient b must be nonzero (value would be rational)")
    s, d = square_part(d)
    b *= s
    g = _gcd3(a, b, c)
    if c < 0:
        g = -g
    return QuadSurd(a // g, b // g, c // g, d)


def floor_surd(theta: QuadSurd) -> int:
    # floor(x / c) == floor(floor(x) / c) for an integer c > 0
    m = theta.b * theta.b * theta.d
    r = isqrt(m)
    fl = r if theta.b > 0 else -r - 1
    return (theta.a + fl) // theta.c


@dataclass(frozen=True)
class IntPoly2:
    """Primitive quadratic ``A x^2 + B x + C`` with ``A > 0`` and irrational roots."""

    A: int
    B: int
    C: int

    def __post_init__(self):
        if self.A <= 0 or _gcd3(self.A, self.B, self.C) != 1:
            raise SurdError(f"quadratic {self.coeffs} is not primitive with A > 0")
        disc = self.discriminant
        if disc <= 0 or is_square(disc):
            raise SurdError(f"quadratic {self.coeffs} has discriminant {disc}: roots not real irrational")

    @classmethod
    def from_coeffs(cls, A: int, B: int, C: int) -> "IntPoly2":
        """Primitive, sign-normalized version of any proportional triple."""
        g = _gcd3(A, B, C)
        if g == 0:
            raise SurdError("all-zero quadratic")
        if A < 0 or (A == 0 and (B < 0 or (B == 0 and C < 0))):
            g = -g
        return cls(A // g, B // g, C // g)

    @property
    def coeffs(self) -> tuple[int, int, int]:
        return (self.A, self.B, self.C)

    @property
    def discriminant(self) -> int:
        return self.B * self.B - 4 * self.A * self.C

    def roots(self) -> tuple[QuadSurd, QuadSurd]:
        """(larger, smaller) root."""
        hi = normalize_surd(-self.B, 1, 2 * self.A, self.discriminant)
        return hi, hi.conjugate()

    def vanishes_at(self, theta: QuadSurd) -> bool:
        """Exact symbolic check that ``theta`` is a root."""
        a, b, c, d = theta.fields
        # c^2 * P(theta) = A(a + b r)^2 + B c (a + b r) + C c^2, with r^2 = d
        rational = self.A * (a * a + b * b * d) + self.B * c * a + self.C * c * c
        irrational = 2 * self.A * a * b + self.B * c * b
        return rational == 0 and irrational == 0


def minimal_polynomial(theta: QuadSurd) -> IntPoly2:
    a, b, c, d = theta.fields
    # (c x - a)^2 = b^2 d
    return IntPoly2.from_coeffs(c * c, -2 * a * c, a * a - b * b * d)


_INT = r"[+-]?\s*\d+"
_SURD_RE = re.compile(
    rf"""^\s*\(?\s*
        (?P<a>{_INT}(?=\s*[+-]))?\s*
        (?P<sign>[+-])?\s*
        (?:(?P<b>\d+)\s*\*?\s*)?
        sqrt\s*\(\s*(?P<d>\d+)\s*\)\s*
        \)?\s*
        (?:/\s*(?P<c>{_INT}))?\s*$""",
    re.VERBOSE,
)


def parse_surd(text: str) -> QuadSurd:
    """Parse ``"sqrt(11)"``, ``"(3+sqrt(5))/2"``, ``"(1-2*sqrt(3))/5"`` or ``"a b c d"``."""
    parts = text.replace(",", " ").split()
    if len(parts) == 4 and all(re.fullmatch(r"[+-]?\d+", p) for p in parts):
        return normalize_surd(*(int(p) for p in parts))
    m = _SURD_RE.match(text)
    if not m:
        raise SurdError(f"cannot parse surd {text!r}")
    a = int(m["a"].replace(" ", "")) if m["a"] else 0
    b = int(m["b"]) if m["b"] else 1
    if m["sign"] == "-":
        b = -b
    c = int(m["c"].replace(" ", "")) if m["c"] else 1
    return normalize_surd(a, b, c, int(m["d"]))


def format_surd(theta: QuadSurd) -> str:
    a, b, c, d = theta.fields
    mag = "" if abs(b) == 1 else f"{abs(b)}*"
    root = f"{mag}sqrt({d})"
    if a == 0:
        body = root if b > 0 else f"-{root}"
    else:
        body = f"{a}{'+' if b > 0 else '-'}{root}"
    if c == 1:
        return body
    return f"({body})/{c}"
