"""Brock-Elkies-Jordan varieties V_{N,k}: equations, membership, projection to the conic.

For fixed coefficients (A, B, C) the variety is cut out by the vanishing of the
three 2x2 minors of::

    [ A     B          C    ]
    [ E21   E22 - E11  -E12 ]

where E is the symbolic equivalence matrix of a continued fraction with
preperiod y1..yN and period x1..xk.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .cfrac import PeriodicCF, expand
from .qi import IntPoly2, QuadSurd, is_square
from .sympoly import MPoly, cf_variables, evaluate_poly, render, symbolic_equivalence_matrix

COEFF_VARS = ("A", "B", "C")


class SignatureMismatch(ValueError):
    """The expansion signature is not one the classification covers."""


class NoKnownFamily(LookupError):
    """No known parametrized family contains the given point."""


@dataclass(frozen=True)
class VarietyPoint:
    y: tuple[int, ...]
    x: tuple[int, ...]

    @classmethod
    def from_cf(cls, cf: PeriodicCF) -> "VarietyPoint":
        return cls(cf.preperiod, cf.period)

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple(self.y) + tuple(self.x)


@dataclass(frozen=True)
class BEJSystem:
    n: int
    k: int
    coeffs: IntPoly2 | None  # None: A, B, C are extra symbolic variables
    equations: tuple[MPoly, MPoly, MPoly]
    e21: MPoly
    e22: MPoly

    @property
    def variables(self) -> tuple[str, ...]:
        return self.equations[0].vars

    @property
    def symbolic(self) -> bool:
        return self.coeffs is None

    def _point(self, p) -> tuple[int, ...]:
        coords = p.coords if isinstance(p, VarietyPoint) else tuple(p)
        if isinstance(p, VarietyPoint) and (len(p.y), len(p.x)) != (self.n, self.k):
            raise ValueError(f"point signature {(len(p.y), len(p.x))} does not match system ({self.n}, {self.k})")
        if len(coords) != self.n + self.k:
            raise ValueError(f"point has {len(coords)} coordinates, system needs {self.n + self.k}")
        if self.symbolic:
            raise ValueError("membership needs numeric coefficients; the system is symbolic")
        return coords

    def residuals(self, p) -> tuple[int, int, int]:
        pt = self._point(p)
        return tuple(evaluate_poly(eq, pt) for eq in self.equations)

    def to_json(self) -> dict:
        return {
            "N": self.n,
            "k": self.k,
            "coefficients": None if self.symbolic else list(self.coeffs.coeffs),
            "variables": list(self.variables),
            "equations": [render(eq) for eq in self.equations],
        }


def build_system(n: int, k: int, coeffs: IntPoly2 | Sequence[int] | None = None) -> BEJSystem:
    """The three defining equations of V_{N,k} (each read as ``poly = 0``).

    ``coeffs`` may be an :class:`IntPoly2`, a proportional integer triple (which
    is normalized first) or ``None`` for symbolic A, B, C.
    """
    if k < 1:
        raise ValueError("period length k must be >= 1")
    if n < 0:
        raise ValueError("preperiod length N must be >= 0")
    e = symbolic_equivalence_matrix(n, k)
    if coeffs is None:
        variables = cf_variables(n, k) + COEFF_VARS
        emb = lambda p: p.embed(variables)  # noqa: E731
        e21, e22, e11, e12 = emb(e.e21), emb(e.e22), emb(e.e11), emb(e.e12)
        A, B, C = (MPoly.var(variables, v) for v in COEFF_VARS)
        poly = None
    else:
        poly = coeffs if isinstance(coeffs, IntPoly2) else IntPoly2.from_coeffs(*coeffs)
        e21, e22, e11, e12 = e.e21, e.e22, e.e11, e.e12
        A, B, C = poly.coeffs
    trace_gap = e22 - e11
    eqs = (
        A * trace_gap - B * e21,
        -A * e12 - C * e21,
        -B * e12 - C * trace_gap,
    )
    return BEJSystem(n, k, poly, eqs, e21, e22)


def is_member(system: BEJSystem, p) -> bool:
    return all(r == 0 for r in system.residuals(p))


def fiber_projection(system: BEJSystem, p) -> tuple[int, int]:
    """Image ``(E21, E22)`` of a variety point on the Fermat-Pell conic."""
    if not is_member(system, p):
        raise ValueError("point is not on the variety")
    pt = system._point(p)
    return evaluate_poly(system.e21, pt), evaluate_poly(system.e22, pt)


@dataclass(frozen=True)
class ComponentDescription:
    kind: str
    parametrization: str
    dimension: int
    parameters: dict = field(default_factory=dict, compare=False)
    note: str = ""

    def to_json(self) -> dict:
        out = {"kind": self.kind, "parametrization": self.parametrization, "dimension": self.dimension}
        if self.parameters:
            out["parameters"] = {k: _jsonable(v) for k, v in self.parameters.items()}
        if self.note:
            out["note"] = self.note
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


ZERO_TAIL = "zero-tail"
FREE_X2 = "free-x2"
PARAMETRIZED = "parametrized"
DEGENERATE = "degenerate-B2=4AC"


def classify_V12(coeffs: Sequence[int]) -> list[ComponentDescription]:
    """Components of V_{1,2} for the coefficient triple (A, B, C).

    Dimensions are those of each component inside (y1, x1, x2)-space with the
    coefficients held fixed.
    """
    if isinstance(coeffs, IntPoly2):
        coeffs = coeffs.coeffs
    A, B, C = (int(c) for c in coeffs)
    if A == B == C == 0:
        raise ValueError("coefficients A = B = C = 0 define no quadratic")
    if A == 0:
        if B != 0:
            return [ComponentDescription(ZERO_TAIL, "[y1; (0, 0)]", 1)]
        return [ComponentDescription(FREE_X2, "[y1; (0, x2)]", 2)]
    out = [
        ComponentDescription(ZERO_TAIL, "[y1; (0, 0)]", 1),
        ComponentDescription(PARAMETRIZED, _eq42_text(A, B, C), 1, {"A": A, "B": B, "C": C}),
    ]
    if B * B == 4 * A * C:
        y1 = Fraction(-B, 2 * A)
        out.append(ComponentDescription(DEGENERATE, f"[{_jsonable(y1)}; (x1, 0)]", 1, {"y1": y1}))
    return out


def _eq42_text(A: int, B: int, C: int) -> str:
    (y,) = MPoly.gens(("y1",))
    num = render(2 * A * y + B)
    den = render(A * y * y + B * y + C)
    x2 = num if A == 1 else f"({num})/{A}"
    return f"[y1; (-({num})/({den}), {x2})]"


# Families realized inside V^0_{1,2}:
#   dim 2:  [uv; (2u, 2uv)] = sqrt(v (u^2 v + 1))
#   dim 1:  [u - 1; (1, u - 2)] = (u + sqrt(u^2 - 4)) / 2
FAMILY_UV = "[uv; (2u, 2uv)] = sqrt(v*(u^2*v + 1))"
FAMILY_U = "[u-1; (1, u-2)] = (u + sqrt(u^2 - 4))/2"
MATCH_NOTE = "component found by matching known parametrized families, not by decomposing the variety"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _uv_value_match(theta: QuadSurd):
    """Is ``theta = s + sqrt(m)`` with ``m = v (u^2 v + 1)`` for integers u >= 1, v != 0?"""
    if theta.c != 1 or theta.b < 0:
        return None
    m = theta.b * theta.b * theta.d
    for v in sorted(_divisors(m) + [-d for d in _divisors(m)], key=lambda t: (abs(t), t)):
        q = m // v - 1
        if q % v:
            continue
        u2 = q // v
        if u2 > 0 and is_square(u2):
            return {"u": isqrt(u2), "v": v, "shift": theta.a}
    return None


def component_of(theta: QuadSurd) -> ComponentDescription:
    """The component V^0 of V_{1,2} containing the expansion point of ``theta``.

    The point is read off the representative ``[b1; (a1, a2)]`` of the
    expansion (this may repeat a shorter minimal period).  The two-parameter
    family wins over the one-parameter family when both apply.
    """
    cf = expand(theta)
    if not cf.has_signature(1, 2):
        raise SignatureMismatch(
            f"{cf} has signature {cf.signature}; only V_(1,2) is classified (unclassified signature)"
        )
    rep = cf.with_signature(1, 2)
    (b1,), (a1, a2) = rep.preperiod, rep.period
    base = {"representative": str(rep)}
    if 0 in (a1, a2):
        return ComponentDescription(ZERO_TAIL, "[y1; (0, 0)]", 1, base, MATCH_NOTE)
    if a2 == 2 * b1:
        u = Fraction(a1, 2)
        v = Fraction(b1) / u
        return ComponentDescription(PARAMETRIZED, FAMILY_UV, 2, {**base, "family": "uv", "u": u, "v": v}, MATCH_NOTE)
    hit = _uv_value_match(theta)
    if hit is not None:
        return ComponentDescription(
            PARAMETRIZED, FAMILY_UV, 2, {**base, "family": "uv-shifted", **hit}, MATCH_NOTE
        )
    if a1 == 1 and a2 == b1 - 1:
        return ComponentDescription(PARAMETRIZED, FAMILY_U, 1, {**base, "family": "u", "u": b1 + 1}, MATCH_NOTE)
    raise NoKnownFamily(f"{rep} matches neither {FAMILY_UV} nor {FAMILY_U}")
