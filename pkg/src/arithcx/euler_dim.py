"""Euler families, fitted entry polynomials, dimension estimates and rank prediction.

Two routes produce a dimension for the component containing the expansion
point of theta:

* ``family-match``: for expansions of shape ``[b1; (a1, a2)]`` the known
  parametrized families of V_{1,2} decide (see :func:`arithcx.bej.component_of`).
* ``implicitization``: elsewhere, sample an Euler family around theta, find
  all polynomial relations up to a degree bound among the sampled points and
  read the dimension off the Jacobian rank of those relations.  This is an
  estimator and is always labelled as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .bej import NoKnownFamily, SignatureMismatch, component_of
from .cfrac import PeriodicCF, expand, format_cf
from .qi import QuadSurd, SurdError, is_square, normalize_surd, square_part
from .sympoly import monomials

DEFAULT_WINDOW = 40
DEFAULT_MAX_DEG = 2


class NoStableSignature(LookupError):
    pass


@dataclass(frozen=True)
class EulerFamily:
    base: QuadSurd
    signature: tuple[int, int]
    samples: tuple[tuple[int, PeriodicCF], ...]  # (coordinate, expansion with `signature`)
    constants: tuple[int, int, int] | None = None  # (a, sign, c) of theta_x = (a + sign*sqrt(x))/c

    @property
    def coordinates(self) -> list[int]:
        return [x for x, _ in self.samples]

    @property
    def points(self) -> list[tuple[int, ...]]:
        return [cf.entries for _, cf in self.samples]


@dataclass(frozen=True)
class DimensionEstimate:
    dim: int
    degree_bound: int
    sample_count: int
    relation_count: int
    method: str
    underdetermined: bool = False
    relations: tuple = field(default=(), compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree_bound": self.degree_bound,
            "sample_count": self.sample_count,
            "relation_count": self.relation_count,
            "method": self.method,
            "underdetermined": self.underdetermined,
        }


def _radicand_form(theta: QuadSurd) -> tuple[int, int, int, int]:
    """theta = (a + sign*sqrt(m)) / c with m = b^2 d."""
    return theta.a, (1 if theta.b > 0 else -1), theta.c, theta.b * theta.b * theta.d


def _candidates(m: int, window: int, squarefree: bool) -> list[int]:
    def ok(x):
        return x > 1 and not is_square(x) and (not squarefree or square_part(x)[0] == 1)

    below, above = [], []
    x = m - 1
    while len(below) < window and x > 1:
        if ok(x):
            below.append(x)
        x -= 1
    x = m + 1
    while len(above) < window:
        if ok(x):
            above.append(x)
        x += 1
    return sorted(below + [m] + above)


def sample_family(
    theta: QuadSurd, window: int = DEFAULT_WINDOW, squarefree: bool = False, signature=None
) -> EulerFamily:
    """Sample ``theta_x = (a + sqrt(x))/c`` for radicands x near that of ``theta``.

    Looks at the ``window`` nearest admissible radicands on each side and keeps
    those whose minimal expansion has the signature of ``theta``.  With an
    explicit ``signature`` any expansion admitting it is kept, stored in that
    shape; ``signature=(1, 2)`` puts ``(3+sqrt5)/2 = [2; (1)]`` in the family
    of the ``(b+sqrt(b^2-4))/2``.
    """
    if window < 3:
        raise ValueError("window must be >= 3")
    a, sign, c, m = _radicand_form(theta)
    target = tuple(signature) if signature is not None else expand(theta).signature
    samples = []
    for x in _candidates(m, window, squarefree):
        try:
            cf = expand(normalize_surd(a, sign, c, x))
        except SurdError:
            continue
        if cf.signature == target:
            samples.append((x, cf))
        elif signature is not None and cf.has_signature(*target):
            samples.append((x, cf.with_signature(*target)))
    if len(samples) < 3:
        raise NoStableSignature(
            f"only {len(samples)} radicands near {m} give signature {target}; need at least 3"
        )
    return EulerFamily(theta, target, tuple(samples), (a, sign, c))


def sweep_family(make_theta: Callable[[int], QuadSurd], params: Iterable[int], signature=None) -> EulerFamily:
    """Family indexed by an integer parameter, e.g. ``b -> sqrt(b^2 + 2)``."""
    params = list(params)
    cfs = [expand(make_theta(t)) for t in params]
    if signature is None:
        signature = cfs[0].signature
    bad = [t for t, cf in zip(params, cfs) if not cf.has_signature(*signature)]
    if bad:
        raise NoStableSignature(f"parameters {bad} do not admit signature {signature}")
    samples = tuple((t, cf.with_signature(*signature)) for t, cf in zip(params, cfs))
    return EulerFamily(make_theta(params[0]), tuple(signature), samples)


def _interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Coefficients (low to high) of the interpolating polynomial, exact."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xs[j] * basis[t + 1]
            denom *= xs[i] - xs[j]
        for t in range(n):
            coeffs[t] += ys[i] * basis[t] / denom
    return coeffs


def _poly_value(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def fit_entry_polynomials(family: EulerFamily, max_deg: int = DEFAULT_MAX_DEG) -> list[list[int]] | None:
    """Integer polynomials in the family coordinate reproducing every entry, or ``None``.

    Each polynomial is fitted through the first ``max_deg + 1`` samples and
    must reproduce every remaining (held-out) sample exactly.
    """
    coords = family.coordinates
    if len(set(coords)) != len(coords):
        raise ValueError("family coordinates must be distinct")
    if len(coords) < max_deg + 2:
        raise ValueError(f"need at least {max_deg + 2} samples for degree {max_deg}, have {len(coords)}")
    fit_x = coords[: max_deg + 1]
    points = family.points
    out = []
    for pos in range(len(points[0])):
        ys = [p[pos] for p in points]
        coeffs = _interpolate(fit_x, ys[: max_deg + 1])
        if any(c.denominator != 1 for c in coeffs):
            return None
        coeffs = [int(c) for c in coeffs]
        if any(_poly_value(coeffs, x) != y for x, y in zip(coords, ys)):
            return None
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        out.append(coeffs)
    return out


def format_entry_polys(polys: list[list[int]], var: str = "t") -> list[str]:
    from .sympoly import MPoly, render

    (t,) = MPoly.gens((var,))
    out = []
    for coeffs in polys:
        p = MPoly.const((var,), 0)
        for power, c in enumerate(coeffs):
            p = p + c * t**power
        out.append(render(p))
    return out


def _nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : rows @ v = 0} over Q by Gauss-Jordan elimination."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            v[pcol] = -m[i][fcol]
        basis.append(v)
    return basis


def _rank(rows: list[list[Fraction]]) -> int:
    if not rows:
        return 0
    ncols = len(rows[0])
    return ncols - len(_nullspace(rows, ncols))


def estimate_dimension(points: Sequence[Sequence[int]], max_deg: int = DEFAULT_MAX_DEG) -> DimensionEstimate:
    """Dimension of the Zariski closure of ``points``, estimated from low-degree relations.

    Every polynomial of degree <= ``max_deg`` vanishing on the points is found
    exactly (kernel of the monomial evaluation matrix).  The dimension is the
    ambient dimension minus the largest Jacobian rank of those relations over
    the sample points.
    """
    pts = [tuple(int(v) for v in p) for p in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points must share one arity")
    distinct = sorted(set(pts))
    mons = monomials(n, max_deg)
    rows = [[Fraction(_mono_value(e, p)) for e in mons] for p in distinct]
    relations = _nullspace(rows, len(mons))
    best = 0
    for p in distinct:
        jac = [[_partial(rel, mons, j, p) for j in range(n)] for rel in relations]
        best = max(best, _rank(jac))
        if best == n:
            break
    return DimensionEstimate(
        dim=n - best,
        degree_bound=max_deg,
        sample_count=len(distinct),
        relation_count=len(relations),
        method="implicitization",
        underdetermined=len(distinct) <= len(mons),
        relations=tuple(tuple(r) for r in relations),
    )


def _mono_value(exp, p):
    v = 1
    for x, k in zip(p, exp):
        if k:
            v *= x**k
    return v


def _partial(rel, mons, j, p) -> Fraction:
    total = Fraction(0)
    for c, e in zip(rel, mons):
        if c == 0 or e[j] == 0:
            continue
        lowered = list(e)
        lowered[j] -= 1
        total += c * e[j] * _mono_value(lowered, p)
    return total


def complexity_report(
    theta: QuadSurd, window: int = DEFAULT_WINDOW, max_deg: int = DEFAULT_MAX_DEG
) -> dict:
    """Everything behind the complexity and rank prediction for ``theta``."""
    cf = expand(theta)
    report = {
        "theta": str(theta),
        "expansion": format_cf(cf),
        "signature": list(cf.signature),
        "notes": [
            "affine component dimension taken as the Krull dimension of its projective closure",
        ],
    }
    if cf.has_signature(1, 2):
        comp = component_of(theta)
        dim = comp.dimension
        report.update(
            method="family-match",
            dimension=dim,
            family=comp.parametrization,
            family_parameters=comp.to_json().get("parameters", {}),
            samples_used=0,
        )
    else:
        fam = sample_family(theta, window)
        pts = fam.points
        polys = None
        if len(fam.samples) >= max_deg + 2:
            polys = fit_entry_polynomials(fam, max_deg)
        if polys is not None:
            lo, hi = min(fam.coordinates), max(fam.coordinates)
            pts = pts + [tuple(_poly_value(c, t) for c in polys) for t in range(lo, hi + 1)]
        est = estimate_dimension(pts, max_deg)
        dim = est.dim
        if dim < 1:
            report["notes"].append(f"estimate {dim} floored at 1 (the conic base has dimension 1)")
            dim = 1
        report.update(
            method="implicitization",
            dimension=dim,
            family=f"({fam.constants[0]} + {fam.constants[1]}*sqrt(x))/{fam.constants[2]}",
            family_parameters={
                "radicands": fam.coordinates,
                "entry_polynomials": format_entry_polys(polys, "x") if polys else None,
            },
            samples_used=len(fam.samples),
            estimate=est.to_json(),
        )
        report["notes"].append("implicitization is an estimator, not a theorem")
    report["complexity"] = dim
    report["predicted_rank"] = dim - 1
    return report


def complexity(theta: QuadSurd, window: int = DEFAULT_WINDOW, max_deg: int = DEFAULT_MAX_DEG) -> int:
    return complexity_report(theta, window, max_deg)["complexity"]


def predicted_rank(theta: QuadSurd, window: int = DEFAULT_WINDOW, max_deg: int = DEFAULT_MAX_DEG) -> int:
    return complexity(theta, window, max_deg) - 1


__all__ = [
    "DimensionEstimate",
    "EulerFamily",
    "NoKnownFamily",
    "NoStableSignature",
    "SignatureMismatch",
    "complexity",
    "complexity_report",
    "estimate_dimension",
    "fit_entry_polynomials",
    "predicted_rank",
    "sample_family",
    "sweep_family",
]
