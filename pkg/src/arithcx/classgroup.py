"""Narrow class groups of real quadratic orders via indefinite binary quadratic forms.

Proper equivalence classes of primitive forms of discriminant D correspond to
cycles of reduced forms under the reduction operator rho.  The group law is
Dirichlet composition followed by reduction into a cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd, isqrt

from .qi import QuadSurd, is_square, minimal_polynomial, square_part


class DiscriminantError(ValueError):
    pass


def check_discriminant(D: int) -> None:
    if D <= 0 or is_square(D) or D % 4 not in (0, 1):
        raise DiscriminantError(f"D={D} is not a positive non-square discriminant (D = 0, 1 mod 4)")


def _lt_sqrt(x: int, D: int) -> bool:
    """x < sqrt(D) for non-square D."""
    return x < 0 or x * x < D


def _gt_sqrt(x: int, D: int) -> bool:
    return x > 0 and x * x > D


@dataclass(frozen=True, order=True)
class BQForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1

    @property
    def is_reduced(self) -> bool:
        """0 < b < sqrt(D) and sqrt(D) - b < 2|a| < sqrt(D) + b."""
        D = self.discriminant
        a2 = 2 * abs(self.a)
        return 0 < self.b and _lt_sqrt(self.b, D) and _gt_sqrt(a2 + self.b, D) and _lt_sqrt(a2 - self.b, D)

    def __iter__(self):
        yield from (self.a, self.b, self.c)

    def __str__(self):
        return f"({self.a}, {self.b}, {self.c})"


def _normalize_b(b: int, a: int, D: int) -> int:
    """Representative of b mod 2|a| in the reduction window."""
    m = 2 * abs(a)
    r = isqrt(D)
    if _gt_sqrt(abs(a), D):
        # -|a| < b' <= |a|
        b = b % m
        if b > abs(a):
            b -= m
        return b
    # sqrt(D) - 2|a| < b' < sqrt(D); largest such b' is floor(sqrt(D))
    return r - ((r - b) % m)


def reduction_step(f: BQForm) -> BQForm:
    """rho(a, b, c) = (c, b', (b'^2 - D) / 4c) with b' = -b mod 2c in the reduction window."""
    D = f.discriminant
    if D <= 0 or is_square(D):
        raise DiscriminantError(f"form {f} has discriminant {D}; rho needs a positive non-square")
    if f.c == 0:
        raise DiscriminantError(f"form {f} has c = 0")
    b = _normalize_b(-f.b, f.c, D)
    return BQForm(f.c, b, (b * b - D) // (4 * f.c))


def reduce_form(f: BQForm, max_steps: int = 10_000) -> tuple[BQForm, int]:
    """Iterate rho until reduced; returns the reduced form and the number of steps."""
    steps = 0
    while not f.is_reduced:
        f = reduction_step(f)
        steps += 1
        if steps > max_steps:
            raise RuntimeError(f"reduction did not terminate for {f}")
    return f, steps


def reduced_forms(D: int) -> list[BQForm]:
    check_discriminant(D)
    r = isqrt(D)
    out = []
    for b in range(1, r + 1):
        if (b - D) % 2:
            continue
        n = (D - b * b) // 4  # = -a c > 0
        for a in range(1, n + 1):
            if n % a:
                continue
            f = BQForm(a, b, -n // a)
            g = BQForm(-a, b, n // a)
            for h in (f, g):
                if h.is_reduced and h.is_primitive:
                    out.append(h)
    return sorted(out)


def compose(f: BQForm, g: BQForm) -> BQForm:
    """Dirichlet composition of two primitive forms with positive leading coefficients."""
    a1, b1, c1 = f
    a2, b2, c2 = g
    D = f.discriminant
    if g.discriminant != D:
        raise DiscriminantError("forms have different discriminants")
    if a1 <= 0 or a2 <= 0:
        raise ValueError("compose needs positive leading coefficients")
    s = (b1 + b2) // 2
    n = b2 - s
    # u a2 + v a1 = d = gcd(a1, a2)
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, v = _egcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, u, v = _egcd(s, d)
        x2, y2 = u, -v
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (b3 * b3 - D) // (4 * a3)
    return BQForm(a3, b3, c3)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, u, v) with u a + v b = g = gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def _positive_leading(f: BQForm) -> BQForm:
    # (a, b, c) ~ (c, -b, a) properly; a reduced form has a c < 0
    if f.a > 0:
        return f
    if f.c > 0:
        return BQForm(f.c, -f.b, f.a)
    raise ValueError(f"form {f} has no positive outer coefficient")


def principal_form(D: int) -> BQForm:
    check_discriminant(D)
    k = D % 2
    return BQForm(1, k, (k - D) // 4)


@dataclass(frozen=True)
class AbelianGroupStructure:
    divisors: tuple[int, ...]

    @property
    def order(self) -> int:
        out = 1
        for d in self.divisors:
            out *= d
        return out

    def direct_sum(self, other: "AbelianGroupStructure") -> "AbelianGroupStructure":
        return invariant_factors_of(list(self.divisors) + list(other.divisors))

    def to_json(self) -> dict:
        return {"divisors": list(self.divisors), "order": self.order}


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def invariant_factors_of(cyclic_orders) -> AbelianGroupStructure:
    """Invariant factors d1 | d2 | ... of a direct sum of cyclic groups."""
    pparts: dict[int, list[int]] = {}
    for m in cyclic_orders:
        for p in _prime_factors(m):
            e = 1
            while m % p ** (e + 1) == 0:
                e += 1
            pparts.setdefault(p, []).append(p**e)
    length = max((len(v) for v in pparts.values()), default=0)
    divisors = [1] * length
    for p, powers in pparts.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            divisors[length - 1 - i] *= q
    return AbelianGroupStructure(tuple(d for d in divisors if d > 1))


def structure_from_table(table: list[list[int]], identity: int) -> AbelianGroupStructure:
    """Invariant factors of a finite abelian group given by its Cayley table."""
    h = len(table)

    def power(x, n):
        acc = identity
        for _ in range(n):
            acc = table[acc][x]
        return acc

    cyclic = []
    for p in _prime_factors(h):
        e = 0
        while h % p ** (e + 1) == 0:
            e += 1
        # counts[j] = #{x : p^j x = 0}
        counts = [sum(1 for x in range(h) if power(x, p**j) == identity) for j in range(e + 1)]
        # number of cyclic p-factors of order >= p^j is log_p(counts[j] / counts[j-1])
        ge = []
        for j in range(1, e + 1):
            ratio, t = counts[j] // counts[j - 1], 0
            while ratio > 1:
                ratio //= p
                t += 1
            ge.append(t)
        ge.append(0)
        for j in range(1, e + 1):
            cyclic.extend([p**j] * (ge[j - 1] - ge[j]))
    return invariant_factors_of(cyclic)


class FormClassGroup:
    """Reduced forms, rho-cycles and the composition table for one discriminant."""

    def __init__(self, D: int):
        check_discriminant(D)
        self.D = D
        self.forms = reduced_forms(D)
        self.cycles = self._partition()
        self.cycle_of = {f: i for i, cyc in enumerate(self.cycles) for f in cyc}

    def _partition(self) -> list[list[BQForm]]:
        remaining = set(self.forms)
        cycles = []
        for f in self.forms:
            if f not in remaining:
                continue
            cyc, g = [], f
            while True:
                cyc.append(g)
                remaining.discard(g)
                g = reduction_step(g)
                if g == f:
                    break
                if g in cyc or g not in remaining:
                    raise RuntimeError(f"rho is not a permutation of reduced forms at D={self.D}")
            cycles.append(cyc)
        # canonical representative first, cycles ordered by representative
        cycles = [self._rotate_min(c) for c in cycles]
        return sorted(cycles, key=lambda c: c[0])

    @staticmethod
    def _rotate_min(cyc):
        i = cyc.index(min(cyc))
        return cyc[i:] + cyc[:i]

    @property
    def h_plus(self) -> int:
        return len(self.cycles)

    @property
    def representatives(self) -> list[BQForm]:
        return [c[0] for c in self.cycles]

    def class_index(self, f: BQForm) -> int:
        return self.cycle_of[reduce_form(f)[0]]

    @property
    def identity(self) -> int:
        return self.class_index(principal_form(self.D))

    def compose_forms(self, f: BQForm, g: BQForm) -> int:
        return self.class_index(compose(_positive_leading(f), _positive_leading(g)))

    @cached_property
    def table(self) -> list[list[int]]:
        reps = self.representatives
        return [[self.compose_forms(f, g) for g in reps] for f in reps]

    @cached_property
    def structure(self) -> AbelianGroupStructure:
        return structure_from_table(self.table, self.identity)

    def to_json(self) -> dict:
        sha = self.structure.direct_sum(self.structure)
        return {
            "D": self.D,
            "h_plus": self.h_plus,
            "cycles": [[list(f) for f in c] for c in self.cycles],
            "group": list(self.structure.divisors),
            "sha": list(sha.divisors),
        }


def narrow_class_group(D: int) -> AbelianGroupStructure:
    return FormClassGroup(D).structure


def order_discriminant(theta: QuadSurd) -> int:
    return minimal_polynomial(theta).discriminant


def order_info(theta: QuadSurd) -> dict:
    """Discriminant, conductor and closure status of the module Z + Z*theta."""
    poly = minimal_polynomial(theta)
    D = poly.discriminant
    _, m = square_part(D)
    fundamental = m if m % 4 == 1 else 4 * m
    conductor = isqrt(D // fundamental)
    return {
        "discriminant": D,
        "fundamental_discriminant": fundamental,
        "conductor": conductor,
        # theta^2 = -(B theta + C)/A lies in Z + Z theta iff A = 1 (poly is primitive)
        "module_is_order": poly.A == 1,
    }


def sha_group(theta: QuadSurd) -> AbelianGroupStructure:
    cl = narrow_class_group(order_discriminant(theta))
    return cl.direct_sum(cl)
