"""Independent reference computations used only by the tests.

Nothing here calls into the continued fraction or reduction code of the
package: the oracles search, close under group moves, or defer to sympy.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd, isqrt

import numpy as np
import sympy

# --- Pell: sieved exhaustive search ----------------------------------------

_WHEEL_MODULI = (16, 9, 5, 7, 11)
_WHEEL = 16 * 9 * 5 * 7 * 11  # 55440
_POST_MODULI = (13, 17, 19, 23)


_X = np.arange(_WHEEL, dtype=np.int64)
_X_MOD = {m: (_X % m).astype(np.int8) for m in _WHEEL_MODULI}


def _allowed(D: int, sign: int, m: int) -> np.ndarray:
    squares = {r * r % m for r in range(m)}
    return np.array([(D * r * r + sign) % m in squares for r in range(m)])


def _wheel_residues(D: int, sign: int) -> np.ndarray:
    """Residues x mod the wheel for which D x^2 + sign can be a square mod every modulus."""
    keep = np.ones(_WHEEL, dtype=bool)
    for m in _WHEEL_MODULI:
        keep &= _allowed(D, sign, m)[_X_MOD[m]]
    return _X[keep]


def pell_search(D: int, sign: int, x_max: int | None = None) -> tuple[int, int] | None:
    """Least x in 1..x_max (unbounded if None) with D x^2 + sign = y^2, as (x, y)."""
    res = _wheel_residues(D, sign)
    if res.size == 0:
        return None
    # int64 arithmetic is exact while D x^2 stays below 2^62
    limit = isqrt(2**62 // D)
    x_max = limit if x_max is None else x_max
    if x_max > limit:
        raise OverflowError(f"search to x={x_max} exceeds int64 for D={D}")
    post = [(m, _allowed(D, sign, m)) for m in _POST_MODULI]
    cap = max(1, min(512, 2_000_000 // res.size))
    blocks_per_batch, base = 1, 0
    while base <= x_max:
        starts = base + _WHEEL * np.arange(blocks_per_batch, dtype=np.int64)
        xs = (starts[:, None] + res[None, :]).ravel()
        xs = xs[(xs >= 1) & (xs <= x_max)]
        for m, ok in post:
            xs = xs[ok[xs % m]]
        v = D * xs * xs + sign  # positive: D >= 2 and x >= 1
        r = np.floor(np.sqrt(v.astype(np.float64))).astype(np.int64)
        # float sqrt may be off by one in either direction
        hit = np.zeros(v.size, dtype=bool)
        for delta in (-1, 0, 1):
            rr = r + delta
            hit |= rr * rr == v
        if hit.any():
            x = int(xs[np.argmax(hit)])
            y = isqrt(D * x * x + sign)
            assert y * y == D * x * x + sign
            return (x, y)
        base += _WHEEL * blocks_per_batch
        blocks_per_batch = min(cap, 2 * blocks_per_batch)
    return None


@lru_cache(maxsize=None)
def pell_oracle(D: int) -> dict[int, tuple[int, int] | None]:
    """Fundamental solutions of y^2 - D x^2 = +1 and -1 by search.

    The +1 search runs until its first hit.  A solution of the -1 equation, if
    any, is smaller than the least +1 solution (its square is a +1 solution),
    so searching below that bound settles solvability.
    """
    plus = pell_search(D, 1)
    minus = pell_search(D, -1, plus[0])
    return {1: plus, -1: minus}


# --- indefinite forms: equivalence closure ---------------------------------


def _forms_in_box(D: int, b_bound: int, ac_bound: int):
    """Primitive forms (a, b, c) of discriminant D with |b| <= b_bound and |a|, |c| <= ac_bound."""
    out = []
    for b in range(-b_bound, b_bound + 1):
        if (b * b - D) % 4:
            continue
        n = (b * b - D) // 4  # = a c, never 0 since D is not a square
        m = abs(n)
        mags = set()
        for a in range(1, isqrt(m) + 1):
            if m % a == 0:
                mags.update((a, m // a))
        for a in mags:
            if a > ac_bound or m // a > ac_bound:
                continue
            for sa in (a, -a):
                c = n // sa
                if gcd(gcd(sa, b), c) == 1:
                    out.append((sa, b, c))
    return out


def _below_root(x: int, D: int) -> bool:
    return x < 0 or x * x < D


def _is_reduced(f, D):
    # 0 < b < sqrt D  and  sqrt D - b < 2|a| < sqrt D + b
    a, b, _ = f
    a2 = 2 * abs(a)
    return 0 < b and _below_root(b, D) and not _below_root(a2 + b, D) and _below_root(a2 - b, D)


@lru_cache(maxsize=None)
def equivalence_closure(D: int):
    """Partition of the reduced forms of discriminant D into proper equivalence classes.

    Forms in a box are joined by the SL2(Z) moves S: (a, b, c) -> (c, -b, a) and
    T^(+-1): (a, b, c) -> (a, b +- 2a, a +- b + c) whenever both ends lie in the
    box.  Returns (classes of reduced forms, all reduced forms found).
    """
    r = isqrt(D)
    forms = _forms_in_box(D, 2 * r + 2, D)
    index = {f: i for i, f in enumerate(forms)}
    parent = list(range(len(forms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    for f, i in index.items():
        a, b, c = f
        for g in ((c, -b, a), (a, b + 2 * a, a + b + c), (a, b - 2 * a, a - b + c)):
            j = index.get(g)
            if j is not None:
                union(i, j)

    reduced = sorted(f for f in forms if _is_reduced(f, D))
    classes: dict[int, list] = {}
    for f in reduced:
        classes.setdefault(find(index[f]), []).append(f)
    return tuple(tuple(c) for c in sorted(classes.values())), tuple(reduced)


def valid_discriminants(limit: int):
    return [D for D in range(5, limit + 1) if D % 4 in (0, 1) and isqrt(D) ** 2 != D]


# --- sympy bridges ---------------------------------------------------------


def sympy_cf(a: int, b: int, c: int, d: int):
    """(preperiod, period) of (a + b sqrt(d))/c from sympy."""
    if b < 0:
        a, b = -a, -b
        c = -c
    # (a + b sqrt d)/c = (a + sqrt(b^2 d))/c
    out = sympy.continued_fraction_periodic(a, c, b * b * d)
    *pre, period = out
    return tuple(int(t) for t in pre), tuple(int(t) for t in period)


def to_sympy(poly):
    syms = sympy.symbols(" ".join(poly.vars))
    if len(poly.vars) == 1:
        syms = (syms,)
    expr = sympy.Integer(0)
    for exp, coeff in poly.terms.items():
        term = sympy.Integer(coeff)
        for s, e in zip(syms, exp):
            term *= s**e
        expr += term
    return sympy.expand(expr)


def sympy_equivalence_matrix(n: int, k: int):
    ys = sympy.symbols(f"y1:{n + 1}") if n else ()
    xs = sympy.symbols(f"x1:{k + 1}")

    def conv(terms):
        m = sympy.eye(2)
        for t in terms:
            m = m * sympy.Matrix([[t, 1], [1, 0]])
        return m

    P, Q = conv(ys), conv(xs)
    return (P * Q * P.inv()).applyfunc(sympy.simplify).applyfunc(sympy.expand)
