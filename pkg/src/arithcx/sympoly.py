"""Sparse multivariate polynomials with integer coefficients.

A polynomial is a mapping from exponent tuples to nonzero ints over a fixed,
ordered tuple of variable names.  Monomials are rendered and enumerated in
graded lexicographic order (highest first), which keeps text output stable.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Mapping, Sequence


class ContextError(ValueError):
    pass


def _grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class MPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.vars = tuple(variables)
        n = len(self.vars)
        clean = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n:
                raise ContextError(f"exponent {exp} has arity {len(exp)}, expected {n}")
            if coeff:
                clean[exp] = clean.get(exp, 0) + coeff
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # constructors

    @classmethod
    def const(cls, variables, value: int) -> "MPoly":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, variables, name: str) -> "MPoly":
        variables = tuple(variables)
        exp = tuple(int(v == name) for v in variables)
        if sum(exp) != 1:
            raise ContextError(f"unknown variable {name!r}")
        return cls(variables, {exp: 1})

    @classmethod
    def gens(cls, variables) -> list["MPoly"]:
        return [cls.var(variables, v) for v in variables]

    # arithmetic

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ContextError(f"variable contexts differ: {self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return MPoly.const(self.vars, other)
        raise TypeError(f"cannot combine MPoly with {type(other).__name__}")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MPoly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = MPoly.const(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point: Sequence[int]) -> int:
        return evaluate_poly(self, point)

    def substitute(self, values: Mapping[str, "MPoly | int"], variables: Sequence[str]) -> "MPoly":
        """Replace variables by polynomials over ``variables`` (names not in ``values`` carry over)."""
        variables = tuple(variables)
        images = []
        for name in self.vars:
            if name in values:
                v = values[name]
                images.append(v if isinstance(v, MPoly) else MPoly.const(variables, v))
            else:
                images.append(MPoly.var(variables, name))
        total = MPoly(variables)
        for exp, coeff in self.terms.items():
            t = MPoly.const(variables, coeff)
            for img, k in zip(images, exp):
                if k:
                    t = t * img**k
            total = total + t
        return total

    def embed(self, variables: Sequence[str]) -> "MPoly":
        """Same polynomial viewed over a larger variable context."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            if v not in variables:
                raise ContextError(f"{v!r} missing from target context")
            idx.append(variables.index(v))
        out = {}
        for exp, c in self.terms.items():
            new = [0] * len(variables)
            for i, k in zip(idx, exp):
                new[i] = k
            out[tuple(new)] = c
        return MPoly(variables, out)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"MPoly({render(self)!r}, vars={self.vars})"


def poly_arith(p: MPoly, q: MPoly, op: str) -> MPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def evaluate_poly(p: MPoly, point: Sequence[int]) -> int:
    if len(point) != len(p.vars):
        raise ContextError(f"point has arity {len(point)}, polynomial has {len(p.vars)} variables")
    total = 0
    for exp, c in p.terms.items():
        t = c
        for x, k in zip(point, exp):
            if k:
                t *= x**k
        total += t
    return total


def render(p: MPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for exp, c in p.sorted_terms():
        factors = []
        for name, k in zip(p.vars, exp):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*^()]))")


def parse_poly(text: str, variables: Sequence[str]) -> MPoly:
    """Parse an integer polynomial such as ``"A*(x1*x2 - 2*y1*x1) - B*x1"``.

    Supports ``+ - *``, ``^`` or ``**`` with integer exponents, parentheses and
    implicit multiplication between adjacent factors.
    """
    variables = tuple(variables)
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad character at {pos} in {text!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    i = 0

    def peek():
        return tokens[i] if i < len(tokens) else None

    def take():
        nonlocal i
        tok = peek()
        i += 1
        return tok

    def expr():
        sign = 1
        if peek() in ("+", "-"):
            sign = -1 if take() == "-" else 1
        acc = term() * sign
        while peek() in ("+", "-"):
            op = take()
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() is not None and peek() not in ("+", "-", ")"):
            if peek() == "*":
                take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() in ("^", "**"):
            take()
            exp = take()
            if exp is None or not exp.isdigit():
                raise ValueError("exponents must be nonnegative integers")
            base = base ** int(exp)
        return base

    def atom():
        tok = take()
        if tok is None:
            raise ValueError("unexpected end of polynomial")
        if tok == "(":
            val = expr()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return val
        if tok == "-":
            return -atom()
        if tok.isdigit():
            return MPoly.const(variables, int(tok))
        if tok in variables:
            return MPoly.var(variables, tok)
        raise ValueError(f"unexpected token {tok!r}; variables are {', '.join(variables)}")

    result = expr()
    if i != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def monomials(nvars: int, max_deg: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree <= max_deg, in increasing graded-lex order."""
    out = []
    for deg in range(max_deg + 1):
        for combo in combinations_with_replacement(range(nvars), deg):
            exp = [0] * nvars
            for j in combo:
                exp[j] += 1
            out.append(tuple(exp))
    return sorted(set(out), key=_grlex_key)


def cf_variables(n: int, k: int) -> tuple[str, ...]:
    return tuple(f"y{i}" for i in range(1, n + 1)) + tuple(f"x{i}" for i in range(1, k + 1))


@dataclass(frozen=True)
class MPolyMat2:
    e11: MPoly
    e12: MPoly
    e21: MPoly
    e22: MPoly

    def __post_init__(self):
        ctx = {self.e11.vars, self.e12.vars, self.e21.vars, self.e22.vars}
        if len(ctx) != 1:
            raise ContextError("matrix entries must share one variable context")

    @property
    def vars(self):
        return self.e11.vars

    def __matmul__(self, o: "MPolyMat2") -> "MPolyMat2":
        return MPolyMat2(
            self.e11 * o.e11 + self.e12 * o.e21,
            self.e11 * o.e12 + self.e12 * o.e22,
            self.e21 * o.e11 + self.e22 * o.e21,
            self.e21 * o.e12 + self.e22 * o.e22,
        )

    @property
    def det(self) -> MPoly:
        return self.e11 * self.e22 - self.e12 * self.e21

    def evaluate(self, point) -> tuple[int, int, int, int]:
        return tuple(evaluate_poly(e, point) for e in (self.e11, self.e12, self.e21, self.e22))

    @classmethod
    def identity(cls, variables) -> "MPolyMat2":
        one, zero = MPoly.const(variables, 1), MPoly(variables)
        return cls(one, zero, zero, one)


def _convergent(variables, names) -> MPolyMat2:
    one, zero = MPoly.const(variables, 1), MPoly(variables)
    m = MPolyMat2.identity(variables)
    for name in names:
        m = m @ MPolyMat2(MPoly.var(variables, name), one, one, zero)
    return m


def symbolic_equivalence_matrix(n: int, k: int) -> MPolyMat2:
    """``P Q P^-1`` with symbolic partial quotients y1..yN (preperiod) and x1..xk (period)."""
    if n < 0 or k < 1:
        raise ValueError("need N >= 0 and k >= 1")
    variables = cf_variables(n, k)
    p = _convergent(variables, variables[:n])
    q = _convergent(variables, variables[n:])
    sign = -1 if n % 2 else 1
    # det P = (-1)^N, so P^-1 = (-1)^N adj(P); no division needed
    p_inv = MPolyMat2(sign * p.e22, -sign * p.e12, -sign * p.e21, sign * p.e11)
    return p @ q @ p_inv
