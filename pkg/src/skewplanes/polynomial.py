"""Sparse multivariate polynomials with rational coefficients.

Terms are stored as ``{exponent tuple: Fraction}``.  Only what the surface
analysis needs is here: ring operations, differentiation, evaluation,
linear substitution and conversion to and from sympy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

import sympy


def exponents(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """Exponent vectors of a given total degree, in descending lex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return sorted(out, reverse=True)


@dataclass(frozen=True)
class Polynomial:
    nvars: int
    terms: Mapping[tuple[int, ...], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for e, c in dict(self.terms).items():
            e = tuple(int(x) for x in e)
            if len(e) != self.nvars:
                raise ValueError("exponent length does not match nvars")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "terms", {e: c for e, c in clean.items() if c})

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> Polynomial:
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence, constant=0) -> Polynomial:
        n = len(coeffs)
        terms = {tuple(int(k == i) for k in range(n)): Fraction(c) for i, c in enumerate(coeffs)}
        terms[(0,) * n] = Fraction(constant)
        return cls(n, terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Polynomial) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            s = Fraction(other)
            return Polynomial(self.nvars, {e: c * s for e, c in self.terms.items()})
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        out = Polynomial.constant(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, d: int) -> Polynomial:
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, d: int) -> Polynomial:
        """Drop every term of degree ``>= d``."""
        return Polynomial(self.nvars, {e: c for e, c in self.terms.items() if sum(e) < d})

    def diff(self, i: int) -> Polynomial:
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Polynomial(self.nvars, out)

    def gradient(self) -> list[Polynomial]:
        return [self.diff(i) for i in range(self.nvars)]

    def __call__(self, *x) -> Fraction:
        total = Fraction(0)
        x = [Fraction(v) for v in x]
        for e, c in self.terms.items():
            t = c
            for v, k in zip(x, e):
                if k:
                    t *= v**k
            total += t
        return total

    def substitute(self, images: Sequence[Polynomial]) -> Polynomial:
        """Replace variable ``i`` by ``images[i]`` (all in a common ring)."""
        n = images[0].nvars
        out = Polynomial(n)
        cache: dict[tuple[int, int], Polynomial] = {}
        for e, c in self.terms.items():
            t = Polynomial.constant(n, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = images[i] ** k
                    t = t * cache[(i, k)]
            out = out + t
        return out

    def to_sympy(self, symbols: Sequence[sympy.Symbol]) -> sympy.Expr:
        expr = sympy.Integer(0)
        for e, c in self.terms.items():
            mono = sympy.Rational(c.numerator, c.denominator)
            for s, k in zip(symbols, e):
                mono *= s**k
            expr += mono
        return expr

    @classmethod
    def from_sympy(cls, expr, symbols: Sequence[sympy.Symbol]) -> Polynomial:
        poly = sympy.Poly(sympy.expand(expr), *symbols, domain="QQ")
        terms = {}
        for e, c in poly.terms():
            terms[tuple(e)] = Fraction(int(c.numerator), int(c.denominator))
        return cls(len(symbols), terms)

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i}" for i in range(self.nvars)]
        parts = []
        for e in sorted(self.terms, key=lambda e: (-sum(e), tuple(-k for k in e))):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"
