"""The characteristic cubic surface of a four-plane and its analysis.

For a plane ``H = <w_0, .., w_3>`` the cubic is ``F(x) = Pf(sum x_i w_i)``.
Everything is exact: singular points come from lex Groebner bases over Q,
Milnor numbers from truncated quotients of the Jacobian ideal, and
splittings from exact polynomial division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial, gcd
from typing import Sequence

import random

import sympy

from . import linalg
from .exterior import DIM, TwoForm, vector_wedge, wedge22, wedge222
from .membership import NotMember, kernel, sym2_matrix
from .plane import Plane, QuadRelation
from .polynomial import Polynomial, exponents

CUBIC_EXPONENTS = exponents(4, 3)
QUADRIC_EXPONENTS = exponents(4, 2)
NON_ISOLATED = "NonIsolated"


class SurfaceError(ValueError):
    pass


class ZeroCubic(SurfaceError):
    """The cubic vanishes identically."""


class NotSingular(SurfaceError):
    pass


class NotAFactor(SurfaceError):
    pass


class NotDeterminantal(SurfaceError):
    """The plane is not contained in ``V+ ⊗ V-``."""


class PreconditionFailed(SurfaceError):
    pass


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.coords)
        lead = next((x for x in c if x), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coords", tuple(x / lead for x in c))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def to_json(self) -> list[str]:
        return [str(x) for x in self.coords]

    def __repr__(self):
        return "[" + ",".join(str(x) for x in self.coords) + "]"


@dataclass(frozen=True)
class CubicForm:
    """Homogeneous cubic in four variables; coefficients in ``CUBIC_EXPONENTS`` order."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(CUBIC_EXPONENTS):
            raise ValueError("a cubic form needs 20 coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_poly(cls, p: Polynomial) -> CubicForm:
        if p.nvars != 4 or any(sum(e) != 3 for e in p.terms):
            raise ValueError("not a cubic form in four variables")
        return cls(tuple(p.terms.get(e, Fraction(0)) for e in CUBIC_EXPONENTS))

    @classmethod
    def from_terms(cls, terms: dict) -> CubicForm:
        return cls.from_poly(Polynomial(4, terms))

    @classmethod
    def parse(cls, text: str, names: Sequence[str] = ("x0", "x1", "x2", "x3")) -> CubicForm:
        syms = sympy.symbols(list(names))
        expr = sympy.sympify(text, locals=dict(zip(names, syms)))
        return cls.from_poly(Polynomial.from_sympy(expr, syms))

    @property
    def poly(self) -> Polynomial:
        return Polynomial(4, dict(zip(CUBIC_EXPONENTS, self.coeffs)))

    def __bool__(self):
        return any(self.coeffs)

    def __call__(self, *x) -> Fraction:
        return self.poly(*x)

    def __mul__(self, s) -> CubicForm:
        return CubicForm(tuple(c * Fraction(s) for c in self.coeffs))

    __rmul__ = __mul__

    def ratio_to(self, other: CubicForm) -> Fraction | None:
        """``r`` with ``self == r * other``, or None if not proportional."""
        if not other:
            return None
        i = next(k for k, c in enumerate(other.coeffs) if c)
        r = self.coeffs[i] / other.coeffs[i]
        if all(a == r * b for a, b in zip(self.coeffs, other.coeffs)):
            return r
        return None

    def transform(self, g: Sequence[Sequence]) -> CubicForm:
        """``F(g x)``."""
        images = [Polynomial.linear(row) for row in g]
        return CubicForm.from_poly(self.poly.substitute(images))

    def pretty(self, names: Sequence[str] | None = None) -> str:
        return self.poly.pretty(names)

    def to_json(self) -> dict:
        return {
            "monomials": [[list(e), str(c)] for e, c in zip(CUBIC_EXPONENTS, self.coeffs) if c],
            "text": self.pretty(),
        }


@dataclass(frozen=True)
class SingularSet:
    points: tuple[ProjPoint, ...]
    possibly_incomplete: bool


@dataclass(frozen=True)
class SingularityReport:
    point: ProjPoint
    milnor: int | str
    ade: str | None
    corank: int

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "milnor": self.milnor, "ade": self.ade, "corank": self.corank}


@dataclass(frozen=True)
class SplitReport:
    linear_factor: tuple[Fraction, ...]
    residual_quadric: tuple[tuple[Fraction, ...], ...]
    quadric_rank: int
    vertex: ProjPoint | None = None
    vertex_on_plane: bool | None = None

    def to_json(self) -> dict:
        return {
            "linear_factor": [str(x) for x in self.linear_factor],
            "residual_quadric": [[str(x) for x in row] for row in self.residual_quadric],
            "quadric_rank": self.quadric_rank,
            "vertex": self.vertex.to_json() if self.vertex else None,
            "vertex_on_plane": self.vertex_on_plane,
        }


@dataclass(frozen=True)
class FactorSearch:
    linear_factor: tuple[Fraction, ...] | None
    split: SplitReport | None
    search_incomplete: bool


def char_cubic(h: Plane) -> CubicForm:
    """``Pf(x_0 w_0 + .. + x_3 w_3)`` with ``Pf(e01 + e23 + e45) = 1``."""
    if len(h) != 4:
        raise ValueError("the characteristic cubic needs a four-plane")
    coeffs = []
    for e in CUBIC_EXPONENTS:
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        denom = 1
        for k in e:
            denom *= factorial(k)
        # Pf(w) = w^3 / 6 and the multinomial count of x^e is 6 / prod(e!)
        coeffs.append(wedge222(h[idx[0]], h[idx[1]], h[idx[2]]) / denom)
    return CubicForm(tuple(coeffs))


def is_singular_at(f: CubicForm, p: Sequence) -> bool:
    p = list(p)
    return all(g(*p) == 0 for g in f.poly.gradient())


def _rationals(height: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for q in range(1, height + 1):
        for n in range(1, height + 1):
            if gcd(n, q) == 1:
                vals.add(Fraction(n, q))
                vals.add(Fraction(-n, q))
    return sorted(vals, key=lambda v: (max(abs(v.numerator), v.denominator), v))


def _rational_roots(expr, var) -> list[Fraction]:
    _, factors = sympy.factor_list(sympy.Poly(expr, var, domain="QQ"))
    roots = []
    for fac, _mult in factors:
        if fac.degree() == 1:
            a, b = fac.all_coeffs()
            r = -sympy.Rational(b) / sympy.Rational(a)
            roots.append(Fraction(int(r.p), int(r.q)))
    return sorted(set(roots))


def _solve_rational(eqs, syms, height: int, budget: list[int]) -> tuple[list[tuple], bool]:
    """Rational zeros of ``eqs``; free coordinates are enumerated up to ``height``."""
    eqs = [e for e in (sympy.expand(e) for e in eqs) if e != 0]
    if not syms:
        return ([()] if not eqs else []), False
    if any(e.is_number for e in eqs):
        return [], False
    if eqs:
        basis = list(sympy.groebner(eqs, *syms, order="lex", domain="QQ").exprs)
        if basis == [1]:
            return [], False
    else:
        basis = []
    last = syms[-1]
    uni = [g for g in basis if g.free_symbols <= {last}]
    incomplete = False
    if uni:
        values = _rational_roots(uni[0], last)
    else:
        values = _rationals(height)
        incomplete = True
    out: list[tuple] = []
    for v in values:
        if budget[0] <= 0:
            return out, True
        sub = [g.subs(last, sympy.Rational(v.numerator, v.denominator)) for g in basis]
        sols, inc = _solve_rational(sub, syms[:-1], height, budget)
        incomplete |= inc
        if not syms[:-1] and sols:
            budget[0] -= 1
        out.extend(s + (v,) for s in sols)
    return out, incomplete


def singular_points(f: CubicForm, height: int = 10, max_points: int = 2000) -> SingularSet:
    """Rational singular points of ``F = 0`` in P^3.

    Each affine chart ``x_0 = .. = x_{i-1} = 0, x_i = 1`` is solved by lex
    Groebner elimination and back-substitution.  A coordinate that the
    elimination leaves free is enumerated over rationals of height at most
    ``height``, and the result is flagged as possibly incomplete.
    """
    if not f:
        raise ZeroCubic("the cubic vanishes identically")
    grad = f.poly.gradient()
    points: list[ProjPoint] = []
    incomplete = False
    budget = [max_points]
    for i in range(4):
        free = list(range(i + 1, 4))
        syms = sympy.symbols([f"y{j}" for j in free])
        images = []
        for j in range(4):
            if j < i:
                images.append(Polynomial.constant(len(free) or 1, 0))
            elif j == i:
                images.append(Polynomial.constant(len(free) or 1, 1))
            else:
                images.append(Polynomial.variable(len(free), free.index(j)))
        if free:
            eqs = [g.substitute(images).to_sympy(syms) for g in grad]
        else:
            eqs = [sympy.Rational(g(*[int(j == i) for j in range(4)])) for g in grad]
        sols, inc = _solve_rational(eqs, list(syms), height, budget)
        incomplete |= inc
        for s in sols:
            coords = [Fraction(0)] * 4
            coords[i] = Fraction(1)
            for j, v in zip(free, s):
                coords[j] = v
            if is_singular_at(f, coords):
                points.append(ProjPoint(tuple(coords)))
    return SingularSet(tuple(points), incomplete)


def _local_equation(f: CubicForm, p: ProjPoint) -> Polynomial:
    """Dehomogenise at ``p`` and move ``p`` to the origin of three local coordinates."""
    k = next(i for i, x in enumerate(p) if x)
    others = [j for j in range(4) if j != k]
    images = []
    for j in range(4):
        if j == k:
            images.append(Polynomial.constant(3, p[k]))
        else:
            coeffs = [int(j == o) for o in others]
            images.append(Polynomial.linear(coeffs, p[j]))
    return f.poly.substitute(images)


def _quotient_dimension(gens: Sequence[Polynomial], k: int) -> int:
    """``dim Q[y] / (J + m^k)`` for ``J`` generated by ``gens`` (all vanishing at 0)."""
    n = gens[0].nvars
    monos = [e for d in range(k) for e in exponents(n, d)]
    index = {e: i for i, e in enumerate(monos)}
    echelon = linalg.EchelonBasis()
    for d in range(k - 1):
        for alpha in exponents(n, d):
            mono = Polynomial(n, {alpha: 1})
            for g in gens:
                row = (mono * g).truncate(k)
                echelon.add({index[e]: c for e, c in row.terms.items()})
    return len(monos) - len(echelon)


def milnor_number(local: Polynomial, cap: int = 10) -> int | str:
    """Milnor number at the origin, or ``NON_ISOLATED`` if no stabilisation by ``cap``."""
    gens = local.gradient()
    prev = None
    for k in range(1, cap + 2):
        d = _quotient_dimension(gens, k)
        if prev is not None and d == prev:
            return d
        prev = d
    return NON_ISOLATED


def ade_type(f: CubicForm, p: Sequence, cap: int = 10) -> SingularityReport:
    p = p if isinstance(p, ProjPoint) else ProjPoint(tuple(p))
    if not is_singular_at(f, p):
        raise NotSingular(f"{p} is not a singular point")
    local = _local_equation(f, p)
    quad = local.homogeneous_part(2)
    hessian = [[quad.diff(a).diff(b)(0, 0, 0) for b in range(3)] for a in range(3)]
    corank = 3 - linalg.rank(hessian)
    mu = milnor_number(local, cap)
    ade = f"A{mu}" if isinstance(mu, int) and corank <= 1 else None
    return SingularityReport(p, mu, ade, corank)


def _quadric_coeff_matrix(f: CubicForm) -> list[list[Fraction]]:
    """Rows: coefficients of ``dF/dx_i`` over the quadric monomials."""
    return [[g.terms.get(e, Fraction(0)) for e in QUADRIC_EXPONENTS] for g in f.poly.gradient()]


def cone_test(f: CubicForm) -> ProjPoint | None:
    """A vertex ``p`` with ``sum p_i dF/dx_i == 0``, if the surface is a cone."""
    if not f:
        raise ZeroCubic("the cubic vanishes identically")
    # columns indexed by p, rows by quadric monomials
    ker = linalg.nullspace(linalg.transpose(_quadric_coeff_matrix(f)), 4)
    return ProjPoint(tuple(ker[0])) if ker else None


def _symbols():
    return sympy.symbols("x0:4")


def quadric_matrix(q: Polynomial) -> tuple[tuple[Fraction, ...], ...]:
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for e, c in q.terms.items():
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        a, b = idx
        if a == b:
            m[a][a] += c
        else:
            m[a][b] += c / 2
            m[b][a] += c / 2
    return tuple(tuple(r) for r in m)


def split_off_plane(f: CubicForm, l: Sequence) -> SplitReport:
    """Divide ``F`` by the linear form ``l`` and describe the residual quadric."""
    l = tuple(Fraction(x) for x in l)
    if not any(l):
        raise ValueError("the linear form must be nonzero")
    syms = _symbols()
    lin = Polynomial.linear(l)
    quotient, remainder = sympy.div(f.poly.to_sympy(syms), lin.to_sympy(syms), *syms, domain="QQ")
    if remainder != 0:
        raise NotAFactor(f"{lin.pretty()} does not divide the cubic")
    qpoly = Polynomial.from_sympy(quotient, syms) if quotient != 0 else Polynomial(4)
    m = quadric_matrix(qpoly)
    r = linalg.rank(m)
    vertex = on_plane = None
    if r == 3:
        v = linalg.nullspace(m, 4)[0]
        vertex = ProjPoint(tuple(v))
        on_plane = sum(a * b for a, b in zip(l, vertex)) == 0
    return SplitReport(l, m, r, vertex, on_plane)


def _plane_through(points: Sequence[ProjPoint]) -> tuple[Fraction, ...] | None:
    rows = [list(p) for p in points]
    if linalg.rank(rows) != 3:
        return None
    return tuple(linalg.nullspace(rows, 4)[0])


def _vanishes_on_plane(f: CubicForm, l: Sequence[int], rng: random.Random, trials: int = 3) -> bool:
    k = next(i for i, c in enumerate(l) if c)
    for _ in range(trials):
        x = [Fraction(rng.randint(-50, 50)) for _ in range(4)]
        x[k] = Fraction(0)
        x[k] = -sum(Fraction(c) * v for c, v in zip(l, x)) / l[k]
        if f(*x) != 0:
            return False
    return True


def find_linear_factor(f: CubicForm, height: int = 5, seed: int = 0) -> FactorSearch:
    """Search for a rational linear factor of ``F``.

    Candidates: coordinate hyperplanes, planes through three rational
    singular points, then integer forms with entries in ``[-height, height]``.
    Failure proves nothing, so it is always flagged as incomplete.
    """
    if not f:
        raise ZeroCubic("the cubic vanishes identically")
    candidates: list[tuple[Fraction, ...]] = [tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4)]
    sing = singular_points(f, height=2, max_points=50).points
    for trio in combinations(sing[:12], 3):
        l = _plane_through(trio)
        if l is not None:
            candidates.append(l)
    for l in candidates:
        try:
            return FactorSearch(l, split_off_plane(f, l), False)
        except NotAFactor:
            pass
    rng = random.Random(seed)
    for l in product(range(-height, height + 1), repeat=4):
        lead = next((c for c in l if c), 0)
        if lead <= 0 or gcd(*l) != 1:
            continue
        if _vanishes_on_plane(f, l, rng):
            try:
                lf = tuple(Fraction(c) for c in l)
                return FactorSearch(lf, split_off_plane(f, lf), False)
            except NotAFactor:
                pass
    return FactorSearch(None, None, True)


def _change_of_basis(w0: TwoForm) -> list[list[Fraction]]:
    """Columns: a basis of the image of ``w0`` followed by completing unit vectors."""
    image = linalg.row_space_basis(linalg.transpose(w0.matrix()))
    cols = [list(v) for v in image]
    for i in range(DIM):
        e = [Fraction(int(k == i)) for k in range(DIM)]
        if linalg.rank(cols + [e]) > len(cols):
            cols.append(e)
    return linalg.transpose(cols)


def h_symmetric_test(h: Plane, index: int = 0) -> bool:
    """Whether the rank-four form ``w0 = h[index]`` is ``H``-symmetric.

    With ``V4`` the support of ``w0`` and a complement ``<f4, f5>``, every
    ``w`` in ``H`` reads ``theta + f4 ^ alpha + f5 ^ beta``.  The test is
    ``w0 ^ alpha ^ beta = 0`` on all of ``H``, checked in polarised form on
    pairs of basis elements.
    """
    w0 = h[index]
    if linalg.rank(w0.matrix()) != 4:
        raise PreconditionFailed(f"basis form {index} does not have rank 4")
    if any(wedge222(w0, w0, w) for w in h):
        raise PreconditionFailed("H is not contained in V4 ^ V6")
    p = _change_of_basis(w0)
    g = linalg.inverse(p)
    alphas, betas = [], []
    w0_new = w0.transform(g)
    for w in h:
        m = w.transform(g).matrix()
        if m[4][5]:
            raise PreconditionFailed("H is not contained in V4 ^ V6")
        alphas.append([-m[i][4] if i < 4 else Fraction(0) for i in range(DIM)])
        betas.append([-m[i][5] if i < 4 else Fraction(0) for i in range(DIM)])
    for j in range(len(h)):
        for k in range(j, len(h)):
            pair = vector_wedge(alphas[j], betas[k]) + vector_wedge(alphas[k], betas[j])
            if wedge22(w0_new, pair):
                return False
    return True


def _minor_quadric(a, b, c, d) -> list[list[Fraction]]:
    """Symmetric matrix of the quadratic form ``a(x) b(x) - c(x) d(x)``."""
    return [
        [(a[i] * b[j] + a[j] * b[i] - c[i] * d[j] - c[j] * d[i]) / 2 for j in range(4)]
        for i in range(4)
    ]


def minor_quadrics(m) -> list[list[list[Fraction]]]:
    out = []
    for r1, r2 in combinations(range(3), 2):
        for c1, c2 in combinations(range(3), 2):
            out.append(_minor_quadric(m[r1][c1], m[r2][c2], m[r1][c2], m[r2][c1]))
    return out


def schur_orthogonality(h: Plane, m=None) -> bool:
    """Every kernel relation of ``Sym^2 H`` pairs to zero with the 2x2 minors of ``M``."""
    from .families import linear_form_matrix

    if m is None:
        m = linear_form_matrix(h)
    ker = kernel(sym2_matrix(h))
    if not ker:
        raise NotMember("Sym^2 H -> ∧^4 V is injective; there is no relation")
    minors = minor_quadrics([[[Fraction(x) for x in e] for e in row] for row in m])
    for v in ker:
        q = QuadRelation.from_monomial_coeffs(v, 4).matrix
        for b in minors:
            if sum(q[i][j] * b[i][j] for i in range(4) for j in range(4)):
                return False
    return True
