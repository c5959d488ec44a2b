"""Constructors for the explicit families of planes, and a generic sampler."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .exterior import (
    DIM,
    FourForm,
    TwoForm,
    pf_star,
    rank2,
    rank4_of_fourform,
    unit,
    vector_wedge,
    wedge22,
)
from .membership import membership, three_plane_checks
from .plane import IndependenceError, Plane, monomials


class FamilyError(ValueError):
    """Base class for constructor failures."""


class ZeroTriple(FamilyError):
    pass


class InvalidThreePlane(FamilyError):
    pass


class RankDeficientOmega(FamilyError):
    pass


class QRankDeficient(FamilyError):
    pass


class TransversalityFailure(FamilyError):
    pass


class DegenerateParameters(FamilyError):
    pass


class VeroneseDegenerate(FamilyError):
    pass


class RetriesExhausted(FamilyError):
    pass


class NotConstantRank4(FamilyError):
    pass


@dataclass(frozen=True)
class SamplerConfig:
    seed: int = 1
    coeff_bound: int = 3
    max_retries: int = 50

    def __post_init__(self):
        if self.coeff_bound < 1 or self.max_retries < 1:
            raise ValueError("coeff_bound and max_retries must be positive")


def _one(terms) -> TwoForm:
    return TwoForm.from_terms(terms, one_based=True)


def _zero(terms) -> TwoForm:
    return TwoForm.from_terms(terms)


def semisimple_three_plane(a, b, c) -> Plane:
    """The three-plane spanned by the Cartan-subspace forms with weights ``(a, b, c)``."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == b == c == 0:
        raise ZeroTriple("(a, b, c) must not vanish")
    w1 = _one([(1, 2, a), (3, 6, b), (5, 4, c)])
    w2 = _one([(3, 4, a), (5, 2, b), (1, 6, c)])
    w3 = _one([(5, 6, a), (1, 4, b), (3, 2, c)])
    return Plane((w1, w2, w3))


def sym2_image(plane: Plane, omega: Sequence[Sequence]) -> FourForm:
    """``sum_ij Omega_ij w_i ^ w_j`` for a symmetric coefficient matrix."""
    out = FourForm.zero()
    k = len(plane)
    for i in range(k):
        for j in range(k):
            if omega[i][j]:
                out = out + wedge22(plane[i], plane[j]) * omega[i][j]
    return out


def transversal(w: TwoForm, plane: Plane) -> bool:
    """Whether ``(w ^ L) ∩ (L ^ L) = 0`` with ``w ^ L`` of full dimension."""
    k = len(plane)
    rows = [wedge22(w, x).coeffs for x in plane]
    rows += [wedge22(plane[i], plane[j]).coeffs for i, j in monomials(k)]
    return linalg.rank(rows) == k + k * (k + 1) // 2


def extend_by_pfstar(plane: Plane, omega: Sequence[Sequence]) -> Plane:
    """Complete a three-plane ``L`` by ``w = pf_star(Omega)`` for ``Omega`` in ``Sym^2 L``."""
    if len(plane) != 3:
        raise InvalidThreePlane("expected a three-plane")
    omega = [[Fraction(x) for x in row] for row in omega]
    if any(omega[i][j] != omega[j][i] for i in range(3) for j in range(3)):
        raise ValueError("Omega must be symmetric")
    if linalg.rank(omega) < 3:
        raise QRankDeficient(f"Omega has q-rank {linalg.rank(omega)}")
    if not three_plane_checks(plane).sym2_injective:
        raise InvalidThreePlane("Sym^2 L -> ∧^4 V is not injective")
    image = sym2_image(plane, omega)
    if rank4_of_fourform(image) < 6:
        raise RankDeficientOmega(f"Omega has dual rank {rank4_of_fourform(image)}")
    w = pf_star(image)
    if plane.contains(w) or not transversal(w, plane):
        raise TransversalityFailure("(w ^ L) ∩ (L ^ L) is nonzero")
    return Plane((w, *plane.basis))


def _random_form(rng: random.Random, bound: int) -> TwoForm:
    return TwoForm(tuple(rng.randint(-bound, bound) for _ in range(15)))


def sample_V(cfg: SamplerConfig = SamplerConfig()) -> Plane:
    """Draw random integer ``(L, Omega)`` until the extension is a member plane."""
    rng = random.Random(cfg.seed)
    for _ in range(cfg.max_retries):
        forms = [_random_form(rng, cfg.coeff_bound) for _ in range(3)]
        omega = [[0] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(i, 3):
                omega[i][j] = omega[j][i] = rng.randint(-cfg.coeff_bound, cfg.coeff_bound)
        try:
            h = extend_by_pfstar(Plane(tuple(forms)), omega)
        except (FamilyError, IndependenceError):
            continue
        if membership(h).is_member:
            return h
    raise RetriesExhausted(f"no member plane after {cfg.max_retries} draws (seed {cfg.seed})")


# V+ = <e1, e3, e5>, V- = <e2, e4, e6> in one-based labels
V_PLUS = (0, 2, 4)
V_MINUS = (1, 3, 5)


def determinantal_form(a: Sequence[Sequence]) -> TwoForm:
    """``sum_rs A_rs e+_r ^ e-_s`` for a 3x3 matrix ``A``."""
    return _zero([(V_PLUS[r], V_MINUS[s], a[r][s]) for r in range(3) for s in range(3) if a[r][s]])


def coefficient_matrices(m: Sequence[Sequence[Sequence]]) -> list[list[list[Fraction]]]:
    """Split a 3x3 matrix of linear forms ``m[r][s] = (c0..c3)`` into four 3x3 matrices."""
    return [[[Fraction(m[r][s][k]) for s in range(3)] for r in range(3)] for k in range(4)]


def determinantal_plane(m: Sequence[Sequence[Sequence]]) -> Plane:
    """Four-plane in ``V+ ⊗ V-`` read off a 3x3 matrix of linear forms in four variables."""
    mats = coefficient_matrices(m)
    return Plane(tuple(determinantal_form(a) for a in mats))


def linear_form_matrix(plane: Plane) -> list[list[list[Fraction]]]:
    """Inverse of :func:`determinantal_plane`; raises if the plane leaves ``V+ ⊗ V-``."""
    from .surface import NotDeterminantal

    out = [[[Fraction(0)] * len(plane) for _ in range(3)] for _ in range(3)]
    for k, w in enumerate(plane):
        for i, j, c in w.terms():
            if i in V_PLUS and j in V_MINUS:
                out[V_PLUS.index(i)][V_MINUS.index(j)][k] += c
            elif j in V_PLUS and i in V_MINUS:
                out[V_PLUS.index(j)][V_MINUS.index(i)][k] -= c
            else:
                raise NotDeterminantal(f"term e{i}{j} is not in V+ ⊗ V-")
    return out


TRITANGENT_L = (
    _zero([(0, 2, 1), (1, 3, 1)]),
    _zero([(0, 4, 1), (1, 5, 1)]),
    _zero([(0, 1, 1), (2, 5, 1), (3, 4, 1)]),
)


def tritangent_form(x, y, z, a, b, c) -> TwoForm:
    x, y, z, a, b, c = map(Fraction, (x, y, z, a, b, c))
    return _zero(
        [
            (0, 1, x * y - z * z),
            (2, 3, y * c + a * a),
            (4, 5, x * c + b * b),
            (0, 2, y * b + z * a),
            (1, 3, -(y * b + z * a)),
            (0, 4, z * b + x * a),
            (1, 5, -(z * b + x * a)),
            (3, 4, z * c + a * b),
            (2, 5, -(z * c + a * b)),
        ]
    )


def tritangent_omega(x, y, z, a, b, c) -> FourForm:
    """The element of ``L ^ L`` whose dual square gives the tritangent extension.

    ``f_ij`` is the four-form dual to ``e_ij`` under the volume pairing.
    """
    from .exterior import undualize

    x, y, z, a, b, c = map(Fraction, (x, y, z, a, b, c))
    dual = _zero(
        [
            (2, 3, x),
            (4, 5, y),
            (2, 5, z + c),
            (3, 4, -z + c),
            (0, 4, a),
            (1, 5, -a),
            (0, 2, b),
            (1, 3, -b),
            (0, 1, c),
        ]
    )
    return undualize(dual)


def tritangent_extension(x, y, z, a, b, c) -> Plane:
    """``<w, L>`` with ``L`` a triple tritangent three-plane; basis order ``(w, w0, w1, w2)``."""
    w = tritangent_form(x, y, z, a, b, c)
    plane = Plane(TRITANGENT_L)
    if not w or plane.contains(w) or not transversal(w, plane):
        raise DegenerateParameters("w ^ L meets L ^ L")
    return Plane((w, *TRITANGENT_L))


def cayley_plane(A=0, B=0, C=0, D=0, E=0) -> Plane:
    A, B, C, D, E = map(Fraction, (A, B, C, D, E))
    w0 = _zero([(1, 5, 1), (3, 4, 1), (0, 3, A), (0, 4, 2 * B), (1, 2, -B), (1, 3, C), (1, 4, D)])
    w1 = _zero([(0, 5, 1), (2, 3, -1), (0, 2, B), (0, 3, E), (0, 4, -D), (1, 2, 2 * D), (1, 3, E)])
    w2 = _zero([(0, 2, 1), (1, 3, 1)])
    w3 = _zero([(0, 3, 1), (1, 4, 1)])
    return Plane((w0, w1, w2, w3))


TYPE1_L = (
    _one([(1, 4, 1), (2, 3, 1)]),
    _one([(1, 5, 1), (2, 4, 1)]),
    _one([(2, 5, 1), (3, 4, 1)]),
)
TYPE2_L = (
    _zero([(0, 4, 1), (1, 3, -1)]),
    _zero([(0, 5, 1), (2, 3, -1)]),
    _zero([(1, 5, 1), (2, 4, -1)]),
)
TYPE3_L = (
    _zero([(0, 2, 1), (1, 3, 1)]),
    _zero([(0, 3, 1), (1, 4, 1)]),
    _zero([(0, 4, 1), (1, 5, 1)]),
)
TYPE4_L = (
    _zero([(0, 3, 1), (1, 2, 1)]),
    _zero([(0, 4, 1), (2, 3, 1)]),
    _zero([(0, 5, 1), (1, 3, 1)]),
)
TYPE_REPRESENTATIVES = {1: TYPE1_L, 2: TYPE2_L, 3: TYPE3_L, 4: TYPE4_L}


def type2_plane() -> Plane:
    """Unique extension of the type-2 three-plane; basis ``(w_d, w_a, w_b, w_c)``."""
    w = _zero([(0, 3, 1), (1, 4, 1), (2, 5, 1)])
    return Plane((w, *TYPE2_L))


def type3_plane(u0: Sequence = unit(5), u1: Sequence = unit(2)) -> Plane:
    """``<e0^u0 + e1^u1 + u0^u1, L>`` for the type-3 three-plane ``L``."""
    u0 = [Fraction(x) for x in u0]
    u1 = [Fraction(x) for x in u1]
    if len(u0) != DIM or len(u1) != DIM:
        raise ValueError("u0 and u1 need six coordinates")
    if u0[0] or u0[1] or u1[0] or u1[1]:
        raise VeroneseDegenerate("u0, u1 must not involve e0, e1")
    if linalg.rank([u0, u1]) < 2:
        raise VeroneseDegenerate("u0, u1 are dependent")
    w = vector_wedge(unit(0), u0) + vector_wedge(unit(1), u1) + vector_wedge(u0, u1)
    plane = Plane(TYPE3_L)
    if not transversal(w, plane):
        raise VeroneseDegenerate("<u0, u1> lies on the Veronese surface")
    return Plane((w, *TYPE3_L))


def _kernel_vectors(w: TwoForm) -> linalg.Matrix:
    return linalg.nullspace(w.matrix(), DIM)


def _images_intersection(forms: Sequence[TwoForm]) -> linalg.Matrix:
    # the image of a skew matrix is the annihilator of its kernel
    kers = [v for w in forms for v in _kernel_vectors(w)]
    if not kers:
        return [list(unit(i)) for i in range(DIM)]
    return linalg.nullspace(kers, DIM)


def contained_in_wedge_with(forms: Sequence[TwoForm], u: linalg.Matrix) -> bool:
    """Whether every form lies in ``U ^ V`` for the subspace ``U`` spanned by ``u``."""
    quotient = linalg.nullspace(u, DIM)  # rows annihilate U
    for w in forms:
        m = linalg.matmul(linalg.matmul(quotient, w.matrix()), linalg.transpose(quotient))
        if any(x for row in m for x in row):
            return False
    return True


def rank4_plane_type(plane: Plane, seed: int = 0, samples: int = 50) -> int:
    """Which of the four constant-rank-four types a three-plane belongs to."""
    if len(plane) != 3:
        raise ValueError("expected a three-plane")
    rng = random.Random(seed)
    points = list(plane) + [plane.combination([rng.randint(-9, 9) for _ in range(3)]) for _ in range(samples)]
    for w in points:
        if w and rank2(w) != 4:
            raise NotConstantRank4(f"{w} has rank {rank2(w)}")
    stacked = [row for w in plane for row in w.matrix()]
    if linalg.nullspace(stacked, DIM):
        return 1
    if three_plane_checks(plane, seed=seed).has_rank6_in_LL:
        return 2
    u = _images_intersection(list(plane) + points[3:8])
    if len(u) == 2 and contained_in_wedge_with(plane, u):
        return 3
    return 4
