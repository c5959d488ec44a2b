"""Membership of four-planes in the variety of planes with one non-degenerate quadratic relation.

A four-plane ``H`` qualifies when ``Sym^2 H -> ∧^4 V`` has rank nine and its
one-dimensional kernel is spanned by a quadratic form of full rank.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from . import linalg
from .exterior import PAIRS, TwoForm, basis_two_form, dualize, rank2, rank4_of_fourform, wedge22, wedge222
from .plane import Plane, QuadRelation, monomials

MEMBER = "Member"
KERNEL_EMPTY = "KernelEmpty"
KERNEL_TOO_BIG = "KernelTooBig"
KERNEL_DEGENERATE = "KernelDegenerate"


class NotMember(ValueError):
    """An operation that needs a member plane was given something else."""


@dataclass(frozen=True)
class MembershipReport:
    verdict: str
    sym2_rank: int
    kernel_dim: int
    relation: QuadRelation | None = None
    qrank: int | None = None
    rank2_witness: TwoForm | None = None

    @property
    def is_member(self) -> bool:
        return self.verdict == MEMBER

    def to_json(self) -> dict:
        out = {"verdict": self.verdict, "sym2_rank": self.sym2_rank, "kernel_dim": self.kernel_dim}
        if self.relation is not None:
            out["relation"] = [[i, j, str(c)] for i, j, c in self.relation.terms()]
            out["qrank"] = self.qrank
        if self.rank2_witness is not None:
            out["rank2_witness"] = [[i, j, str(c)] for i, j, c in self.rank2_witness.terms()]
        return out


def sym2_matrix(h: Plane) -> linalg.Matrix:
    """Rows ``w_i ^ w_j`` for ``i <= j`` in lexicographic order."""
    return [list(wedge22(h[i], h[j]).coeffs) for i, j in monomials(len(h))]


def kernel(m) -> linalg.Matrix:
    """Exact left kernel ``{v : v M = 0}`` of a matrix given by rows."""
    return linalg.left_nullspace(m)


def qrank(q: QuadRelation) -> int:
    return q.rank()


def membership(h: Plane) -> MembershipReport:
    if len(h) != 4:
        raise ValueError("membership is defined for four-planes")
    m = sym2_matrix(h)
    ker = kernel(m)
    srank = len(m) - len(ker)
    witness = _rank2_witness(h, ker)
    if not ker:
        return MembershipReport(KERNEL_EMPTY, srank, 0, rank2_witness=witness)
    if len(ker) > 1:
        return MembershipReport(KERNEL_TOO_BIG, srank, len(ker), rank2_witness=witness)
    q = QuadRelation.from_monomial_coeffs(ker[0], 4).normalized()
    r = q.rank()
    verdict = MEMBER if r == 4 else KERNEL_DEGENERATE
    return MembershipReport(verdict, srank, 1, q, r, witness)


def _rank2_witness(h: Plane, ker) -> TwoForm | None:
    for w in h:
        if rank2(w) <= 2:
            return w
    # a kernel element of q-rank one is l^2 with l ^ l = 0
    for v in ker:
        q = QuadRelation.from_monomial_coeffs(v, len(h))
        if q.rank() == 1:
            i = next(i for i in range(len(h)) if q.matrix[i][i] != 0)
            return h.combination(q.matrix[i])
    return None


@dataclass(frozen=True)
class ThreePlaneChecks:
    sym2_injective: bool
    has_rank6_in_LL: bool


def three_plane_checks(plane: Plane, seed: int = 0, trials: int = 20) -> ThreePlaneChecks:
    """Conditions on a three-plane ``L`` needed before extending it.

    ``Sym^2 L -> ∧^4 V`` must be injective and a general element of ``L ^ L``
    must have rank six as a dual two-form.  The second condition is tried on
    random combinations first, then decided exactly: the Pfaffian of a
    general combination vanishes identically iff every triple wedge of the
    dual products vanishes.
    """
    if len(plane) != 3:
        raise ValueError("expected a three-plane")
    products = [wedge22(plane[i], plane[j]) for i, j in monomials(3)]
    injective = linalg.rank([p.coeffs for p in products]) == 6
    rng = random.Random(seed)
    found = False
    for _ in range(trials):
        cs = [rng.randint(-5, 5) for _ in products]
        acc = products[0] * 0
        for c, p in zip(cs, products):
            acc = acc + p * c
        if rank4_of_fourform(acc) == 6:
            found = True
            break
    if not found:
        duals = [dualize(p) for p in products]
        found = any(
            wedge222(duals[a], duals[b], duals[c]) != 0
            for a, b, c in combinations_with_replacement(range(len(duals)), 3)
        )
    return ThreePlaneChecks(injective, found)


def _tangent_columns(h: Plane, q: QuadRelation) -> list[list[Fraction]]:
    # only eta_m nonzero: sum_ij Q_ij (eta_i w_j + w_i eta_j) = 2 eta_m ^ (sum_j Q_mj w_j)
    cols = []
    for m in range(4):
        partner = h.combination(q.matrix[m])
        for a in range(15):
            cols.append([2 * x for x in wedge22(basis_two_form(*PAIRS[a]), partner).coeffs])
    return cols


def _rank_mod_image(vectors, image, column_order) -> int:
    """Rank of ``vectors`` in the quotient by the span of ``image``.

    The quotient is realised on the complement of the image's pivot columns,
    where pivots are taken in the given column order.
    """
    perm = lambda row: [row[c] for c in column_order]  # noqa: E731
    red, pivots = linalg.rref([perm(r) for r in image])
    keep = [c for c in range(len(column_order)) if c not in pivots]
    projected = []
    for v in vectors:
        v = perm(v)
        for row, pc in zip(red, pivots):
            f = v[pc]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        projected.append([v[c] for c in keep])
    return linalg.rank(projected)


def tangent_dimension(h: Plane, second_complement_check: bool = True) -> int:
    """Dimension of the tangent space at ``H`` of the rank-at-most-nine locus.

    A tangent vector of the Grassmannian is ``(eta_0..eta_3)`` modulo ``H``
    (44 dimensions); it is tangent to the locus when the polarised relation
    ``sum_ij Q_ij (eta_i ^ w_j + w_i ^ eta_j)`` lies in the image of
    ``Sym^2 H``.
    """
    report = membership(h)
    if not report.is_member:
        raise NotMember(f"plane is not a member: {report.verdict}")
    cols = _tangent_columns(h, report.relation)
    image = sym2_matrix(h)
    r = _rank_mod_image(cols, image, list(range(15)))
    if second_complement_check:
        r2 = _rank_mod_image(cols, image, list(reversed(range(15))))
        if r2 != r:
            raise AssertionError("tangent rank depends on the chosen complement")
    return 44 - r
