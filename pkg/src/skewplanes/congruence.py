"""Linear line congruences attached to a four-plane of skew matrices.

A point ``u`` of the field space and flux values ``V`` give the line spanned
by the rows ``(u, 1, 0)`` and ``(V, 0, 1)``; its Pluecker coordinates form a
skew matrix ``Y``.  The plane ``<A^1, .., A^4>`` cuts out the congruence by
``tr(Y A^i) = 0``, which is affine-linear in ``V`` for fixed ``u``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .exterior import TwoForm, vector_wedge, wedge22
from .membership import NotMember, membership
from .plane import Plane

# tr(Y A) = TRACE_PAIRING * sum_{a<b} Y_ab A_ab for skew Y, A
TRACE_PAIRING = -2


@dataclass(frozen=True)
class CongruencePoint:
    u: tuple[Fraction, ...]
    V: tuple[Fraction, ...]

    def __post_init__(self):
        u = tuple(Fraction(x) for x in self.u)
        v = tuple(Fraction(x) for x in self.V)
        if len(u) != 4 or len(v) != 4:
            raise ValueError("u and V need four coordinates each")
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "V", v)


def plucker(u: Sequence, v: Sequence) -> TwoForm:
    """Pluecker two-form of the line through ``(u, 1, 0)`` and ``(V, 0, 1)``."""
    row1 = [*(Fraction(x) for x in u), Fraction(1), Fraction(0)]
    row2 = [*(Fraction(x) for x in v), Fraction(0), Fraction(1)]
    return vector_wedge(row1, row2)


def plucker_matrix(u: Sequence, v: Sequence) -> linalg.Matrix:
    return plucker(u, v).matrix()


def trace_pairing(y: TwoForm, a: TwoForm) -> Fraction:
    """``tr(Y A)`` of the associated skew matrices."""
    ym, am = y.matrix(), a.matrix()
    return sum((ym[i][k] * am[k][i] for i in range(6) for k in range(6)), Fraction(0))


def form_pairing(y: TwoForm, a: TwoForm) -> Fraction:
    return sum((p * q for p, q in zip(y.coeffs, a.coeffs)), Fraction(0))


def flux_residuals(h: Plane, p: CongruencePoint) -> tuple[Fraction, ...]:
    y = plucker(p.u, p.V)
    return tuple(TRACE_PAIRING * form_pairing(y, a) for a in h)


def flux_system(h: Plane, u: Sequence) -> tuple[linalg.Matrix, list[Fraction]]:
    """``(C, r)`` with residuals ``C V + r`` at the point ``u``."""
    zero = CongruencePoint(tuple(u), (0, 0, 0, 0))
    base = list(flux_residuals(h, zero))
    cols = []
    for k in range(4):
        e = [int(i == k) for i in range(4)]
        res = flux_residuals(h, CongruencePoint(tuple(u), tuple(e)))
        cols.append([a - b for a, b in zip(res, base)])
    return linalg.transpose(cols), base


def solve_fluxes(h: Plane, u: Sequence) -> tuple[Fraction, ...] | None:
    """The flux values at ``u``, or None when the linear system is singular."""
    c, r = flux_system(h, u)
    sol = linalg.solve(c, [-x for x in r])
    return tuple(sol) if sol is not None else None


def relation5_check(h: Plane) -> bool:
    """Whether the kernel relation ``phi`` satisfies ``sum phi_ij A^i ^ A^j = 0``."""
    report = membership(h)
    if not report.is_member:
        raise NotMember(f"plane is not a member: {report.verdict}")
    phi = report.relation.matrix
    total = None
    for i in range(4):
        for j in range(4):
            if phi[i][j]:
                term = wedge22(h[i], h[j]) * phi[i][j]
                total = term if total is None else total + term
    return total is None or not total
