"""Planes of two-forms and quadratic relations between their basis elements."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from . import linalg
from .exterior import FourForm, TwoForm, wedge22


class IndependenceError(ValueError):
    """The proposed basis of a plane is linearly dependent."""


@dataclass(frozen=True)
class Plane:
    basis: tuple[TwoForm, ...]
    convention: str = "zero"

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        if linalg.rank([w.coeffs for w in self.basis]) != len(self.basis):
            raise IndependenceError(f"basis of {len(self.basis)} forms is linearly dependent")

    def __len__(self):
        return len(self.basis)

    def __getitem__(self, i) -> TwoForm:
        return self.basis[i]

    def __iter__(self):
        return iter(self.basis)

    def combination(self, coeffs: Sequence) -> TwoForm:
        out = TwoForm.zero()
        for c, w in zip(coeffs, self.basis):
            if c:
                out = out + w * c
        return out

    def change_basis(self, g: Sequence[Sequence]) -> Plane:
        """New basis ``w'_j = sum_i g[i][j] w_i``."""
        k = len(self.basis)
        return Plane(tuple(self.combination([g[i][j] for i in range(k)]) for j in range(k)), self.convention)

    def transform(self, p: Sequence[Sequence]) -> Plane:
        """Apply a linear map of the underlying six-dimensional space."""
        return Plane(tuple(w.transform(p) for w in self.basis), self.convention)

    def contains(self, w: TwoForm) -> bool:
        return linalg.in_row_space(w.coeffs, [b.coeffs for b in self.basis])


def monomials(k: int) -> list[tuple[int, int]]:
    """Index pairs ``i <= j`` of degree-two monomials, lexicographic."""
    return list(combinations_with_replacement(range(k), 2))


@dataclass(frozen=True)
class QuadRelation:
    """Element ``q = sum_ij Q[i][j] w_i w_j`` of Sym^2 of a plane."""

    matrix: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(Fraction(x) for x in row) for row in self.matrix)
        if any(m[i][j] != m[j][i] for i in range(len(m)) for j in range(len(m))):
            raise ValueError("relation matrix must be symmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_monomial_coeffs(cls, coeffs: Sequence, k: int) -> QuadRelation:
        """From coefficients of ``w_i w_j`` (i <= j) in :func:`monomials` order."""
        m = [[Fraction(0)] * k for _ in range(k)]
        for (i, j), c in zip(monomials(k), coeffs):
            c = Fraction(c)
            if i == j:
                m[i][i] = c
            else:
                m[i][j] = m[j][i] = c / 2
        return cls(tuple(tuple(r) for r in m))

    @classmethod
    def from_terms(cls, terms, k: int) -> QuadRelation:
        idx = {m: n for n, m in enumerate(monomials(k))}
        coeffs = [Fraction(0)] * len(idx)
        for i, j, c in terms:
            coeffs[idx[(min(i, j), max(i, j))]] += Fraction(c)
        return cls.from_monomial_coeffs(coeffs, k)

    @classmethod
    def from_matrix_entries(cls, terms, k: int) -> QuadRelation:
        """From ``(i, j, c)`` meaning ``Q_ij = Q_ji = c``, so a cross term counts twice."""
        m = [[Fraction(0)] * k for _ in range(k)]
        for i, j, c in terms:
            m[i][j] += Fraction(c)
            if i != j:
                m[j][i] += Fraction(c)
        return cls(tuple(tuple(r) for r in m))

    @property
    def size(self) -> int:
        return len(self.matrix)

    def monomial_coeffs(self) -> list[Fraction]:
        return [self.matrix[i][j] if i == j else 2 * self.matrix[i][j] for i, j in monomials(self.size)]

    def terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, c) for (i, j), c in zip(monomials(self.size), self.monomial_coeffs()) if c]

    def normalized(self) -> QuadRelation:
        """Scaled so the first nonzero monomial coefficient is 1."""
        coeffs = self.monomial_coeffs()
        lead = next((c for c in coeffs if c), None)
        if lead is None:
            return self
        return QuadRelation.from_monomial_coeffs([c / lead for c in coeffs], self.size)

    def proportional_to(self, other: QuadRelation) -> bool:
        return linalg.rank([self.monomial_coeffs(), other.monomial_coeffs()]) <= 1 and (
            any(self.monomial_coeffs()) == any(other.monomial_coeffs())
        )

    def rank(self) -> int:
        return linalg.rank(self.matrix)

    def evaluate(self, forms: Sequence[TwoForm]):
        """``sum_ij Q_ij w_i ^ w_j`` for the given forms."""
        out = FourForm.zero()
        for i, j, c in self.terms():
            out = out + wedge22(forms[i], forms[j]) * c
        return out
