"""Exterior algebra of a fixed six-dimensional rational vector space.

Two-forms and four-forms are stored densely as 15 coefficients over the
lexicographically ordered index pairs / quadruples of ``{0, ..., 5}``.
A four-form ``W`` is read as a dual two-form through the volume pairing
``W ^ w = <W, w> vol``, which is how ranks of four-forms and ``pf_star``
are defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from . import linalg

DIM = 6
PAIRS: tuple[tuple[int, int], ...] = tuple(combinations(range(DIM), 2))
QUADS: tuple[tuple[int, ...], ...] = tuple(combinations(range(DIM), 4))
PAIR_INDEX = {p: i for i, p in enumerate(PAIRS)}
QUAD_INDEX = {q: i for i, q in enumerate(QUADS)}


def perm_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq``; 0 if an entry repeats."""
    if len(set(seq)) != len(seq):
        return 0
    s = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                s = -s
    return s


def _complement(idx: Iterable[int]) -> tuple[int, ...]:
    idx = set(idx)
    return tuple(i for i in range(DIM) if i not in idx)


# (pair_a, pair_b, quad, sign) for every way to write a quad as pair ^ pair
_W22 = []
for _q, _quad in enumerate(QUADS):
    for _p in combinations(_quad, 2):
        _rest = tuple(i for i in _quad if i not in _p)
        _W22.append((PAIR_INDEX[_p], PAIR_INDEX[_rest], _q, perm_sign(_p + _rest)))

# sign of e_P ^ e_S for a pair P and its complementary quad S
_DUAL_SIGN = [perm_sign(p + _complement(p)) for p in PAIRS]
_PAIR_TO_QUAD = [QUAD_INDEX[_complement(p)] for p in PAIRS]


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class TwoForm:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 15:
            raise ValueError("a two-form needs 15 coefficients")
        object.__setattr__(self, "coeffs", tuple(_fr(c) for c in self.coeffs))

    @classmethod
    def zero(cls) -> TwoForm:
        return cls((Fraction(0),) * 15)

    @classmethod
    def from_terms(cls, terms: Iterable, one_based: bool = False) -> TwoForm:
        """Build from ``(i, j, coeff)`` triples.

        Unordered pairs are allowed and pick up the sign ``e_ji = -e_ij``.
        """
        c = [Fraction(0)] * 15
        shift = 1 if one_based else 0
        for i, j, v in terms:
            i, j = int(i) - shift, int(j) - shift
            if not (0 <= i < DIM and 0 <= j < DIM) or i == j:
                raise ValueError(f"bad index pair ({i}, {j})")
            v = _fr(v)
            if i < j:
                c[PAIR_INDEX[(i, j)]] += v
            else:
                c[PAIR_INDEX[(j, i)]] -= v
        return cls(tuple(c))

    @classmethod
    def from_matrix(cls, m: Sequence[Sequence]) -> TwoForm:
        return cls(tuple(_fr(m[i][j]) for i, j in PAIRS))

    def terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i, j, c) for (i, j), c in zip(PAIRS, self.coeffs) if c]

    def matrix(self) -> linalg.Matrix:
        m = [[Fraction(0)] * DIM for _ in range(DIM)]
        for (i, j), c in zip(PAIRS, self.coeffs):
            m[i][j] = c
            m[j][i] = -c
        return m

    def transform(self, p: Sequence[Sequence]) -> TwoForm:
        """Image under the linear map ``e_j -> sum_i p[i][j] e_i``."""
        return TwoForm.from_matrix(linalg.matmul(linalg.matmul(p, self.matrix()), linalg.transpose(p)))

    def __add__(self, other: TwoForm) -> TwoForm:
        return TwoForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TwoForm) -> TwoForm:
        return TwoForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TwoForm:
        return TwoForm(tuple(-a for a in self.coeffs))

    def __mul__(self, s) -> TwoForm:
        s = _fr(s)
        return TwoForm(tuple(a * s for a in self.coeffs))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        body = " + ".join(f"{c}*e{i}{j}" for i, j, c in self.terms()) or "0"
        return f"TwoForm({body})"


@dataclass(frozen=True)
class FourForm:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != 15:
            raise ValueError("a four-form needs 15 coefficients")
        object.__setattr__(self, "coeffs", tuple(_fr(c) for c in self.coeffs))

    @classmethod
    def zero(cls) -> FourForm:
        return cls((Fraction(0),) * 15)

    @classmethod
    def from_terms(cls, terms: Iterable, one_based: bool = False) -> FourForm:
        c = [Fraction(0)] * 15
        shift = 1 if one_based else 0
        for *idx, v in terms:
            idx = tuple(int(i) - shift for i in idx)
            s = perm_sign(idx)
            if s == 0 or len(idx) != 4 or not all(0 <= i < DIM for i in idx):
                raise ValueError(f"bad index quadruple {idx}")
            c[QUAD_INDEX[tuple(sorted(idx))]] += s * _fr(v)
        return cls(tuple(c))

    def terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        return [(q, c) for q, c in zip(QUADS, self.coeffs) if c]

    def __add__(self, other: FourForm) -> FourForm:
        return FourForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FourForm) -> FourForm:
        return FourForm(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FourForm:
        return FourForm(tuple(-a for a in self.coeffs))

    def __mul__(self, s) -> FourForm:
        s = _fr(s)
        return FourForm(tuple(a * s for a in self.coeffs))

    __rmul__ = __mul__

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        body = " + ".join(f"{c}*e{''.join(map(str, q))}" for q, c in self.terms()) or "0"
        return f"FourForm({body})"


def basis_two_form(i: int, j: int) -> TwoForm:
    return TwoForm.from_terms([(i, j, 1)])


def wedge22(a: TwoForm, b: TwoForm) -> FourForm:
    out = [Fraction(0)] * 15
    ac, bc = a.coeffs, b.coeffs
    for pa, pb, q, s in _W22:
        x = ac[pa]
        if x:
            y = bc[pb]
            if y:
                out[q] += s * x * y
    return FourForm(tuple(out))


def wedge24(a: TwoForm, b: FourForm) -> Fraction:
    """Coefficient of ``a ^ b`` on ``e0 ^ ... ^ e5``."""
    return sum(
        (s * a.coeffs[p] * b.coeffs[q] for p, (s, q) in enumerate(zip(_DUAL_SIGN, _PAIR_TO_QUAD))),
        Fraction(0),
    )


def wedge222(a: TwoForm, b: TwoForm, c: TwoForm) -> Fraction:
    return wedge24(c, wedge22(a, b))


def rank2(w: TwoForm) -> int:
    return linalg.rank(w.matrix())


def pfaffian(w: TwoForm) -> Fraction:
    """Pfaffian normalised by ``w^w^w = 6 Pf(w) vol``."""
    return pfaffian_of_matrix(w.matrix())


def pfaffian_of_matrix(m: Sequence[Sequence]) -> Fraction:
    """Pfaffian of a skew matrix by expansion along the first row."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n % 2:
        return Fraction(0)
    total = Fraction(0)
    for j in range(1, n):
        if m[0][j] == 0:
            continue
        keep = [k for k in range(1, n) if k != j]
        minor = [[m[r][c] for c in keep] for r in keep]
        sign = 1 if j % 2 == 1 else -1
        total += sign * Fraction(m[0][j]) * pfaffian_of_matrix(minor)
    return total


def pf(w: TwoForm) -> FourForm:
    return wedge22(w, w)


def dualize(W: FourForm) -> TwoForm:
    """The dual two-form ``e_P -> <W, e_P>`` with ``W ^ e_P = <W, e_P> vol``."""
    return TwoForm(tuple(s * W.coeffs[q] for s, q in zip(_DUAL_SIGN, _PAIR_TO_QUAD)))


def undualize(w: TwoForm) -> FourForm:
    """Inverse of :func:`dualize`."""
    c = [Fraction(0)] * 15
    for p, (s, q) in enumerate(zip(_DUAL_SIGN, _PAIR_TO_QUAD)):
        c[q] = s * w.coeffs[p]
    return FourForm(tuple(c))


def pf_star(W: FourForm) -> TwoForm:
    """Squaring on the dual side, mapped back to two-forms by the dual volume.

    With the normalisation used here ``pf_star(pf(w)) == 8 * Pf(w) * w``.
    """
    # The dual square is a four-form on V*, i.e. an element of ∧^4 V* = (∧^2 V)
    # via the same complement rule, so dualize() is reused in both directions.
    return dualize(pf(dualize(W)))


def rank4_of_fourform(W: FourForm) -> int:
    return rank2(dualize(W))


def pairing(W: FourForm, w: TwoForm) -> Fraction:
    return wedge24(w, W)


def span_rank(forms: Iterable) -> int:
    return linalg.rank([f.coeffs for f in forms])


def vector_wedge(u: Sequence, v: Sequence) -> TwoForm:
    """``u ^ v`` for vectors given by six coordinates."""
    return TwoForm(tuple(_fr(u[i]) * _fr(v[j]) - _fr(u[j]) * _fr(v[i]) for i, j in PAIRS))


def unit(i: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(k == i)) for k in range(DIM))
