"""Bounded search for member four-planes extending a given three-plane.

If ``H = <w, L>`` is a member with relation ``q``, some kernel element of
``Sym^2 H`` involves ``w``, so the four classes of ``w^w, w^l_1, w^l_2, w^l_3``
are dependent in ``∧^4 V / (L ^ L)``.  Candidates are screened for this
modulo a large prime (vectorised with numpy) and survivors are decided by
exact membership.  Two candidate families are enumerated:

* ``w`` in the coordinate complement of ``L`` with few nonzero integer entries;
* ``w`` in ``W_l = {w : w ^ l in L ^ L}`` for small integer ``l`` in ``L``,
  which is where a member with a relation free of ``w^2`` must live.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from . import linalg
from .exterior import PAIRS, QUAD_INDEX, TwoForm, perm_sign, wedge22
from .membership import membership, three_plane_checks
from .plane import IndependenceError, Plane, monomials

DEFAULT_PRIME = 33554393  # largest prime below 2**25


def _wedge_table() -> np.ndarray:
    t = np.zeros((15, 15, 15), dtype=np.int64)
    for a, pa in enumerate(PAIRS):
        for b, pb in enumerate(PAIRS):
            s = perm_sign(pa + pb)
            if s:
                t[a, b, QUAD_INDEX[tuple(sorted(pa + pb))]] = s
    return t


_TABLE = _wedge_table()


def _mod(x: Fraction, p: int) -> int:
    return x.numerator % p * pow(x.denominator % p, -1, p) % p


@dataclass
class SearchResult:
    candidates: int = 0
    survivors: int = 0
    members: list[Plane] = field(default_factory=list)
    sym2_injective: bool = True

    @property
    def found(self) -> bool:
        return bool(self.members)

    def to_json(self) -> dict:
        return {
            "candidates": self.candidates,
            "survivors": self.survivors,
            "members_found": len(self.members),
            "sym2_injective": self.sym2_injective,
        }


class _Screen:
    """The mod-p necessary condition for ``<w, L>`` to be a member."""

    def __init__(self, plane: Plane, prime: int, seed: int):
        self.p = prime
        ll = [wedge22(plane[i], plane[j]).coeffs for i, j in monomials(len(plane))]
        red, pivots = linalg.rref(ll)
        keep = [c for c in range(15) if c not in pivots]
        # projection onto the quotient by L ^ L, in the coordinates `keep`
        proj = np.zeros((15, len(keep)), dtype=np.int64)
        for c in range(15):
            v = [Fraction(int(c == k)) for k in range(15)]
            for row, pc in zip(red, pivots):
                if v[pc]:
                    f = v[pc]
                    v = [a - f * b for a, b in zip(v, row)]
            proj[c] = [_mod(v[k], prime) for k in keep]
        rng = random.Random(seed)
        r = np.array([[rng.randrange(prime) for _ in range(4)] for _ in keep], dtype=np.int64)
        self.proj_r = (proj @ r) % prime  # 15 x 4, entries < p so the product fits in int64
        self.lam = [
            np.tensordot(_TABLE, np.array([_mod(x, prime) for x in w.coeffs], dtype=np.int64), axes=([1], [0]))
            % prime
            for w in plane
        ]

    def passes(self, omegas: np.ndarray) -> np.ndarray:
        """Boolean mask of candidates that might extend to a member."""
        p = self.p
        om = omegas % p
        rows = [(om @ m) % p for m in self.lam]
        outer = (om[:, :, None] * om[:, None, :]) % p
        sq = np.tensordot(outer, _TABLE, axes=([1, 2], [0, 1])) % p
        rows.append(sq)
        a = np.stack([(r @ self.proj_r) % p for r in rows], axis=1)  # N x 4 x 4
        return _det4_mod(a, p) == 0


def _det4_mod(a: np.ndarray, p: int) -> np.ndarray:
    total = np.zeros(a.shape[0], dtype=np.int64)
    for perm in _PERMS4:
        term = np.ones(a.shape[0], dtype=np.int64)
        for i, j in enumerate(perm):
            term = (term * a[:, i, j]) % p
        total = (total + perm_sign(perm) * term) % p
    return total


_PERMS4 = [perm for perm in product(range(4), repeat=4) if len(set(perm)) == 4]


def _complement_coords(plane: Plane) -> list[int]:
    _, pivots = linalg.rref([w.coeffs for w in plane])
    return [c for c in range(15) if c not in pivots]


def _sparse_vectors(dim: int, bound: int, support: int) -> Iterator[list[int]]:
    """Integer vectors with at most ``support`` nonzero entries; first nonzero positive."""
    values = [v for v in range(-bound, bound + 1) if v]
    for s in range(1, support + 1):
        for idx in combinations(range(dim), s):
            for vals in product(values, repeat=s):
                if vals[0] < 0:
                    continue
                v = [0] * dim
                for i, x in zip(idx, vals):
                    v[i] = x
                yield v


def _primitive(v: Sequence[Fraction]) -> list[int]:
    den = 1
    for x in v:
        den = den * x.denominator // np.gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = int(np.gcd(g, x))
    return [x // g for x in ints] if g else ints


def case_a_candidates(plane: Plane, bound: int = 3, support: int = 3) -> Iterator[list[int]]:
    coords = _complement_coords(plane)
    for v in _sparse_vectors(len(coords), bound, support):
        w = [0] * 15
        for c, x in zip(coords, v):
            w[c] = x
        yield w


def w_lambda_basis(plane: Plane, lam: Sequence) -> list[list[int]]:
    """Integer basis of ``{w : w ^ l in L ^ L}`` modulo ``L``, with ``l = sum lam_i L_i``."""
    l = plane.combination(lam)
    ll = [wedge22(plane[i], plane[j]).coeffs for i, j in monomials(len(plane))]
    red, pivots = linalg.rref(ll)
    keep = [c for c in range(15) if c not in pivots]

    def reduce(v):
        v = list(v)
        for row, pc in zip(red, pivots):
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        return [v[k] for k in keep]

    # columns: images of basis two-forms under w -> [w ^ l]
    images = [reduce(wedge22(TwoForm.from_terms([(*PAIRS[a], 1)]), l).coeffs) for a in range(15)]
    space = linalg.nullspace(linalg.transpose(images), 15)
    lred, lpiv = linalg.rref([w.coeffs for w in plane])
    out = []
    for v in space:
        for row, pc in zip(lred, lpiv):
            if v[pc]:
                f = v[pc]
                v = [a - f * b for a, b in zip(v, row)]
        if any(v):
            out.append(v)
    basis = linalg.row_space_basis(out) if out else []
    return [_primitive(v) for v in basis]


def case_b_candidates(plane: Plane, bound: int = 3, support: int = 3, lam_bound: int = 1) -> Iterator[list[int]]:
    seen = set()
    for lam in product(range(-lam_bound, lam_bound + 1), repeat=len(plane)):
        if not any(lam) or next(x for x in lam if x) < 0:
            continue
        basis = w_lambda_basis(plane, lam)
        if not basis:
            continue
        for coeffs in _sparse_vectors(len(basis), bound, min(support, len(basis))):
            w = [sum(c * b[k] for c, b in zip(coeffs, basis)) for k in range(15)]
            key = tuple(w)
            if key not in seen:
                seen.add(key)
                yield w


def _batched(it: Iterator[list[int]], size: int) -> Iterator[list[list[int]]]:
    batch = []
    for x in it:
        batch.append(x)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch


def search_extensions(
    plane: Plane,
    bound: int = 3,
    support: int = 3,
    lam_bound: int = 1,
    prime: int = DEFAULT_PRIME,
    seed: int = 0,
    stop_at_first: bool = False,
) -> SearchResult:
    """Look for integer ``w`` making ``<w, L>`` a member plane.

    A three-plane whose ``Sym^2`` map is not injective can never be extended:
    the relation inside ``Sym^2 L`` stays in the kernel and is degenerate.
    That is recorded in ``sym2_injective``; the search still runs.
    """
    if len(plane) != 3:
        raise ValueError("expected a three-plane")
    result = SearchResult(sym2_injective=three_plane_checks(plane).sym2_injective)
    screen = _Screen(plane, prime, seed)
    sources = [case_a_candidates(plane, bound, support), case_b_candidates(plane, bound, support, lam_bound)]
    for source in sources:
        for batch in _batched(source, 4096):
            arr = np.array(batch, dtype=np.int64)
            result.candidates += len(batch)
            for i in np.nonzero(screen.passes(arr))[0]:
                result.survivors += 1
                w = TwoForm(tuple(int(x) for x in batch[i]))
                try:
                    h = Plane((w, *plane.basis))
                except IndependenceError:
                    continue
                if membership(h).is_member:
                    result.members.append(h)
                    if stop_at_first:
                        return result
    return result
