"""Exact linear algebra over the rationals.

Matrices are plain lists of rows whose entries are ``Fraction`` (ints are
accepted and promoted).  Everything here is deterministic: pivots are chosen
leftmost column first, then topmost row.
"""

from fractions import Fraction
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]


def to_matrix(rows: Iterable[Iterable]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    m = to_matrix(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(bareiss_echelon(rows))


def bareiss_echelon(rows: Sequence[Sequence]) -> list[list]:
    """Fraction-free row echelon form (Bareiss).

    Rational input is cleared to integers row by row first, so all
    intermediate work is in exact integers.  Returns the nonzero rows.
    """
    m = [_integer_row(row) for row in rows]
    m = [row for row in m if any(row)]
    if not m:
        return []
    ncols = len(m[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            m[i] = [(piv * a - f * b) // prev for a, b in zip(m[i], m[r])]
        prev = piv
        r += 1
    return m[:r]


def _integer_row(row: Sequence) -> list[int]:
    fr = [Fraction(x) for x in row]
    den = 1
    for x in fr:
        den = den * x.denominator // _gcd(den, x.denominator)
    return [int(x * den) for x in fr]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def nullspace(rows: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of the right kernel ``{v : M v = 0}``.

    One vector per free column, with a 1 in that column; vectors are listed
    in increasing free-column order.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][f]
        basis.append(v)
    return basis


def left_nullspace(rows: Sequence[Sequence]) -> Matrix:
    """Basis of ``{w : w M = 0}``."""
    return nullspace(transpose(rows), len(rows))


def transpose(rows: Sequence[Sequence]) -> Matrix:
    if not rows:
        return []
    return [[Fraction(rows[i][j]) for i in range(len(rows))] for j in range(len(rows[0]))]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return [[sum((Fraction(x) * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> list[Fraction]:
    return [sum((Fraction(x) * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def det(rows: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-free elimination."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    fr = to_matrix(rows)
    den = 1
    for row in fr:
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
    m = [[int(x * den) for x in row] for row in fr]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], den**n)


def solve(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """Unique solution of ``a x = b`` for square ``a``; None if singular."""
    n = len(a)
    aug = [list(row) + [b[i]] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [red[i][n] for i in range(n)]


def inverse(a: Sequence[Sequence]) -> Matrix | None:
    n = len(a)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    return [row[n:] for row in red]


def row_space_basis(rows: Sequence[Sequence]) -> Matrix:
    return rref(rows)[0]


def in_row_space(v: Sequence, basis: Sequence[Sequence]) -> bool:
    if not any(Fraction(x) for x in v):
        return True
    if not basis:
        return False
    return rank(list(basis) + [list(v)]) == rank(basis)


class EchelonBasis:
    """Incrementally grown row space with sparse rows.

    Rows are dicts ``{column: Fraction}``.  Used for the large, very sparse
    truncated Jacobian matrices where dense elimination is wasteful.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Fraction]] = {}

    def __len__(self):
        return len(self.rows)

    def reduce(self, row: dict) -> dict:
        row = {c: Fraction(v) for c, v in row.items() if v != 0}
        while row:
            c = min(row)
            piv = self.rows.get(c)
            if piv is None:
                return row
            f = row[c]
            for k, v in piv.items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a row; return True if it enlarged the span."""
        red = self.reduce(row)
        if not red:
            return False
        c = min(red)
        inv = 1 / red[c]
        self.rows[c] = {k: v * inv for k, v in red.items()}
        return True
