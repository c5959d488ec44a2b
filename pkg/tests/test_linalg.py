from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from skewplanes import linalg

matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), min_size=1, max_size=6)
)


@given(matrices)
def test_rank_matches_sympy(rows):
    assert linalg.rank(rows) == sympy.Matrix(rows).rank()


@given(matrices)
def test_nullspace_is_annihilated_and_complementary(rows):
    n = len(rows[0])
    ns = linalg.nullspace(rows, n)
    assert len(ns) + linalg.rank(rows) == n
    for v in ns:
        assert all(x == 0 for x in linalg.matvec(rows, v))


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_and_inverse(rows):
    d = linalg.det(rows)
    assert d == sympy.Matrix(rows).det()
    inv = linalg.inverse(rows)
    if d == 0:
        assert inv is None
    else:
        prod = linalg.matmul(rows, inv)
        assert prod == [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]


@given(matrices)
def test_left_nullspace(rows):
    for v in linalg.left_nullspace(rows):
        assert all(sum(v[i] * rows[i][j] for i in range(len(rows))) == 0 for j in range(len(rows[0])))


def test_solve_singular_returns_none():
    assert linalg.solve([[1, 2], [2, 4]], [1, 0]) is None
    assert linalg.solve([[1, 2], [3, 4]], [5, 6]) == [Fraction(-4), Fraction(9, 2)]


def test_in_row_space():
    assert linalg.in_row_space([2, 4, 6], [[1, 2, 3]])
    assert not linalg.in_row_space([1, 0, 0], [[1, 2, 3]])


def test_echelon_basis_counts_independent_rows():
    e = linalg.EchelonBasis()
    assert e.add({(1, 0): Fraction(1)})
    assert e.add({(0, 1): Fraction(1)})
    assert not e.add({(1, 0): Fraction(2), (0, 1): Fraction(-3)})
    assert len(e) == 2
