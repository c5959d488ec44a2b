import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from skewplanes.congruence import (
    TRACE_PAIRING,
    CongruencePoint,
    flux_residuals,
    form_pairing,
    plucker,
    relation5_check,
    solve_fluxes,
    trace_pairing,
)
from skewplanes.exterior import PAIRS, TwoForm, wedge22
from skewplanes.families import cayley_plane, tritangent_extension, type2_plane
from skewplanes.io import load_data
from skewplanes.membership import NotMember

from conftest import two_forms

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
quads = st.lists(rationals, min_size=4, max_size=4)


@pytest.fixture(scope="module")
def determinantal():
    return load_data("determinantal_example_reconstructed.json")


def minors_oracle(u, v) -> TwoForm:
    m = sympy.Matrix([[*u, 1, 0], [*v, 0, 1]])
    return TwoForm(tuple(Fraction(str(m.extract([0, 1], [i, j]).det())) for i, j in PAIRS))


def test_plucker_at_origin_is_identity_block():
    assert plucker((0,) * 4, (0,) * 4) == TwoForm.from_terms([(4, 5, 1)])


def test_plucker_hand_minors():
    # rows (1,0,0,0,1,0) and (0,1,0,0,0,1)
    expected = TwoForm.from_terms([(0, 1, 1), (0, 5, 1), (1, 4, -1), (4, 5, 1)])
    assert plucker((1, 0, 0, 0), (0, 1, 0, 0)) == expected


@given(quads, quads)
def test_plucker_matches_minors_and_is_decomposable(u, v):
    y = plucker(u, v)
    assert y == minors_oracle(u, v)
    assert not wedge22(y, y)


def test_trace_constant_from_one_monomial():
    e01 = TwoForm.from_terms([(0, 1, 1)])
    assert trace_pairing(e01, e01) == TRACE_PAIRING == -2


@given(two_forms, two_forms)
def test_trace_pairing_constant(y, a):
    assert trace_pairing(y, a) == TRACE_PAIRING * form_pairing(y, a)


def test_flux_solution_at_sample_point(determinantal):
    v = solve_fluxes(determinantal, (1, 2, 3, 4))
    assert v is not None
    assert flux_residuals(determinantal, CongruencePoint((1, 2, 3, 4), v)) == (0, 0, 0, 0)


def test_random_point_has_nonzero_residual(determinantal):
    rng = random.Random(1)
    hits = 0
    for _ in range(10):
        p = CongruencePoint(tuple(rng.randint(-5, 5) for _ in range(4)), tuple(rng.randint(-5, 5) for _ in range(4)))
        hits += any(flux_residuals(determinantal, p))
    assert hits >= 9


def test_cayley_degenerate_and_solvable_points():
    h = cayley_plane()
    assert solve_fluxes(h, (0, 0, 0, 0)) is None
    assert solve_fluxes(h, (1, 0, 0, 0)) is None
    v = solve_fluxes(h, (1, 2, 3, 4))
    assert v is not None and not any(flux_residuals(h, CongruencePoint((1, 2, 3, 4), v)))
    rng = random.Random(10)
    outcomes = [solve_fluxes(h, tuple(rng.randint(-9, 9) for _ in range(4))) is not None for _ in range(10)]
    assert sum(outcomes) >= 1


@given(quads)
def test_solutions_have_zero_residual(u):
    h = type2_plane()
    v = solve_fluxes(h, u)
    if v is not None:
        assert flux_residuals(h, CongruencePoint(u, v)) == (0, 0, 0, 0)


def test_relation_check(determinantal):
    assert relation5_check(determinantal)
    assert relation5_check(type2_plane())
    with pytest.raises(NotMember):
        relation5_check(tritangent_extension(0, 0, 1, 0, 0, 1))


def test_congruence_point_validates_length():
    with pytest.raises(ValueError):
        CongruencePoint((1, 2, 3), (0, 0, 0, 0))
