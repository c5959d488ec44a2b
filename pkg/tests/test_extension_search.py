import numpy as np
import pytest

from skewplanes.exterior import TwoForm, wedge22
from skewplanes.extension_search import _Screen, search_extensions, w_lambda_basis
from skewplanes.families import TYPE1_L, TYPE2_L, TYPE3_L, TYPE4_L, type3_plane
from skewplanes.membership import MEMBER, membership, sym2_matrix
from skewplanes.plane import Plane
from skewplanes.surface import char_cubic, find_linear_factor
from skewplanes import linalg


def test_screen_keeps_a_known_member():
    h = type3_plane()
    screen = _Screen(Plane(h.basis[1:]), 33554393, seed=0)
    omega = np.array([[int(c) for c in h[0].coeffs]], dtype=np.int64)
    assert screen.passes(omega)[0]


@pytest.mark.parametrize("forms", [TYPE1_L, TYPE4_L])
@pytest.mark.parametrize("lam", [(1, 0, 0), (0, 1, -1), (1, 1, 1)])
def test_w_lambda_basis_property(forms, lam):
    plane = Plane(forms)
    l = plane.combination(lam)
    ll = [list(row) for row in sym2_matrix(plane)]
    for w in w_lambda_basis(plane, lam):
        assert linalg.in_row_space(wedge22(TwoForm(tuple(w)), l).coeffs, ll)


@pytest.mark.parametrize("forms", [TYPE2_L, TYPE3_L])
def test_search_finds_extensions_of_extendable_types(forms):
    r = search_extensions(Plane(forms), bound=1, stop_at_first=True)
    assert r.found and membership(r.members[0]).verdict == MEMBER


def test_type4_counterexample_is_a_genuine_member():
    w = TwoForm.from_terms([(1, 4, 1), (2, 5, 1)])
    h = Plane((w, *TYPE4_L))
    r = membership(h)
    assert r.verdict == MEMBER and r.rank2_witness is None
    split = find_linear_factor(char_cubic(h)).split
    assert split is not None and split.quadric_rank == 4


def test_search_requires_three_plane():
    with pytest.raises(ValueError):
        search_extensions(type3_plane())
