import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from skewplanes.exterior import TwoForm
from skewplanes.io import (
    DATA_FILES,
    InputError,
    data_description,
    dumps,
    form_from_json,
    form_to_json,
    load_data,
    loads,
    parse_rational,
    plane_from_json,
    plane_to_json,
)
from skewplanes.plane import IndependenceError, Plane

from conftest import two_forms

fractions = st.fractions(max_denominator=50).filter(lambda f: abs(f) < 10**6)


@given(fractions)
def test_rational_roundtrip(x):
    assert parse_rational(str(x)) == x


@pytest.mark.parametrize("bad", ["1.5", "x", "", "1/0", True, None, 2.0, "1/-2"])
def test_bad_rationals(bad):
    with pytest.raises(InputError):
        parse_rational(bad, "field")


def test_integer_literals_allowed():
    assert parse_rational(7) == 7 and parse_rational("-3/6") == Fraction(-1, 2)


@given(two_forms, st.sampled_from(["zero", "one"]))
def test_form_roundtrip(w, conv):
    obj = form_to_json(w, conv)
    assert form_from_json(json.loads(dumps(obj))) == w
    assert form_to_json(form_from_json(obj), conv) == obj


@given(st.lists(two_forms, min_size=1, max_size=4), st.sampled_from(["zero", "one"]))
def test_plane_roundtrip(forms, conv):
    try:
        h = Plane(tuple(forms))
    except IndependenceError:
        return
    text = dumps(plane_to_json(h, conv), pretty=True)
    back = plane_from_json(loads(text))
    assert back.basis == h.basis
    assert dumps(plane_to_json(back, conv), pretty=True) == text


def test_basis_entries_may_be_objects():
    obj = {"convention": "one", "basis": [{"terms": [[1, 2, "1"]]}, [[5, 4, "2"]]]}
    h = plane_from_json(obj)
    assert h[0] == TwoForm.from_terms([(0, 1, 1)])
    assert h[1] == TwoForm.from_terms([(3, 4, -2)])


@pytest.mark.parametrize(
    "obj, field",
    [
        ([], "plane"),
        ({"basis": []}, "plane.basis"),
        ({"convention": "two", "basis": [[[0, 1, "1"]]]}, "plane.convention"),
        ({"basis": [[[0, 6, "1"]]]}, "plane.basis[0][0]"),
        ({"basis": [[[0, 1, "a"]]]}, "plane.basis[0][0][2]"),
        ({"basis": [[[0, 1]]]}, "plane.basis[0][0]"),
        ({"convention": "one", "basis": [[[0, 1, "1"]]]}, "plane.basis[0][0]"),
    ],
)
def test_diagnostics_name_the_field(obj, field):
    with pytest.raises(InputError, match=field.replace("[", r"\[").replace("]", r"\]")):
        plane_from_json(obj)


def test_invalid_json_reports_position():
    with pytest.raises(InputError, match="line 2 column"):
        loads('{"basis":\n ]', "f.json")


@pytest.mark.parametrize("name", DATA_FILES)
def test_bundled_planes_load(name):
    h = load_data(name)
    assert len(h) in (3, 4)
    assert data_description(name)
