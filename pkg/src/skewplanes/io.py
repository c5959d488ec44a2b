"""JSON interchange for rationals, forms, planes, relations and cubics.

Rationals travel as strings ``"p/q"`` or ``"n"``.  A two-form is
``{"convention": "zero"|"one", "terms": [[i, j, "p/q"], ...]}``; a plane is
``{"convention": ..., "basis": [[[i, j, "p/q"], ...], ...]}`` with an
optional free-text ``"description"``.  Serialising a parsed value gives back
the canonical text exactly.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from typing import Any

from .exterior import TwoForm
from .plane import Plane

_RATIONAL = re.compile(r"^\s*-?\d+(/\d+)?\s*$")
CONVENTIONS = ("zero", "one")


class InputError(ValueError):
    """Malformed JSON input; the message names the offending field."""


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise InputError(f"{where}: zero denominator in {value!r}") from None
    raise InputError(f"{where}: expected a rational string 'p/q' or 'n', got {value!r}")


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational_list(text: str, where: str = "list") -> list[Fraction]:
    if not text.strip():
        return []
    return [parse_rational(part, f"{where}[{k}]") for k, part in enumerate(text.split(","))]


def _check_convention(conv: Any, where: str) -> str:
    if conv not in CONVENTIONS:
        raise InputError(f"{where}.convention: expected 'zero' or 'one', got {conv!r}")
    return conv


def _parse_terms(terms: Any, convention: str, where: str) -> TwoForm:
    if not isinstance(terms, list):
        raise InputError(f"{where}: expected a list of [i, j, coeff] triples")
    out = []
    shift = 1 if convention == "one" else 0
    for k, t in enumerate(terms):
        if not (isinstance(t, list) and len(t) == 3):
            raise InputError(f"{where}[{k}]: expected [i, j, coeff]")
        i, j, c = t
        if not (isinstance(i, int) and isinstance(j, int)) or isinstance(i, bool) or isinstance(j, bool):
            raise InputError(f"{where}[{k}]: indices must be integers")
        if not (0 <= i - shift < 6 and 0 <= j - shift < 6) or i == j:
            raise InputError(f"{where}[{k}]: bad index pair ({i}, {j}) for convention {convention!r}")
        out.append((i, j, parse_rational(c, f"{where}[{k}][2]")))
    return TwoForm.from_terms(out, one_based=convention == "one")


def form_from_json(obj: Any, where: str = "form") -> TwoForm:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    conv = _check_convention(obj.get("convention", "zero"), where)
    if "terms" not in obj:
        raise InputError(f"{where}: missing 'terms'")
    return _parse_terms(obj["terms"], conv, f"{where}.terms")


def _terms_json(w: TwoForm, convention: str) -> list:
    shift = 1 if convention == "one" else 0
    return [[i + shift, j + shift, format_rational(c)] for i, j, c in w.terms()]


def form_to_json(w: TwoForm, convention: str = "zero") -> dict:
    _check_convention(convention, "form")
    return {"convention": convention, "terms": _terms_json(w, convention)}


def plane_from_json(obj: Any, where: str = "plane") -> Plane:
    if not isinstance(obj, dict):
        raise InputError(f"{where}: expected an object")
    conv = _check_convention(obj.get("convention", "zero"), where)
    basis = obj.get("basis")
    if not isinstance(basis, list) or not basis:
        raise InputError(f"{where}.basis: expected a non-empty list of forms")
    forms = []
    for k, entry in enumerate(basis):
        if isinstance(entry, dict):
            forms.append(form_from_json({"convention": conv, **entry}, f"{where}.basis[{k}]"))
        else:
            forms.append(_parse_terms(entry, conv, f"{where}.basis[{k}]"))
    return Plane(tuple(forms), conv)


def plane_to_json(h: Plane, convention: str | None = None, description: str | None = None) -> dict:
    conv = convention or h.convention
    _check_convention(conv, "plane")
    out: dict[str, Any] = {"convention": conv, "basis": [_terms_json(w, conv) for w in h]}
    if description:
        out["description"] = description
    return out


def dumps(obj: Any, pretty: bool = False) -> str:
    if pretty:
        return json.dumps(obj, indent=2, sort_keys=False)
    return json.dumps(obj, separators=(",", ":"))


def loads(text: str, where: str = "input") -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


DATA_FILES = (
    "determinantal_example.json",
    "determinantal_example_reconstructed.json",
    "tritangent_z1_c1.json",
    "tritangent_b1_y1.json",
    "cayley_zero.json",
    "type2.json",
    "type3_e5_e2.json",
    "type3_e5_e3.json",
    "type1_three_plane.json",
    "type4_three_plane.json",
    "type4_extension.json",
)


def load_data(name: str) -> Plane:
    """A plane shipped with the package, by file name."""
    text = resources.files("skewplanes.data").joinpath(name).read_text()
    return plane_from_json(loads(text, name), name)


def data_description(name: str) -> str:
    text = resources.files("skewplanes.data").joinpath(name).read_text()
    return loads(text, name).get("description", "")
