"""Exact algebra of four-planes of skew two-forms in six variables."""

from .exterior import FourForm, TwoForm, pf, pf_star, pfaffian, wedge22
from .membership import MembershipReport, NotMember, membership, tangent_dimension
from .plane import Plane, QuadRelation
from .surface import CubicForm, ade_type, char_cubic, singular_points

__all__ = [
    "CubicForm",
    "FourForm",
    "MembershipReport",
    "NotMember",
    "Plane",
    "QuadRelation",
    "TwoForm",
    "ade_type",
    "char_cubic",
    "membership",
    "pf",
    "pf_star",
    "pfaffian",
    "singular_points",
    "tangent_dimension",
    "wedge22",
]
