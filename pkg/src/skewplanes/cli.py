"""The ``planes`` command-line tool.

Every command reads and writes JSON, so commands compose through pipes.

Exit codes: 0 success, 1 a verification failed, 2 malformed input or usage.
"""

from __future__ import annotations

import argparse
import sys
from importlib import resources
from fractions import Fraction
from typing import Sequence

from . import families
from .congruence import solve_fluxes
from .io import DATA_FILES, InputError, dumps, format_rational, loads, parse_rational_list, plane_from_json, plane_to_json
from .membership import NotMember, membership, tangent_dimension
from .plane import IndependenceError, Plane
from .surface import (
    SurfaceError,
    ade_type,
    char_cubic,
    cone_test,
    find_linear_factor,
    singular_points,
)
from .verify import report, run_cases

FAMILY_ARITY = {
    "semisimple": 3,
    "determinantal": 36,
    "tritangent": 6,
    "cayley": 5,
    "type2": 0,
    "type3": 12,
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    if path.startswith("data:"):
        name = path[5:]
        if name not in DATA_FILES:
            raise InputError(f"{path}: unknown bundled plane; choose from {', '.join(DATA_FILES)}")
        return resources.files("skewplanes.data").joinpath(name).read_text()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None


def _load_plane(path: str, size: int | None = 4) -> Plane:
    where = "stdin" if path == "-" else path
    obj = loads(_read(path), where)
    try:
        h = plane_from_json(obj, where)
    except IndependenceError as exc:
        raise InputError(f"{where}.basis: {exc}") from None
    if size is not None and len(h) != size:
        raise InputError(f"{where}.basis: expected {size} forms, got {len(h)}")
    return h


def cmd_membership(args) -> dict:
    return membership(_load_plane(args.file)).to_json()


def cmd_surface(args) -> dict:
    f = char_cubic(_load_plane(args.file))
    out: dict = {"cubic": f.to_json()}
    if args.singularities:
        sing = singular_points(f)
        out["singular_points"] = [p.to_json() for p in sing.points]
        out["possibly_incomplete"] = sing.possibly_incomplete
        out["singularities"] = [ade_type(f, p).to_json() for p in sing.points[:20]]
    if args.cone:
        v = cone_test(f)
        out["cone_vertex"] = v.to_json() if v else None
    if args.split:
        found = find_linear_factor(f)
        out["split"] = found.split.to_json() if found.split else None
        out["search_incomplete"] = found.search_incomplete
    return out


def _params(args, name: str) -> list[Fraction]:
    values = parse_rational_list(args.params or "", "--params")
    want = FAMILY_ARITY[name]
    if name == "semisimple" and not values:
        values = [Fraction(1), Fraction(1), Fraction(0)]
    if name == "cayley" and not values:
        values = [Fraction(0)] * 5
    if name == "type3" and not values:
        values = [Fraction(int(k == 5)) for k in range(6)] + [Fraction(int(k == 2)) for k in range(6)]
    if len(values) != want:
        raise InputError(f"--params: family {name!r} takes {want} values, got {len(values)}")
    return values


def cmd_family(args) -> dict:
    name = args.name
    if name == "sample":
        h = families.sample_V(families.SamplerConfig(seed=args.seed, coeff_bound=args.bound))
    else:
        p = _params(args, name)
        if name == "semisimple":
            h = families.semisimple_three_plane(*p)
        elif name == "determinantal":
            m = [[[p[12 * r + 4 * s + k] for k in range(4)] for s in range(3)] for r in range(3)]
            h = families.determinantal_plane(m)
        elif name == "tritangent":
            h = families.tritangent_extension(*p)
        elif name == "cayley":
            h = families.cayley_plane(*p)
        elif name == "type2":
            h = families.type2_plane()
        else:
            h = families.type3_plane(p[:6], p[6:])
    return plane_to_json(h)


def cmd_flux(args) -> dict:
    h = _load_plane(args.file)
    u = parse_rational_list(args.u, "--u")
    if len(u) != 4:
        raise InputError(f"--u: expected 4 values, got {len(u)}")
    v = solve_fluxes(h, u)
    if v is None:
        return {"u": [format_rational(x) for x in u], "V": "degenerate"}
    return {"u": [format_rational(x) for x in u], "V": [format_rational(x) for x in v]}


def cmd_tangent(args) -> dict:
    return {"tangent_dimension": tangent_dimension(_load_plane(args.file))}


def cmd_classify(args) -> dict:
    return {"type": families.rank4_plane_type(_load_plane(args.file, size=3))}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="planes", description="Exact analysis of four-planes of skew forms in six variables.")
    parser.add_argument("--pretty", action="store_true", help="indent JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="plane JSON file, - for stdin, or data:NAME for a bundled plane")
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        return p

    with_file("membership", "decide membership and print the relation").set_defaults(func=cmd_membership)
    s = with_file("surface", "characteristic cubic and its analysis")
    s.add_argument("--singularities", action="store_true")
    s.add_argument("--split", action="store_true")
    s.add_argument("--cone", action="store_true")
    s.set_defaults(func=cmd_surface)
    f = sub.add_parser("family", help="construct a plane from a named family")
    f.add_argument("name", choices=[*FAMILY_ARITY, "sample"])
    f.add_argument("--params", help="comma-separated rationals")
    f.add_argument("--seed", type=int, default=1)
    f.add_argument("--bound", type=int, default=3)
    f.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    f.set_defaults(func=cmd_family)
    fl = with_file("flux", "solve the flux system at a point")
    fl.add_argument("--u", required=True, help="four comma-separated rationals")
    fl.set_defaults(func=cmd_flux)
    with_file("tangent", "tangent dimension at a member plane").set_defaults(func=cmd_tangent)
    c = sub.add_parser("classify-plane", help="type of a constant-rank-four three-plane")
    c.add_argument("file")
    c.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    c.set_defaults(func=cmd_classify)
    v = sub.add_parser("verify-paper", help="run every golden check")
    v.add_argument("--filter", help="only cases whose id contains this text")
    v.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    v.set_defaults(func=None)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.command == "verify-paper":
            results = run_cases(args.filter)
            if not results:
                raise InputError(f"--filter: no case id contains {args.filter!r}")
            print(dumps(report(results), args.pretty))
            return 0 if all(r.status == "pass" for r in results) else 1
        out = args.func(args)
    except (InputError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotMember, SurfaceError, families.FamilyError, IndependenceError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(dumps(out, args.pretty))
    return 0


if __name__ == "__main__":
    sys.exit(main())
