"""Command-line front end: ``shellpoly <subcommand> ...``.

Exit codes: 0 when every verdict matches, 1 on a verification mismatch,
2 on malformed input or an exceeded budget.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import constructions
from .cellcomplex import Complex, RelativeComplex, complex_from_json, f_polynomial, h_polynomial
from .errors import ShellpolyError
from .eulerian import colored_eulerian, colored_eulerian_by_descents, eulerian_table, hstar_by_interpolation, HalfOpenBox
from .lineshell import (
    LineQuery,
    PolytopeHV,
    evaluate_line,
    line_shelling_order,
    polytope_from_json,
    random_line_search,
    standard_simplex,
    trapezoid,
    unit_cube,
)
from .polyreal import from_json_list, interlaces, is_interlacing_sequence, is_real_rooted, to_json_list
from .shelling import shelling_report
from .subdivision import VertexRegistry, barycentric, edgewise_cubical, edgewise_simplicial, get_subdivision
from .verification import SUITES, run_suites


class UsageError(ShellpolyError, ValueError):
    pass


def _load_json(arg: str):
    """Parse inline JSON, or read it from a file path."""
    text = arg.strip()
    if not text.startswith(("{", "[")):
        try:
            text = Path(arg).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {arg}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {arg[:40]!r}: {exc}") from exc


def _load_complex(args) -> tuple[Complex, tuple[int, ...] | None]:
    """A complex from ``--complex`` (file or JSON, optionally a scenario) or ``--construct``."""
    if getattr(args, "construct", None):
        scen = constructions.build(args.construct, **_params(args.param))
        return scen.complex, scen.order
    if not args.complex:
        raise UsageError("give --complex FILE|JSON or --construct NAME")
    data = _load_json(args.complex)
    if isinstance(data, dict) and "complex" in data:
        return complex_from_json(data["complex"]), tuple(data.get("order", ())) or None
    return complex_from_json(data), None


def _params(items) -> dict:
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not KEY=VALUE")
        k, v = item.split("=", 1)
        out[k] = [int(x) for x in v.split(",")] if "," in v else int(v)
    return out


def _relative(c: Complex, removed_arg: str | None) -> RelativeComplex:
    if not removed_arg:
        return RelativeComplex(c)
    faces = _load_json(removed_arg)
    return RelativeComplex.generated(c, [frozenset(f) for f in faces])


def _poly(p) -> dict:
    return {"coeffs": to_json_list(p), "text": str(p)}


def _vector(text: str) -> tuple[Fraction, ...]:
    try:
        return tuple(Fraction(x) for x in text.replace(" ", "").split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational vector {text!r}") from exc


# --- subcommands ---------------------------------------------------------------


def cmd_construct(args) -> tuple[dict, int]:
    params = _params(args.param)
    if args.budget is not None and args.name == "pile":
        scen = constructions.pile_of_cubes(tuple(params.get("a", (1, 3, 2))), budget=args.budget)
    else:
        scen = constructions.build(args.name, **params)
    return scen.to_json(), 0


def cmd_faces(args) -> tuple[dict, int]:
    c, _ = _load_complex(args)
    return {"kind": c.kind, "dim": c.dim, "f_vector": c.f_vector(), "cells": len(c.cells)}, 0


def cmd_hpoly(args) -> tuple[dict, int]:
    c, _ = _load_complex(args)
    rc = _relative(c, args.removed)
    m = c.dim + 1
    h = h_polynomial(rc, m)
    return {"f": _poly(f_polynomial(rc)), "h": _poly(h), "real_rooted": is_real_rooted(h)}, 0


def cmd_subdivide(args) -> tuple[dict, int]:
    c, _ = _load_complex(args)
    rc = _relative(c, args.removed)
    budget = args.budget or 5000
    if args.kind == "barycentric":
        sub = barycentric(rc, VertexRegistry())
    elif c.kind == "cubical":
        sub = edgewise_cubical(rc, args.r, VertexRegistry(), budget)
    else:
        sub = edgewise_simplicial(rc, args.r, VertexRegistry(), budget)
    h = h_polynomial(sub, c.dim + 1)
    out = {
        "subdivision": args.kind if args.kind == "barycentric" else f"edgewise-{args.r}",
        "maximal_faces": len(sub.ambient.cells),
        "h": _poly(h),
        "real_rooted": is_real_rooted(h),
    }
    if args.emit_complex:
        out["complex"] = sub.ambient.to_json()
    return out, 0


def cmd_shelling(args) -> tuple[dict, int]:
    c, given = _load_complex(args)
    if args.order in (None, "lex"):
        order = tuple(range(len(c.cells))) if args.order == "lex" or given is None else given
    elif args.order == "given":
        if given is None:
            raise UsageError("the input carries no order")
        order = given
    else:
        order = tuple(int(x) for x in args.order.split(","))
    subdiv = get_subdivision(args.subdiv, args.r) if args.subdiv else None
    report = shelling_report(c, order, subdiv)
    report["order"] = list(order)
    code = 0
    if args.expect_stable is not None:
        code = 0 if report["summary"]["is_stable"] == (args.expect_stable == "true") else 1
    return report, code


def cmd_eulerian(args) -> tuple[dict, int]:
    if args.table:
        rows = eulerian_table(range(1, args.d + 1), range(args.d + 1), [args.r])
        return {"rows": [{"d": d, "l": ell, "r": r, "coeffs": to_json_list(p), "text": str(p)} for d, ell, r, p in rows]}, 0
    if args.method == "formula":
        p = colored_eulerian(args.d, args.l, args.r)
    elif args.method == "descents":
        p = colored_eulerian_by_descents(args.d, args.l, args.r, **({"budget": args.budget} if args.budget else {}))
    else:
        p = hstar_by_interpolation(HalfOpenBox(args.d, args.r, args.l))
    return {"d": args.d, "l": args.l, "r": args.r, "method": args.method, **_poly(p)}, 0


def cmd_interlace(args) -> tuple[dict, int]:
    polys = [from_json_list(_load_json(p)) for p in args.poly]
    if len(polys) == 2 and not args.sequence:
        return {"interlaces": interlaces(polys[0], polys[1]), "p": str(polys[0]), "q": str(polys[1])}, 0
    return {"interlacing_sequence": is_interlacing_sequence(polys), "polys": [str(p) for p in polys]}, 0


_POLYTOPES = {
    "cube2": lambda: unit_cube(2),
    "cube3": lambda: unit_cube(3),
    "simplex2": lambda: standard_simplex(2),
    "simplex3": lambda: standard_simplex(3),
    "trapezoid": trapezoid,
}


def _load_polytope(arg: str) -> PolytopeHV:
    if arg in _POLYTOPES:
        return _POLYTOPES[arg]()
    return polytope_from_json(_load_json(arg))


def cmd_lineshell(args) -> tuple[dict, int]:
    P = _load_polytope(args.polytope)
    if args.trials:
        return random_line_search(P, args.trials, args.seed, require_generic=args.generic), 0
    if not args.point or not args.dir:
        raise UsageError("give --point and --dir, or --trials")
    L = LineQuery(_vector(args.point), _vector(args.dir))
    res = line_shelling_order(P, L)
    v = evaluate_line(P, L)
    steps = [
        {
            "facet": i,
            "parameter": str(res.params[i]),
            "visible": sorted(res.visible[k]),
            "removed": sorted(res.removed[k]),
            "strong": v.strong_steps[k],
            "per_facet": v.per_facet_steps[k],
        }
        for k, i in enumerate(res.order)
    ]
    return {
        "order": res.order,
        "before_infinity": res.before_infinity,
        "steps": steps,
        "is_shelling": v.is_shelling,
        "is_stable": v.is_stable,
        "strongly_stable": v.strongly_stable,
        "per_facet_condition": v.per_facet,
    }, 0


def cmd_verify(args) -> tuple[dict, int]:
    names = args.suites or ["all"]
    unknown = [n for n in names if n != "all" and n not in SUITES]
    if unknown:
        raise UsageError(f"unknown suites {unknown}; choose from {sorted(SUITES)}")
    results = run_suites(names)
    report = {"suites": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    return report, 0 if report["passed"] else 1


# --- rendering -------------------------------------------------------------------


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, str, bool)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v) if isinstance(v, (list, dict, bool)) or v is None else v}")
    elif isinstance(obj, list):
        for item in obj:
            sub = _text(item, indent + 1)
            if sub:
                lines.append(f"{pad}- {sub[0].strip()}")
                lines.extend(sub[1:])
    else:
        lines.append(f"{pad}{obj}")
    return lines


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    if "suites" in report:
        lines = [
            f"{'PASS' if s['passed'] else 'FAIL'} {s['suite']} ({s['seconds']}s, {sum(c['ok'] for c in s['checks'])}/{len(s['checks'])} checks)"
            for s in report["suites"]
        ]
        for s in report["suites"]:
            for c in s["checks"]:
                if not c["ok"]:
                    lines.append(f"  {s['suite']}: {c['check']}: expected {c['expected']}, got {c['actual']}")
        return "\n".join(lines)
    if set(report) >= {"text", "coeffs"} and "method" in report:
        return report["text"]
    return "\n".join(_text(report))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write the report to this file")

    def with_complex(p):
        p.add_argument("--complex", help="complex or scenario JSON, inline or as a file path")
        p.add_argument("--construct", help="build a named construction instead")
        p.add_argument("--param", action="append", help="construction parameter KEY=VALUE")
        return p

    parser = argparse.ArgumentParser(prog="shellpoly", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="emit a named scenario as JSON")
    p.add_argument("name")
    p.add_argument("param", nargs="*", help="KEY=VALUE, e.g. d=3 or a=1,3,2")
    p.set_defaults(func=cmd_construct)

    with_complex(sub.add_parser("faces", parents=[common], help="face counts")).set_defaults(func=cmd_faces)

    p = with_complex(sub.add_parser("hpoly", parents=[common], help="f- and h-polynomial of a (relative) complex"))
    p.add_argument("--removed", help="JSON list of faces generating the removed subcomplex")
    p.set_defaults(func=cmd_hpoly)

    p = with_complex(sub.add_parser("subdivide", parents=[common], help="subdivide and report h"))
    p.add_argument("--kind", choices=("barycentric", "edgewise"), default="barycentric")
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--removed")
    p.add_argument("--emit-complex", action="store_true")
    p.set_defaults(func=cmd_subdivide)

    p = with_complex(sub.add_parser("shelling", parents=[common], help="check an order of the cells"))
    p.add_argument("--order", default=None, help="'lex', 'given', or comma-separated cell indices")
    p.add_argument("--subdiv", choices=("barycentric", "edgewise"))
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--expect-stable", choices=("true", "false"))
    p.set_defaults(func=cmd_shelling)

    p = sub.add_parser("eulerian", parents=[common], help="colored l-Eulerian polynomials")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--method", choices=("formula", "descents", "lattice"), default="formula")
    p.add_argument("--table", action="store_true", help="all d' <= d and l <= d'")
    p.set_defaults(func=cmd_eulerian)

    p = sub.add_parser("interlace", parents=[common], help="test p before q, or a whole sequence")
    p.add_argument("poly", nargs="+", help="JSON coefficient lists, lowest degree first")
    p.add_argument("--sequence", action="store_true")
    p.set_defaults(func=cmd_interlace)

    p = sub.add_parser("lineshell", parents=[common], help="line shelling of a polytope")
    p.add_argument("--polytope", required=True, help=f"JSON file/inline, or one of {sorted(_POLYTOPES)}")
    p.add_argument("--point")
    p.add_argument("--dir")
    p.add_argument("--trials", type=int, default=0)
    p.add_argument("--generic", action="store_true", help="resample until TRIALS generic lines")
    p.set_defaults(func=cmd_lineshell)

    p = sub.add_parser("verify", parents=[common], help="run named check suites")
    p.add_argument("suites", nargs="*", help=f"any of {list(SUITES)} or 'all'")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    start = time.perf_counter()
    try:
        report, code = args.func(args)
    except (ShellpolyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.command == "lineshell":
        report.setdefault("seed", args.seed)
    if args.command == "verify":
        report["seconds"] = round(time.perf_counter() - start, 3)
    # a construction is data meant to be fed back in, so it is always JSON
    text = render(report, "json" if args.command == "construct" else args.format)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
