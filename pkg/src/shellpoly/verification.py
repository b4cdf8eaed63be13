"""Named check suites, one per acceptance criterion, shared by the CLI and the tests.

Every suite returns a :class:`SuiteResult` whose checks carry the expected
and the observed value, so a failure says exactly what disagreed.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable

from .cellcomplex import Complex, CubeChart, RelativeComplex, h_polynomial, is_stable_relative
from .constructions import (
    cube_boundary,
    cuboid_boundary,
    gallery,
    halfopen_cube,
    l_fold_capped,
    nonstable_pile_order,
    pile_of_cubes,
    simplex_relative,
    stacked_simplicial,
    table_top,
)
from .eulerian import (
    HalfOpenBox,
    colored_eulerian,
    colored_eulerian_by_descents,
    hstar_by_interpolation,
    hstar_halfopen_cube,
)
from .lineshell import LineQuery, evaluate_line, polygon, random_line_search, trapezoid, unit_cube
from .polyreal import (
    IntPolynomial,
    convolution_power,
    is_interlacing_sequence,
    is_real_rooted,
    reverse,
    shifted_section,
)
from .shelling import check_interlacing_theorem, is_stable_shelling
from .subdivision import (
    Barycentric,
    Edgewise,
    barycentric,
    edgewise_cubical,
    edgewise_simplicial,
    h_edgewise_from_h,
    h_sd_from_h,
)


def _render(value):
    if isinstance(value, IntPolynomial):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_render(v) for v in value]
    if isinstance(value, dict):
        return {k: _render(v) for k, v in value.items()}
    return value


@dataclass
class Check:
    name: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def to_json(self) -> dict:
        return {"check": self.name, "expected": _render(self.expected), "actual": _render(self.actual), "ok": self.ok}


@dataclass
class SuiteResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0
    limit: float | None = None  # wall-time budget in seconds, if the criterion has one
    info: dict = field(default_factory=dict)

    def add(self, name: str, expected, actual) -> Check:
        c = Check(name, expected, actual)
        self.checks.append(c)
        return c

    @property
    def within_time(self) -> bool:
        return self.limit is None or self.seconds < self.limit

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks) and self.within_time

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def to_json(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "time_limit": self.limit,
            "checks": [c.to_json() for c in self.checks],
            "info": _render(self.info),
        }


def _timed(name: str, limit: float | None = None):
    def wrap(fn: Callable[[SuiteResult], None]) -> Callable[[], SuiteResult]:
        def run() -> SuiteResult:
            res = SuiteResult(name, limit=limit)
            start = time.perf_counter()
            fn(res)
            res.seconds = time.perf_counter() - start
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


@_timed("table-top", limit=1.0)
def table_top_suite(res: SuiteResult) -> None:
    h = h_polynomial(barycentric(table_top()), 4)
    res.add("h(sd table-top)", IntPolynomial([0, 22, 4, 22]), h)
    res.add("real-rooted", False, is_real_rooted(h))


@_timed("cube-boundary-sd", limit=10.0)
def cube_boundary_sd_suite(res: SuiteResult) -> None:
    for d in range(1, 5):
        h = h_polynomial(barycentric(cube_boundary(d).complex), d)
        res.add(f"d={d}", colored_eulerian_by_descents(d, 0, 2), h)


@_timed("half-open-simplex")
def half_open_simplex_suite(res: SuiteResult) -> None:
    for d in range(0, 7):
        for ell in range(d + 2):
            res.add(f"d={d} l={ell}", IntPolynomial.monomial(ell), h_polynomial(simplex_relative(d, ell), d + 1))


def stable_relative_cubes(d: int) -> list[tuple[tuple[int, ...], RelativeComplex]]:
    """Every stable relative d-cube, keyed by the indices of its removed facets."""
    cube = CubeChart(d, tuple(range(2**d)))
    facets = cube.facets()
    out = []
    for k in range(len(facets) + 1):
        for idx in itertools.combinations(range(len(facets)), k):
            chosen = [facets[i] for i in idx]
            if is_stable_relative(cube, chosen):
                out.append((idx, RelativeComplex.generated(Complex([cube], "cubical"), chosen)))
    return out


@_timed("sd-transform")
def sd_transform_suite(res: SuiteResult) -> None:
    for d in range(0, 6):
        for ell in range(d + 2):
            rc = simplex_relative(d, ell)
            h = h_polynomial(rc, d + 1)
            res.add(f"simplex d={d} l={ell}", h_sd_from_h(h, d + 1), h_polynomial(barycentric(rc), d + 1))
    for d in range(1, 4):
        for idx, rc in stable_relative_cubes(d):
            h = h_polynomial(rc, d + 1)
            res.add(f"cube d={d} removed={list(idx)}", h_sd_from_h(h, d + 1), h_polynomial(barycentric(rc), d + 1))


def ladder(d: int, r: int) -> list[IntPolynomial]:
    """``(A_{d,0}, ..., A_{d,d}, x I_d A_{d,d}, ..., x I_d A_{d,0})`` for the r-colored family."""
    up = [colored_eulerian(d, ell, r) for ell in range(d + 1)]
    return up + [reverse(p, d).shift(1) for p in reversed(up)]


@_timed("interlacing-ladder")
def interlacing_ladder_suite(res: SuiteResult) -> None:
    for d in range(1, 6):
        res.add(f"r=2 d={d}", True, is_interlacing_sequence(ladder(d, 2)))
    # the colored ladders are claimed for r >= 2; r = 1 is recorded, not required
    for r in (2, 3):
        for d in range(1, 5):
            res.add(f"r={r} d={d}", True, is_interlacing_sequence(ladder(d, r)))
    res.info["r=1 ladders interlacing"] = {d: is_interlacing_sequence(ladder(d, 1)) for d in range(1, 5)}


@_timed("eulerian-3way")
def eulerian_3way_suite(res: SuiteResult) -> None:
    for d in range(1, 5):
        for r in range(1, 4):
            for ell in range(d + 1):
                a = colored_eulerian(d, ell, r)
                res.add(f"descents d={d} l={ell} r={r}", a, colored_eulerian_by_descents(d, ell, r))
                res.add(f"lattice d={d} l={ell} r={r}", a, hstar_by_interpolation(HalfOpenBox(d, r, ell)))
                res.add(f"degree d={d} l={ell} r={r}", d - 1 if r == 1 and ell < d else d, a.degree())


@_timed("piles")
def piles_suite(res: SuiteResult) -> None:
    for a in [(2, 2), (1, 3, 2), (2, 2, 2)]:
        scen = pile_of_cubes(a)
        v = is_stable_shelling(scen.complex, scen.order)
        res.add(f"{scen.name} lex", (True, True), (v.is_shelling, v.is_stable))
    scen = nonstable_pile_order()
    v = is_stable_shelling(scen.complex, scen.order)
    res.add("non-stable order", (True, False, 6), (v.is_shelling, v.is_stable, v.failing_step))


@_timed("cuboids", limit=120.0)
def cuboids_suite(res: SuiteResult) -> None:
    cases = [(d, ell) for d in range(1, 4) for ell in range(d + 1)] + [(4, ell) for ell in range(3)]
    for d, ell in cases:
        scen = cuboid_boundary(d, ell)
        v = is_stable_shelling(scen.complex, scen.order)
        rep = check_interlacing_theorem(scen.complex, scen.order, Barycentric())
        res.add(f"d={d} l={ell} stable shelling", (True, True), (v.is_shelling, v.is_stable))
        res.add(f"d={d} l={ell} real-rooted", True, is_real_rooted(rep.h_direct))
        res.add(f"d={d} l={ell} sum of parts", rep.h_direct, rep.h_total)


@_timed("capped")
def capped_suite(res: SuiteResult) -> None:
    for folds in (1, 2):
        scen = l_fold_capped(3, folds)
        v = is_stable_shelling(scen.complex, scen.order)
        rep = check_interlacing_theorem(scen.complex, scen.order, Barycentric())
        res.add(f"{folds}-fold stable shelling", (True, True), (v.is_shelling, v.is_stable))
        res.add(f"{folds}-fold real-rooted", True, is_real_rooted(rep.h_direct))


@_timed("edgewise-simplicial")
def edgewise_simplicial_suite(res: SuiteResult) -> None:
    for d in range(1, 4):
        for ell in range(1, d + 2):
            for r in range(1, 5):
                rc = simplex_relative(d, ell)
                expected = shifted_section(convolution_power(r, d + 1), r, r - ell).shift(1)
                res.add(f"d={d} l={ell} r={r}", expected, h_polynomial(edgewise_simplicial(rc, r), d + 1))
    # shellable simplicial boundaries of dimension dim, with r > dim
    for n in (2, 3, 4):
        dim = n - 1
        for k in (0, 1, 2):
            c = stacked_simplicial(n, k).complex
            for r in range(dim + 1, 5):
                h = h_polynomial(edgewise_simplicial(c, r), dim + 1)
                res.add(f"stacked-{n}-{k} r={r} real-rooted", True, is_real_rooted(h))
                res.add(f"stacked-{n}-{k} r={r} formula", h_edgewise_from_h(h_polynomial(c, dim + 1), dim, r), h)
    # every nonnegative h with coefficients in {0,1,2}, degree <= d+1
    for d in range(1, 4):
        bad = []
        for coeffs in itertools.product(range(3), repeat=d + 2):
            h = IntPolynomial(coeffs)
            for r in (d + 1, d + 2):
                if not is_real_rooted(h_edgewise_from_h(h, d, r)):
                    bad.append((coeffs, r))
        res.add(f"transform real-rooted d={d}", [], bad)


@_timed("edgewise-cubical")
def edgewise_cubical_suite(res: SuiteResult) -> None:
    for d in range(1, 4):
        for r in range(1, 4):
            for ell in range(2 * d + 1):
                h = h_polynomial(edgewise_cubical(halfopen_cube(d, ell), r), d + 1)
                res.add(f"d={d} l={ell} r={r}", hstar_halfopen_cube(d, ell, r), h)
    h = h_polynomial(edgewise_cubical(cube_boundary(3).complex, 2), 3)
    res.add("boundary 3-cube r=2 real-rooted", True, is_real_rooted(h))


@_timed("line-shelling", limit=30.0)
def line_shelling_suite(res: SuiteResult) -> None:
    cube = random_line_search(unit_cube(3), 100, seed=0, require_generic=True)
    res.add("cube lines", 100, cube["lines"])
    res.add("cube shelling", 100, cube["shelling"])
    res.add("cube stable", 100, cube["stable"])
    res.add("cube strongly stable", 100, cube["strongly_stable"])
    quad = random_line_search(trapezoid(), 100, seed=1, require_generic=True)
    res.add("quadrilateral stable", quad["lines"], quad["stable"])
    square = random_line_search(polygon([(0, 0), (1, 0), (1, 1), (0, 1)]), 50, seed=2)
    res.add("square stable", square["lines"], square["stable"])
    res.add("chain breaks", 0, cube["chain_breaks"] + quad["chain_breaks"] + square["chain_breaks"])
    v = evaluate_line(trapezoid(), LineQuery((2, 1), (1, 5)))
    res.add("far point step", (False, True, True), (v.strong_steps[2], v.per_facet_steps[2], v.is_stable))
    res.info.update(cube=cube, quadrilateral=quad, square=square)


def _stable_scenarios():
    return [s for s in gallery() if s.expected.get("is_stable")]


@_timed("shelling-harness")
def shelling_harness_suite(res: SuiteResult) -> None:
    for scen in _stable_scenarios():
        # edgewise parameter: the smallest r covered by the real-rootedness results
        r = max(2, scen.complex.dim + 1) if scen.complex.kind == "simplicial" else 2
        for subdiv in (Barycentric(), Edgewise(r)):
            rep = check_interlacing_theorem(scen.complex, scen.order, subdiv)
            res.add(f"{scen.name} {subdiv.name}", (True, True), (rep.ordering_found, rep.real_rooted))
    scen = nonstable_pile_order()
    rep = check_interlacing_theorem(scen.complex, scen.order, Barycentric())
    res.add("non-stable pile pairwise comparable", False, rep.pairwise_ok)
    res.info["non-stable pile step h"] = rep.h_steps


SUITES: dict[str, Callable[[], SuiteResult]] = {
    "table-top": table_top_suite,
    "cube-boundary-sd": cube_boundary_sd_suite,
    "half-open-simplex": half_open_simplex_suite,
    "sd-transform": sd_transform_suite,
    "interlacing-ladder": interlacing_ladder_suite,
    "eulerian-3way": eulerian_3way_suite,
    "piles": piles_suite,
    "cuboids": cuboids_suite,
    "capped": capped_suite,
    "edgewise-simplicial": edgewise_simplicial_suite,
    "edgewise-cubical": edgewise_cubical_suite,
    "line-shelling": line_shelling_suite,
    "shelling-harness": shelling_harness_suite,
}


def run_suites(names=None) -> list[SuiteResult]:
    names = list(SUITES) if not names or names == ["all"] else names
    return [SUITES[n]() for n in names]
