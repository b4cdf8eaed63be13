"""Line shellings of convex polytopes, computed exactly over the rationals.

A polytope is given by vertices, facet inequalities ``<a, x> <= b`` and the
incidence between them.  A generic line ``p + t v`` meets every facet
hyperplane once; walking outward from the exit point, through infinity and
back in, orders the facets.  Each facet then gets a relative complex whose
removed part is the set of its ridges visible from the crossing point
(before infinity) or not visible (after infinity).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cellcomplex import Complex, CubeChart, SimplexCell, is_stable_relative
from .errors import BudgetExceededError, MalformedPolytopeError, NonGenericLineError, UnsupportedInputError
from .shelling import is_shelling, shelling_steps

Vector = tuple[Fraction, ...]


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def affine_rank(points: Sequence[Vector]) -> int:
    """Dimension of the affine span of the points (-1 for no points)."""
    if not points:
        return -1
    base = points[0]
    rows = [[x - y for x, y in zip(p, base)] for p in points[1:]]
    rank = 0
    ncols = len(base)
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class RationalHyperplane:
    a: Vector
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(Fraction(x) for x in self.a))
        object.__setattr__(self, "b", Fraction(self.b))
        if all(x == 0 for x in self.a):
            raise MalformedPolytopeError("hyperplane normal is zero")

    def slack(self, x: Sequence[Fraction]) -> Fraction:
        """``<a, x> - b``; negative strictly inside the facet's half-space."""
        return _dot(self.a, x) - self.b


class PolytopeHV:
    """A full-dimensional polytope with vertices, facets and their incidence, validated."""

    def __init__(self, vertices: Sequence[Sequence], facets: Sequence[RationalHyperplane], incidence: Sequence[Sequence[int]]):
        self.vertices: tuple[Vector, ...] = tuple(tuple(Fraction(x) for x in v) for v in vertices)
        self.facets = tuple(facets)
        self.incidence = tuple(frozenset(s) for s in incidence)
        if not self.vertices:
            raise MalformedPolytopeError("polytope has no vertices")
        self.d = len(self.vertices[0])
        if any(len(v) != self.d for v in self.vertices) or any(len(h.a) != self.d for h in self.facets):
            raise MalformedPolytopeError("inconsistent ambient dimension")
        if len(self.incidence) != len(self.facets):
            raise MalformedPolytopeError("one incidence set per facet is required")
        if affine_rank(self.vertices) != self.d:
            raise MalformedPolytopeError("vertices do not span the ambient space")
        for i, (h, inc) in enumerate(zip(self.facets, self.incidence)):
            for k, v in enumerate(self.vertices):
                s = h.slack(v)
                if s > 0:
                    raise MalformedPolytopeError(f"vertex {k} violates facet {i}")
                if (s == 0) != (k in inc):
                    raise MalformedPolytopeError(f"incidence of vertex {k} and facet {i} is wrong")
            if affine_rank([self.vertices[k] for k in sorted(inc)]) != self.d - 1:
                raise MalformedPolytopeError(f"facet {i} does not span a hyperplane")
        self.ridges: list[dict[int, frozenset]] = []
        for i, inc in enumerate(self.incidence):
            adj = {}
            for j, other in enumerate(self.incidence):
                common = inc & other
                if j != i and common and affine_rank([self.vertices[k] for k in sorted(common)]) == self.d - 2:
                    adj[j] = common
            self.ridges.append(adj)

    def facet_cell(self, i: int):
        """The facet as a simplex or a combinatorial cube, built from incidence."""
        inc = self.incidence[i]
        dim = self.d - 1
        if len(inc) == dim + 1:
            return SimplexCell(inc)
        ridges = list(self.ridges[i].values())
        if len(inc) == 2**dim and len(ridges) == 2 * dim:
            pairs = []
            for r in sorted(ridges, key=min):
                opp = [s for s in ridges if not (s & r)]
                if len(opp) != 1:
                    break
                if min(r) < min(opp[0]):
                    pairs.append((r, opp[0]))
            else:
                if len(pairs) == dim:
                    corners = []
                    for bits in itertools.product((0, 1), repeat=dim):
                        common = set(inc)
                        for (r0, r1), b in zip(pairs, bits):
                            common &= r1 if b else r0
                        if len(common) != 1:
                            raise UnsupportedInputError(f"facet {i} is not a combinatorial cube")
                        corners.append(common.pop())
                    return CubeChart(dim, tuple(corners))
        raise UnsupportedInputError(f"facet {i} is neither a simplex nor a combinatorial cube")

    def boundary_complex(self) -> Complex:
        cells = [self.facet_cell(i) for i in range(len(self.facets))]
        kinds = {type(c) for c in cells}
        if len(kinds) != 1:
            raise UnsupportedInputError("facets mix simplices and cubes")
        return Complex(cells, "cubical" if kinds == {CubeChart} else "simplicial")

    def to_json(self) -> dict:
        return {
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "facets": [
                {"a": [str(x) for x in h.a], "b": str(h.b), "vertices": sorted(inc)}
                for h, inc in zip(self.facets, self.incidence)
            ],
        }


def polytope_from_json(data: dict | str) -> PolytopeHV:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedPolytopeError(f"invalid JSON: {exc}") from exc
    try:
        vertices = [[Fraction(x) for x in v] for v in data["vertices"]]
        facets = [RationalHyperplane([Fraction(x) for x in f["a"]], Fraction(f["b"])) for f in data["facets"]]
        incidence = [f["vertices"] for f in data["facets"]]
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedPolytopeError(f"bad polytope JSON: {exc}") from exc
    return PolytopeHV(vertices, facets, incidence)


def unit_cube(d: int) -> PolytopeHV:
    verts = list(itertools.product((0, 1), repeat=d))
    facets, incidence = [], []
    for b in (0, 1):
        for i in range(d):
            a = [0] * d
            a[i] = -1 if b == 0 else 1
            facets.append(RationalHyperplane(a, b))
            incidence.append([k for k, v in enumerate(verts) if v[i] == b])
    return PolytopeHV(verts, facets, incidence)


def standard_simplex(d: int) -> PolytopeHV:
    verts = [tuple([0] * d)] + [tuple(1 if j == i else 0 for j in range(d)) for i in range(d)]
    facets, incidence = [], []
    for i in range(d):
        a = [0] * d
        a[i] = -1
        facets.append(RationalHyperplane(a, 0))
        incidence.append([k for k, v in enumerate(verts) if v[i] == 0])
    facets.append(RationalHyperplane([1] * d, 1))
    incidence.append(list(range(1, d + 1)))
    return PolytopeHV(verts, facets, incidence)


def polygon(points: Sequence[Sequence]) -> PolytopeHV:
    """A convex polygon from its vertices in counter-clockwise order."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    n = len(pts)
    facets, incidence = [], []
    for k in range(n):
        (x0, y0), (x1, y1) = pts[k], pts[(k + 1) % n]
        a = (y1 - y0, x0 - x1)
        facets.append(RationalHyperplane(a, a[0] * x0 + a[1] * y0))
        incidence.append([k, (k + 1) % n])
    return PolytopeHV(pts, facets, incidence)


def trapezoid() -> PolytopeHV:
    """Quadrilateral whose side lines meet above the top edge, so a far point can sit beyond a non-adjacent line."""
    return polygon([(0, 0), (4, 0), (3, 2), (1, 2)])


# --- line shellings -----------------------------------------------------------


@dataclass(frozen=True)
class LineQuery:
    p: Vector
    v: Vector

    def __post_init__(self):
        object.__setattr__(self, "p", tuple(Fraction(x) for x in self.p))
        object.__setattr__(self, "v", tuple(Fraction(x) for x in self.v))
        if all(x == 0 for x in self.v):
            raise NonGenericLineError("direction vector is zero")

    def at(self, t: Fraction) -> Vector:
        return tuple(x + t * y for x, y in zip(self.p, self.v))

    def reversed(self) -> "LineQuery":
        return LineQuery(self.p, tuple(-x for x in self.v))


def line_intersections(P: PolytopeHV, L: LineQuery) -> list[tuple[int, Fraction]]:
    if len(L.p) != P.d or len(L.v) != P.d:
        raise NonGenericLineError("line lives in the wrong dimension")
    out = []
    for i, h in enumerate(P.facets):
        av = _dot(h.a, L.v)
        if av == 0:
            raise NonGenericLineError(f"line is parallel to facet {i}")
        out.append((i, -h.slack(L.p) / av))
    params = [t for _, t in out]
    if len(set(params)) != len(params):
        raise NonGenericLineError("line meets two facet hyperplanes at the same point")
    upper = min(t for (i, t) in out if _dot(P.facets[i].a, L.v) > 0)
    lower = max(t for (i, t) in out if _dot(P.facets[i].a, L.v) < 0)
    if not lower < upper:
        raise NonGenericLineError("line misses the interior of the polytope")
    return out


@dataclass
class LineShellingResult:
    order: list[int]
    before_infinity: int  # number t of facets met before passing through infinity
    params: dict[int, Fraction]
    points: dict[int, Vector]
    visible: list[frozenset]  # adjacent facet indices whose ridge is visible from q_i
    removed: list[frozenset]  # adjacent facet indices whose ridge is removed at step i

    def removed_ridges(self, P: PolytopeHV, step: int) -> list[frozenset]:
        i = self.order[step]
        return [P.ridges[i][j] for j in sorted(self.removed[step])]


def line_shelling_order(P: PolytopeHV, L: LineQuery) -> LineShellingResult:
    hits = line_intersections(P, L)
    params = dict(hits)
    upper = min(t for (i, t) in hits if _dot(P.facets[i].a, L.v) > 0)
    outward = sorted((t, i) for i, t in hits if t >= upper)
    inward = sorted((t, i) for i, t in hits if t < upper)
    order = [i for _, i in outward] + [i for _, i in inward]
    points = {i: L.at(t) for i, t in hits}
    visible, removed = [], []
    for step, i in enumerate(order):
        q = points[i]
        vis = frozenset(j for j in P.ridges[i] if P.facets[j].slack(q) > 0)
        visible.append(vis)
        removed.append(vis if step < len(outward) else frozenset(P.ridges[i]) - vis)
    return LineShellingResult(order, len(outward), params, points, visible, removed)


@dataclass
class LineVerdict:
    is_shelling: bool
    is_stable: bool
    strongly_stable: bool
    per_facet: bool
    failing_step: int | None = None
    consistent: bool = True  # removed sets agree with the combinatorial intersections
    strong_steps: list[bool] = field(default_factory=list)
    per_facet_steps: list[bool] = field(default_factory=list)


def is_stable_line_shelling(P: PolytopeHV, L: LineQuery, result: LineShellingResult | None = None) -> tuple[bool, int | None]:
    res = result or line_shelling_order(P, L)
    for step, i in enumerate(res.order):
        if not is_stable_relative(P.facet_cell(i), res.removed_ridges(P, step)):
            return False, step + 1
    return True, None


def _fm_feasible(rows: list[tuple[Vector, Fraction]], dim: int, budget: int = 20000) -> bool:
    """Feasibility of ``{y : c.y <= k for (c, k) in rows}`` by Fourier-Motzkin elimination."""
    for var in range(dim):
        pos, neg, rest = [], [], []
        for c, k in rows:
            if c[var] > 0:
                pos.append((c, k))
            elif c[var] < 0:
                neg.append((c, k))
            else:
                rest.append((c, k))
        combined = set(rest)
        for cp, kp in pos:
            for cn, kn in neg:
                sp, sn = cp[var], -cn[var]
                c = tuple(x / sp + y / sn for x, y in zip(cp, cn))
                combined.add((c, kp / sp + kn / sn))
        if len(combined) > budget:
            raise BudgetExceededError("Fourier-Motzkin elimination grew past its budget")
        rows = [_normalize(c, k) for c, k in combined]
        rows = list(dict.fromkeys(rows))
    return all(k >= 0 for _, k in rows)


def _normalize(c: Vector, k: Fraction) -> tuple[Vector, Fraction]:
    scale = max((abs(x) for x in c), default=Fraction(0))
    if scale == 0:
        return c, k
    return tuple(x / scale for x in c), k / scale


def _region_feasible(P: PolytopeHV, i: int, q: Vector, hyperplanes: Sequence[int]) -> bool:
    """Does the closed region of ``q`` in the given arrangement meet facet ``i``?"""
    if P.d > 4:
        raise BudgetExceededError("feasibility tests are limited to dimension 4")
    h = P.facets[i]
    rows: list[tuple[Vector, Fraction]] = [(h.a, h.b), (tuple(-x for x in h.a), -h.b)]
    for j, g in enumerate(P.facets):
        if j != i:
            rows.append((g.a, g.b))
    for j in hyperplanes:
        if j == i:
            continue
        if P.facets[j].slack(q) > 0:
            g = P.facets[j]
            rows.append((tuple(-x for x in g.a), -g.b))
    return _fm_feasible(rows, P.d)


def strong_stability_steps(P: PolytopeHV, res: LineShellingResult) -> list[bool]:
    return [_region_feasible(P, i, res.points[i], range(len(P.facets))) for i in res.order]


def per_facet_steps(P: PolytopeHV, res: LineShellingResult) -> list[bool]:
    return [_region_feasible(P, i, res.points[i], sorted(P.ridges[i])) for i in res.order]


def is_strongly_stable(P: PolytopeHV, L: LineQuery) -> bool:
    return all(strong_stability_steps(P, line_shelling_order(P, L)))


def per_facet_condition(P: PolytopeHV, L: LineQuery) -> bool:
    return all(per_facet_steps(P, line_shelling_order(P, L)))


def evaluate_line(P: PolytopeHV, L: LineQuery) -> LineVerdict:
    res = line_shelling_order(P, L)
    c = P.boundary_complex()
    steps = shelling_steps(c, res.order)
    shell = is_shelling(c, res.order, steps).ok
    consistent = all(
        set(st.intersection_facets) == set(res.removed_ridges(P, k)) for k, st in enumerate(steps)
    )
    stable, failing = is_stable_line_shelling(P, L, res)
    strong = strong_stability_steps(P, res)
    facet = per_facet_steps(P, res)
    return LineVerdict(shell, stable, all(strong), all(facet), failing, consistent, strong, facet)


def suggest_direction(P: PolytopeHV, L: LineQuery, tries: int = 50) -> Vector:
    """A nearby rational direction making the line generic, if one is found."""
    for k in range(1, tries + 1):
        v = tuple(x + Fraction(j + 1, 97 * k) for j, x in enumerate(L.v))
        try:
            line_intersections(P, LineQuery(L.p, v))
            return v
        except NonGenericLineError:
            continue
    raise NonGenericLineError("no generic perturbation found")


def random_line_search(P: PolytopeHV, trials: int, seed: int, require_generic: bool = False) -> dict:
    """Sample rational lines through the interior and tally the verdicts.

    With ``require_generic`` the sampler keeps drawing until ``trials``
    generic lines were evaluated (at most ``50 * trials`` draws).
    """
    rng = random.Random(seed)
    stats = {
        "seed": seed,
        "trials": trials,
        "genericity_failures": 0,
        "lines": 0,
        "shelling": 0,
        "stable": 0,
        "strongly_stable": 0,
        "per_facet": 0,
        "chain_breaks": 0,
        "stable_without_region_condition": 0,
        "inconsistent_removed_sets": 0,
    }
    draws = 0
    while (stats["lines"] if require_generic else draws) < trials:
        draws += 1
        if draws > 50 * max(trials, 1):
            raise BudgetExceededError("too many non-generic lines sampled")
        weights = [rng.randint(1, 10) for _ in P.vertices]
        total = sum(weights)
        p = tuple(sum(Fraction(w, total) * v[k] for w, v in zip(weights, P.vertices)) for k in range(P.d))
        v = tuple(Fraction(rng.randint(-20, 20), rng.randint(1, 7)) for _ in range(P.d))
        try:
            verdict = evaluate_line(P, LineQuery(p, v))
        except NonGenericLineError:
            stats["genericity_failures"] += 1
            continue
        stats["lines"] += 1
        stats["shelling"] += verdict.is_shelling
        stats["stable"] += verdict.is_stable
        stats["strongly_stable"] += verdict.strongly_stable
        stats["per_facet"] += verdict.per_facet
        if (verdict.strongly_stable and not verdict.per_facet) or (verdict.per_facet and not verdict.is_stable):
            stats["chain_breaks"] += 1
        if verdict.is_stable and not verdict.per_facet:
            stats["stable_without_region_condition"] += 1
        if not verdict.consistent:
            stats["inconsistent_removed_sets"] += 1
    stats["draws"] = draws
    return stats
