"""Generators for the complexes and shelling orders that the checks run on."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from .cellcomplex import Complex, CubeChart, RelativeComplex, SimplexCell
from .errors import BudgetExceededError, InputRangeError


@dataclass
class NamedScenario:
    """A complex with a cell order and the verdicts that order should get."""

    name: str
    complex: Complex
    order: tuple[int, ...]
    expected: dict = field(default_factory=dict)
    # free-form facts about the scenario, e.g. which cells came from a cap
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "complex": self.complex.to_json(),
            "order": list(self.order),
            "expected": dict(self.expected),
        }


def _point_id(point: Sequence[int], radices: Sequence[int]) -> int:
    idx = 0
    for x, base in zip(point, radices):
        idx = idx * base + x
    return idx


def _box_chart(lower: Sequence[int], steps: Sequence[int], free: Sequence[int], radices: Sequence[int]) -> CubeChart:
    """Chart of the box ``lower + sum_{j in free} [0, steps[j]] e_j``."""
    corners = []
    for bits in itertools.product((0, 1), repeat=len(free)):
        p = list(lower)
        for j, b in zip(free, bits):
            p[j] += b * steps[j]
        corners.append(_point_id(p, radices))
    return CubeChart(len(free), tuple(corners))


def cube_boundary(d: int) -> NamedScenario:
    """Boundary of the d-cube with facets ordered ``x_1=0, ..., x_d=0, x_1=1, ..., x_d=1``."""
    if not 1 <= d <= 5:
        raise InputRangeError("cube_boundary needs 1 <= d <= 5")
    cells = []
    for b in (0, 1):
        for i in range(d):
            lower = [0] * d
            lower[i] = b
            free = [j for j in range(d) if j != i]
            cells.append(_box_chart(lower, [1] * d, free, [2] * d))
    c = Complex(cells, "cubical")
    return NamedScenario(f"cube-boundary-{d}", c, tuple(range(len(cells))), {"is_shelling": True, "is_stable": True})


def _pile_cells(a: Sequence[int]) -> tuple[list[tuple[int, ...]], list[CubeChart]]:
    d = len(a)
    radices = [x + 1 for x in a]
    zs = list(itertools.product(*(range(x) for x in a)))
    cells = [_box_chart(z, [1] * d, list(range(d)), radices) for z in zs]
    return zs, cells


def pile_of_cubes(a: Sequence[int], budget: int = 500) -> NamedScenario:
    """All unit cubes in the box ``[0,a_1] x ... x [0,a_d]``, ordered lexicographically."""
    a = tuple(a)
    if not a or any(x < 1 for x in a):
        raise InputRangeError("pile sides must be positive integers")
    if math.prod(a) > budget:
        raise BudgetExceededError(f"pile with {math.prod(a)} cubes exceeds budget {budget}")
    zs, cells = _pile_cells(a)
    c = Complex(cells, "cubical")
    name = "pile-" + "x".join(map(str, a))
    return NamedScenario(name, c, tuple(range(len(cells))), {"is_shelling": True, "is_stable": True}, {"index": zs})


def nonstable_pile_order() -> NamedScenario:
    """A shelling of the pile ``1 x 3 x 2`` whose last step is the table-top complex."""
    base = pile_of_cubes((1, 3, 2))
    zs = base.notes["index"]
    wanted = [(0, 0, 0), (0, 1, 0), (0, 2, 0), (0, 0, 1), (0, 2, 1), (0, 1, 1)]
    order = tuple(zs.index(z) for z in wanted)
    return NamedScenario(
        "nonstable-pile",
        base.complex,
        order,
        {"is_shelling": True, "is_stable": False, "failing_step": 6},
        {"index": zs},
    )


def cuboid_boundary(d: int, ell: int) -> NamedScenario:
    """Boundary of ``[0,2]^d`` cut by the hyperplanes ``x_1 = 1, ..., x_ell = 1``.

    Facets of the big cube come in the order ``x_1=0, ..., x_d=0, x_1=2,
    ..., x_d=2``; the boxes inside one facet are ordered lexicographically by
    their smallest vertex.
    """
    if not 1 <= d <= 4 or not 0 <= ell <= d:
        raise InputRangeError("cuboid_boundary needs 1 <= d <= 4 and 0 <= ell <= d")
    radices = [3] * d
    cells = []
    for b in (0, 2):
        for i in range(d):
            free = [j for j in range(d) if j != i]
            starts = [(0, 1) if j < ell else (0,) for j in free]
            steps = [1 if j < ell else 2 for j in range(d)]
            for st in itertools.product(*starts):
                lower = [0] * d
                lower[i] = b
                for j, s in zip(free, st):
                    lower[j] = s
                cells.append(_box_chart(lower, steps, free, radices))
    c = Complex(cells, "cubical")
    return NamedScenario(f"cuboid-{d}-{ell}", c, tuple(range(len(cells))), {"is_shelling": True, "is_stable": True})


def capped(base: NamedScenario, cell_index: int) -> NamedScenario:
    """Glue a new cube onto the boundary cell ``cell_index`` and splice its cells into the order.

    The new cube ``C`` has chart ``{0,1}^d`` with its facet ``x_1 = 0``
    identified with the capped cell through that cell's chart.  The capped
    cell is replaced in the order by ``G_2..G_d, G_{d+1}..G_{2d}``, where
    ``G_i`` is the facet ``x_i = 0`` and ``G_{d+i}`` the facet ``x_i = 1`` of C.
    """
    c = base.complex
    if c.kind != "cubical":
        raise InputRangeError("capping needs a cubical complex")
    if not 0 <= cell_index < len(c.cells):
        raise InputRangeError(f"cell {cell_index} is not in the complex")
    face = c.cells[cell_index]
    dd = face.d + 1
    fresh = max(c.vertices()) + 1
    corners = {}
    for bits in itertools.product((0, 1), repeat=dd):
        if bits[0] == 0:
            corners[bits] = face.corner(bits[1:])
        else:
            corners[bits] = fresh + sum(b << (dd - 2 - k) for k, b in enumerate(bits[1:]))

    def facet_chart(i: int, b: int) -> CubeChart:
        out = []
        for sub in itertools.product((0, 1), repeat=dd - 1):
            bits = sub[:i] + (b,) + sub[i:]
            out.append(corners[bits])
        return CubeChart(dd - 1, tuple(out))

    new_cells = [facet_chart(i, 0) for i in range(1, dd)] + [facet_chart(i, 1) for i in range(dd)]
    kept = [k for k in range(len(c.cells)) if k != cell_index]
    cells = [c.cells[k] for k in kept] + new_cells
    remap = {k: n for n, k in enumerate(kept)}
    first_new = len(kept)
    order = []
    for k in base.order:
        if k == cell_index:
            order.extend(range(first_new, first_new + len(new_cells)))
        else:
            order.append(remap[k])
    origin = base.notes.get("origin", ["base"] * len(c.cells))
    notes = dict(base.notes)
    notes["origin"] = [origin[k] for k in kept] + [f"cap{notes.get('caps', 0) + 1}"] * len(new_cells)
    notes["caps"] = notes.get("caps", 0) + 1
    notes["capped_facets"] = list(base.notes.get("capped_facets", [])) + [sorted(face.vertex_set())]
    return NamedScenario(
        f"{base.name}+cap", Complex(cells, "cubical"), tuple(order), {"is_shelling": True, "is_stable": True}, notes
    )


def l_fold_capped(d: int, caps: Sequence[int] | int = 1) -> NamedScenario:
    """Boundary of the d-cube capped repeatedly.

    ``caps`` is either a number of caps, placed by the default rule, or an
    explicit sequence of cell indices in the current complex.  The default
    picks a cell of the original cube disjoint from the previously capped
    cell when there is one, otherwise the first original cell.
    """
    scen = cube_boundary(d)
    scen.notes["origin"] = ["base"] * len(scen.complex.cells)
    if isinstance(caps, int):
        if caps < 0:
            raise InputRangeError("number of caps must be nonnegative")
        last: frozenset | None = None
        for _ in range(caps):
            cells = scen.complex.cells
            originals = [k for k, o in enumerate(scen.notes["origin"]) if o == "base"]
            if not originals:
                raise InputRangeError("no original cell left to cap")
            pick = originals[0]
            if last is not None:
                disjoint = [k for k in originals if not (cells[k].vertex_set() & last)]
                if disjoint:
                    pick = disjoint[0]
            last = cells[pick].vertex_set()
            scen = capped(scen, pick)
    else:
        for k in caps:
            scen = capped(scen, k)
    scen.name = f"capped-{d}-{scen.notes.get('caps', 0)}"
    return scen


def simplex_relative(d: int, ell: int) -> RelativeComplex:
    """A d-simplex on vertices ``1..d+1`` minus the facets omitting vertices ``1..ell``."""
    if d < 0 or not 0 <= ell <= d + 1:
        raise InputRangeError("simplex_relative needs 0 <= ell <= d+1")
    verts = frozenset(range(1, d + 2))
    c = Complex([SimplexCell(verts)], "simplicial")
    return RelativeComplex.generated(c, [verts - {v} for v in range(1, ell + 1)])


def halfopen_cube(d: int, ell: int) -> RelativeComplex:
    """The d-cube minus ``ell`` facets in normal form.

    For ``ell <= d`` the facets ``x_d = 1, ..., x_{d+1-ell} = 1`` go; for
    ``ell > d`` all upper facets go together with ``x_d = 0, ...,
    x_{2d+1-ell} = 0``.  Every such complex is stable.
    """
    if d < 1 or not 0 <= ell <= 2 * d:
        raise InputRangeError("halfopen_cube needs d >= 1 and 0 <= ell <= 2d")
    cube = CubeChart(d, tuple(range(2**d)))
    upper = [cube.pattern_vertices(cube.facet_pattern(i, 1)) for i in reversed(range(d))]
    lower = [cube.pattern_vertices(cube.facet_pattern(i, 0)) for i in reversed(range(d))]
    removed = upper[:ell] if ell <= d else upper + lower[: ell - d]
    return RelativeComplex.generated(Complex([cube], "cubical"), removed)


def table_top() -> RelativeComplex:
    """The 3-cube minus the facets ``x_2 = 0``, ``x_2 = 1`` and ``x_3 = 0``.

    Both the removed facets and the remaining ones contain an opposing pair,
    so this is the smallest unstable relative cube.
    """
    cube = CubeChart(3, tuple(range(8)))
    removed = [cube.pattern_vertices(cube.facet_pattern(i, b)) for i, b in ((1, 0), (1, 1), (2, 0))]
    return RelativeComplex.generated(Complex([cube], "cubical"), removed)


def stacked_simplicial(d: int, k: int = 0) -> NamedScenario:
    """Boundary of a d-simplex, stacked ``k`` times over the last cell of the order.

    Each stacking replaces the last cell F by the cone over the boundary of F
    with a new apex, appended in order.
    """
    if d < 1 or k < 0:
        raise InputRangeError("stacked_simplicial needs d >= 1 and k >= 0")
    verts = list(range(d + 1))
    cells = [frozenset(verts) - {v} for v in reversed(verts)]
    for step in range(k):
        top = cells.pop()
        apex = d + 1 + step
        cells.extend((top - {u}) | {apex} for u in sorted(top))
    c = Complex([SimplexCell(f) for f in cells], "simplicial")
    return NamedScenario(f"stacked-{d}-{k}", c, tuple(range(len(cells))), {"is_shelling": True, "is_stable": True})


def simplex_boundary(d: int) -> NamedScenario:
    return stacked_simplicial(d, 0)


def two_disjoint_squares() -> NamedScenario:
    cells = [CubeChart(2, (0, 1, 2, 3)), CubeChart(2, (4, 5, 6, 7))]
    return NamedScenario("disjoint-squares", Complex(cells, "cubical"), (0, 1), {"is_shelling": False, "is_stable": False})


def gallery() -> list[NamedScenario]:
    """The standard scenarios whose verdicts are part of the regression contract."""
    out = [cube_boundary(d) for d in range(1, 5)]
    out += [pile_of_cubes(a) for a in [(2, 1), (2, 2), (1, 3, 2), (2, 2, 2)]]
    out.append(nonstable_pile_order())
    out += [cuboid_boundary(d, ell) for d in range(1, 4) for ell in range(d + 1)]
    out += [l_fold_capped(3, 1), l_fold_capped(3, 2)]
    out += [stacked_simplicial(d, k) for d in (2, 3) for k in (0, 1, 2)]
    out.append(two_disjoint_squares())
    return out


def build(name: str, **params) -> NamedScenario:
    """Build a scenario by its CLI name."""
    builders = {
        "cube-boundary": lambda: cube_boundary(int(params.get("d", 3))),
        "pile": lambda: pile_of_cubes(tuple(params.get("a", (1, 3, 2)))),
        "nonstable-pile": nonstable_pile_order,
        "cuboid": lambda: cuboid_boundary(int(params.get("d", 3)), int(params.get("l", 1))),
        "capped": lambda: l_fold_capped(int(params.get("d", 3)), int(params.get("folds", 1))),
        "stacked": lambda: stacked_simplicial(int(params.get("d", 3)), int(params.get("k", 1))),
        "simplex-boundary": lambda: simplex_boundary(int(params.get("d", 3))),
    }
    if name not in builders:
        raise InputRangeError(f"unknown construction {name!r}; choose from {sorted(builders)}")
    return builders[name]()
