"""Barycentric and edgewise subdivisions of relative complexes.

Each subdivision returns a simplicial :class:`RelativeComplex`.  Vertices of
the subdivision get integer labels from a :class:`VertexRegistry`, keyed by
an intrinsic description (the face a barycenter sits on, or the weights of
a lattice point on the corners of its carrier face).  Passing one registry
to several calls makes the labels agree, so per-cell subdivisions can be
compared with the subdivision of the whole complex.

A face of the subdivision is removed exactly when its carrier, the smallest
original face containing it, is removed.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Callable, Hashable, Sequence

import networkx as nx

from .cellcomplex import Complex, CubeChart, Face, RelativeComplex, SimplexCell
from .errors import BudgetExceededError, InputRangeError, MalformedComplexError, UnsupportedInputError
from .eulerian import colored_eulerian
from .polyreal import IntPolynomial, convolution_power, veronese_section


class VertexRegistry:
    """Assigns consecutive integer labels to hashable vertex keys."""

    def __init__(self):
        self.ids: dict[Hashable, int] = {}
        self.keys: list[Hashable] = []

    def __call__(self, key: Hashable) -> int:
        if key not in self.ids:
            self.ids[key] = len(self.keys)
            self.keys.append(key)
        return self.ids[key]


def _relative(sub: Complex, carrier: Callable[[Face], Face], rc: RelativeComplex) -> RelativeComplex:
    removed = frozenset(f for f in sub.face_dim if carrier(f) in rc.removed)
    return RelativeComplex(sub, removed)


# --- barycentric --------------------------------------------------------------


def _maximal_chains(c: Complex, top: Face) -> list[tuple[Face, ...]]:
    out = []

    def walk(chain):
        f = chain[-1]
        if c.face_dim[f] == 0:
            out.append(tuple(chain))
            return
        for g in c.facets_of(f):
            walk(chain + [g])

    walk([top])
    return out


def barycentric(rc: RelativeComplex | Complex, registry: VertexRegistry | None = None) -> RelativeComplex:
    """Order complex of the nonempty faces, minus chains whose top face is removed."""
    if isinstance(rc, Complex):
        rc = RelativeComplex(rc)
    c = rc.ambient
    registry = registry if registry is not None else VertexRegistry()
    cells = []
    for cell in c.cells:
        for chain in _maximal_chains(c, cell.vertex_set()):
            cells.append(SimplexCell(frozenset(registry(("face", f)) for f in chain)))
    labels = {}
    for cell in cells:
        for v in cell.vertices:
            labels[v] = sorted(registry.keys[v][1])
    sub = Complex(cells, "simplicial", labels)

    def carrier(f: Face) -> Face:
        if not f:
            return frozenset()
        return max((registry.keys[v][1] for v in f), key=len)

    return _relative(sub, carrier, rc)


def h_sd_from_h(h: IntPolynomial, d: int) -> IntPolynomial:
    """``sum_l h_l A_{d,l}^{(1)}``, the h-polynomial after barycentric subdivision.

    >>> str(h_sd_from_h(IntPolynomial([1, 1, 1]), 2))
    '1+4x+x^2'
    """
    if h.degree() > d:
        raise InputRangeError(f"degree of h exceeds {d}")
    out = IntPolynomial()
    for ell, hl in enumerate(h.coeffs):
        if hl:
            out = out + colored_eulerian(d, ell, 1) * hl
    return out


def barycentric_cube_realization(d: int, max_d: int = 4) -> list[tuple[tuple[int, ...], ...]]:
    """Maximal simplices of the triangulation of ``[-1,1]^d`` by ``x_i = ±x_j`` and ``x_i = 0``.

    Vertices are the points of ``{-1,0,1}^d``, each the barycenter of a face
    of the cube.  A simplex is a chain from a vertex of the cube to the
    origin, zeroing one coordinate at a time.
    """
    if d < 1:
        raise InputRangeError("d must be positive")
    if d > max_d:
        raise BudgetExceededError(f"d={d} exceeds the realization budget {max_d}")
    out = []
    for signs in itertools.product((-1, 1), repeat=d):
        for perm in itertools.permutations(range(d)):
            point = list(signs)
            chain = [tuple(point)]
            for i in perm:
                point[i] = 0
                chain.append(tuple(point))
            out.append(tuple(chain))
    return out


# --- edgewise -----------------------------------------------------------------


def _compatible(x: Sequence[int], y: Sequence[int]) -> bool:
    s = 0
    sums = []
    for a, b in zip(x, y):
        s += a - b
        sums.append(s)
    return all(v in (0, 1) for v in sums) or all(v in (0, -1) for v in sums)


def _edgewise_cliques(points: list[tuple[int, ...]], size: int) -> list[tuple[int, ...]]:
    g = nx.Graph()
    g.add_nodes_from(range(len(points)))
    for i, j in itertools.combinations(range(len(points)), 2):
        if _compatible(points[i], points[j]):
            g.add_edge(i, j)
    cliques = [tuple(sorted(cl)) for cl in nx.find_cliques(g)]
    if any(len(cl) != size for cl in cliques):
        raise AssertionError("edgewise subdivision produced a maximal face of the wrong dimension")
    return sorted(cliques)


def _check_budget(count: int, budget: int) -> None:
    if count > budget:
        raise BudgetExceededError(f"{count} lattice points exceed the budget {budget}")


def edgewise_simplicial(
    rc: RelativeComplex | Complex, r: int, registry: VertexRegistry | None = None, budget: int = 5000
) -> RelativeComplex:
    """r-th edgewise subdivision of a simplicial (relative) complex.

    Each simplex uses the global vertex order for its coordinates, so the
    induced subdivision of a shared face is the same from every side.
    """
    if isinstance(rc, Complex):
        rc = RelativeComplex(rc)
    c = rc.ambient
    if c.kind != "simplicial":
        raise UnsupportedInputError("edgewise_simplicial needs a simplicial complex")
    if r < 1:
        raise InputRangeError("r must be positive")
    registry = registry if registry is not None else VertexRegistry()
    cells = []
    labels = {}
    for cell in c.cells:
        vs = sorted(cell.vertices)
        k = len(vs)
        _check_budget(math.comb(r + k - 1, k - 1), budget)
        points = [
            p for p in itertools.product(range(r + 1), repeat=k) if sum(p) == r
        ]
        ids = []
        for p in points:
            key = ("lattice", frozenset((v, Fraction(x, r)) for v, x in zip(vs, p) if x))
            ids.append(registry(key))
            labels[ids[-1]] = {str(v): str(Fraction(x, r)) for v, x in zip(vs, p) if x}
        cliques = _edgewise_cliques(points, k)
        if len(cliques) != r ** (k - 1):
            raise AssertionError("edgewise simplex count mismatch")
        cells.extend(SimplexCell(frozenset(ids[i] for i in cl)) for cl in cliques)
    sub = Complex(cells, "simplicial", labels)

    def carrier(f: Face) -> Face:
        return frozenset(v for u in f for v, _ in registry.keys[u][1])

    return _relative(sub, carrier, rc)


def h_edgewise_from_h(h: IntPolynomial, d: int, r: int) -> IntPolynomial:
    """``((1+x+...+x^(r-1))^(d+1) h)^{<r,0>}`` for a d-dimensional simplicial complex.

    >>> str(h_edgewise_from_h(IntPolynomial([0, 1]), 1, 2))
    '2x'
    """
    if h.degree() > d + 1:
        raise InputRangeError(f"degree of h exceeds {d + 1}")
    return veronese_section(convolution_power(r, d + 1) * h, r, 0)


def _weights(cell: CubeChart, p: Sequence[int], r: int) -> frozenset:
    out = []
    for bits in itertools.product((0, 1), repeat=cell.d):
        w = Fraction(1)
        for b, x in zip(bits, p):
            w *= Fraction(x, r) if b else Fraction(r - x, r)
            if not w:
                break
        if w:
            out.append((cell.corner(bits), w))
    return frozenset(out)


def edgewise_cubical(
    rc: RelativeComplex | Complex, r: int, registry: VertexRegistry | None = None, budget: int = 5000
) -> RelativeComplex:
    """r-th edgewise triangulation of a cubical (relative) complex.

    Every cube chart ``[0,r]^d`` is cut into unit cubes and triangulated by
    the ``ι``-compatibility test.  Lattice points are glued by their weights
    on the corners of their carrier face; the charts must induce the same
    triangulation on shared faces, which is verified.
    """
    if isinstance(rc, Complex):
        rc = RelativeComplex(rc)
    c = rc.ambient
    if c.kind != "cubical":
        raise UnsupportedInputError("edgewise_cubical needs a cubical complex")
    if r < 1:
        raise InputRangeError("r must be positive")
    registry = registry if registry is not None else VertexRegistry()
    d = c.dim
    cells: list[SimplexCell] = []
    labels = {}
    per_cell: list[dict[Face, Face]] = []
    for cell in c.cells:
        _check_budget((r + 1) ** d, budget)
        points = list(itertools.product(range(r + 1), repeat=d))
        ids = []
        for p in points:
            w = _weights(cell, p, r)
            ids.append(registry(("lattice", w)))
            labels[ids[-1]] = {str(v): str(x) for v, x in sorted(w)}
        cliques = _edgewise_cliques(points, d + 1)
        if len(cliques) != r**d * math.factorial(d):
            raise AssertionError("edgewise cube simplex count mismatch")
        carriers: dict[Face, Face] = {}
        for cl in cliques:
            cells.append(SimplexCell(frozenset(ids[i] for i in cl)))
            for k in range(len(cl) + 1):
                for sub in itertools.combinations(cl, k):
                    f = frozenset(ids[i] for i in sub)
                    if f in carriers:
                        continue
                    if not sub:
                        carriers[f] = frozenset()
                        continue
                    pat = tuple(
                        0 if all(points[i][j] == 0 for i in sub) else r if all(points[i][j] == r for i in sub) else None
                        for j in range(d)
                    )
                    carriers[f] = cell.pattern_vertices(tuple(None if s is None else s // r for s in pat))
        per_cell.append(carriers)
    _check_coherent(c, per_cell)
    sub = Complex(cells, "simplicial", labels)
    carrier_of: dict[Face, Face] = {}
    for carriers in per_cell:
        carrier_of.update(carriers)
    return _relative(sub, carrier_of.__getitem__, rc)


def _check_coherent(c: Complex, per_cell: list[dict[Face, Face]]) -> None:
    for i, j in itertools.combinations(range(len(c.cells)), 2):
        common = c.cells[i].vertex_set() & c.cells[j].vertex_set()
        if len(common) < 2:
            continue
        a = {f for f, g in per_cell[i].items() if g and g <= common}
        b = {f for f, g in per_cell[j].items() if g and g <= common}
        if a != b:
            raise MalformedComplexError(
                f"cells {i} and {j} induce different edgewise triangulations on their common face"
            )


# --- registry of subdivisions used by the shelling checker -------------------------


class Subdivision:
    """A named subdivision applicable to relative complexes."""

    name = "trivial"

    def __call__(self, rc: RelativeComplex, registry: VertexRegistry) -> RelativeComplex:
        return rc

    def __repr__(self) -> str:
        return self.name


class Barycentric(Subdivision):
    name = "barycentric"

    def __call__(self, rc, registry):
        return barycentric(rc, registry)


class Edgewise(Subdivision):
    def __init__(self, r: int):
        if r < 1:
            raise InputRangeError("r must be positive")
        self.r = r
        self.name = f"edgewise-{r}"

    def __call__(self, rc, registry):
        if rc.ambient.kind == "cubical":
            return edgewise_cubical(rc, self.r, registry)
        return edgewise_simplicial(rc, self.r, registry)


def get_subdivision(name: str, r: int = 2) -> Subdivision:
    if name in ("sd", "barycentric"):
        return Barycentric()
    if name == "edgewise":
        return Edgewise(r)
    if name in ("trivial", "none"):
        return Subdivision()
    raise InputRangeError(f"unknown subdivision {name!r}")
