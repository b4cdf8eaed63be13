"""Cube and simplex cells, polytopal complexes and relative complexes.

Faces are identified by their vertex sets.  A cube cell is a chart: a map
from ``{0,1}^d`` to vertex labels, with corners stored in binary-counter
order (coordinate 1 most significant).  A face of a cube is a pattern in
``{0,1,*}^d``; ``None`` plays the role of ``*``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

from .errors import MalformedComplexError
from .polyreal import IntPolynomial, h_from_f

Face = frozenset
Pattern = tuple  # entries 0, 1 or None


def _corner_index(bits: Sequence[int]) -> int:
    idx = 0
    for b in bits:
        idx = 2 * idx + b
    return idx


@dataclass(frozen=True)
class CubeChart:
    d: int
    corners: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "corners", tuple(self.corners))
        if self.d < 0 or len(self.corners) != 2**self.d:
            raise MalformedComplexError(f"a {self.d}-cube needs {2 ** self.d} corners")
        if len(set(self.corners)) != len(self.corners):
            raise MalformedComplexError(f"cube corners are not distinct: {self.corners}")
        if any(not isinstance(v, int) or v < 0 for v in self.corners):
            raise MalformedComplexError("vertex labels must be nonnegative integers")

    @property
    def dim(self) -> int:
        return self.d

    def vertex_set(self) -> Face:
        return frozenset(self.corners)

    def corner(self, bits: Sequence[int]) -> int:
        return self.corners[_corner_index(bits)]

    def pattern_vertices(self, pattern: Pattern) -> Face:
        free = [i for i, s in enumerate(pattern) if s is None]
        out = []
        for sub in itertools.product((0, 1), repeat=len(free)):
            bits = list(pattern)
            for i, b in zip(free, sub):
                bits[i] = b
            out.append(self.corner(bits))
        return frozenset(out)

    def patterns(self) -> Iterator[Pattern]:
        return itertools.product((0, 1, None), repeat=self.d)

    def faces(self) -> Iterator[tuple[Face, int]]:
        yield frozenset(), -1
        for pat in self.patterns():
            yield self.pattern_vertices(pat), sum(1 for s in pat if s is None)

    def facet_pattern(self, i: int, b: int) -> Pattern:
        return tuple(b if j == i else None for j in range(self.d))

    def facets(self) -> list[Face]:
        """Facets ordered as (x_1=0, ..., x_d=0, x_1=1, ..., x_d=1)."""
        if self.d == 0:
            return [frozenset()]
        return [self.pattern_vertices(self.facet_pattern(i, b)) for b in (0, 1) for i in range(self.d)]

    def smallest_face(self, vertices: Iterable[int]) -> Pattern:
        """Pattern of the smallest face containing the given corners."""
        index = {v: k for k, v in enumerate(self.corners)}
        bitsets = []
        for v in vertices:
            k = index[v]
            bitsets.append([(k >> (self.d - 1 - i)) & 1 for i in range(self.d)])
        if not bitsets:
            raise MalformedComplexError("smallest face of an empty set")
        return tuple(
            bitsets[0][i] if all(bs[i] == bitsets[0][i] for bs in bitsets) else None for i in range(self.d)
        )

    def face_facets(self, face: Face) -> list[Face]:
        if not face:
            return []
        pat = self.smallest_face(face)
        out = []
        for i, s in enumerate(pat):
            if s is None:
                for b in (0, 1):
                    out.append(self.pattern_vertices(pat[:i] + (b,) + pat[i + 1 :]))
        if not out:  # a vertex has the empty face as its only facet
            out.append(frozenset())
        return out

    def to_json(self) -> dict:
        return {"corners": list(self.corners)}


@dataclass(frozen=True)
class SimplexCell:
    vertices: frozenset

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        if not self.vertices:
            raise MalformedComplexError("a simplex needs at least one vertex")
        if any(not isinstance(v, int) or v < 0 for v in self.vertices):
            raise MalformedComplexError("vertex labels must be nonnegative integers")

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def vertex_set(self) -> Face:
        return self.vertices

    def faces(self) -> Iterator[tuple[Face, int]]:
        vs = sorted(self.vertices)
        for k in range(len(vs) + 1):
            for sub in itertools.combinations(vs, k):
                yield frozenset(sub), k - 1

    def facets(self) -> list[Face]:
        return [self.vertices - {v} for v in sorted(self.vertices)]

    def face_facets(self, face: Face) -> list[Face]:
        return [face - {v} for v in sorted(face)]

    def to_json(self) -> dict:
        return {"vertices": sorted(self.vertices)}


Cell = Union[CubeChart, SimplexCell]


class Complex:
    """A pure polytopal complex given by its maximal cells.

    The face table (vertex set to dimension, including the empty face) and
    the facet relation between faces are computed once at construction.
    """

    def __init__(self, cells: Sequence[Cell], kind: str | None = None, labels: dict | None = None):
        cells = tuple(cells)
        if not cells:
            raise MalformedComplexError("a complex needs at least one cell")
        if kind is None:
            kind = "cubical" if isinstance(cells[0], CubeChart) else "simplicial"
        expected = CubeChart if kind == "cubical" else SimplexCell if kind == "simplicial" else None
        if expected is None:
            raise MalformedComplexError(f"unknown complex kind {kind!r}")
        if any(not isinstance(c, expected) for c in cells):
            raise MalformedComplexError(f"all cells of a {kind} complex must be {expected.__name__}")
        dims = {c.dim for c in cells}
        if len(dims) != 1:
            raise MalformedComplexError(f"complex is not pure: cell dimensions {sorted(dims)}")
        self.kind = kind
        self.cells = cells
        self.dim = dims.pop()
        # optional provenance of vertices (e.g. the original face a barycenter stands for)
        self.labels = dict(labels or {})
        seen: dict[Face, int] = {}
        for i, c in enumerate(cells):
            vs = c.vertex_set()
            if vs in seen:
                raise MalformedComplexError(f"cells {seen[vs]} and {i} have the same vertex set")
            seen[vs] = i
        self.face_dim: dict[Face, int] = {}
        self._facets: dict[Face, tuple[Face, ...]] = {}
        self._cell_faces: list[frozenset] = []
        for c in cells:
            mine = []
            for f, k in c.faces():
                self.face_dim[f] = k
                mine.append(f)
                if f not in self._facets:
                    self._facets[f] = tuple(c.face_facets(f))
            self._cell_faces.append(frozenset(mine))
        if kind == "cubical":
            self._check_intersections()

    def _check_intersections(self) -> None:
        by_vertex: dict[int, list[int]] = {}
        for i, c in enumerate(self.cells):
            for v in c.corners:
                by_vertex.setdefault(v, []).append(i)
        pairs = {(i, j) for ids in by_vertex.values() for i in ids for j in ids if i < j}
        for i, j in sorted(pairs):
            a, b = self.cells[i], self.cells[j]
            common = a.vertex_set() & b.vertex_set()
            for c in (a, b):
                if c.pattern_vertices(c.smallest_face(common)) != common:
                    raise MalformedComplexError(
                        f"cells {i} and {j} meet in {sorted(common)}, which is not a face of both"
                    )
            fa = {f for f in self._cell_faces[i] if f <= common}
            fb = {f for f in self._cell_faces[j] if f <= common}
            if fa != fb:
                raise MalformedComplexError(f"cells {i} and {j} induce different face structures on their intersection")

    def __len__(self) -> int:
        return len(self.cells)

    def faces(self) -> dict[Face, int]:
        return self.face_dim

    def cell_faces(self, i: int) -> frozenset:
        return self._cell_faces[i]

    def facets_of(self, face: Face) -> tuple[Face, ...]:
        return self._facets[face]

    def closure(self, faces: Iterable[Face]) -> frozenset:
        """All faces of the given faces, the empty face included when any are given."""
        out: set[Face] = set()
        stack = list(faces)
        while stack:
            f = stack.pop()
            if f in out:
                continue
            if f not in self.face_dim:
                raise MalformedComplexError(f"{sorted(f)} is not a face of the complex")
            out.add(f)
            stack.extend(self._facets[f])
        if out:
            out.add(frozenset())
        return frozenset(out)

    def vertices(self) -> list[int]:
        return sorted({v for c in self.cells for v in c.vertex_set()})

    def f_vector(self) -> list[int]:
        """``[f_-1, f_0, ..., f_dim]``."""
        out = [0] * (self.dim + 2)
        for k in self.face_dim.values():
            out[k + 1] += 1
        return out

    def to_json(self) -> dict:
        data = {"kind": self.kind, "dim": self.dim, "cells": [c.to_json() for c in self.cells]}
        return data

    def __repr__(self) -> str:
        return f"Complex(kind={self.kind!r}, dim={self.dim}, cells={len(self.cells)})"


def enumerate_faces(c: Complex) -> dict[Face, int]:
    return dict(c.face_dim)


@dataclass(frozen=True)
class RelativeComplex:
    """``ambient`` minus the subcomplex ``removed``.

    ``removed`` must be closed under taking faces.  Whenever it contains a
    nonempty face it also contains the empty face; it may also be exactly
    ``{∅}``, which removes only the empty face.
    """

    ambient: Complex
    removed: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        removed = frozenset(self.removed)
        if removed and frozenset() not in removed:
            removed = removed | {frozenset()}
        faces = self.ambient.face_dim
        for f in removed:
            if f not in faces:
                raise MalformedComplexError(f"removed set contains a non-face {sorted(f)}")
            if any(g not in removed for g in self.ambient.facets_of(f)):
                raise MalformedComplexError(f"removed set is not closed under faces at {sorted(f)}")
        object.__setattr__(self, "removed", removed)

    @classmethod
    def generated(cls, ambient: Complex, generators: Iterable[Face]) -> "RelativeComplex":
        return cls(ambient, ambient.closure(generators))

    def present(self) -> Iterator[tuple[Face, int]]:
        for f, k in self.ambient.face_dim.items():
            if f not in self.removed:
                yield f, k

    def dim(self) -> int:
        return max((k for _, k in self.present()), default=-1)


def f_polynomial(rc: RelativeComplex | Complex) -> IntPolynomial:
    """``sum_k f_{k-1} x^k`` over faces present in the relative complex."""
    if isinstance(rc, Complex):
        rc = RelativeComplex(rc)
    counts = [0] * (rc.ambient.dim + 2)
    for _, k in rc.present():
        counts[k + 1] += 1
    return IntPolynomial(counts)


def h_polynomial(rc: RelativeComplex | Complex, m: int | None = None) -> IntPolynomial:
    """h-polynomial with ``m = dim + 1`` unless given explicitly."""
    if isinstance(rc, Complex):
        rc = RelativeComplex(rc)
    if m is None:
        m = rc.dim() + 1
    return h_from_f(f_polynomial(rc), m)


def euler_characteristic(rc: RelativeComplex | Complex) -> int:
    if isinstance(rc, Complex):
        rc = RelativeComplex(rc)
    return sum((-1) ** k for _, k in rc.present() if k >= 0)


def opposing_facets(cell: CubeChart) -> list[tuple[Face, Face]]:
    if not isinstance(cell, CubeChart):
        raise TypeError("opposing facets are defined for cube cells only")
    return [
        (cell.pattern_vertices(cell.facet_pattern(i, 0)), cell.pattern_vertices(cell.facet_pattern(i, 1)))
        for i in range(cell.d)
    ]


def reciprocal_domain_rule(facets: Sequence[Face], removed: Iterable[Face]) -> bool:
    """Face-lattice test for removing a reciprocal-domain facet set.

    True iff the removed facets, or their complement, are exactly the
    facets containing some nonempty face (the empty and full sets included).
    The intersection of a facet family is the only candidate for that face.
    """
    removed = set(removed)
    facets = list(facets)
    if not removed <= set(facets):
        raise MalformedComplexError("removed facets are not facets of the cell")

    def star_of_face(group: list[Face]) -> bool:
        if not group:
            return True
        common = frozenset.intersection(*group)
        return bool(common) and {g for g in facets if common <= g} == set(group)

    kept = [g for g in facets if g not in removed]
    return star_of_face([g for g in facets if g in removed]) or star_of_face(kept)


def _has_opposing_pair(pairs: list[tuple[Face, Face]], group: set[Face]) -> bool:
    return any(a in group and b in group for a, b in pairs)


def is_stable_relative(cell: Cell, removed_facets: Iterable[Face]) -> bool:
    """Whether ``C(cell)`` minus the given facets is a reciprocal domain.

    For cubes the face-lattice rule is cross-checked against the
    opposing-pair rule.
    """
    removed = set(removed_facets)
    facets = cell.facets()
    general = reciprocal_domain_rule(facets, removed)
    if isinstance(cell, CubeChart) and cell.d >= 1:
        pairs = opposing_facets(cell)
        kept = set(facets) - removed
        cube_rule = not _has_opposing_pair(pairs, removed) or not _has_opposing_pair(pairs, kept)
        if cube_rule != general:
            raise AssertionError(f"stability rules disagree on {cell} with removed {removed}")
    return general


# --- JSON -------------------------------------------------------------------


def complex_from_json(data: dict | str) -> Complex:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise MalformedComplexError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or "cells" not in data:
        raise MalformedComplexError("complex JSON needs 'kind', 'dim' and 'cells'")
    kind = data.get("kind")
    dim = data.get("dim")
    if not isinstance(dim, int):
        raise MalformedComplexError("'dim' must be an integer")
    cells: list[Cell] = []
    for entry in data["cells"]:
        if kind == "cubical":
            if not isinstance(entry, dict) or "corners" not in entry:
                raise MalformedComplexError("cubical cells need 'corners'")
            cells.append(CubeChart(dim, tuple(entry["corners"])))
        elif kind == "simplicial":
            if not isinstance(entry, dict) or "vertices" not in entry:
                raise MalformedComplexError("simplicial cells need 'vertices'")
            if len(set(entry["vertices"])) != len(entry["vertices"]):
                raise MalformedComplexError("repeated vertex in a simplex")
            cell = SimplexCell(frozenset(entry["vertices"]))
            if cell.dim != dim:
                raise MalformedComplexError(f"simplex {entry['vertices']} does not have dimension {dim}")
            cells.append(cell)
        else:
            raise MalformedComplexError(f"unknown complex kind {kind!r}")
    return Complex(cells, kind)


def complex_to_json(c: Complex) -> dict:
    return c.to_json()
