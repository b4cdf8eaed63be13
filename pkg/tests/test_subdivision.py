import itertools
import math

import pytest

from shellpoly.cellcomplex import Complex, CubeChart, RelativeComplex, SimplexCell, h_polynomial
from shellpoly.constructions import halfopen_cube, simplex_relative, table_top
from shellpoly.errors import BudgetExceededError, InputRangeError, MalformedComplexError, UnsupportedInputError
from shellpoly.eulerian import colored_eulerian, hstar_halfopen_cube
from shellpoly.polyreal import IntPolynomial as P
from shellpoly.polyreal import h_from_f
from shellpoly.subdivision import (
    Barycentric,
    Edgewise,
    VertexRegistry,
    barycentric,
    barycentric_cube_realization,
    edgewise_cubical,
    edgewise_simplicial,
    get_subdivision,
    h_edgewise_from_h,
    h_sd_from_h,
)


def cube_facets(d):
    cube = CubeChart(d, tuple(range(2**d)))
    return cube, [((i, b), cube.pattern_vertices(cube.facet_pattern(i, b))) for i in range(d) for b in (0, 1)]


def geometric_h(d, removed_pairs):
    """h of the coordinate triangulation of [-1,1]^d minus the removed facets.

    A simplex is removed when all its points lie on one removed facet
    ``x_i = 2b - 1``; the empty face goes as soon as anything is removed.
    """
    faces = set()
    for simplex in barycentric_cube_realization(d):
        for k in range(len(simplex) + 1):
            faces.update(frozenset(s) for s in itertools.combinations(simplex, k))
    counts = [0] * (d + 2)
    for f in faces:
        gone = any(all(p[i] == 2 * b - 1 for p in f) for i, b in removed_pairs)
        if not gone:
            counts[len(f)] += 1
    return h_from_f(P(counts), d + 1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_barycentric_cube_matches_geometric_triangulation(d):
    cube, facets = cube_facets(d)
    for k in range(2 * d + 1):
        for sub in itertools.combinations(facets, k):
            rc = RelativeComplex.generated(Complex([cube], "cubical"), [g for _, g in sub])
            assert h_polynomial(barycentric(rc), d + 1) == geometric_h(d, [p for p, _ in sub])


def test_table_top_value():
    # frozen from the geometric oracle above
    assert h_polynomial(barycentric(table_top()), 4) == P([0, 6, 36, 6])
    assert geometric_h(3, [(1, 0), (1, 1), (2, 0)]) == P([0, 6, 36, 6])


def test_boundary_of_cube():
    for d in (2, 3):
        cube, facets = cube_facets(d)
        bd = Complex([CubeChart(d - 1, tuple(sorted(g))) for _, g in facets], "cubical")
        # sorted corner order is a valid chart for facets of the standard chart
        assert h_polynomial(barycentric(bd), d) == colored_eulerian(d, 0, 2)


def test_realization_counts():
    assert len(barycentric_cube_realization(1)) == 2
    assert len(barycentric_cube_realization(2)) == 8
    assert len(barycentric_cube_realization(3)) == 48
    with pytest.raises(BudgetExceededError):
        barycentric_cube_realization(5)
    with pytest.raises(InputRangeError):
        barycentric_cube_realization(0)


def test_barycentric_face_counts():
    for d in range(1, 5):
        sd = barycentric(Complex([CubeChart(d, tuple(range(2**d)))], "cubical"))
        assert len(sd.ambient.cells) == 2**d * math.factorial(d)
        sd = barycentric(Complex([SimplexCell(range(d + 1))]))
        assert len(sd.ambient.cells) == math.factorial(d + 1)


def count_chains(n):
    """Chains of nonempty subsets of an n-set by length, by brute force."""
    subsets = [frozenset(s) for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
    counts = [1] + [0] * n
    for k in range(1, n + 1):
        for chain in itertools.combinations(sorted(subsets, key=len), k):
            if all(a < b for a, b in zip(chain, chain[1:])):
                counts[k] += 1
    return counts


def test_barycentric_simplex_f_vector():
    for d in range(0, 4):
        sd = barycentric(Complex([SimplexCell(range(d + 1))]))
        assert sd.ambient.f_vector() == count_chains(d + 1)


def test_single_vertex():
    sd = barycentric(Complex([SimplexCell({0})]))
    assert sd.ambient.f_vector() == [1, 1]


def test_h_sd_examples():
    assert h_sd_from_h(P([1, 1, 1]), 2) == P([1, 4, 1])
    assert h_sd_from_h(P([1]), 1) == P([1])
    for d in range(1, 5):
        for ell in range(d + 1):
            assert h_sd_from_h(P.monomial(ell), d) == colored_eulerian(d, ell, 1)
    with pytest.raises(InputRangeError):
        h_sd_from_h(P([1, 1, 1]), 1)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_barycentric_simplex_relative_matches_transform(d):
    for ell in range(d + 2):
        rc = simplex_relative(d, ell)
        h = h_polynomial(rc, d + 1)
        assert h_polynomial(barycentric(rc), d + 1) == h_sd_from_h(h, d + 1)


def test_hexagon():
    tri = Complex([SimplexCell(s) for s in ({0, 1}, {1, 2}, {0, 2})])
    assert h_polynomial(barycentric(tri), 2) == P([1, 4, 1])


def test_barycentric_is_difference_of_subdivisions():
    rc = table_top()
    reg = VertexRegistry()
    whole = barycentric(RelativeComplex(rc.ambient), reg)
    part = barycentric(rc, reg)
    present = {f for f, _ in part.present()}
    carriers = {f for f in whole.ambient.face_dim if f not in present}
    assert present | carriers == set(whole.ambient.face_dim)
    assert all(
        not f or max((reg.keys[v][1] for v in f), key=len) in rc.removed for f in carriers
    )


def test_edgewise_examples():
    seg = Complex([SimplexCell({0, 1})])
    sd = edgewise_simplicial(seg, 2)
    assert sd.ambient.f_vector() == [1, 3, 2]
    assert h_polynomial(sd, 2) == P([1, 1])
    assert h_polynomial(edgewise_simplicial(simplex_relative(1, 1), 2), 2) == P([0, 2])
    for d in range(4):
        tri = Complex([SimplexCell(range(d + 1))])
        assert edgewise_simplicial(tri, 1).ambient.face_dim == tri.face_dim


def test_h_edgewise_examples():
    assert h_edgewise_from_h(P([1]), 1, 2) == P([1, 1])
    assert h_edgewise_from_h(P([0, 1]), 1, 2) == P([0, 2])
    for h in (P([1, 2, 3]), P([0, 0, 5]), P([4])):
        assert h_edgewise_from_h(h, 2, 1) == h
    with pytest.raises(InputRangeError):
        h_edgewise_from_h(P([0, 0, 0, 1]), 1, 2)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_edgewise_simplicial_matches_transform(d, r):
    for ell in range(d + 2):
        rc = simplex_relative(d, ell)
        sd = edgewise_simplicial(rc, r)
        assert len(sd.ambient.cells) == r**d
        assert h_polynomial(sd, d + 1) == h_edgewise_from_h(P.monomial(ell), d, r)


def test_edgewise_simplicial_glued_boundary():
    bd = Complex([SimplexCell(s) for s in itertools.combinations(range(4), 3)])
    for r in (2, 3):
        sd = edgewise_simplicial(bd, r)
        assert len(sd.ambient.cells) == 4 * r**2
        assert h_polynomial(sd, 3) == h_edgewise_from_h(P([1, 1, 1, 1]), 2, r)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("r", [1, 2, 3])
def test_edgewise_cubical_matches_hstar(d, r):
    for ell in range(2 * d + 1):
        sd = edgewise_cubical(halfopen_cube(d, ell), r)
        assert len(sd.ambient.cells) == r**d * math.factorial(d)
        assert h_polynomial(sd, d + 1) == hstar_halfopen_cube(d, ell, r)


def test_edgewise_cubical_examples():
    sq = Complex([CubeChart(2, (0, 1, 2, 3))], "cubical")
    assert h_polynomial(edgewise_cubical(sq, 2), 3) == P([1, 6, 1])
    assert h_polynomial(edgewise_cubical(halfopen_cube(2, 1), 2), 3) == P([0, 6, 2])
    for d in (1, 2, 3):
        cube = Complex([CubeChart(d, tuple(range(2**d)))], "cubical")
        assert h_polynomial(edgewise_cubical(cube, 1), d + 1) == colored_eulerian(d, 0, 1)


def test_edgewise_cubical_coherence():
    a = CubeChart(3, tuple(range(8)))
    good = Complex([a, CubeChart(3, (4, 6, 5, 7, 8, 9, 10, 11))], "cubical")
    assert len(edgewise_cubical(good, 2).ambient.cells) == 2 * 8 * 6
    bad = Complex([a, CubeChart(3, (5, 4, 7, 6, 8, 9, 10, 11))], "cubical")
    with pytest.raises(MalformedComplexError):
        edgewise_cubical(bad, 2)


def test_kind_and_range_errors():
    sq = Complex([CubeChart(2, (0, 1, 2, 3))], "cubical")
    tri = Complex([SimplexCell({0, 1, 2})])
    with pytest.raises(UnsupportedInputError):
        edgewise_simplicial(sq, 2)
    with pytest.raises(UnsupportedInputError):
        edgewise_cubical(tri, 2)
    with pytest.raises(InputRangeError):
        edgewise_simplicial(tri, 0)
    with pytest.raises(BudgetExceededError):
        edgewise_cubical(Complex([CubeChart(3, tuple(range(8)))], "cubical"), 30, budget=1000)
    with pytest.raises(InputRangeError):
        get_subdivision("stellar")


def test_shared_registry_labels_agree():
    sq = Complex([CubeChart(2, (0, 1, 2, 3)), CubeChart(2, (2, 3, 4, 5))], "cubical")
    for subdiv in (Barycentric(), Edgewise(2)):
        reg = VertexRegistry()
        whole = subdiv(RelativeComplex(sq), reg)
        first = subdiv(RelativeComplex(Complex([sq.cells[0]], "cubical")), reg)
        assert set(first.ambient.face_dim) <= set(whole.ambient.face_dim)
    assert repr(get_subdivision("sd")) == "barycentric"
    assert repr(get_subdivision("edgewise", 3)) == "edgewise-3"
