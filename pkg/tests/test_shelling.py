import itertools

import pytest

from shellpoly.cellcomplex import Complex, CubeChart, RelativeComplex, SimplexCell, f_polynomial, h_polynomial
from shellpoly.constructions import (
    cube_boundary,
    gallery,
    nonstable_pile_order,
    pile_of_cubes,
    stacked_simplicial,
    table_top,
    two_disjoint_squares,
)
from shellpoly.errors import BudgetExceededError, MalformedComplexError
from shellpoly.eulerian import colored_eulerian
from shellpoly.polyreal import IntPolynomial as P
from shellpoly.polyreal import is_interlacing_sequence
from shellpoly.shelling import (
    check_interlacing_theorem,
    enumerate_shellings,
    find_interlacing_order,
    is_shelling,
    is_stable_shelling,
    ladder_label,
    shelling_report,
    shelling_steps,
)
from shellpoly.subdivision import Barycentric, Edgewise


@pytest.mark.parametrize("scen", gallery(), ids=lambda s: s.name)
def test_gallery_verdicts(scen):
    v = is_stable_shelling(scen.complex, scen.order)
    assert v.is_shelling == scen.expected["is_shelling"]
    assert v.is_stable == scen.expected["is_stable"]
    if "failing_step" in scen.expected:
        assert v.failing_step == scen.expected["failing_step"]


def test_nonstable_pile_fails_at_last_step():
    scen = nonstable_pile_order()
    v = is_stable_shelling(scen.complex, scen.order)
    assert v.is_shelling and not v.is_stable and v.failing_step == 6
    last = shelling_steps(scen.complex, scen.order)[-1]
    assert len(last.intersection_facets) == 3
    # two opposite facets are glued, so the last step is a table top
    assert h_polynomial(last.relative, 4) == h_polynomial(table_top(), 4) == P([0, 0, 2, -1])


def test_disjoint_squares():
    scen = two_disjoint_squares()
    v = is_stable_shelling(scen.complex, scen.order)
    assert not v.is_shelling and v.failing_step == 2


def test_bad_order():
    c = cube_boundary(2).complex
    with pytest.raises(MalformedComplexError):
        shelling_steps(c, (0, 1, 2))
    with pytest.raises(MalformedComplexError):
        shelling_steps(c, (0, 1, 2, 2))


SMALL = [
    cube_boundary(2).complex,
    pile_of_cubes((2, 2)).complex,
    pile_of_cubes((1, 2, 2)).complex,
    stacked_simplicial(2, 1).complex,
    Complex([CubeChart(1, (0, 1)), CubeChart(1, (1, 2)), CubeChart(1, (3, 4))], "cubical"),
    Complex([SimplexCell(s) for s in ({0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 4, 5})]),
]


@pytest.mark.parametrize("c", SMALL, ids=lambda c: f"{c.kind}-{len(c.cells)}")
def test_exhaustive_step_invariants(c):
    whole = set(c.face_dim)
    m = c.dim + 1
    for order in itertools.permutations(range(len(c.cells))):
        steps = shelling_steps(c, order)
        seen = set()
        total = P()
        for st in steps:
            present = {f for f, _ in st.relative.present()}
            assert not (present & seen)
            seen |= present
            total = total + f_polynomial(st.relative)
        assert seen == whole
        assert total == f_polynomial(c)
        assert sum((h_polynomial(st.relative, m) for st in steps), P()) == h_polynomial(c, m)
        if c.kind == "cubical" and all(st.stable for st in steps):
            assert is_shelling(c, order).ok


def test_enumerate_shellings():
    sq = cube_boundary(2).complex
    # a 4-cycle: any order whose prefixes are paths
    assert len(enumerate_shellings(sq)) == 16
    with pytest.raises(BudgetExceededError):
        enumerate_shellings(pile_of_cubes((3, 3)).complex)


def test_stable_orders_of_square_pile():
    c = pile_of_cubes((2, 2)).complex
    for order in enumerate_shellings(c):
        assert is_stable_shelling(c, order).is_stable


def test_find_interlacing_order_recovers_sequence():
    seq = [colored_eulerian(3, ell, 2) for ell in range(4)]
    for perm in itertools.permutations(range(4)):
        order, tried = find_interlacing_order([seq[i] for i in perm])
        assert order is not None and tried
        assert is_interlacing_sequence([seq[perm[i]] for i in order])


def test_find_interlacing_order_negative():
    order, tried = find_interlacing_order([P([1, 3]), P([0, 0, 3, 1])])
    assert order is None
    assert tried == ["root-ascending", "root-descending", "relation-sort"]


def test_edgewise_two_on_tetrahedron_boundary_has_no_order():
    c = stacked_simplicial(3, 0).complex
    rep = check_interlacing_theorem(c, range(len(c.cells)), Edgewise(2))
    assert rep.additive and rep.partition_ok
    assert not rep.pairwise_ok and not rep.ordering_found
    assert not any(is_interlacing_sequence([rep.h_steps[i] for i in p]) for p in itertools.permutations(range(4)))
    rep = check_interlacing_theorem(c, range(len(c.cells)), Edgewise(3))
    assert rep.pairwise_ok and rep.ordering_found and rep.real_rooted


def test_barycentric_pile_steps_are_ladder():
    scen = pile_of_cubes((1, 3, 2))
    rep = check_interlacing_theorem(scen.complex, scen.order, Barycentric())
    assert rep.additive and rep.partition_ok and rep.ordering_found and rep.real_rooted
    assert rep.h_total == rep.h_direct
    assert rep.h_steps[0] == colored_eulerian(3, 0, 2)


def test_ladder_label():
    assert ladder_label(P([1, 6, 1]), 2) == "A(2,0)"
    assert ladder_label(P([0, 2, 6]), 2) == "xI A(2,1)"
    assert ladder_label(P([1, 1]), 2) is None


def test_shelling_report_keys():
    scen = pile_of_cubes((2, 1))
    rep = shelling_report(scen.complex, scen.order)
    assert set(rep) == {"steps", "summary"}
    assert {"is_shelling", "is_stable", "failing_step", "h_total", "real_rooted", "interlacing_order"} <= set(rep["summary"])
    assert [s["step"] for s in rep["steps"]] == [1, 2]
    # cubical h-polynomials may have negative coefficients
    assert rep["summary"]["h_total"] == ["1", "3", "-2"]
    rep = shelling_report(scen.complex, scen.order, Barycentric())
    assert rep["summary"]["pairwise_ok"] and rep["summary"]["additive"]


def test_single_cell_relative():
    c = Complex([CubeChart(2, (0, 1, 2, 3))], "cubical")
    steps = shelling_steps(c, (0,))
    assert steps[0].intersection_facets == () and steps[0].stable
    assert isinstance(steps[0].relative, RelativeComplex)
