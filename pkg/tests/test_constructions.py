import itertools

import pytest

from shellpoly.cellcomplex import complex_from_json, euler_characteristic, is_stable_relative
from shellpoly.constructions import (
    build,
    capped,
    cube_boundary,
    cuboid_boundary,
    gallery,
    halfopen_cube,
    l_fold_capped,
    pile_of_cubes,
    simplex_relative,
    stacked_simplicial,
    table_top,
)
from shellpoly.errors import BudgetExceededError, InputRangeError
from shellpoly.shelling import is_stable_shelling


def test_cube_boundary_shape():
    for d in range(1, 6):
        c = cube_boundary(d).complex
        assert len(c.cells) == 2 * d and c.dim == d - 1
        assert euler_characteristic(c) == 1 + (-1) ** (d - 1)
    with pytest.raises(InputRangeError):
        cube_boundary(0)
    with pytest.raises(InputRangeError):
        cube_boundary(6)


def test_pile_ranges_and_budget():
    assert len(pile_of_cubes((2, 3)).complex.cells) == 6
    with pytest.raises(InputRangeError):
        pile_of_cubes((2, 0))
    with pytest.raises(InputRangeError):
        pile_of_cubes(())
    with pytest.raises(BudgetExceededError):
        pile_of_cubes((10, 10), budget=50)


@pytest.mark.parametrize("d,ell", [(d, ell) for d in range(1, 4) for ell in range(d + 1)])
def test_cuboid_cell_counts(d, ell):
    c = cuboid_boundary(d, ell).complex
    assert len(c.cells) == 2 * ell * 2 ** (ell - 1) + 2 * (d - ell) * 2**ell
    assert euler_characteristic(c) == 1 + (-1) ** (d - 1)


def test_cuboid_ranges():
    with pytest.raises(InputRangeError):
        cuboid_boundary(3, 4)
    with pytest.raises(InputRangeError):
        cuboid_boundary(5, 0)


def test_capping_notes_and_order():
    base = cube_boundary(3)
    scen = capped(base, 0)
    assert len(scen.complex.cells) == 6 - 1 + 5
    assert sorted(scen.order) == list(range(10))
    assert scen.notes["caps"] == 1
    assert scen.notes["origin"].count("cap1") == 5
    assert scen.notes["capped_facets"] == [sorted(base.complex.cells[0].vertex_set())]
    assert euler_characteristic(scen.complex) == 2
    with pytest.raises(InputRangeError):
        capped(base, 6)
    with pytest.raises(InputRangeError):
        capped(stacked_simplicial(2), 0)


def test_l_fold_capping():
    two = l_fold_capped(3, 2)
    assert two.notes["caps"] == 2 and len(two.complex.cells) == 14
    first, second = two.notes["capped_facets"]
    assert not set(first) & set(second)
    explicit = l_fold_capped(3, [0, 0])
    assert explicit.notes["caps"] == 2
    assert is_stable_shelling(explicit.complex, explicit.order).is_stable
    with pytest.raises(InputRangeError):
        l_fold_capped(3, -1)


def test_relative_pieces_are_stable():
    for d in range(1, 4):
        for ell in range(2 * d + 1):
            rc = halfopen_cube(d, ell)
            cell = rc.ambient.cells[0]
            removed = [g for g in cell.facets() if g in rc.removed]
            assert len(removed) == ell
            assert is_stable_relative(cell, removed)
    with pytest.raises(InputRangeError):
        halfopen_cube(2, 5)
    with pytest.raises(InputRangeError):
        simplex_relative(2, 4)


def test_table_top_is_the_unstable_cube():
    rc = table_top()
    cell = rc.ambient.cells[0]
    removed = [g for g in cell.facets() if g in rc.removed]
    assert len(removed) == 3 and not is_stable_relative(cell, removed)
    # up to symmetry every unstable removal of a 3-cube keeps one pair and removes one pair
    facets = cell.facets()
    unstable = [s for k in range(7) for s in itertools.combinations(facets, k) if not is_stable_relative(cell, s)]
    assert {len(s) for s in unstable} == {2, 3, 4}


def test_stacked_counts():
    for d in (2, 3):
        for k in range(3):
            assert len(stacked_simplicial(d, k).complex.cells) == d + 1 + k * (d - 1)
    with pytest.raises(InputRangeError):
        stacked_simplicial(0)


def test_build_by_name():
    assert build("pile", a=(2, 2)).name == "pile-2x2"
    assert build("cube-boundary", d=2).name == "cube-boundary-2"
    assert build("capped", d=3, folds=1).notes["caps"] == 1
    assert build("nonstable-pile").expected["failing_step"] == 6
    with pytest.raises(InputRangeError):
        build("moebius")


def test_gallery_roundtrip_json():
    for scen in gallery():
        data = scen.to_json()
        assert data["order"] == list(scen.order)
        assert complex_from_json(data["complex"]).face_dim == scen.complex.face_dim
