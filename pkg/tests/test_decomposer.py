import random
from fractions import Fraction

import pytest

from coverdecomp.coloring import BLUE, RED
from coverdecomp.decomposer import (CoverInstance, cell_of, decompose, dualize, generate_covering,
                                    inradius_box)
from coverdecomp.errors import InsufficientFold, InvalidInput
from coverdecomp.geometry import (CLOSED, Point, Rect, builtin_polygon, grid_params, polygon_contains,
                                  wedge_contains)
from coverdecomp.oracle import coverage_depth, depth_at

from conftest import P

SQ = builtin_polygon("square")
UNIT = Rect(0, 0, 1, 1)


def test_dualize_examples():
    inst = CoverInstance(SQ, (P(0, 0),), UNIT, 81)
    assert dualize(inst) == {(0, 0): (P(0, 0),)}
    half = Fraction(1, 2)
    inst = CoverInstance(SQ, (P(half, half), P(half, 0), P(-half, 0)), UNIT, 81)
    assert dualize(inst) == {(-1, 0): (P(-half, 0),), (1, 0): (P(half, 0),), (1, 1): (P(half, half),)}
    rng = random.Random(4)
    pts = list({P(Fraction(rng.randint(-64, 64), 32), Fraction(rng.randint(-64, 64), 32)) for _ in range(100)})
    cells = dualize(CoverInstance(SQ, tuple(pts), UNIT, 81))
    assert sum(len(v) for v in cells.values()) == len(pts)
    for key, members in cells.items():
        assert all(cell_of(p, Fraction(1, 2)) == key for p in members)


def test_inradius_boxes():
    assert inradius_box(SQ) == Fraction(1, 2)
    assert inradius_box(builtin_polygon("hexagon")) == Fraction(2, 3)
    assert inradius_box(builtin_polygon("octagon")) == Fraction(7, 8)


def test_generator_contract():
    inst = generate_covering(SQ, UNIT, 1, seed=1)
    assert coverage_depth(SQ, inst.centers, UNIT).min_depth >= 1
    a = generate_covering(SQ, UNIT, 81, seed=5)
    assert a == generate_covering(SQ, UNIT, 81, seed=5)
    assert coverage_depth(SQ, a.centers, UNIT).min_depth >= 81
    assert len(set(a.centers)) == len(a.centers)


def test_decompose_square_region_of_side_two():
    R = Rect(0, 0, 2, 2)
    inst = generate_covering(SQ, R, 81, seed=2)
    d = decompose(inst)
    assert sorted(d.red_centers + d.blue_centers) == sorted(inst.centers)
    assert not set(d.red_centers) & set(d.blue_centers)
    assert d.red_depth.min_depth >= 1 and d.blue_depth.min_depth >= 1
    assert d.params.fold_constant == 81 and d.input_depth.min_depth >= 81


def test_decompose_all_polygons(polygon):
    k = grid_params(polygon).fold_constant
    inst = generate_covering(polygon, UNIT, k, seed=3)
    d = decompose(inst)
    assert d.red_depth.min_depth >= 1 and d.blue_depth.min_depth >= 1


def test_point_region():
    R = Rect("1/3", "1/3", "1/3", "1/3")
    inst = generate_covering(SQ, R, 81, seed=0)
    d = decompose(inst)
    a = Point(Fraction(1, 3), Fraction(1, 3))
    assert any(polygon_contains(SQ, c, a) for c in d.red_centers)
    assert any(polygon_contains(SQ, c, a) for c in d.blue_centers)


def test_jobs_do_not_change_the_result():
    inst = generate_covering(SQ, UNIT, 81, seed=9)
    assert decompose(inst, jobs=2).red_centers == decompose(inst, jobs=1).red_centers


def test_insufficient_fold():
    inst = generate_covering(SQ, UNIT, 81, seed=1)
    with pytest.raises(InsufficientFold):
        decompose(CoverInstance(SQ, inst.centers, UNIT, 80))
    shallow = generate_covering(SQ, UNIT, 40, seed=1)
    with pytest.raises(InsufficientFold) as err:
        decompose(CoverInstance(SQ, shallow.centers, UNIT, 81))
    assert err.value.witness in UNIT and err.value.depth < 81
    assert depth_at(SQ, shallow.centers, err.value.witness) == err.value.depth


def test_repeated_centers_are_dealt_out():
    inst = generate_covering(SQ, UNIT, 81, seed=1)
    doubled = CoverInstance(SQ, inst.centers + inst.centers[:10], UNIT, 81)
    d = decompose(doubled)
    assert d.duplicates == 10
    assert sorted(d.red_centers + d.blue_centers) == sorted(doubled.centers)


def test_bad_fold_target():
    with pytest.raises(InvalidInput):
        CoverInstance(SQ, (), UNIT, 0)


def test_translate_meets_a_cell_like_a_wedge(polygon):
    # Within a grid cell, a translate looks like one wedge placement.
    x = grid_params(polygon).cell_side
    rng = random.Random(7)
    cell = [P(x * Fraction(i, 6), x * Fraction(j, 6)) for i in range(6) for j in range(6)]
    for _ in range(40):
        a = P(Fraction(rng.randint(-40, 40), 16), Fraction(rng.randint(-40, 40), 16))
        trace = frozenset(p for p in cell if polygon_contains(polygon, a, p))
        if not trace or len(trace) == len(cell):
            continue
        found = False
        verts = polygon.translate_vertices(a)
        for i in range(1, polygon.size + 1):
            w = polygon.wedge(i).at(verts[i - 1])
            far = [polygon.wedge(i).at(Point(verts[i - 1].x - t * d[0], verts[i - 1].y - t * d[1]))
                   for d in (polygon.wedge(i).dir_prev, polygon.wedge(i).dir_next) for t in (-50, 50)]
            for cand in [w] + far:
                if frozenset(p for p in cell if wedge_contains(cand, p)) == trace:
                    found = True
        assert found
