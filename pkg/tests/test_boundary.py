from fractions import Fraction

import pytest
from hypothesis import given

from coverdecomp.boundary import (as_point_set, assemble_cyclic, compute_boundary_i, cyclic_arcs,
                                  cyclic_intervals, detect_rich, detect_singular, level_peel, order_prec,
                                  wedge_trace_intervals)
from coverdecomp.errors import Incomparable, InvalidInput, StructuralViolation
from coverdecomp.geometry import CLOSED, OPEN, builtin_polygon, wedge_contains
from coverdecomp.oracle import TraceGrid, enumerate_wedge_placements, rich_from_traces

from conftest import P, point_sets, polygons

SQ = builtin_polygon("square")
SINGULAR = [P(-1, -1), P(0, 0), P(1, 1)]


def brute_boundary(H, S, i, c):
    return {p for p in H if not any(q != p and wedge_contains(S.wedge(i, c).at(p), q) for q in H)}


def test_duplicate_points_refused():
    with pytest.raises(InvalidInput):
        as_point_set([P(0, 0), P(0, 0)])


def test_boundary_examples():
    assert compute_boundary_i([P(0, 0), P(1, 1), P(2, 2)], SQ, 2) == [P(0, 0)]
    assert set(compute_boundary_i([P(0, 2), P(1, 1), P(2, 0)], SQ, 2)) == {P(0, 2), P(1, 1), P(2, 0)}
    for i in range(1, 5):
        for c in (CLOSED, OPEN):
            assert compute_boundary_i([P(3, 4)], SQ, i, c) == [P(3, 4)]


def test_order_examples():
    assert order_prec(SQ, 2, P(2, 0), P(0, 2)) == -1
    assert order_prec(SQ, 1, P(1, 1), P(0, 0)) == -1
    assert compute_boundary_i([P(0, 2), P(1, 1), P(2, 0)], SQ, 2) == [P(2, 0), P(1, 1), P(0, 2)]
    with pytest.raises(ValueError):
        order_prec(SQ, 2, P(1, 1), P(1, 1))
    with pytest.raises(Incomparable):
        order_prec(SQ, 2, P(0, 0), P(1, 1))


def test_singular_examples():
    B = assemble_cyclic(SINGULAR, SQ, CLOSED)
    assert B.entries[P(0, 0)].wedge_indices == {1, 3}
    assert B.entries[P(-1, -1)].wedge_indices == {1, 2, 3}
    assert B.entries[P(1, 1)].wedge_indices == {3, 4, 1}
    assert B.singular == {P(0, 0)}
    assert B.singular_pair == (1, 3)
    assert [e.point for e in B.cyclic].count(P(0, 0)) == 2
    assert [(e.point, e.wedge) for e in B.cyclic] == [
        (P(1, 1), 1), (P(0, 0), 1), (P(-1, -1), 1), (P(0, 0), 3)]
    two = assemble_cyclic([P(0, 0), P(1, 1)], SQ, CLOSED)
    assert two.singular == frozenset() and two.entries[P(0, 0)].wedge_indices == {1, 2, 3}
    assert assemble_cyclic([P(0, 0)], SQ).singular == frozenset()


def test_singular_pair_is_normalized():
    # The same configuration turned a quarter: pair {2, 4} becomes {1, 3} after rotation.
    H = [P(-1, 1), P(0, 0), P(1, -1)]
    B = assemble_cyclic(H, SQ, CLOSED)
    assert B.singular == {P(0, 0)} and B.singular_pair == (2, 4)
    assert B.rotated(2) == 1 and B.unrotated(1) == 2
    assert [e.wedge for e in B.cyclic if e.point == P(0, 0)] == [2, 4]


def test_detect_singular_rejects_bad_structure():
    with pytest.raises(StructuralViolation):
        detect_singular({P(0, 0): frozenset({1, 2, 4, 5})}, 3)
    with pytest.raises(StructuralViolation):
        detect_singular({P(0, 0): frozenset({1, 3}), P(1, 0): frozenset({2, 4})}, 2)
    assert detect_singular({P(0, 0): frozenset({1, 4})}, 3) == {P(0, 0)}


def test_cyclic_arcs():
    assert cyclic_arcs({1, 2, 6}, 6) == [[6, 1, 2]]
    assert cyclic_arcs({1, 3}, 4) == [[1], [3]]
    assert cyclic_arcs(range(1, 5), 4) == [[1, 2, 3, 4]]


def test_cyclic_intervals():
    assert cyclic_intervals([]) == []
    assert cyclic_intervals([False, False]) == []
    assert cyclic_intervals([True, True]) == [(0, 1)]
    assert cyclic_intervals([True, False, True, True, False]) == [(0, 0), (2, 3)]
    assert cyclic_intervals([True, False, True, True]) == [(2, 0)]
    assert cyclic_intervals([True, False, True, False]) == [(0, 0), (2, 2)]


def test_staircase_cycle():
    H = [P(0, 2), P(1, 1), P(2, 0)]
    B = assemble_cyclic(H, SQ, CLOSED)
    # The middle point is boundary only for the two reflex quadrants, so it is singular.
    assert B.boundary == set(H) and B.singular == {P(1, 1)}
    assert [e.point for e in B.cyclic] == [P(2, 0), P(1, 1), P(0, 2), P(1, 1)]
    every = SQ.wedge(2).at(P(5, 5))
    assert wedge_trace_intervals(B, every) == [(0, len(B.cyclic) - 1)]
    assert wedge_trace_intervals(B, SQ.wedge(2).at(P(-5, -5))) == []


def test_staircase_clipped():
    H = [P(0, 3), P(1, 2), P(2, 1), P(3, 0)]
    B = assemble_cyclic(H, SQ, CLOSED)
    middle = SQ.wedge(2).at(P(Fraction(5, 2), Fraction(5, 2)))
    # Both copies of each singular middle point are hit: two intervals.
    assert len(wedge_trace_intervals(B, middle)) == 2
    end = SQ.wedge(2).at(P(Fraction(3, 2), 5))
    assert len(wedge_trace_intervals(B, end)) == 1


def test_rich_examples():
    assert detect_rich([P(0, 0)], SQ) == frozenset()
    assert detect_rich([P(0, 0), P(1, 1)], SQ) == frozenset()
    H = [P(0, 0), P(2, 2), P(4, 0), P(2, 1)]
    B = assemble_cyclic(H, SQ, CLOSED)
    assert B.rich == rich_from_traces(H, SQ, B.boundary)


@given(point_sets(max_size=10), polygons)
def test_rich_agrees_with_arrangement_enumeration(H, S):
    B = assemble_cyclic(H, S, CLOSED)
    assert B.rich == rich_from_traces(H, S, B.boundary)


@given(point_sets(), polygons)
def test_boundary_matches_definition(H, S):
    for c in (CLOSED, OPEN):
        for i in range(1, S.size + 1):
            lst = compute_boundary_i(H, S, i, c)
            assert set(lst) == brute_boundary(H, S, i, c) if c is CLOSED else \
                set(lst) == {p for p in H if not any(wedge_contains(S.wedge(i, c).at(p), q) for q in H)}
            for a, b in zip(lst, lst[1:]):
                assert order_prec(S, i, a, b) == -1


@given(point_sets(), polygons)
def test_boundary_order_is_total(H, S):
    for c in (CLOSED, OPEN):
        for i in range(1, S.size + 1):
            lst = compute_boundary_i(H, S, i, c)
            for x in range(len(lst)):
                for y in range(x + 1, len(lst)):
                    assert order_prec(S, i, lst[x], lst[y]) == -order_prec(S, i, lst[y], lst[x])


@given(point_sets(), polygons)
def test_closed_structure_facts(H, S):
    B = assemble_cyclic(H, S, CLOSED)
    assert not B.anomalies
    n = S.n
    for p in B.singular:
        lo = min(B.entries[p].wedge_indices)
        assert B.entries[p].wedge_indices == {lo, lo + n}
    occurrences = [e.point for e in B.cyclic]
    for p, e in B.entries.items():
        assert occurrences.count(p) == (2 if e.singular else 1)
        assert e.type == min(e.wedge_indices)
    for i in range(1, S.size + 1):
        shared = set(B.boundary_list(i)) & set(B.boundary_list(i + 1))
        assert len(shared) <= 1


@given(point_sets(), polygons)
def test_every_trace_meets_the_cycle_in_two_intervals(H, S):
    for c in (CLOSED, OPEN):
        B = assemble_cyclic(H, S, c, with_rich=False)
        bpts = sorted(B.boundary)
        for i in range(1, S.size + 1):
            grid = TraceGrid(bpts, S, i)
            for U in range(grid.shape[0]):
                for V in range(grid.shape[1]):
                    tr = grid.trace(U, V)
                    assert len(cyclic_intervals([e.point in tr for e in B.cyclic])) <= 2


def test_open_wedges_can_disagree_on_shared_points():
    # A column of points at the left edge: open wedges miss their side rays, so
    # both top wedges see the whole column, ordered in opposite directions.
    H = [P(0, Fraction(1, 2)), P(0, 1), P(0, 3), P(Fraction(1, 2), Fraction(3, 2)),
         P(Fraction(1, 2), Fraction(5, 2)), P(Fraction(3, 2), 3), P(Fraction(5, 2), 1),
         P(Fraction(5, 2), 2), P(3, Fraction(5, 2))]
    l1, l2 = compute_boundary_i(H, SQ, 1, OPEN), compute_boundary_i(H, SQ, 2, OPEN)
    shared = [p for p in l1 if p in l2]
    assert shared == [P(0, 1), P(0, Fraction(1, 2))]
    assert [p for p in l2 if p in shared] == shared[::-1]
    B = assemble_cyclic(H, SQ, OPEN)
    assert B.anomalies and sorted(e.point for e in B.cyclic) == sorted(B.boundary)
    assert not assemble_cyclic(H, SQ, CLOSED).anomalies


def test_open_singular_point_off_the_opposite_pair():
    S = builtin_polygon("hexagon")
    H = [P(0, 1), P(1, 0), P(1, 1), P(1, 2), P(1, 3), P(2, 1), P(3, 1)]
    B = assemble_cyclic(H, S, OPEN)
    assert B.entries[P(2, 1)].wedge_indices == {1, 5}
    assert B.singular == {P(2, 1)} and B.singular_pair is None and B.anomalies
    assert [e.point for e in B.cyclic].count(P(2, 1)) == 2
    assert not assemble_cyclic(H, S, CLOSED).anomalies


def test_level_peel_examples():
    assert level_peel([P(0, 0)], SQ).levels == ((P(0, 0),),)
    shells = []
    for k in range(10):
        r = 10 - k
        shells.append([P(r, r), P(r, -r), P(-r, r), P(-r, -r), P(r, 0)])
    H = [p for shell in shells for p in shell]
    dec = level_peel(H, SQ)
    assert len(dec.levels) == 10
    for k, shell in enumerate(shells):
        assert {dec.level_of[p] for p in shell} == {k}


@given(point_sets(max_size=20), polygons)
def test_level_peel_partition(H, S):
    dec = level_peel(H, S)
    flat = [p for lvl in dec.levels for p in lvl]
    assert sorted(flat) == sorted(H) and all(dec.levels)
    for n, lvl in enumerate(dec.levels):
        rest = dec.residual(n)
        expect = {p for i in range(1, S.size + 1) for p in compute_boundary_i(rest, S, i, OPEN)}
        assert set(lvl) == expect
