import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import plane_graphs, triangulations

from hypsep.generators import cycle_graph, cylinder, grid_diag, random_planar_triangulation, wheel
from hypsep.graph_core import GraphError
from hypsep.greedy_filling import random_simple_cycle
from hypsep.oracles import cycle_balance_brute
from hypsep.plane_embedding import (
    EmbeddingError,
    FaceWeightedPlaneGraph,
    PlaneGraph,
    cycle_side_flood,
    cycle_sides,
    cycle_split_balance,
    dual_with_weights,
    split_balance,
)


def test_triangle_has_two_faces():
    p = PlaneGraph([[1, 2], [2, 0], [0, 1]])
    assert len(p.faces) == 2
    assert sorted(f.length for f in p.faces) == [3, 3]


def test_face_rule_follows_clockwise_successor():
    p = wheel(5)
    for f in p.faces:
        for d, e in zip(f.darts, f.darts[1:] + f.darts[:1]):
            assert e == (d[1], p.succ(d[1], d[0]))


def test_k5_rotation_rejected():
    k5 = [[u for u in range(5) if u != v] for v in range(5)]
    with pytest.raises(EmbeddingError):
        PlaneGraph(k5)


def test_asymmetric_rotation_rejected():
    with pytest.raises(EmbeddingError):
        PlaneGraph([[1], []])


def test_repeated_neighbour_rejected():
    with pytest.raises(EmbeddingError):
        PlaneGraph([[1, 1], [0]])


def test_face_with_cycle():
    p = cycle_graph(5)
    assert p.face_with_cycle([0, 1, 2, 3, 4]) is not None
    assert p.face_with_cycle([0, 1, 2]) is None


def test_subgraph_keeps_labels():
    p = grid_diag(3)
    s = p.subgraph([4, 5, 7, 8])
    assert s.labels == (4, 5, 7, 8)
    t = s.subgraph([1, 2, 3])
    assert t.labels == (5, 7, 8)


def test_cycle_sides_of_wheel_rim():
    p = wheel(7)
    rim = [v for v in range(p.n) if p.graph.degree(v) == 3]
    hub = next(v for v in range(p.n) if p.graph.degree(v) == 6)
    rim_cycle = [rim[0]]
    while len(rim_cycle) < len(rim):
        nxt = [u for u in p.graph.adj[rim_cycle[-1]] if u in rim and u not in rim_cycle]
        rim_cycle.append(nxt[0])
    outer = p.face_with_cycle(rim_cycle)
    inside, outside = cycle_sides(p, rim_cycle, outer)
    assert inside == {hub} and outside == set()


def test_split_balance_counts_face_weights():
    p = cycle_graph(4)
    fwp = FaceWeightedPlaneGraph(p, [6, 0])
    # two opposite vertices span no edge: one region holding 6 + 2 of 10
    assert split_balance(fwp, [0, 2], 10) == Fraction(1, 5)
    assert fwp.total_weight == 10


def test_dual_requires_triangles():
    with pytest.raises(GraphError):
        dual_with_weights(FaceWeightedPlaneGraph(cylinder(4, 3)))


def test_dual_weight_total():
    p = random_planar_triangulation(30, 4)
    d = dual_with_weights(FaceWeightedPlaneGraph(p))
    assert d.node_count == len(p.faces)
    assert d.total_weight == p.n
    assert len(d.edges) == p.m


@given(plane_graphs())
def test_euler_formula_and_dart_partition(p):
    assert p.n - p.m + len(p.faces) == 2
    darts = [d for f in p.faces for d in f.darts]
    assert len(darts) == 2 * p.m == len(set(darts))


@given(triangulations(max_n=80), st.integers(0, 1000))
def test_side_flood_matches_brute_force(p, seed):
    cyc = random_simple_cycle(p, random.Random(seed))
    if cyc is None:
        return
    rotation = [list(r) for r in p.rotation]
    assert cycle_split_balance(p, cyc) == cycle_balance_brute(rotation, cyc)
    side = cycle_side_flood(p, cyc)
    inside, outside = cycle_sides(p, cyc, 0)
    assert side in (inside, outside)
