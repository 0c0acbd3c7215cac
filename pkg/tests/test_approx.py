import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cycle, grid, path, petersen
from strategies import small_graphs, triangulations

from hypsep.approx import (
    CapExceeded,
    euler_tour,
    exact_mis_group,
    exact_tsp_group,
    is_tour,
    mis_approx,
    mis_r,
    splice_tours,
    split_tour,
    t_join_on_tree,
    tour_length,
    tsp_approx,
)
from hypsep.division import connect_vertex_set
from hypsep.generators import cylinder, grid_diag, random_planar_triangulation, wheel
from hypsep.graph_core import Graph, GraphError, bfs_tree, connected_components
from hypsep.oracles import oracle_is_independent, oracle_is_tour, oracle_mis, oracle_tsp
from hypsep.plane_embedding import PlaneGraph


# -- independent set ---------------------------------------------------------


def test_exact_mis_values():
    assert len(exact_mis_group(petersen())) == 4
    assert exact_mis_group(cycle(6)) == [0, 2, 4]
    assert exact_mis_group(Graph(0)) == []


def test_exact_mis_cap():
    with pytest.raises(CapExceeded):
        exact_mis_group(path(70))


@given(small_graphs(max_n=16))
def test_exact_mis_matches_oracle(g):
    s = exact_mis_group(g)
    assert oracle_is_independent(g, s)
    assert len(s) == oracle_mis(g)


def test_mis_r_clamps():
    assert mis_r(Fraction(1, 2), 1) == 16
    assert mis_r(Fraction(1, 10), 3) == 64
    assert mis_r(Fraction(1), 0) == 9


def test_mis_rejects_bad_epsilon():
    with pytest.raises(GraphError):
        mis_approx(wheel(6), 0)
    with pytest.raises(GraphError):
        mis_approx(wheel(6), 2)


def test_mis_on_disconnected_graph():
    p = PlaneGraph([[1], [0], [3], [2], []])
    res = mis_approx(p, Fraction(1, 2))
    assert res.size == 3 and res.meta["components"] == 3


@given(triangulations(max_n=24), st.sampled_from([Fraction(9, 10), Fraction(1, 2), Fraction(1, 5)]))
def test_mis_certified_ratio(p, eps):
    res = mis_approx(p, eps)
    g = p.graph
    opt = oracle_mis(g)
    assert oracle_is_independent(g, res.vertices)
    assert res.size >= opt - res.meta["boundary_size"]
    assert res.size >= (1 - Fraction(res.meta["epsilon_effective"])) * opt


def test_mis_on_larger_cylinder():
    p = cylinder(4, 40)
    res = mis_approx(p, Fraction(1, 2))
    assert oracle_is_independent(p.graph, res.vertices)
    # bipartite-like rings: the exact optimum is n/2
    assert res.size >= p.n // 2 - res.meta["boundary_size"]


# -- tours -------------------------------------------------------------------


def test_exact_tsp_values():
    t = exact_tsp_group(cycle(8))
    assert oracle_is_tour(cycle(8), t) and tour_length(t) == 8
    t = exact_tsp_group(grid(3, 3))
    assert oracle_is_tour(grid(3, 3), t) and tour_length(t) == 10
    assert exact_tsp_group(Graph(1)) == [0]


def test_exact_tsp_cap():
    with pytest.raises(CapExceeded):
        exact_tsp_group(path(19))


@given(small_graphs(max_n=9, connected=True))
def test_exact_tsp_matches_oracle(g):
    t = exact_tsp_group(g)
    assert oracle_is_tour(g, t)
    assert tour_length(t) == oracle_tsp(g)


def test_splice_tours():
    assert splice_tours([0, 1, 2, 0], [2, 3, 4, 2], 2) == [0, 1, 2, 3, 4, 2, 0]


def test_is_tour_subset():
    g = path(4)
    assert is_tour(g, [0, 1, 0], {0, 1})
    assert not is_tour(g, [0, 1, 0])


def test_tsp_disconnected_reports_reason():
    res = tsp_approx(PlaneGraph([[1], [0], [3], [2]]), Fraction(1, 2))
    assert res.walk is None and res.meta["reason"] == "disconnected"


@given(triangulations(min_n=4, max_n=18), st.sampled_from([Fraction(1, 2), Fraction(1, 4)]))
def test_tsp_certified_ratio(p, eps):
    res = tsp_approx(p, eps)
    assert oracle_is_tour(p.graph, res.walk)
    opt = oracle_tsp(p.graph)
    assert res.length <= (1 + Fraction(res.meta["epsilon_effective"])) * opt
    assert res.meta["certified"]


@pytest.mark.parametrize("p", [cylinder(3, 30), random_planar_triangulation(150, 2), grid_diag(8)])
def test_tsp_on_larger_graphs(p):
    res = tsp_approx(p, Fraction(1, 3))
    assert oracle_is_tour(p.graph, res.walk)
    assert res.length <= p.n * (1 + Fraction(res.meta["epsilon_effective"])) * 2


# -- T-joins, Euler tours and splits -----------------------------------------


def test_star_t_join():
    star = Graph(5, [(0, i) for i in range(1, 5)])
    j = t_join_on_tree(star, [1, 2, 3, 4])
    assert j.paths == [[1, 0, 2], [3, 0, 4]]
    assert j.odd_vertices() == {1, 2, 3, 4}


def test_path_t_join_pairs_at_lowest_ancestor():
    j = t_join_on_tree(path(5), [1, 2, 3, 4])
    assert j.paths == [[3, 4], [1, 2]]
    with pytest.raises(GraphError):
        t_join_on_tree(path(5), [1, 2, 3])
    with pytest.raises(GraphError):
        t_join_on_tree(cycle(4), [0, 1])


@given(st.integers(2, 30), st.integers(0, 10_000), st.data())
def test_t_join_parity_on_random_trees(n, seed, data):
    rng = random.Random(seed)
    tree = Graph(n, [(v, rng.randrange(v)) for v in range(1, n)])
    k = data.draw(st.integers(0, n // 2))
    targets = rng.sample(range(n), 2 * k)
    j = t_join_on_tree(tree, targets)
    assert j.odd_vertices() == set(targets)
    assert len(j.edges) == len(set(j.edges))


def test_euler_tour():
    bowtie = [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]
    assert euler_tour(bowtie) == [0, 1, 2, 0, 3, 4, 0]
    with pytest.raises(GraphError):
        euler_tour([(0, 1), (1, 2)])
    with pytest.raises(GraphError):
        euler_tour([(0, 1), (1, 0), (2, 3), (3, 2)])


def test_split_of_p5():
    ra, rb = split_tour(path(5), [0, 1, 2, 3, 4, 3, 2, 1, 0], [2], [0, 1], [3, 4])
    assert ra == [2, 1, 0, 1, 2]
    assert rb == [2, 3, 4, 3, 2]


def test_split_rejects_bad_input():
    g = path(5)
    tour = [0, 1, 2, 3, 4, 3, 2, 1, 0]
    with pytest.raises(GraphError):
        split_tour(g, tour, [], [0, 1], [2, 3, 4])
    with pytest.raises(GraphError):
        split_tour(g, tour, [2], [0, 1, 2], [3, 4])
    with pytest.raises(GraphError):
        split_tour(g, tour, [4], [0, 1], [2, 3])
    with pytest.raises(GraphError):
        split_tour(g, tour[:-2], [2], [0, 1], [3, 4])


def random_split(p, seed):
    """A tour plus a connected separator triple drawn from a random BFS ball."""
    rng = random.Random(seed)
    g = p.graph
    root = rng.randrange(g.n)
    dist, _ = bfs_tree(g, root)
    lv = rng.randint(1, max(1, max(dist) - 1))
    Z = {v for v in range(g.n) if dist[v] == lv}
    try:
        Z, _ = connect_vertex_set(g, Z, avoid={v for v in range(g.n) if dist[v] < lv})
    except GraphError:
        Z, _ = connect_vertex_set(g, Z)
    comps = connected_components(g, removed=Z)
    A = [v for c in comps[::2] for v in c]
    B = [v for c in comps[1::2] for v in c]
    walk = tsp_approx(p, Fraction(1, 2)).walk
    return walk, Z, A, B


@given(st.integers(6, 80), st.integers(0, 10_000))
def test_split_bound_on_triangulations(n, seed):
    p = random_planar_triangulation(n, seed)
    walk, Z, A, B = random_split(p, seed)
    ra, rb = split_tour(p.graph, walk, Z, A, B)
    g = p.graph
    assert is_tour(g, ra, set(A) | Z) and is_tour(g, rb, set(B) | Z)
    assert tour_length(ra) + tour_length(rb) <= tour_length(walk) + 4 * len(Z)
