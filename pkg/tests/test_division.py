import pytest
from hypothesis import given
from hypothesis import strategies as st

from strategies import glued_graphs, plane_graphs

from conftest import grid, path

from hypsep.division import connect_vertex_set, pump_separator, weak_r_division
from hypsep.generators import binary_tiling_patch, cylinder, grid_diag, random_planar_triangulation
from hypsep.graph_core import GraphError, connected_components, is_connected
from hypsep.oracles import oracle_components
from hypsep.plane_embedding import PlaneGraph


def check_division(p, div, r):
    g = p.graph
    n = g.n
    seen = set().union(*map(set, div.groups))
    assert seen == set(range(n))
    assert all(len(gr) <= r for gr in div.groups)
    assert len(div.groups) <= max(1, 8 * n / r)
    count = {}
    for gr in div.groups:
        for v in gr:
            count[v] = count.get(v, 0) + 1
    assert div.boundary == {v for v, c in count.items() if c > 1}
    sets = [set(gr) for gr in div.groups]
    for u, v in g.edges():
        assert any(u in s and v in s for s in sets)
    for node in div.recursion_tree.internal_nodes():
        h, _ = g.induced_subgraph(node.separator)
        assert is_connected(h)
    for inner in div.interiors:
        assert not set(inner) & div.boundary


def test_pump_on_short_cylinder_is_one_ring():
    p = cylinder(3, 10)
    res = pump_separator(p)
    assert sorted(res) == [12, 13, 14]
    assert len(res.layers) == 1 and res.stalled == 0
    assert max(oracle_components(p.graph, res.vertices)) <= p.n / 2


@pytest.mark.parametrize("p", [binary_tiling_patch(5), random_planar_triangulation(400, 3), grid_diag(9)])
def test_pump_is_half_balanced(p):
    res = pump_separator(p)
    assert max(oracle_components(p.graph, res.vertices)) <= p.n / 2


def test_connect_vertex_set_adds_a_path():
    g = path(7)
    z, added = connect_vertex_set(g, {0, 6})
    assert z == set(range(7)) and added == 1
    z, added = connect_vertex_set(grid(3, 3), {0, 8})
    assert added == 1 and len(z) == 5
    assert connect_vertex_set(g, set()) == (set(), 0)


def test_r_must_exceed_s():
    with pytest.raises(GraphError):
        weak_r_division(cylinder(3, 5), 8)


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        weak_r_division(PlaneGraph([[1], [0], [3], [2]]), 16)


def test_small_graph_is_one_group():
    p = cylinder(3, 3)
    div = weak_r_division(p, 16)
    assert div.groups == [tuple(range(9))]
    assert div.boundary == frozenset() and div.recursion_tree.is_leaf


@pytest.mark.parametrize("r", [16, 32, 64])
def test_cylinder_division(r):
    p = cylinder(4, 50)
    div = weak_r_division(p, r)
    check_division(p, div, r)
    assert div.meta["oversize_groups"] == 0
    # a chain of rings: cuts are rings of four, a stalled pump may join two
    sizes = [len(x.separator) for x in div.recursion_tree.internal_nodes()]
    assert max(sizes) <= 12 and sizes.count(4) >= len(sizes) - 1


def test_division_dict_round_trip_keys():
    div = weak_r_division(binary_tiling_patch(4), 20)
    d = div.as_dict()
    assert set(d) == {"r", "groups", "boundary", "recursion_tree", "meta"}
    assert d["meta"]["group_count"] == len(div.groups)


@given(plane_graphs(max_n=120), st.integers(9, 40))
def test_division_properties(p, r):
    div = weak_r_division(p, r)
    check_division(p, div, r)


@given(glued_graphs(max_parts=25), st.integers(9, 30))
def test_division_with_cut_vertices(p, r):
    div = weak_r_division(p, r)
    check_division(p, div, r)
    assert len(connected_components(p.graph)) == 1
