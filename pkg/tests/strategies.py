"""Hypothesis strategies for plane graphs."""

from hypothesis import strategies as st

from hypsep.generators import binary_tiling_patch, cycle_graph, cylinder, path_graph, random_planar_triangulation, wheel
from hypsep.graph_core import Graph
from hypsep.plane_embedding import PlaneGraph


@st.composite
def triangulations(draw, min_n=4, max_n=60):
    n = draw(st.integers(min_n, max_n))
    seed = draw(st.integers(0, 10_000))
    return random_planar_triangulation(n, seed)


@st.composite
def cylinders(draw, max_delta=6, max_rings=12):
    return cylinder(draw(st.integers(3, max_delta)), draw(st.integers(2, max_rings)))


def plane_graphs(max_n=60):
    return st.one_of(
        triangulations(max_n=max_n),
        cylinders(),
        st.integers(4, 12).map(wheel),
        st.integers(1, 4).map(binary_tiling_patch),
    )


@st.composite
def small_graphs(draw, max_n=10, connected=False):
    n = draw(st.integers(1, max_n))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    if connected:
        chosen = list(chosen) + [(i, i + 1) for i in range(n - 1)]
    return Graph(n, chosen)


def glue_at_vertices(parts, anchors):
    """Union of plane graphs, part ``i`` sharing its vertex 0 with vertex ``anchors[i-1]`` of the union so far."""
    rot = [list(r) for r in parts[0].rotation]
    for p, anchor in zip(parts[1:], anchors):
        at = anchor % len(rot)
        base = len(rot) - 1
        rot.extend([] for _ in range(p.n - 1))
        for v in range(p.n):
            row = [at if u == 0 else base + u for u in p.rotation[v]]
            if v == 0:
                rot[at].extend(row)
            else:
                rot[base + v] = row
    return PlaneGraph(rot)


@st.composite
def glued_graphs(draw, max_parts=40):
    pieces = st.one_of(
        st.integers(3, 5).map(cycle_graph),
        st.integers(4, 7).map(wheel),
        st.integers(2, 4).map(path_graph),
        triangulations(max_n=20),
    )
    parts = draw(st.lists(pieces, min_size=2, max_size=max_parts))
    anchors = draw(st.lists(st.integers(0, 10_000), min_size=len(parts) - 1, max_size=len(parts) - 1))
    return glue_at_vertices(parts, anchors)
