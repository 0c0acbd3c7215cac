"""Approximate independent set and tour from weak r-divisions."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Iterable, Sequence

import numpy as np

from .division import DEFAULT_S, DivisionNode, weak_r_division
from .graph_core import (
    UNREACHABLE,
    Graph,
    GraphError,
    bfs_distances,
    bfs_tree,
    connected_components,
    is_acyclic,
    is_connected,
    path_from_parents,
)
from .plane_embedding import PlaneGraph
from .separator import SeparatorConfig, _resolve_delta

MIS_GROUP_CAP = 64
TSP_GROUP_CAP = 18


class CapExceeded(GraphError):
    """Exact group solver refused an instance above its size cap."""


def _check_epsilon(epsilon) -> Fraction:
    eps = Fraction(epsilon).limit_denominator(10 ** 9) if isinstance(epsilon, float) else Fraction(epsilon)
    if not 0 < eps < 1:
        raise GraphError("epsilon must lie strictly between 0 and 1")
    return eps


# ---------------------------------------------------------------------------
# Exact independent set
# ---------------------------------------------------------------------------


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_components(nbr: list[int], avail: int) -> list[int]:
    out = []
    while avail:
        seed = avail & -avail
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in _bits(frontier):
                grow |= nbr[v]
            frontier = grow & avail & ~comp
            comp |= frontier
        out.append(comp)
        avail &= ~comp
    return out


def _mis_mask(nbr: list[int], avail: int) -> int:
    chosen = 0
    changed = True
    while changed and avail:
        changed = False
        for v in _bits(avail):
            if not (avail >> v) & 1:
                continue
            nv = nbr[v] & avail
            d = nv.bit_count()
            if d == 0:
                chosen |= 1 << v
                avail &= ~(1 << v)
                changed = True
            elif d == 1:
                chosen |= 1 << v
                avail &= ~((1 << v) | nv)
                changed = True
            elif d == 2:
                u, w = _bits(nv)
                if (nbr[u] >> w) & 1:
                    chosen |= 1 << v
                    avail &= ~((1 << v) | nv)
                    changed = True
    if not avail:
        return chosen
    comps = _mask_components(nbr, avail)
    if len(comps) > 1:
        for c in comps:
            chosen |= _mis_mask(nbr, c)
        return chosen
    v = max(_bits(avail), key=lambda x: ((nbr[x] & avail).bit_count(), -x))
    take = (1 << v) | _mis_mask(nbr, avail & ~((1 << v) | nbr[v]))
    if avail.bit_count() - 1 > take.bit_count():
        skip = _mis_mask(nbr, avail & ~(1 << v))
        if skip.bit_count() > take.bit_count():
            take = skip
    return chosen | take


def exact_mis_group(g: Graph, cap: int = MIS_GROUP_CAP) -> list[int]:
    """A maximum independent set by branch and reduce.

    Degree-0 and degree-1 vertices are taken, as is a degree-2 vertex whose
    neighbours are adjacent; components are solved separately; otherwise the
    search branches on a vertex of largest degree.
    """
    if g.n > cap:
        raise CapExceeded(f"exact MIS refuses n={g.n} (cap {cap})")
    nbr = [0] * g.n
    for u in range(g.n):
        for v in g.adj[u]:
            nbr[u] |= 1 << v
    return sorted(_bits(_mis_mask(nbr, (1 << g.n) - 1)))


@dataclass
class MISResult:
    vertices: list[int]
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)


def mis_r(epsilon: Fraction, delta: int, cap: int = MIS_GROUP_CAP, s: int = DEFAULT_S) -> int:
    """Group size for a target epsilon: ``ceil(1 / (epsilon / 2^delta)^2)`` clamped to ``(s, cap]``."""
    internal = Fraction(epsilon) / (2 ** delta)
    return max(s + 1, min(cap, ceil(1 / internal ** 2)))


def mis_approx(
    p: PlaneGraph,
    epsilon,
    delta=None,
    config: SeparatorConfig | None = None,
    cap: int = MIS_GROUP_CAP,
) -> MISResult:
    """Independent set from exact solutions on the interiors of a weak r-division.

    Interiors of different groups are never adjacent (an edge lies inside
    some group, so an endpoint shared by two groups is on the boundary),
    hence the union is independent and has at least ``OPT - |boundary|``
    vertices.  A planar graph has ``OPT >= n/4``, so
    ``epsilon_effective = 4 |boundary| / n`` is a certified ratio.
    """
    eps = _check_epsilon(epsilon)
    cfg = config or SeparatorConfig()
    g = p.graph
    n = g.n
    out: list[int] = []
    boundary = 0
    groups = 0
    rs = []
    deltas = []
    for comp in connected_components(g):
        sub = p.subgraph(comp)
        d = delta if delta is not None else _resolve_delta(sub.graph, None, cfg)[0]
        deltas.append(d)
        r = mis_r(eps, d, cap)
        rs.append(r)
        if sub.n <= r:
            part = exact_mis_group(sub.graph, cap=max(cap, sub.n))
            out.extend(comp[v] for v in part)
            groups += 1
            continue
        div = weak_r_division(sub, r, d, cfg)
        if div.meta["oversize_groups"]:
            raise CapExceeded("division left a group above r")
        boundary += len(div.boundary)
        groups += len(div.groups)
        for inner in div.interiors:
            h, labels = sub.graph.induced_subgraph(inner)
            out.extend(comp[labels[v]] for v in exact_mis_group(h, cap))
    out.sort()
    eff = min(Fraction(1), Fraction(4 * boundary, n)) if n else Fraction(0)
    meta = {
        "epsilon": str(eps),
        "epsilon_effective": str(eff),
        "boundary_size": boundary,
        "groups": groups,
        "r": rs,
        "delta": deltas,
        "components": len(rs),
        "lower_bound": "size >= OPT - boundary_size",
    }
    return MISResult(out, meta)


# ---------------------------------------------------------------------------
# Tours
# ---------------------------------------------------------------------------


def tour_length(walk: Sequence[int]) -> int:
    return max(0, len(walk) - 1)


def is_tour(g: Graph, walk: Sequence[int], vertices: Iterable[int] | None = None) -> bool:
    """Closed walk along edges of ``g`` visiting every vertex of ``vertices`` (default all)."""
    want = set(range(g.n)) if vertices is None else set(vertices)
    if len(walk) == 1:
        return want <= {walk[0]} and len(want) <= 1
    if len(walk) < 2 or walk[0] != walk[-1]:
        return False
    if any(not g.has_edge(a, b) for a, b in zip(walk, walk[1:])):
        return False
    return want <= set(walk)


def exact_tsp_group(g: Graph, cap: int = TSP_GROUP_CAP) -> list[int]:
    """An optimal closed walk visiting every vertex of ``g``.

    Held-Karp over the shortest-path metric of ``g``, with vertex 0 fixed as
    the start; each metric hop is expanded into the canonical BFS path.
    """
    n = g.n
    if n > cap:
        raise CapExceeded(f"exact TSP refuses n={n} (cap {cap})")
    if n == 0:
        raise GraphError("empty graph")
    if not is_connected(g):
        raise GraphError("graph is disconnected: no tour")
    if n == 1:
        return [0]
    if n == 2:
        return [0, 1, 0]
    d = np.array([bfs_distances(g, s) for s in range(n)], dtype=np.int64)
    k = n - 1
    full = 1 << k
    inf = np.int64(1 << 40)
    dp = np.full((full, k), inf, dtype=np.int64)
    back = np.full((full, k), -1, dtype=np.int8)
    for j in range(k):
        dp[1 << j, j] = d[0, j + 1]
    masks = np.arange(full)
    pop = np.array([bin(m).count("1") for m in range(full)])
    hop = d[1:, 1:]
    for size in range(2, k + 1):
        layer = masks[pop == size]
        for j in range(k):
            have = layer[(layer >> j) & 1 == 1]
            prev = have ^ (1 << j)
            cand = dp[prev] + hop[:, j][None, :]
            arg = cand.argmin(axis=1)
            dp[have, j] = cand[np.arange(len(have)), arg]
            back[have, j] = arg
    last = dp[full - 1] + d[1:, 0]
    j = int(last.argmin())
    order = []
    mask = full - 1
    while j >= 0:
        order.append(j + 1)
        pj = int(back[mask, j])
        mask ^= 1 << j
        j = pj if mask else -1
    order.reverse()
    stops = [0] + order + [0]
    walk = [0]
    for a, b in zip(stops, stops[1:]):
        _, parent = bfs_tree(g, a)
        walk.extend(path_from_parents(parent, a, b)[1:])
    return walk


def splice_tours(outer: list[int], inner: list[int], at: int) -> list[int]:
    """Insert closed walk ``inner`` into ``outer`` at the first visit of ``at``."""
    if len(inner) <= 1:
        return list(outer)
    if len(outer) <= 1:
        outer = [at]
    i = outer.index(at)
    k = inner.index(at)
    rot = inner[k:-1] + inner[:k] + [at]
    return outer[:i] + rot + outer[i + 1 :]


@dataclass
class TourResult:
    walk: list[int] | None
    meta: dict = field(default_factory=dict)

    @property
    def length(self) -> int | None:
        return None if self.walk is None else tour_length(self.walk)


def tsp_approx(
    p: PlaneGraph,
    epsilon,
    delta=None,
    config: SeparatorConfig | None = None,
    cap: int = TSP_GROUP_CAP,
) -> TourResult:
    """Tour from exact group tours merged along the division's recursion tree.

    Splitting an optimal tour at a connected separator ``Z`` costs at most
    ``4 |Z|`` extra edges, and every tour has at least ``n`` edges, so the
    merged tour is within ``1 + 4 * sum|Z| / n`` of optimal.  That ratio is
    reported as ``epsilon_effective``; it is certified only when every
    recursion separator is connected.
    """
    eps = _check_epsilon(epsilon)
    cfg = config or SeparatorConfig()
    g = p.graph
    n = g.n
    if n == 0:
        raise GraphError("empty graph")
    if not is_connected(g):
        return TourResult(None, {"reason": "disconnected", "epsilon": str(eps)})
    r = max(DEFAULT_S + 1, min(cap, ceil(1 / eps ** 2)))
    if n <= r:
        walk = exact_tsp_group(g, cap=max(cap, n))
        return TourResult(walk, {"epsilon": str(eps), "epsilon_effective": "0", "r": r, "groups": 1,
                                 "separator_total": 0, "certified": True})
    d = delta if delta is not None else _resolve_delta(g, None, cfg)[0]
    div = weak_r_division(p, r, d, cfg, connect=True)
    if div.meta["oversize_groups"]:
        raise CapExceeded("division left a group above the tour cap")

    def solve(node: DivisionNode) -> list[int]:
        if node.is_leaf:
            h, labels = g.induced_subgraph(node.vertices)
            return [labels[v] for v in exact_tsp_group(h, cap)]
        left = solve(node.children[0])
        right = solve(node.children[1])
        return splice_tours(left, right, min(node.separator))

    walk = solve(div.recursion_tree)
    if not is_tour(g, walk):
        raise GraphError("merged walk is not a tour")
    internal = list(div.recursion_tree.internal_nodes())
    ztotal = sum(len(x.separator) for x in internal)
    certified = all(x.separator_connected for x in internal)
    eff = Fraction(4 * ztotal, n)
    meta = {
        "epsilon": str(eps),
        "epsilon_effective": str(eff),
        "r": r,
        "delta": d,
        "groups": len(div.groups),
        "separator_total": ztotal,
        "certified": certified,
    }
    return TourResult(walk, meta)


# ---------------------------------------------------------------------------
# T-joins, Euler tours and tour splitting
# ---------------------------------------------------------------------------


@dataclass
class TJoin:
    edges: list[tuple[int, int]]
    targets: frozenset[int]
    paths: list[list[int]] = field(default_factory=list)

    def odd_vertices(self) -> set[int]:
        deg: Counter = Counter()
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return {v for v, c in deg.items() if c % 2}


def t_join_on_tree(tree: Graph, targets: Iterable[int]) -> TJoin:
    """T-join from tree paths, pairing targets whose common ancestor is deepest first.

    The tree is rooted at its least vertex.  Walking up by decreasing depth,
    each vertex pairs off the unmatched targets arriving from its subtree in
    ascending order and hands at most one upwards, so every pair is joined
    at its lowest common ancestor and the paths are edge-disjoint.
    """
    T = frozenset(targets)
    if len(T) % 2:
        raise GraphError("T-join needs an even number of targets")
    if not T:
        return TJoin([], T)
    if not is_acyclic(tree) or not is_connected(tree):
        raise GraphError("not a tree")
    root = 0
    depth, parent = bfs_tree(tree, root)
    order = sorted(range(tree.n), key=lambda v: (-depth[v], v))
    pending: dict[int, list[int]] = {v: [] for v in range(tree.n)}
    pairs: list[tuple[int, int]] = []
    for v in order:
        bucket = sorted(pending[v] + ([v] if v in T else []))
        while len(bucket) >= 2:
            pairs.append((bucket.pop(0), bucket.pop(0)))
        if bucket and v != root:
            pending[parent[v]].extend(bucket)
    edges = []
    paths = []
    for a, b in pairs:
        up_a, up_b = [a], [b]
        x, y = a, b
        while x != y:
            if depth[x] >= depth[y]:
                x = parent[x]
                up_a.append(x)
            else:
                y = parent[y]
                up_b.append(y)
        path = up_a + up_b[-2::-1]
        paths.append(path)
        edges.extend((min(s, t), max(s, t)) for s, t in zip(path, path[1:]))
    return TJoin(edges, T, paths)


def euler_tour(edges: Sequence[tuple[int, int]], start: int | None = None) -> list[int]:
    """Closed walk using every multigraph edge once (Hierholzer, lowest neighbour first)."""
    if not edges:
        return [] if start is None else [start]
    inc: dict[int, list[tuple[int, int]]] = {}
    for i, (u, v) in enumerate(edges):
        inc.setdefault(u, []).append((v, i))
        inc.setdefault(v, []).append((u, i))
    for v, lst in inc.items():
        if len(lst) % 2:
            raise GraphError(f"vertex {v} has odd degree")
        lst.sort(reverse=True)
    used = [False] * len(edges)
    s = min(inc) if start is None else start
    if s not in inc:
        raise GraphError("start vertex has no edges")
    stack = [s]
    out = []
    while stack:
        v = stack[-1]
        lst = inc[v]
        while lst and used[lst[-1][1]]:
            lst.pop()
        if lst:
            w, i = lst.pop()
            used[i] = True
            stack.append(w)
        else:
            out.append(stack.pop())
    if not all(used):
        raise GraphError("multigraph is disconnected")
    out.reverse()
    return out


def _spanning_tree(g: Graph, vertices: Sequence[int]) -> list[tuple[int, int]]:
    h, labels = g.induced_subgraph(vertices)
    if not is_connected(h):
        raise GraphError("separator is not connected")
    _, parent = bfs_tree(h, 0)
    return [(labels[v], labels[parent[v]]) for v in range(1, h.n)]


def _side_tour(g: Graph, R: Sequence[int], Z: set[int], side: set[int]) -> list[int]:
    zs = sorted(Z)
    tree = _spanning_tree(g, zs)
    steps = [(a, b) for a, b in zip(R, R[1:]) if a in side or b in side]
    multi = list(steps) + tree
    deg: Counter = Counter()
    for u, v in multi:
        deg[u] += 1
        deg[v] += 1
    odd = {v for v, c in deg.items() if c % 2}
    if odd - Z:
        raise GraphError("side walk leaves through a vertex outside the separator")
    h, labels = g.induced_subgraph(zs)
    back = {v: i for i, v in enumerate(labels)}
    th = Graph(h.n, [(back[u], back[v]) for u, v in tree])
    join = t_join_on_tree(th, {back[v] for v in odd})
    multi += [(labels[u], labels[v]) for u, v in join.edges]
    if not multi:
        return [zs[0]]
    return euler_tour(multi, start=min(zs))


def split_tour(g: Graph, R: Sequence[int], Z: Iterable[int], A: Iterable[int], B: Iterable[int]):
    """Tours of ``G[A + Z]`` and ``G[B + Z]`` from a tour ``R`` of ``G``.

    Each step of ``R`` goes to the side owning an endpoint outside ``Z``;
    steps inside ``Z`` are dropped.  A spanning tree of ``G[Z]`` reconnects
    the pieces and a T-join on that tree fixes parity, so
    ``|R_A| + |R_B| <= |R| + 4 |Z|``.
    """
    Zs, As, Bs = set(Z), set(A), set(B)
    if not Zs:
        raise GraphError("empty separator")
    if As & Bs or (As | Bs) & Zs:
        raise GraphError("sides and separator overlap")
    if any(v in Bs for a in As for v in g.adj[a]):
        raise GraphError("an edge joins the two sides")
    if not is_tour(g, R, As | Bs | Zs):
        raise GraphError("R is not a tour of the given vertices")
    ra = _side_tour(g, R, Zs, As)
    rb = _side_tour(g, R, Zs, Bs)
    if tour_length(ra) + tour_length(rb) > tour_length(R) + 4 * len(Zs):
        raise GraphError("tour split exceeded its length bound")
    return ra, rb
