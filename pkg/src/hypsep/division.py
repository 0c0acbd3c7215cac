"""Pumped half-balanced separators and weak r-divisions built from them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .graph_core import Graph, GraphError, bfs_tree, connected_components, is_connected
from .plane_embedding import PlaneGraph
from .separator import SeparatorConfig, _resolve_delta, separator

DEFAULT_S = 8


@dataclass
class PumpResult:
    """Union of separator layers; ``vertices`` are ids of the pumped graph."""

    vertices: frozenset[int]
    layers: list[tuple[int, ...]]
    kinds: list[str]
    stalled: int = 0
    connected_by_paths: int = 0

    def __iter__(self):
        return iter(sorted(self.vertices))

    def __len__(self) -> int:
        return len(self.vertices)


def connect_vertex_set(g: Graph, vertices: Iterable[int], avoid: Iterable[int] = ()) -> tuple[set[int], int]:
    """Join the components of ``G[Z]`` with shortest connecting paths.

    Grows from the component holding the least vertex: a BFS from it over
    the rest of the graph (never entering ``avoid``) stops at the first
    other ``Z`` vertex and the path is added.  Returns
    ``(Z plus paths, number of paths added)``.
    """
    Z = set(vertices)
    blocked = set(avoid) - Z
    added = 0
    if not Z:
        return Z, 0
    while True:
        start = min(Z)
        comp = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in Z and y not in comp:
                    comp.add(y)
                    stack.append(y)
        if len(comp) == len(Z):
            return Z, added
        parent = {v: -1 for v in comp}
        queue = deque(sorted(comp))
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in parent or y in blocked:
                    continue
                parent[y] = x
                if y in Z:
                    hit = y
                    break
                queue.append(y)
        if hit is None:
            raise GraphError("separator pieces lie in different components")
        x = parent[hit]
        while x != -1 and x not in comp:
            Z.add(x)
            x = parent[x]
        added += 1


def pump_separator(p: PlaneGraph, delta=None, config: SeparatorConfig | None = None) -> PumpResult:
    """Half-balanced separator from repeated geodesic separators.

    Stage ``i`` separates ``G_i``; if the largest component ``C`` of
    ``G_i - Z_i`` has more than ``n/2`` vertices the next stage is
    ``G_i[C + Z_i]``.  When that would not shrink the stage graph (``Z_i``
    cuts nothing off) the next stage is ``G_i[C]``; such stalls are counted.
    """
    cfg = config or SeparatorConfig()
    g = p.graph
    n = g.n
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    if delta is None:
        delta = _resolve_delta(g, None, cfg)[0]
    stage = list(range(n))  # stage vertex -> id in p
    sub = p
    Z: set[int] = set()
    layers = []
    kinds = []
    stalled = 0
    while True:
        res = separator(sub, delta, cfg)
        layer = [stage[v] for v in res.vertices]
        layers.append(tuple(layer))
        kinds.append(res.kind)
        Z.update(layer)
        comps = connected_components(sub.graph, removed=set(res.vertices))
        if not comps:
            break
        big = max(comps, key=lambda c: (len(c), -c[0]))
        if 2 * len(big) <= n:
            break
        keep = set(big) | set(res.vertices)
        if len(keep) == sub.n:
            keep = set(big)
            stalled += 1
        old = sorted(keep)
        sub = sub.subgraph(old)
        stage = [stage[v] for v in old]
    check = connected_components(g, removed=Z)
    if any(2 * len(c) > n for c in check):
        raise GraphError("pumped separator is not half-balanced")
    return PumpResult(frozenset(Z), layers, kinds, stalled)


@dataclass
class DivisionNode:
    """One recursion step; ``vertices`` and ``separator`` are input ids."""

    vertices: tuple[int, ...]
    separator: tuple[int, ...] = ()
    children: list["DivisionNode"] = field(default_factory=list)
    group: int | None = None
    method: str = ""
    separator_connected: bool = True

    @property
    def is_leaf(self) -> bool:
        return self.group is not None

    def internal_nodes(self):
        if self.is_leaf:
            return
        yield self
        for c in self.children:
            yield from c.internal_nodes()

    def as_dict(self) -> dict:
        if self.is_leaf:
            return {"group": self.group, "size": len(self.vertices)}
        return {
            "size": len(self.vertices),
            "separator": list(self.separator),
            "method": self.method,
            "children": [c.as_dict() for c in self.children],
        }


@dataclass
class Division:
    r: int
    groups: list[tuple[int, ...]]
    boundary: frozenset[int]
    recursion_tree: DivisionNode
    interiors: list[tuple[int, ...]]
    meta: dict = field(default_factory=dict)

    @property
    def separator_total(self) -> int:
        return sum(len(x.separator) for x in self.recursion_tree.internal_nodes())

    def as_dict(self) -> dict:
        return {
            "r": self.r,
            "groups": [list(gr) for gr in self.groups],
            "boundary": sorted(self.boundary),
            "recursion_tree": self.recursion_tree.as_dict(),
            "meta": self.meta,
        }


def _split_components(comps: list[list[int]]) -> tuple[list[int], list[int]]:
    """First-fit decreasing into the lighter of two parts."""
    X: list[int] = []
    Y: list[int] = []
    for c in sorted(comps, key=lambda c: (-len(c), c[0])):
        (X if len(X) <= len(Y) else Y).extend(c)
    return X, Y


def _level_split(g: Graph, connect: bool) -> tuple[set[int], int] | None:
    """A BFS level cut with both sides non-empty, or ``None``.

    Around a root, level ``L`` separates the ball of levels below ``L`` from
    the levels above.  Connecting paths avoid the ball so it stays intact.
    Roots are tried from a peripheral vertex onwards in id order; the first
    root with a usable level gives the most balanced of its levels.
    Returns ``(Z, connecting paths)``.
    """
    dist0, _ = bfs_tree(g, 0)
    first = max(range(g.n), key=lambda v: (dist0[v], -v))
    for root in [first] + [v for v in range(g.n) if v != first]:
        dist, _ = bfs_tree(g, root)
        best = None
        for lv in range(1, max(dist)):
            Z = {v for v in range(g.n) if dist[v] == lv}
            ball = {v for v in range(g.n) if dist[v] < lv}
            added = 0
            if connect:
                try:
                    Z, added = connect_vertex_set(g, Z, avoid=ball)
                except GraphError:
                    continue
            rest = g.n - len(ball) - len(Z)
            if rest <= 0:
                continue
            key = (max(len(ball), rest) + len(Z), lv)
            if best is None or key < best[0]:
                best = (key, Z, added)
        if best is not None:
            return best[1], best[2]
    return None


def weak_r_division(
    p: PlaneGraph,
    r: int,
    delta=None,
    config: SeparatorConfig | None = None,
    s: int = DEFAULT_S,
    connect: bool = True,
) -> Division:
    """Recursive halving with pumped separators until every piece has at most ``r`` vertices.

    Components left by a node's separator ``Z`` go first-fit decreasing
    into two parts ``X`` and ``Y``; the children are ``G[X + Z]`` and
    ``G[Y + Z]``.  With ``connect`` the separator is first joined into one
    connected piece, as tour merging needs.
    """
    cfg = config or SeparatorConfig()
    g = p.graph
    n = g.n
    if r <= s:
        raise GraphError(f"r must exceed {s}")
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    if delta is None:
        delta = _resolve_delta(g, None, cfg)[0]
    groups: list[tuple[int, ...]] = []
    stats = {"stalled_pumps": 0, "level_fallbacks": 0, "connecting_paths": 0, "oversize_groups": 0}

    def leaf(verts):
        node = DivisionNode(tuple(verts), group=len(groups))
        groups.append(tuple(verts))
        return node

    def build(verts: list[int]) -> DivisionNode:
        if len(verts) <= r:
            return leaf(verts)
        sub = p.subgraph(verts)
        sg = sub.graph
        pumped = pump_separator(sub, delta, cfg)
        stats["stalled_pumps"] += pumped.stalled
        Z = set(pumped.vertices)
        method = "pumped"
        if connect:
            Z, k = connect_vertex_set(sg, Z)
            stats["connecting_paths"] += k
        X, Y = _split_components(connected_components(sg, removed=Z))
        if not X or not Y:
            method = "bfs_level"
            stats["level_fallbacks"] += 1
            cut = _level_split(sg, connect)
            if cut is None:
                stats["oversize_groups"] += 1
                return leaf(verts)
            Z, k = cut
            stats["connecting_paths"] += k
            X, Y = _split_components(connected_components(sg, removed=Z))
        node = DivisionNode(tuple(verts), tuple(sorted(verts[z] for z in Z)), method=method)
        zl = sorted(Z)
        left = sorted(verts[v] for v in X + zl)
        right = sorted(verts[v] for v in Y + zl)
        node.separator_connected = len(connected_components(sg.induced_subgraph(zl)[0])) <= 1
        node.children = [build(left), build(right)]
        return node

    root = build(list(range(n)))
    count: dict[int, int] = {}
    for gr in groups:
        for v in gr:
            count[v] = count.get(v, 0) + 1
    boundary = frozenset(v for v, c in count.items() if c > 1)
    interiors = [tuple(v for v in gr if v not in boundary) for gr in groups]
    meta = dict(stats, delta=delta, n=n, group_count=len(groups), boundary_size=len(boundary), s=s)
    return Division(r, groups, boundary, root, interiors, meta)
