"""Geodesic path or cycle separators for planar graphs with slim triangles.

The driver :func:`separator` handles trees and tiny inputs directly, reduces
everything else to a 2-connected graph, runs iterated greedy filling and
hands the outcome to one of three finishing routines.  Constants that only
make sense asymptotically are exposed in :class:`SeparatorConfig`; when a
precondition they imply does not hold, the output is still a correct
separator but ``meta["degraded"]`` is set.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .graph_core import (
    Graph,
    GraphError,
    bfs_tree,
    block_cut_tree,
    biconnected_blocks,
    component_balance,
    connected_components,
    find_sink_block,
    is_acyclic,
    is_connected,
    path_from_parents,
    shortest_path,
)
from .greedy_filling import Filling, greedy_fill, split_closed_walk
from .hyperbolic_metric import (
    SLIMNESS_MAX_N,
    effective_delta,
    is_geodesic_cycle,
    is_geodesic_path,
    is_k_local_geodesic,
    slimness_estimate,
    slimness_upper_bound,
    verify_geodesic_subgraph,
)
from .plane_embedding import (
    FaceWeightedPlaneGraph,
    PlaneGraph,
    add_path_in_face,
    add_vertex_in_face,
    cycle_face_sides,
    cycle_split_balance,
    region_weights,
    split_balance,
)


class GuardFailed(GraphError):
    """A size precondition behind a proven constant does not hold."""


class AnomalyError(GraphError):
    """A proven bound failed although its preconditions held."""


class InvariantViolation(GraphError):
    """A returned separator failed re-verification."""


# a degraded run whose result already splits this well skips the fallback pool
FALLBACK_SKIP_BALANCE = Fraction(1, 3)


@dataclass
class SeparatorConfig:
    c: float = 64
    n0: int = 16
    max_fill_rounds: int = 64
    max_fix_rounds: int = 64
    fallback_candidates: int = 60
    shorten_top: int = 8
    slimness_samples: int = 200
    exact_delta_max_n: int = 150
    seed: int = 0


@dataclass
class SeparatorResult:
    kind: str  # "path" or "cycle"
    vertices: tuple[int, ...]
    balance: Fraction
    meta: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.vertices)

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "balance": str(self.balance),
            "balance_float": float(self.balance),
            "meta": self.meta,
        }


def threshold_r(n: int, delta: int, c: float = 64) -> float:
    """``1 / (c * delta^3 * log2 n)``."""
    return 1.0 / (c * delta ** 3 * max(1.0, math.log2(max(n, 2))))


# ---------------------------------------------------------------------------
# Cycle shortening
# ---------------------------------------------------------------------------


@dataclass
class ShorteningResult:
    cycle: list[int]
    balance: Fraction
    iterations: int
    guard_ok: bool
    trace: list[tuple[int, int]] = field(default_factory=list)


def _replace_stretch(p: PlaneGraph, cycle: list[int], start: int, length: int):
    """Cut the stretch ``cycle[start .. start+length]`` with a canonical shortest path.

    Returns the candidate simple cycles: ``C1`` (path plus stretch) first,
    then the pieces of ``C2`` (path plus the rest of the cycle).
    """
    m = len(cycle)
    stretch = [cycle[(start + i) % m] for i in range(length + 1)]
    u, v = stretch[0], stretch[-1]
    path = shortest_path(p.graph, u, v)
    c1 = stretch + list(reversed(path[1:-1]))
    rest = [cycle[(start + length + i) % m] for i in range(m - length + 1)]
    # rest runs v .. u, then path runs u .. v
    c2_walk = rest + path[1:-1]
    pieces = split_closed_walk(c2_walk)
    out = []
    for cand in [c1, *pieces]:
        if len(cand) >= 3 and len(set(cand)) == len(cand):
            out.append(list(cand))
    return out, (u, v)


def _best_by_balance(p: PlaneGraph, cands: list[list[int]]):
    best = None
    for cand in cands:
        bal = cycle_split_balance(p, cand)
        if best is None or bal > best[1]:
            best = (cand, bal)
    return best


def shorten_cycle_to_geodesic(
    p: PlaneGraph, cycle: Sequence[int], alpha: Fraction | None = None, strict: bool = False
) -> ShorteningResult:
    """Shorten a simple cycle until it is geodesic, keeping the better-split piece.

    Each round takes the shortest non-geodesic stretch of the cycle (ties by
    vertex pair, then start), replaces it by the canonical shortest path and
    keeps whichever resulting simple cycle splits the graph best.  The guard
    ``alpha * n >= len * 4**len`` only decides ``guard_ok``; with ``strict``
    a failing guard raises :class:`GuardFailed` instead.
    """
    cur = list(cycle)
    n = p.n
    if alpha is None:
        alpha = cycle_split_balance(p, cur)
    ell = len(cur)
    guard_ok = ell <= 60 and alpha * n >= ell * 4 ** ell
    if strict and not guard_ok:
        raise GuardFailed(f"alpha*n = {float(alpha * n):.3g} below len*4^len for len={ell}")
    iterations = 0
    trace = []
    while True:
        check = is_k_local_geodesic(p.graph, cur, len(cur), closed=True)
        if check.ok:
            break
        cands, pair = _replace_stretch(p, cur, check.start, check.length)
        trace.append(pair)
        best = _best_by_balance(p, cands)
        if best is None:
            raise GraphError("shortening produced no simple cycle")
        cur = best[0]
        iterations += 1
    return ShorteningResult(cur, cycle_split_balance(p, cur), iterations, guard_ok, trace)


def shorten_with_split_tradeoff(
    p: PlaneGraph, cycle: Sequence[int], r: float, delta: int, strict: bool = False
) -> ShorteningResult:
    """Shorten by trading split balance for length, then finish with :func:`shorten_cycle_to_geodesic`.

    While the cycle is not ``10*delta``-locally geodesic, the closest
    violating pair gives a short cycle ``C1``.  If ``C1`` splits with
    balance at least ``r`` it is handed to the single-balance shortening;
    otherwise the rest ``C2`` (best simple piece) replaces the cycle.
    """
    k = 10 * delta
    n = p.n
    cur = list(cycle)
    start_balance = cycle_split_balance(p, cur)
    guard_ok = r * n >= k and start_balance >= 2 * r * len(cur)
    if strict and not guard_ok:
        raise GuardFailed("trade-off shortening preconditions do not hold")
    iterations = 0
    trace = []
    while True:
        check = is_k_local_geodesic(p.graph, cur, k, closed=True)
        if check.ok:
            break
        cands, pair = _replace_stretch(p, cur, check.start, check.length)
        trace.append(pair)
        iterations += 1
        c1 = cands[0]
        bal1 = cycle_split_balance(p, c1)
        if bal1 >= r:
            res = shorten_cycle_to_geodesic(p, c1, bal1)
            res.iterations += iterations
            res.guard_ok = res.guard_ok and guard_ok
            res.trace = trace + res.trace
            return res
        rest = cands[1:]
        if not rest:
            cur = c1
            continue
        cur = _best_by_balance(p, rest)[0]
    # k-locally geodesic; make sure it is fully geodesic
    res = shorten_cycle_to_geodesic(p, cur)
    res.iterations += iterations
    res.guard_ok = guard_ok
    res.trace = trace + res.trace
    return res


# ---------------------------------------------------------------------------
# Small helpers: tree centroid, fundamental cycles
# ---------------------------------------------------------------------------


def weighted_tree_centroid(adj: Sequence[Sequence[int]], weight: Sequence[int], nodes: Sequence[int]) -> int:
    """Node of the tree spanned by ``nodes`` minimising the heaviest remaining component."""
    root = min(nodes)
    parent = {root: -1}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    sub = {x: weight[x] for x in order}
    for x in reversed(order):
        if parent[x] >= 0:
            sub[parent[x]] += sub[x]
    total = sub[root]
    best = None
    for x in sorted(order):
        worst = total - sub[x]
        for y in adj[x]:
            if parent.get(y) == x:
                worst = max(worst, sub[y])
        if best is None or worst < best[0]:
            best = (worst, x)
    return best[1]


def graph_centroid(g: Graph) -> int:
    """Vertex whose removal leaves the smallest largest component (ties: lowest id)."""
    best = None
    for v in range(g.n):
        comps = connected_components(g, removed={v})
        worst = max((len(c) for c in comps), default=0)
        if best is None or worst < best[0]:
            best = (worst, v)
    return best[1]


def tree_centroid(g: Graph) -> int:
    """Centroid of a tree in linear time."""
    return weighted_tree_centroid(g.adj, [1] * g.n, list(range(g.n)))


def fundamental_cycle(parent: Sequence[int], depth: Sequence[int], u: int, v: int) -> list[int]:
    """Tree path ``u .. lca .. v`` closed by the non-tree edge ``uv``."""
    a, b = u, v
    left, right = [a], [b]
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return left + list(reversed(right))


def ranked_fundamental_cycles(p: PlaneGraph, max_candidates: int = 60) -> list[list[int]]:
    """Fundamental cycles of the BFS tree from vertex 0, best split first.

    With more non-tree edges than ``max_candidates`` an evenly spaced
    subset (in edge order) is evaluated.
    """
    g = p.graph
    dist, parent = bfs_tree(g, 0)
    nontree = [(u, v) for u, v in g.edges() if parent[v] != u and parent[u] != v]
    if not nontree:
        raise GraphError("graph has no cycle")
    if len(nontree) > max_candidates:
        step = len(nontree) / max_candidates
        nontree = [nontree[int(i * step)] for i in range(max_candidates)]
    scored = []
    for i, (u, v) in enumerate(nontree):
        cyc = fundamental_cycle(parent, dist, u, v)
        scored.append(((-cycle_split_balance(p, cyc), len(cyc), i), cyc))
    scored.sort(key=lambda t: t[0])
    return [c for _, c in scored]


def best_fundamental_cycle(p: PlaneGraph, max_candidates: int = 60) -> list[int]:
    """Best-splitting fundamental cycle of the BFS tree from vertex 0."""
    return ranked_fundamental_cycles(p, max_candidates)[0]


def best_geodesic_cycle(p: PlaneGraph, config: SeparatorConfig | None = None) -> ShorteningResult:
    """Shorten the ``shorten_top`` best fundamental cycles; keep the best-separating result."""
    cfg = config or SeparatorConfig()
    best = None
    for cyc in ranked_fundamental_cycles(p, cfg.fallback_candidates)[: max(1, cfg.shorten_top)]:
        res = shorten_cycle_to_geodesic(p, cyc)
        key = (component_balance(p.graph, res.cycle)[1], -len(res.cycle))
        if best is None or key > best[0]:
            best = (key, res)
    return best[1]


def best_face_path(p: PlaneGraph, samples: int = 12) -> tuple[list[int], Fraction]:
    """Best-separating canonical shortest path between two vertices of the longest face.

    Up to ``samples`` evenly spaced boundary vertices are paired; returns
    ``(path, balance)``.
    """
    g = p.graph
    face = max(p.faces, key=lambda f: (f.length, -f.id))
    ring = list(dict.fromkeys(face.vertices))
    if len(ring) > samples:
        step = len(ring) / samples
        ring = [ring[int(i * step)] for i in range(samples)]
    best = None
    for i, a in enumerate(ring):
        _, parent = bfs_tree(g, a)
        for b in ring[i + 1 :]:
            path = path_from_parents(parent, a, b)
            bal = component_balance(g, path)[1]
            key = (bal, -len(path), a, b)
            if best is None or key > best[0]:
                best = (key, path)
    if best is None:
        v = tree_centroid(g) if is_acyclic(g) else graph_centroid(g)
        return [v], component_balance(g, [v])[1]
    return best[1], best[0][0]


def median_level_separator(g: Graph, root: int = 0) -> set[int]:
    """The BFS level holding the median vertex by distance from ``root``.

    Vertices closer than the level number fewer than ``n/2`` and those
    farther number at most ``n/2``, so the level is half-balanced.
    """
    dist, _ = bfs_tree(g, root)
    order = sorted(range(g.n), key=lambda v: (dist[v], v))
    level = dist[order[(g.n - 1) // 2]]
    return {v for v in range(g.n) if dist[v] == level}


def generic_separator(p: PlaneGraph) -> set[int]:
    """Smaller of the median BFS level and the iterated fundamental-cycle separator."""
    a = median_level_separator(p.graph)
    if is_acyclic(p.graph):
        return a
    b = fundamental_cycle_separator(p)
    return a if len(a) <= len(b) else b


def fundamental_cycle_separator(p: PlaneGraph) -> set[int]:
    """Half-balanced vertex separator built from fundamental cycles.

    Repeatedly takes the largest component of ``G - S``; if it is a tree its
    centroid joins ``S``, otherwise the fundamental cycle (BFS tree from the
    component's least vertex) whose cotree edge best splits the charged
    vertex weight.
    """
    g = p.graph
    n = g.n
    S: set[int] = set()
    while True:
        comps = connected_components(g, removed=S)
        if not comps:
            return S
        big = max(comps, key=lambda c: (len(c), -c[0]))
        if 2 * len(big) <= n:
            return S
        sub = p.subgraph(big)
        sg = sub.graph
        if is_acyclic(sg):
            S.add(big[tree_centroid(sg)])
            continue
        dist, parent = bfs_tree(sg, 0)
        faces = sub.faces
        nf = len(faces)
        charge = [0] * nf
        for v in range(sg.n):
            charge[sub.face_of(v, sub.rotation[v][0])] += 1
        cot: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in range(nf)]
        for u, v in sg.edges():
            if parent[v] == u or parent[u] == v:
                continue
            a, b = sub.face_of(u, v), sub.face_of(v, u)
            cot[a].append((b, (u, v)))
            cot[b].append((a, (u, v)))
        # root the cotree at face 0; DFS intervals give subtree membership
        par = {0: (-1, None)}
        tin, tout = {}, {}
        clock = 0
        stack = [(0, iter(cot[0]))]
        tin[0] = clock
        clock += 1
        while stack:
            x, it = stack[-1]
            for y, e in it:
                if y not in par:
                    par[y] = (x, e)
                    tin[y] = clock
                    clock += 1
                    stack.append((y, iter(cot[y])))
                    break
            else:
                tout[x] = clock
                stack.pop()
        order = sorted(par, key=lambda x: tin[x])
        acc = {x: charge[x] for x in order}
        for x in reversed(order):
            px = par[x][0]
            if px >= 0:
                acc[px] += acc[x]
        home = [sub.face_of(v, sub.rotation[v][0]) for v in range(sg.n)]
        total = sg.n
        best = None
        for x in order:
            px, e = par[x]
            if px < 0:
                continue
            cyc = fundamental_cycle(parent, dist, *e)
            # cycle vertices charged to the subtree are not strictly inside
            on = sum(1 for v in cyc if tin[x] <= tin[home[v]] < tout[x])
            inside = acc[x] - on
            outside = total - inside - len(cyc)
            key = (max(inside, outside), len(cyc), e)
            if best is None or key < best[0]:
                best = (key, e)
        u, v = best[1]
        cyc = fundamental_cycle(parent, dist, u, v)
        S.update(big[x] for x in cyc)


# ---------------------------------------------------------------------------
# Iterated greedy filling
# ---------------------------------------------------------------------------


@dataclass
class IteratedFillingState:
    """Current graph ``G_i`` (as a face-weighted plane graph) and how it came about.

    ``to_root[v]`` maps a vertex of ``G_i`` to the 2-connected input graph
    and ``carried[f]`` lists the input vertices covered by face ``f``.
    """

    n: int
    delta: int
    r: float
    fwp: FaceWeightedPlaneGraph
    to_root: list[int]
    carried: list[list[int]]
    history: list[dict] = field(default_factory=list)
    outcome: str = ""
    payload: object = None

    def check_conservation(self) -> None:
        if self.fwp.total_weight != self.n:
            raise AnomalyError(f"weight {self.fwp.total_weight} != n = {self.n}")
        for f, w in enumerate(self.fwp.face_weight):
            if w != len(self.carried[f]):
                raise AnomalyError("face weight does not match carried vertices")


def _face_balance(n: int, inside: int, length: int) -> Fraction:
    outside = n - inside - length
    return Fraction(n - max(inside, outside), n)


def _restrict_to_filling_face(state: IteratedFillingState, filling: Filling, idx: int) -> IteratedFillingState:
    """``G_{i+1}``: the closed filling face ``idx``; everything else goes to the new outer face."""
    fwp = state.fwp
    p = fwp.plane
    inside = set(filling.face_host_faces[idx])
    boundary = filling.faces[idx]
    verts = {v for f in inside for v in p.faces[f].vertices}

    def keep(u, v):
        return p.face_of(u, v) in inside or p.face_of(v, u) in inside

    sub = p.subgraph(verts, keep_edge=keep)
    old = sorted(verts)
    index = {v: i for i, v in enumerate(old)}
    weight = [0] * len(sub.faces)
    carried: list[list[int]] = [[] for _ in sub.faces]
    for f in inside:
        u, v = p.faces[f].darts[0]
        nf = sub.face_of(index[u], index[v])
        weight[nf] = fwp.face_weight[f]
        carried[nf] = list(state.carried[f])
    a, b = boundary[0], boundary[1]
    outer_dart = (a, b) if p.face_of(a, b) not in inside else (b, a)
    outer = sub.face_of(index[outer_dart[0]], index[outer_dart[1]])
    gone = [state.to_root[v] for v in range(p.n) if v not in index]
    for f in range(len(p.faces)):
        if f not in inside:
            gone.extend(state.carried[f])
    carried[outer] = sorted(gone)
    weight[outer] = len(gone)
    new = IteratedFillingState(
        state.n,
        state.delta,
        state.r,
        FaceWeightedPlaneGraph(sub, weight),
        [state.to_root[v] for v in old],
        carried,
        list(state.history),
    )
    new.check_conservation()
    return new


def iterated_greedy_filling(p: PlaneGraph, delta: int, r: float, config: SeparatorConfig | None = None,
                            n_total: int | None = None) -> IteratedFillingState:
    """Fill the largest face repeatedly until one of the three outcomes applies.

    Outcome ``"one"``: some filling face boundary splits with balance >= r
    (payload: that cycle, in input ids).  ``"two"``: the largest face has
    length <= 20*delta (payload: None).  ``"three"``: every filling face holds
    fewer than ``r*n`` vertices (payload: the filling).
    """
    cfg = config or SeparatorConfig()
    if p.n < 3 or len(biconnected_blocks(p.graph)) != 1:
        raise GraphError("iterated filling needs a 2-connected graph")
    n = n_total if n_total is not None else p.n
    state = IteratedFillingState(
        n, delta, r, FaceWeightedPlaneGraph(p), list(range(p.n)), [[] for _ in p.faces]
    )
    state.check_conservation()
    for _ in range(cfg.max_fill_rounds):
        fwp = state.fwp
        gi = fwp.plane
        face = max(gi.faces, key=lambda f: (f.length, -f.id))
        if face.length <= 20 * delta:
            state.outcome = "two"
            return state
        if fwp.face_weight[face.id]:
            raise AnomalyError("a long face carries weight")
        filling = greedy_fill(gi, face.vertices, delta, fwp.face_weight)
        weights = filling.face_weights
        faces = filling.faces
        record = {
            "graph_n": gi.n,
            "face_length": face.length,
            "filling_faces": len(faces),
            "max_filling_face": max((len(f) for f in faces), default=0),
            "anomalies": list(filling.anomalies),
        }
        state.history.append(record)
        if sum(weights) + len(filling.vertices) != fwp.total_weight:
            raise AnomalyError("filling lost weight")
        best = None
        for i, (cyc, w) in enumerate(zip(faces, weights)):
            bal = _face_balance(n, w, len(cyc))
            if bal >= r and (best is None or bal > best[0]):
                best = (bal, i)
        if best is not None:
            state.outcome = "one"
            state.payload = [state.to_root[v] for v in faces[best[1]]]
            record["outcome_face"] = best[1]
            return state
        if all(w < r * n for w in weights):
            state.outcome = "three"
            state.payload = filling
            return state
        heavy = [i for i, w in enumerate(weights) if w > (1 - r) * n]
        if not heavy:
            raise AnomalyError("no heavy filling face although no outcome applies")
        record["heavy_face"] = heavy[0]
        state = _restrict_to_filling_face(state, filling, heavy[0])
    raise AnomalyError("iterated filling did not terminate")


# ---------------------------------------------------------------------------
# Outcome 2: all faces short
# ---------------------------------------------------------------------------


def even_edge_set_cycles(edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    """Split an edge set with all degrees even into simple cycles (walks by least neighbour)."""
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    out = []
    while True:
        starts = [v for v, s in adj.items() if s]
        if not starts:
            return out
        s = min(starts)
        path = [s]
        pos = {s: 0}
        while path:
            v = path[-1]
            if not adj[v]:
                # odd leftovers; give up on this trail
                for x in path:
                    pos.pop(x, None)
                break
            w = min(adj[v])
            adj[v].discard(w)
            adj[w].discard(v)
            if w in pos:
                i = pos[w]
                cyc = path[i:]
                for x in path[i + 1:]:
                    del pos[x]
                del path[i + 1:]
                if len(cyc) >= 3:
                    out.append(cyc)
                if len(path) == 1 and not adj[path[0]]:
                    break
            else:
                pos[w] = len(path)
                path.append(w)


def _components_of_induced(g: Graph, S: set[int]) -> dict[int, int]:
    comp: dict[int, int] = {}
    for s in sorted(S):
        if s in comp:
            continue
        comp[s] = s
        stack = [s]
        while stack:
            x = stack.pop()
            for y in g.adj[x]:
                if y in S and y not in comp:
                    comp[y] = s
                    stack.append(y)
    return comp


def _make_forest(p: PlaneGraph, S: set[int]) -> int:
    """Add face cycles that touch two components of ``G[S]`` until none is left."""
    added = 0
    while True:
        comp = _components_of_induced(p.graph, S)
        hit = None
        for f in p.faces:
            seen = {comp[v] for v in f.vertices if v in S}
            if len(seen) >= 2:
                hit = f
                break
        if hit is None:
            return added
        S.update(hit.vertices)
        added += 1


def _fix_heavy_tree(fwp: FaceWeightedPlaneGraph, S: set[int], n: int) -> str | None:
    """One Case-1/Case-2 step on the heaviest tree of ``H(S)``; returns the case applied."""
    p = fwp.plane
    comps = connected_components(p.graph, removed=S)
    comp_of = {}
    for i, c in enumerate(comps):
        for v in c:
            comp_of[v] = i
    nc = len(comps)
    weight = [len(c) for c in comps]
    bnodes = []
    belongs: dict[int, list[int]] = {}
    adj: list[list[int]] = [[] for _ in range(nc)]
    for f in p.faces:
        cs = sorted({comp_of[v] for v in f.vertices if v not in S})
        if len(cs) == 1:
            weight[cs[0]] += fwp.face_weight[f.id]
            belongs.setdefault(cs[0], []).append(f.id)
        elif len(cs) >= 2:
            node = nc + len(bnodes)
            bnodes.append(f.id)
            weight.append(fwp.face_weight[f.id])
            adj.append(list(cs))
            for c in cs:
                adj[c].append(node)
    # trees of H(S)
    seen = [False] * len(weight)
    heaviest = None
    for s in range(len(weight)):
        if seen[s]:
            continue
        nodes = [s]
        seen[s] = True
        for x in nodes:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    nodes.append(y)
        w = sum(weight[x] for x in nodes)
        if heaviest is None or w > heaviest[0]:
            heaviest = (w, nodes)
    if heaviest is None or 2 * heaviest[0] <= n:
        return None
    x = weighted_tree_centroid(adj, weight, heaviest[1])
    before = len(S)
    if x >= nc:
        S.update(p.faces[bnodes[x - nc]].vertices)
        case = "case1"
    else:
        for y in adj[x]:
            S.update(p.faces[bnodes[y - nc]].vertices)
        case = "case2"
        if len(S) == before:
            heavy_faces = [f for f in belongs.get(x, []) if fwp.face_weight[f] > 0]
            if heavy_faces:
                f = max(heavy_faces, key=lambda f: (fwp.face_weight[f], -f))
                S.update(p.faces[f].vertices)
                case = "case2-face"
            else:
                sub = p.subgraph(comps[x])
                extra = fundamental_cycle_separator(sub) if not is_acyclic(sub.graph) else {tree_centroid(sub.graph)}
                S.update(comps[x][v] for v in extra)
                case = "case2-split"
    return case


def outcome2_separator(state: IteratedFillingState, original: PlaneGraph, delta: int,
                       config: SeparatorConfig | None = None) -> tuple[list[int], dict]:
    """Geodesic cycle separator when every face of ``G_i`` is short.

    Returns ``(cycle in original ids, meta)``.
    """
    cfg = config or SeparatorConfig()
    n = state.n
    r = state.r
    fwp = state.fwp
    gp = fwp.plane
    meta: dict = {"outcome": "two"}
    guard_failures: list[str] = []
    # (a) half-balanced separator of the input, lifted to G_i
    s_root = generic_separator(original)
    index = {v: i for i, v in enumerate(state.to_root)}
    cover = {}
    for f, vs in enumerate(state.carried):
        for v in vs:
            cover[v] = f
    S: set[int] = set()
    for v in s_root:
        if v in index:
            S.add(index[v])
        else:
            S.update(gp.faces[cover[v]].vertices)
    meta["initial_separator_size"] = len(s_root)
    # (b) + (c) forest and balance fix
    cases = []
    for _ in range(cfg.max_fix_rounds):
        cases.append(("forest", _make_forest(gp, S)))
        if split_balance(fwp, S, n) >= Fraction(1, 3):
            break
        case = _fix_heavy_tree(fwp, S, n)
        if case is None:
            break
        cases.append((case, len(S)))
    sbal = split_balance(fwp, S, n)
    meta["fix_steps"] = [c for c, _ in cases if c != "forest"]
    meta["lifted_split_balance"] = str(sbal)
    if sbal < Fraction(1, 3):
        guard_failures.append("lifted separator below 1/3 split balance")
    # (d) accumulate face regions of G_i[S]
    region, rweight = region_weights(fwp, S)
    edges_s = [(u, v) for u in S for v in gp.rotation[u] if v in S and u < v]
    radj: dict[int, set[int]] = {rid: set() for rid in rweight}
    for u, v in edges_s:
        a, b = region[gp.face_of(u, v)], region[gp.face_of(v, u)]
        if a != b:
            radj[a].add(b)
            radj[b].add(a)
    big = [rid for rid in sorted(rweight) if 3 * rweight[rid] >= n]
    if big:
        U = {big[0]}
    else:
        start = min(rweight)
        U = set()
        total = 0
        queue = deque([start])
        seen = {start}
        while queue and 3 * total <= n:
            x = queue.popleft()
            U.add(x)
            total += rweight[x]
            for y in sorted(radj[x]):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
    wU = sum(rweight[x] for x in U)
    meta["accumulated_weight"] = wU
    # (e) boundary cycles of U grouped by complementary component
    rest = sorted(set(rweight) - U)
    parent = {x: x for x in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges_s:
        a, b = region[gp.face_of(u, v)], region[gp.face_of(v, u)]
        if a not in U and b not in U and a != b:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    by_hole: dict[int, list[tuple[int, int]]] = {}
    for u, v in edges_s:
        a, b = region[gp.face_of(u, v)], region[gp.face_of(v, u)]
        if (a in U) != (b in U):
            hole = find(b if a in U else a)
            by_hole.setdefault(hole, []).append((u, v))
    u_face = next(f for f in range(len(gp.faces)) if region[f] in U)
    gammas = []
    for hole in sorted(by_hole):
        for cyc in even_edge_set_cycles(by_hole[hole]):
            same = cycle_face_sides(gp, cyc, u_face)
            w = sum(fwp.face_weight[f] for f in range(len(gp.faces)) if not same[f])
            on = set(cyc)
            w += sum(1 for v in range(gp.n) if v not in on and not same[gp.face_of(v, gp.rotation[v][0])])
            gammas.append((cyc, w))
    if not gammas:
        # the separator swallowed almost everything; fall back to a raw cycle
        guard_failures.append("accumulated region has no boundary")
        res = best_geodesic_cycle(original, cfg)
        meta.update(shortening="fallback", shortening_iterations=res.iterations, guard_failures=guard_failures)
        return res.cycle, meta
    meta["holes"] = len(gammas)
    j = max(range(len(gammas)), key=lambda i: (Fraction(gammas[i][1], len(gammas[i][0])), -i))
    gamma = [state.to_root[v] for v in gammas[j][0]]
    meta["boundary_cycle_length"] = len(gamma)
    # (f) shorten in the input graph
    if len(gammas) == 1:
        res = shorten_cycle_to_geodesic(original, gamma)
        meta["shortening"] = "single"
    else:
        res = shorten_with_split_tradeoff(original, gamma, r, delta)
        meta["shortening"] = "tradeoff"
    if not res.guard_ok:
        guard_failures.append(f"{meta['shortening']} shortening guard")
    meta["shortening_iterations"] = res.iterations
    meta["guard_failures"] = guard_failures
    return res.cycle, meta


# ---------------------------------------------------------------------------
# Outcome 3: short geodesic path through the final filling
# ---------------------------------------------------------------------------


def _arc(face: Sequence[int], a: int, b: int) -> list[int]:
    """Shorter boundary arc of ``face`` from ``a`` to ``b`` (ties: smaller vertex sequence)."""
    m = len(face)
    i, j = face.index(a), face.index(b)
    fwd = [face[(i + t) % m] for t in range((j - i) % m + 1)]
    bwd = [face[(i - t) % m] for t in range((i - j) % m + 1)]
    if len(fwd) != len(bwd):
        return fwd if len(fwd) < len(bwd) else bwd
    return min(fwd, bwd)


def _strip_loops(walk: list[int]) -> list[int]:
    out: list[int] = []
    pos: dict[int, int] = {}
    for v in walk:
        if v in pos:
            cut = pos[v]
            for x in out[cut + 1:]:
                del pos[x]
            del out[cut + 1:]
        else:
            pos[v] = len(out)
            out.append(v)
    return out


def outcome3_separator(state: IteratedFillingState, original: PlaneGraph, delta: int,
                       config: SeparatorConfig | None = None) -> tuple[list[int], dict]:
    """Shortest path separator from a filling whose faces are all light.

    Returns ``(path in original ids, meta)``.
    """
    filling: Filling = state.payload
    n = state.n
    r = state.r
    k = 20 * delta
    faces = [tuple(f) for f in filling.faces]
    weights = filling.face_weights
    C = tuple(filling.start_cycle)
    nh = filling.host.n
    hverts = sorted(filling.vertices)
    center = [nh + i for i in range(len(faces))]
    root = nh + len(faces)
    adj: dict[int, set[int]] = {v: set() for v in hverts}
    adj[root] = set()
    for e in filling.edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    for i, f in enumerate(faces):
        adj[center[i]] = set(f)
        for v in f:
            adj[v].add(center[i])
    adj[root] = set(C)
    for v in C:
        adj[v].add(root)
    # triangles of H_Delta
    tris: list[tuple[int, int, int]] = []
    tri_face: list[int] = []
    offset = []
    for i, f in enumerate(faces):
        offset.append(len(tris))
        for t in range(len(f)):
            tris.append((center[i], f[t], f[(t + 1) % len(f)]))
            tri_face.append(i)
    root_base = len(tris)
    for t in range(len(C)):
        tris.append((root, C[t], C[(t + 1) % len(C)]))
        tri_face.append(-1)
    edge_tris: dict[frozenset, list[int]] = {}
    for t, (a, b, c) in enumerate(tris):
        for e in (frozenset((a, b)), frozenset((b, c)), frozenset((a, c))):
            edge_tris.setdefault(e, []).append(t)
    if any(len(ts) != 2 for ts in edge_tris.values()):
        raise AnomalyError("filling faces do not tile the sphere")
    # BFS tree from the root, ascending neighbours
    parent = {root: -1}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        x = queue.popleft()
        for y in sorted(adj[x]):
            if y not in parent:
                parent[y] = x
                depth[y] = depth[x] + 1
                queue.append(y)
    max_depth = max(depth.values())
    depth_bound = 2 * k * math.log(max(n, 2)) + 3
    # dual spanning tree on the triangles
    nt = len(tris)
    tadj: list[list[tuple[int, tuple[int, int]]]] = [[] for _ in range(nt)]
    dual_edges = 0
    for e, (t1, t2) in edge_tris.items():
        a, b = tuple(e)
        if parent.get(a) == b or parent.get(b) == a:
            continue
        tadj[t1].append((t2, (min(a, b), max(a, b))))
        tadj[t2].append((t1, (min(a, b), max(a, b))))
        dual_edges += 1
    if dual_edges != nt - 1:
        raise AnomalyError("non-tree duals do not form a spanning tree")
    tw = [0] * nt
    for i in range(len(faces)):
        tw[offset[i]] += weights[i]
    lowest: dict[int, int] = {}
    for t in range(root_base):
        for v in tris[t][1:]:
            if v not in lowest or t < lowest[v]:
                lowest[v] = t
    for v in hverts:
        tw[lowest[v]] += 1
    total = sum(tw)
    if total != n:
        raise AnomalyError(f"dual weights sum to {total}, expected {n}")
    tpar: dict[int, tuple[int, tuple[int, int] | None]] = {0: (-1, None)}
    order = [0]
    for x in order:
        for y, e in sorted(tadj[x]):
            if y not in tpar:
                tpar[y] = (x, e)
                order.append(y)
    if len(order) != nt:
        raise AnomalyError("dual tree is disconnected")
    acc = list(tw)
    for x in reversed(order):
        px = tpar[x][0]
        if px >= 0:
            acc[px] += acc[x]
    best = None
    for x in order:
        px, e = tpar[x]
        if px < 0:
            continue
        light = min(acc[x], total - acc[x])
        key = (-light, e)
        if best is None or key < best[0]:
            best = (key, e, light)
    _, (u, v), light = best

    def onto_face(x):
        return parent[x] if x >= nh else x

    def to_depth_one(x):
        path = [x]
        while depth[path[-1]] > 1:
            path.append(parent[path[-1]])
        return path

    u1, v1 = onto_face(u), onto_face(v)
    pu, pv = to_depth_one(u1), to_depth_one(v1)
    u0, v0 = pu[-1], pv[-1]
    shared = None
    if u1 == v1:
        middle = [u1]
    elif frozenset((u1, v1)) in filling.edges:
        middle = [u1, v1]
    else:
        shared = next(i for i, f in enumerate(faces) if u1 in f and v1 in f)
        middle = _arc(faces[shared], u1, v1)
    walk0 = list(reversed(pu)) + middle[1:-1] + pv if u1 != v1 else list(reversed(pu)) + pv[1:]
    lifted: list[int] = []
    for i, x in enumerate(walk0):
        if x >= nh:
            a, b = walk0[i - 1], walk0[i + 1]
            arc = _arc(faces[x - nh], a, b)
            lifted.extend(arc[1:-1])
        else:
            lifted.append(x)
    pbar = _strip_loops(lifted)
    root_u0, root_v0 = state.to_root[u0], state.to_root[v0]
    path = shortest_path(original.graph, root_u0, root_v0)
    len_p0 = len(walk0) - 1
    len_pbar = len(pbar) - 1
    len_p = len(path) - 1
    guard = (r * n + k) * 2 * len_p0 <= n / 20 and r * n * (k + 1) * (len_pbar + len_p) <= n / 20
    meta = {
        "outcome": "three",
        "bfs_depth": max_depth,
        "depth_bound": depth_bound,
        "depth_ok": max_depth <= depth_bound,
        "dual_edge_light_side": light,
        "lifted_walk_length": len_p0,
        "loopless_lift_length": len_pbar,
        "endpoints": [root_u0, root_v0],
        "large_n_guard": guard,
        "guard_failures": [] if guard else ["outcome-3 size guard"],
    }
    return path, meta


# ---------------------------------------------------------------------------
# 2-connectivity reduction
# ---------------------------------------------------------------------------


@dataclass
class Reduction:
    """How the 2-connected working graph relates to the input.

    ``kind`` is ``"identity"``, ``"cut_vertex"``, ``"block"`` or ``"wheels"``.
    ``to_input[i]`` maps working vertex ``i`` to the input; wheel vertices map
    through the bijection onto the vertices hanging off their cut vertex and
    are flagged in ``wheel_vertex``.
    """

    kind: str
    hat: PlaneGraph | None
    to_input: list[int]
    cut_vertex: int | None = None
    wheel_vertex: list[bool] = field(default_factory=list)
    wheels: list[dict] = field(default_factory=list)


def two_connect_reduce(p: PlaneGraph, delta: int | None = None) -> Reduction:
    """Reduce a connected plane graph to a 2-connected one of the same order.

    A 2-connected input is returned as is.  Otherwise the sink of the
    weight-directed block-cut tree decides: a cut vertex is itself a
    separator; a block larger than ``n/20`` is used directly; otherwise one
    wheel per cut vertex of the sink block stands in for the part hanging off it.
    """
    g = p.graph
    n = g.n
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    blocks = biconnected_blocks(g)
    if len(blocks) == 1 and n >= 3:
        return Reduction("identity", p, list(range(n)), wheel_vertex=[False] * n)
    t = block_cut_tree(g)
    sink = find_sink_block(t)
    if not t.is_block(sink):
        x = t.node_vertices(sink)[0]
        return Reduction("cut_vertex", None, [x], cut_vertex=x)
    largest = max(t.blocks, key=lambda b: (len(b), [-v for v in b]))
    if 20 * len(largest) > n and len(largest) >= 3:
        sub = p.subgraph(largest)
        return Reduction("block", sub, list(largest), wheel_vertex=[False] * len(largest))
    block = t.blocks[sink]
    sub = p.subgraph(block)
    index = {v: i for i, v in enumerate(block)}
    rot = [list(r) for r in sub.rotation]
    to_input = list(block)
    wheel_vertex = [False] * len(block)
    wheels = []
    for x in sorted(v for v in block if v in t.cut_vertices):
        xn = t.cut_node(x)
        k = t.omega[(xn, sink)]
        hanging = sorted(t.side_vertices(xn, sink) - {x})
        xi = index[x]
        y = min(rot[xi])
        new_ids = list(range(len(rot), len(rot) + k - 1))
        rot.extend([] for _ in new_ids)
        if k == 2:
            add_path_in_face(rot, xi, y, new_ids)
        else:
            inner, hub = new_ids[:-1], new_ids[-1]
            add_path_in_face(rot, xi, y, inner)
            add_vertex_in_face(rot, hub, [xi, y, *reversed(inner)])
        to_input.extend(hanging)
        wheel_vertex.extend([True] * len(new_ids))
        wheels.append({"cut_vertex": x, "edge": (x, block[y]), "k": k, "vertices": new_ids})
    hat = PlaneGraph(rot)
    if hat.n != n:
        raise AnomalyError(f"reduced graph has {hat.n} vertices, expected {n}")
    return Reduction("wheels", hat, to_input, wheel_vertex=wheel_vertex, wheels=wheels)


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------


def separator_2connected(p: PlaneGraph, delta: int, r: float, config: SeparatorConfig | None = None):
    """Run the 2-connected pipeline; returns ``(kind, vertices, meta)`` in ``p``'s ids."""
    cfg = config or SeparatorConfig()
    state = iterated_greedy_filling(p, delta, r, cfg)
    meta = {"fill_rounds": len(state.history), "filling_history": state.history}
    if state.outcome == "one":
        res = shorten_cycle_to_geodesic(p, state.payload)
        meta.update(outcome="one", shortening_iterations=res.iterations,
                    guard_failures=[] if res.guard_ok else ["single shortening guard"])
        return "cycle", res.cycle, meta
    if state.outcome == "two":
        cyc, m = outcome2_separator(state, p, delta, cfg)
        meta.update(m)
        return "cycle", cyc, meta
    path, m = outcome3_separator(state, p, delta, cfg)
    meta.update(m)
    bal = component_balance(p.graph, path)[1]
    if bal < Fraction(1, 7):
        if m["large_n_guard"]:
            raise AnomalyError(f"outcome-3 path balance {bal} below 1/7 with guards satisfied: {m}")
        meta["guard_failures"] = meta["guard_failures"] + ["outcome-3 balance below 1/7"]
    return "path", path, meta


def _verify(g: Graph, kind: str, vertices: Sequence[int]) -> None:
    if kind == "path":
        if not is_geodesic_path(g, vertices) or not verify_geodesic_subgraph(g, vertices):
            raise InvariantViolation(f"path {list(vertices)} is not geodesic")
    elif not is_geodesic_cycle(g, vertices):
        raise InvariantViolation(f"cycle {list(vertices)} is not geodesic")


def _resolve_delta(g: Graph, delta, cfg: SeparatorConfig) -> tuple[int, str, int]:
    if delta is not None:
        return effective_delta(delta), "given", delta
    if g.n <= min(cfg.exact_delta_max_n, SLIMNESS_MAX_N):
        rep = slimness_upper_bound(g)
        return effective_delta(rep.slim), "exact", rep.slim
    rep = slimness_estimate(g, cfg.slimness_samples, cfg.seed)
    return effective_delta(rep.slim), "sampled", rep.slim


def separator(p: PlaneGraph, delta: int | None = None, config: SeparatorConfig | None = None) -> SeparatorResult:
    """Balanced geodesic path or geodesic cycle separator of a connected plane graph."""
    cfg = config or SeparatorConfig()
    g = p.graph
    n = g.n
    if n == 0:
        raise GraphError("empty graph")
    if not is_connected(g):
        raise GraphError("graph is disconnected")
    meta: dict = {"n": n, "c": cfg.c, "n0": cfg.n0}
    if is_acyclic(g):
        v = tree_centroid(g)
        meta.update(outcome="tree", degraded=False, guard_failures=[])
        return _finish(g, "path", [v], meta)
    d, source, raw = _resolve_delta(g, delta, cfg)
    r = threshold_r(n, d, cfg.c)
    meta.update(delta=d, delta_source=source, delta_raw=raw, r=r)
    if n < cfg.n0 or d >= math.log2(n):
        res = best_geodesic_cycle(p, cfg)
        path, pbal = best_face_path(p)
        cbal = component_balance(g, res.cycle)[1]
        if pbal >= Fraction(1, 7) and pbal > cbal:
            meta.update(outcome="small", degraded=False, guard_failures=[], small_choice="face_path")
            return _finish(g, "path", path, meta)
        meta.update(small_choice="cycle")
        meta.update(outcome="small", degraded=False, guard_failures=[],
                    shortening_iterations=res.iterations)
        return _finish(g, "cycle", res.cycle, meta)
    red = two_connect_reduce(p, d)
    meta["reduction"] = red.kind
    if red.kind == "cut_vertex":
        meta.update(outcome="cut_vertex", degraded=False, guard_failures=[])
        return _finish(g, "path", [red.cut_vertex], meta)
    hat = red.hat
    d_hat = d + 6 if red.kind == "wheels" else d
    r_hat = threshold_r(n, d_hat, cfg.c) if red.kind != "block" else threshold_r(hat.n, d_hat, cfg.c)
    meta.update(working_delta=d_hat, working_r=r_hat, working_n=hat.n)
    kind, verts, sub_meta = separator_2connected(hat, d_hat, r_hat, cfg)
    meta.update(sub_meta)
    failures = list(sub_meta.get("guard_failures", []))
    mapped = _map_back(p, red, kind, verts, cfg, failures)
    kind, verts = mapped
    candidate = (kind, verts)
    if red.kind == "block":
        failures.append("block larger than n/20 used directly")
    meta["guard_failures"] = failures
    meta["degraded"] = bool(failures)
    if failures:
        _verify(g, *candidate)
        best = candidate
        best_bal = component_balance(g, verts)[1]
        meta["pipeline_balance"] = str(best_bal)
        meta["returned"] = "pipeline"
        if best_bal >= FALLBACK_SKIP_BALANCE:
            return _finish(g, *best, meta)
        fb = best_geodesic_cycle(p, cfg).cycle
        fb_bal = component_balance(g, fb)[1]
        fp, fp_bal = best_face_path(p)
        if fb_bal > best_bal:
            best, best_bal = ("cycle", fb), fb_bal
            meta["returned"] = "fallback_cycle"
        if fp_bal > best_bal:
            best = ("path", fp)
            meta["returned"] = "fallback_path"
        return _finish(g, *best, meta)
    meta["returned"] = "pipeline"
    return _finish(g, kind, verts, meta)


def _map_back(p: PlaneGraph, red: Reduction, kind: str, verts: Sequence[int], cfg: SeparatorConfig,
              failures: list[str]):
    if red.kind in ("identity", "block"):
        return kind, [red.to_input[v] for v in verts]
    wheel = red.wheel_vertex
    if kind == "path":
        lo, hi = 0, len(verts)
        while lo < hi and wheel[verts[lo]]:
            lo += 1
        while hi > lo and wheel[verts[hi - 1]]:
            hi -= 1
        core = list(verts[lo:hi])
        if any(wheel[v] for v in core):
            raise AnomalyError("shortest path crosses a wheel")
        if not core:
            # the whole path sits inside one wheel: use its cut vertex
            w = next(w for w in red.wheels if verts[0] in w["vertices"])
            return "path", [w["cut_vertex"]]
        return "path", [red.to_input[v] for v in core]
    if any(wheel[v] for v in verts):
        failures.append("cycle touches a wheel")
        return "cycle", best_geodesic_cycle(p, cfg).cycle
    return "cycle", [red.to_input[v] for v in verts]


def _finish(g: Graph, kind: str, vertices: Sequence[int], meta: dict) -> SeparatorResult:
    vertices = tuple(int(v) for v in vertices)
    _verify(g, kind, vertices)
    largest, bal = component_balance(g, vertices)
    meta["largest_component"] = largest
    meta["length"] = len(vertices) - 1 if kind == "path" else len(vertices)
    meta.setdefault("degraded", False)
    return SeparatorResult(kind, vertices, bal, meta)
