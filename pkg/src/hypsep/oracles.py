"""Brute-force reference implementations.

Nothing here reuses the main algorithms: distances, faces and sides are
recomputed from the raw adjacency and rotation lists so that a bug in the
fast path cannot cancel against the same bug here.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph_core import Graph, GraphError


class OracleRefusal(GraphError):
    """Instance exceeds the oracle budget."""


@dataclass
class OracleBudget:
    max_n: dict[str, int] = field(
        default_factory=lambda: {
            "mis": 24,
            "tsp": 18,
            "hyperbolicity": 400,
            "slimness": 60,
            "short_cycles": 40,
        }
    )

    def check(self, kind: str, n: int) -> None:
        cap = self.max_n[kind]
        if n > cap:
            raise OracleRefusal(f"{kind} oracle refuses n={n} (budget {cap})")


DEFAULT_BUDGET = OracleBudget()


def _adj(g: Graph) -> list[list[int]]:
    return [list(a) for a in g.adj]


def _all_pairs(g: Graph) -> np.ndarray:
    """Floyd-Warshall over the adjacency matrix (unreachable = large)."""
    n = g.n
    big = 10 ** 6
    d = np.full((n, n), big, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u in range(n):
        for v in g.adj[u]:
            d[u, v] = 1
    for k in range(n):
        d = np.minimum(d, d[:, k : k + 1] + d[k : k + 1, :])
    return d


# ---------------------------------------------------------------------------
# Independent set
# ---------------------------------------------------------------------------


def oracle_mis(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Maximum independent set size by include/exclude enumeration over bitmasks."""
    budget.check("mis", g.n)
    nbr = [0] * g.n
    for u in range(g.n):
        for v in g.adj[u]:
            nbr[u] |= 1 << v
    best = 0

    def rec(avail: int, size: int) -> None:
        nonlocal best
        if avail == 0:
            best = max(best, size)
            return
        if size + bin(avail).count("1") <= best:
            return
        v = (avail & -avail).bit_length() - 1
        rec(avail & ~(1 << v) & ~nbr[v], size + 1)
        if nbr[v] & avail:
            rec(avail & ~(1 << v), size)

    rec((1 << g.n) - 1, 0)
    return best


# ---------------------------------------------------------------------------
# Travelling salesperson on the graph metric
# ---------------------------------------------------------------------------


def oracle_tsp(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Shortest closed walk visiting every vertex (Held-Karp on the metric closure)."""
    budget.check("tsp", g.n)
    n = g.n
    if n == 1:
        return 0
    d = _all_pairs(g)
    if d.max() >= 10 ** 6:
        raise GraphError("graph is disconnected: no tour")
    if n == 2:
        return 2
    inf = 10 ** 9
    k = n - 1  # vertex 0 is the fixed start; bit i stands for vertex i + 1
    full = 1 << k
    dp = np.full((full, k), inf, dtype=np.int64)
    for i in range(k):
        dp[1 << i, i] = d[0, i + 1]
    masks = np.arange(full)
    popcount = np.array([bin(m).count("1") for m in range(full)])
    sub = d[1:, 1:]
    for size in range(1, k):
        layer = masks[popcount == size]
        for i in range(k):
            src = layer[(layer >> i) & 1 == 1]
            vals = dp[src, i]
            for j in range(k):
                if j == i:
                    continue
                ok = (src >> j) & 1 == 0
                tgt = src[ok] | (1 << j)
                cand = vals[ok] + sub[i, j]
                np.minimum.at(dp[:, j], tgt, cand)
    last = dp[full - 1] + d[1:, 0]
    return int(last.min())


# ---------------------------------------------------------------------------
# Four-point hyperbolicity and all-geodesic slimness
# ---------------------------------------------------------------------------


def oracle_hyperbolicity(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> Fraction:
    """Exact four-point hyperbolicity by scanning every quadruple."""
    budget.check("hyperbolicity", g.n)
    n = g.n
    d = _all_pairs(g)
    if n and d.max() >= 10 ** 6:
        raise GraphError("graph is disconnected")
    best = 0
    for x in range(n):
        for y in range(x + 1, n):
            s1 = d[x, y] + d  # pairing {xy, zw}
            s2 = d[x][:, None] + d[y][None, :]  # {xz, yw}
            s3 = d[y][:, None] + d[x][None, :]  # {xw, yz}
            stack = np.sort(np.stack([s1, s2, s3]), axis=0)
            gap = int((stack[2] - stack[1]).max())
            best = max(best, gap)
    return Fraction(best, 2)


def _bfs(adj: list[list[int]], s: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[s] = 0
    q = deque([s])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                q.append(v)
    return dist


def oracle_all_geodesic_slimness(g: Graph, budget: OracleBudget = DEFAULT_BUDGET) -> int:
    """Slimness over every choice of geodesic sides.

    For each source ``u`` and probe ``p`` a DP over the geodesic DAG gives,
    for every ``v``, the largest possible distance from ``p`` to some
    geodesic ``u -> v``.  A side point ``p`` of a triangle ``a, b, c`` ranges
    over the whole interval between ``a`` and ``b``.
    """
    budget.check("slimness", g.n)
    n = g.n
    adj = _adj(g)
    dist = [_bfs(adj, s) for s in range(n)]
    if any(x < 0 for row in dist for x in row):
        raise GraphError("graph is disconnected")
    # far[p][u][v] = max over geodesics gamma from u to v of min_{q in gamma} d(p, q)
    far = np.zeros((n, n, n), dtype=np.int64)
    for u in range(n):
        order = sorted(range(n), key=lambda v: dist[u][v])
        for p in range(n):
            dp_ = dist[p]
            w = [0] * n
            for v in order:
                if v == u:
                    w[v] = dp_[u]
                    continue
                bestpred = max(w[x] for x in adj[v] if dist[u][x] == dist[u][v] - 1)
                w[v] = min(dp_[v], bestpred)
            far[p, u] = w
    best = 0
    D = np.array(dist)
    for a in range(n):
        for b in range(a + 1, n):
            interval = [p for p in range(n) if dist[a][p] + dist[p][b] == dist[a][b]]
            vals = np.minimum(far[interval, b, :], far[interval, a, :]).max()
            best = max(best, int(vals))
    del D
    return best


# ---------------------------------------------------------------------------
# Short cycles and their split balance
# ---------------------------------------------------------------------------


def _faces(rotation: list[list[int]]) -> dict[tuple[int, int], int]:
    """Face id per dart using the rule next(u->v) = (v, successor of u around v)."""
    pos = [{w: i for i, w in enumerate(r)} for r in rotation]
    face: dict[tuple[int, int], int] = {}
    fid = 0
    for u in range(len(rotation)):
        for v in sorted(rotation[u]):
            if (u, v) in face:
                continue
            a, b = u, v
            while (a, b) not in face:
                face[(a, b)] = fid
                r = rotation[b]
                a, b = b, r[(pos[b][a] + 1) % len(r)]
            fid += 1
    return face


def cycle_balance_brute(rotation: list[list[int]], cycle: list[int]) -> Fraction:
    """``1 - (larger side) / n`` for a simple cycle, from first principles."""
    n = len(rotation)
    face = _faces(rotation)
    on = set(cycle)
    cyc = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
    nf = max(face.values()) + 1
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (u, v), f in face.items():
        if frozenset((u, v)) not in cyc:
            a, b = find(f), find(face[(v, u)])
            if a != b:
                parent[a] = b
    count: dict[int, int] = {}
    for v in range(n):
        if v in on or not rotation[v]:
            continue
        r = find(face[(v, rotation[v][0])])
        count[r] = count.get(r, 0) + 1
    return Fraction(n - max(count.values(), default=0), n)


def simple_cycles(g: Graph, max_len: int) -> list[list[int]]:
    """All simple cycles of length ``3..max_len``, each listed once from its least vertex."""
    out = []
    for s in range(g.n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in g.adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(list(path))
                elif w > s and w not in path and len(path) < max_len:
                    stack.append((w, path + [w]))
    out.sort(key=lambda c: (len(c), c))
    return out


def oracle_best_short_cycle_separator(plane, max_len: int, budget: OracleBudget = DEFAULT_BUDGET):
    """Best split balance over all simple cycles of length at most ``max_len``.

    Returns ``(cycle, balance)`` or ``None`` when no such cycle exists.
    """
    if max_len > 12:
        raise OracleRefusal("max_len above 12")
    budget.check("short_cycles", plane.n)
    rotation = [list(r) for r in plane.rotation]
    best = None
    for cyc in simple_cycles(plane.graph, max_len):
        bal = cycle_balance_brute(rotation, cyc)
        if best is None or bal > best[1]:
            best = (cyc, bal)
    return best


def oracle_is_independent(g: Graph, vertices) -> bool:
    s = set(vertices)
    return all(v not in s for u in s for v in g.adj[u])


def oracle_is_tour(g: Graph, walk) -> bool:
    """Closed walk along edges that visits every vertex."""
    if g.n == 1:
        return list(walk) in ([0], [0, 0])
    if len(walk) < 2 or walk[0] != walk[-1]:
        return False
    if any(b not in g.adj[a] for a, b in zip(walk, walk[1:])):
        return False
    return set(walk) == set(range(g.n))


def oracle_components(g: Graph, removed) -> list[int]:
    """Sizes of the components of ``g`` minus ``removed`` (own BFS)."""
    gone = set(removed)
    seen = set(gone)
    sizes = []
    for s in range(g.n):
        if s in seen:
            continue
        seen.add(s)
        q = [s]
        k = 0
        while q:
            u = q.pop()
            k += 1
            for v in g.adj[u]:
                if v not in seen:
                    seen.add(v)
                    q.append(v)
        sizes.append(k)
    return sorted(sizes, reverse=True)


def oracle_is_geodesic_walk(g: Graph, walk, closed: bool) -> bool:
    """Every pair on the walk is at graph distance equal to its walk distance."""
    adj = _adj(g)
    k = len(walk)
    for i in range(k):
        dist = _bfs(adj, walk[i])
        for j in range(k):
            along = abs(i - j)
            if closed:
                along = min(along, k - along)
            if dist[walk[j]] != along:
                return False
    return True


def all_subsets(items, min_size=0):
    for r in range(min_size, len(items) + 1):
        yield from itertools.combinations(items, r)
