"""Hyperbolicity, slimness and geodesic predicates on unweighted graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .graph_core import (
    UNREACHABLE,
    Graph,
    GraphError,
    bfs_distances,
    bfs_tree,
    connected_components,
    path_from_parents,
)

HYPERBOLICITY_MAX_N = 400
SLIMNESS_MAX_N = 250


class SizeGuardError(GraphError):
    """Input is larger than the configured exact-computation threshold."""


def _distances(g: Graph) -> np.ndarray:
    d = np.array([bfs_distances(g, s) for s in range(g.n)], dtype=np.int64).reshape(g.n, g.n)
    if g.n and (d == UNREACHABLE).any():
        raise GraphError("graph is disconnected")
    return d


def gromov_product(g: Graph, w: int, y: int, z: int) -> Fraction:
    """``(y | z)_w = (d(w, y) + d(w, z) - d(y, z)) / 2``."""
    dw = bfs_distances(g, w)
    dy = bfs_distances(g, y)
    if UNREACHABLE in (dw[y], dw[z], dy[z]):
        raise GraphError("vertices lie in different components")
    return Fraction(dw[y] + dw[z] - dy[z], 2)


@dataclass(frozen=True)
class HyperbolicityReport:
    delta: Fraction
    witness: tuple[int, int, int, int] | None


def four_point_delta(d, x: int, y: int, z: int, w: int) -> Fraction:
    """Half the gap between the two largest of the three pair sums."""
    sums = sorted((d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]))
    return Fraction(int(sums[2] - sums[1]), 2)


def hyperbolicity_exact(g: Graph, max_n: int = HYPERBOLICITY_MAX_N) -> HyperbolicityReport:
    """Exact four-point hyperbolicity.

    Pairs are processed by decreasing distance.  A quadruple whose largest
    pairing uses the pairs ``xy`` and ``zw`` has gap at most
    ``2 * min(d(x, y), d(z, w))``, so once ``d(x, y)`` falls below the best
    value found nothing later can beat it.  The witness is the
    lexicographically smallest sorted quadruple attaining the maximum.
    """
    n = g.n
    if n > max_n:
        raise SizeGuardError(f"hyperbolicity_exact refuses n={n} (threshold {max_n})")
    if n < 4:
        _distances(g)
        return HyperbolicityReport(Fraction(0), None)
    d = _distances(g)
    iu, ju = np.triu_indices(n, 1)
    dist = d[iu, ju]
    order = np.lexsort((ju, iu, -dist))
    xs, ys, ds = iu[order], ju[order], dist[order]
    best2 = 0  # twice the best delta
    witness: tuple[int, int, int, int] | None = None
    for p in range(len(order)):
        dxy = int(ds[p])
        if 2 * dxy < best2:
            break
        x, y = int(xs[p]), int(ys[p])
        zs, ws = xs[: p + 1], ys[: p + 1]
        s1 = dxy + ds[: p + 1]
        s2 = d[x, zs] + d[y, ws]
        s3 = d[x, ws] + d[y, zs]
        hi = np.maximum(np.maximum(s1, s2), s3)
        lo = np.minimum(np.minimum(s1, s2), s3)
        mid = s1 + s2 + s3 - hi - lo
        gap = hi - mid
        top = int(gap.max())
        if top < best2 or top == 0:
            continue
        hits = np.nonzero(gap == top)[0]
        cands = [tuple(sorted((x, y, int(zs[h]), int(ws[h])))) for h in hits]
        cands = [c for c in cands if len(set(c)) == 4] or cands
        cand = min(cands)
        if top > best2 or witness is None or cand < witness:
            best2 = top
            witness = cand
    return HyperbolicityReport(Fraction(best2, 2), witness)


@dataclass(frozen=True)
class SlimnessReport:
    slim: int
    witness_triangle: tuple[int, int, int] | None
    geodesics: tuple[tuple[int, ...], ...] = ()
    violating_vertex: int | None = None
    source: str = "exact"


def canonical_paths(g: Graph) -> dict[tuple[int, int], list[int]]:
    """Canonical geodesic for every unordered pair ``a <= b``: BFS from ``a``, read back from ``b``."""
    out = {}
    for a in range(g.n):
        _, parent = bfs_tree(g, a)
        for b in range(a, g.n):
            out[(a, b)] = path_from_parents(parent, a, b)
    return out


def _pair_index(n: int) -> np.ndarray:
    idx = np.zeros((n, n), dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(a, n):
            idx[a, b] = idx[b, a] = k
            k += 1
    return idx


def slimness_upper_bound(g: Graph, max_n: int = SLIMNESS_MAX_N) -> SlimnessReport:
    """Slimness over the canonical geodesic triangles.

    ``near[x, pair]`` holds the distance from ``x`` to the canonical path of
    ``pair``; a triangle ``(a, b, c)`` then costs
    ``max_{p on [a,b]} min(near[p, bc], near[p, ac])``.
    """
    n = g.n
    if n > max_n:
        raise SizeGuardError(f"slimness_upper_bound refuses n={n} (threshold {max_n})")
    if n == 0:
        return SlimnessReport(0, None)
    d = _distances(g)
    paths = canonical_paths(g)
    idx = _pair_index(n)
    npairs = n * (n + 1) // 2
    near = np.zeros((n, npairs), dtype=np.int64)
    for (a, b), path in paths.items():
        near[:, idx[a, b]] = d[:, path].min(axis=1)
    best = 0
    witness = None
    cols = np.arange(n)
    for (a, b), path in paths.items():
        if a == b or len(path) <= 2:
            continue
        side = np.array(path)
        va = near[np.ix_(side, idx[a, cols])]
        vb = near[np.ix_(side, idx[b, cols])]
        val = np.minimum(va, vb)
        per_c = val.max(axis=0)
        top = int(per_c.max())
        if top > best:
            best = top
            c = int(np.argmax(per_c))
            pidx = int(np.argmax(val[:, c]))
            witness = (a, b, c, int(side[pidx]))
    if witness is None:
        return SlimnessReport(0, None)
    a, b, c, v = witness
    geos = (
        tuple(paths[(a, b)]),
        tuple(paths[(min(b, c), max(b, c))]),
        tuple(paths[(min(a, c), max(a, c))]),
    )
    return SlimnessReport(best, (a, b, c), geos, v)


def slimness_estimate(g: Graph, samples: int = 300, seed: int = 0, pool: int = 32) -> SlimnessReport:
    """Slimness over randomly sampled canonical triangles (a lower estimate for large graphs).

    Triangle corners are drawn from a random pool of ``pool`` vertices so
    that only one BFS tree per pool vertex is needed.
    """
    rng = random.Random(seed)
    n = g.n
    if n < 3:
        return SlimnessReport(0, None, source="sampled")
    corners = sorted(rng.sample(range(n), min(n, pool)))
    trees = {a: bfs_tree(g, a)[1] for a in corners}

    def path(a, b):
        a, b = min(a, b), max(a, b)
        return path_from_parents(trees[a], a, b)

    best = 0
    witness = None
    for _ in range(samples):
        a, b, c = rng.sample(corners, 3)
        side = path(a, b)
        others = set(path(b, c)) | set(path(a, c))
        dist = _multi_source(g, others)
        for v in side:
            if dist[v] > best:
                best = dist[v]
                witness = (min(a, b), max(a, b), c, v)
    if witness is None:
        return SlimnessReport(0, None, source="sampled")
    return SlimnessReport(best, witness[:3], (), witness[3], source="sampled")


def _multi_source(g: Graph, sources: Iterable[int]) -> list[int]:
    from collections import deque

    dist = [UNREACHABLE] * g.n
    q = deque()
    for s in sources:
        dist[s] = 0
        q.append(s)
    while q:
        v = q.popleft()
        for u in g.adj[v]:
            if dist[u] == UNREACHABLE:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


@dataclass(frozen=True)
class LocalGeodesicCheck:
    """Result of a local-geodesic test.

    On failure ``pair`` holds the two vertices, ``start`` the walk index of
    the first and ``length`` the walk distance (the violating stretch is
    ``walk[start], ..., walk[start + length]``, indices mod the cycle length).
    """

    ok: bool
    pair: tuple[int, int] | None = None
    start: int | None = None
    length: int | None = None
    graph_distance: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def _check_walk(g: Graph, walk: Sequence[int], closed: bool) -> None:
    k = len(walk)
    if k == 0:
        raise GraphError("empty walk")
    if len(set(walk)) != k:
        raise GraphError("walk repeats a vertex")
    steps = k if closed and k > 2 else k - 1
    for i in range(steps):
        u, v = walk[i], walk[(i + 1) % k]
        if not g.has_edge(u, v):
            raise GraphError(f"walk uses non-edge ({u}, {v})")


def is_k_local_geodesic(
    g: Graph, walk: Sequence[int], k: int, closed: bool = False
) -> LocalGeodesicCheck:
    """Whether every stretch of walk length at most ``k`` is a shortest path.

    For a cycle the walk distance of two vertices is the shorter arc.  The
    reported violation minimises the walk distance, then the sorted vertex
    pair, then the start index.
    """
    _check_walk(g, walk, closed)
    m = len(walk)
    if closed:
        limit = min(k, m // 2)
    else:
        limit = min(k, m - 1)
    if limit < 2:
        return LocalGeodesicCheck(True)
    # balls around every walk vertex grow one level per length, so a short
    # violation is found without exploring the whole graph
    adj = g.adj
    balls = [{v: 0} for v in walk]
    fronts = [[v] for v in walk]
    for length in range(2, limit + 1):
        radius = length - 1
        for i, ball in enumerate(balls):
            nxt = []
            for x in fronts[i]:
                for y in adj[x]:
                    if y not in ball:
                        ball[y] = radius
                        nxt.append(y)
            fronts[i] = nxt
        best = None
        span = m if closed else m - length
        for i in range(span):
            j = (i + length) % m
            dv = balls[i].get(walk[j])
            if dv is None:
                continue
            key = (min(walk[i], walk[j]), max(walk[i], walk[j]), i)
            if best is None or key < best[0]:
                best = (key, i, dv)
        if best is not None:
            (_, _, _), i, dv = best
            return LocalGeodesicCheck(False, (walk[i], walk[(i + length) % m]), i, length, dv)
    return LocalGeodesicCheck(True)


def is_geodesic_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    return is_k_local_geodesic(g, cycle, len(cycle), closed=True).ok


def is_geodesic_path(g: Graph, path: Sequence[int]) -> bool:
    return is_k_local_geodesic(g, path, len(path), closed=False).ok


@dataclass(frozen=True)
class GeodesicSubgraphCheck:
    ok: bool
    witness: tuple[int, int] | None = None
    inside: int | None = None
    outside: int | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_geodesic_subgraph(g: Graph, sub_vertices: Iterable[int]) -> GeodesicSubgraphCheck:
    """Whether distances inside ``G[sub]`` equal distances in ``G``."""
    sub = sorted(set(sub_vertices))
    if not sub:
        return GeodesicSubgraphCheck(True)
    h, labels = g.induced_subgraph(sub)
    if len(connected_components(h)) > 1:
        comps = connected_components(h)
        return GeodesicSubgraphCheck(False, (labels[comps[0][0]], labels[comps[1][0]]), UNREACHABLE, None)
    for i, v in enumerate(sub):
        dh = bfs_distances(h, i)
        dg = bfs_distances(g, v)
        for j in range(i + 1, len(sub)):
            if dh[j] != dg[sub[j]]:
                return GeodesicSubgraphCheck(False, (v, sub[j]), dh[j], dg[sub[j]])
    return GeodesicSubgraphCheck(True)


def effective_delta(value) -> int:
    """Parameter handed to the algorithms: at least 1, rounded up."""
    from math import ceil

    return max(1, ceil(value))
