"""Greedy filling of a face cycle and the face-interaction counter.

The filling repeatedly finds the shortest non-geodesic window of the
current cycle, replaces it by a shortest path through the still-unfilled
region, and records the enclosed piece as a filling face.  Regions are
tracked as sets of host faces, so distances are always measured along
edges that touch the unfilled region.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .graph_core import GraphError
from .plane_embedding import PlaneGraph, cycle_edge_set, cycle_face_sides


class FillingError(GraphError):
    """Precondition failure or a violated filling invariant."""


def canonical_cycle(cycle: Sequence[int]) -> list[int]:
    """Rotate to the least vertex and orient towards its smaller cycle neighbour."""
    k = len(cycle)
    i = min(range(k), key=lambda t: cycle[t])
    fwd = [cycle[(i + t) % k] for t in range(k)]
    if k > 2 and fwd[-1] < fwd[1]:
        fwd = [fwd[0]] + fwd[1:][::-1]
    return fwd


def split_closed_walk(walk: Sequence[int]) -> list[list[int]]:
    """Split a closed walk (first vertex not repeated at the end) into simple cycles.

    Pieces of length two (an edge walked back and forth) are dropped.
    """
    stack: list[int] = []
    where: dict[int, int] = {}
    pieces: list[list[int]] = []
    for v in list(walk) + [walk[0]]:
        if v in where:
            i = where[v]
            loop = stack[i:]
            for u in loop[1:]:
                del where[u]
            del stack[i + 1 :]
            if len(loop) >= 3:
                pieces.append(loop)
        else:
            where[v] = len(stack)
            stack.append(v)
    return pieces


class Region:
    """A set of host faces with BFS restricted to edges that touch it."""

    def __init__(self, p: PlaneGraph, faces: set[int]):
        self.p = p
        self.faces = faces

    def edge_ok(self, u: int, v: int) -> bool:
        f = self.p.face_of
        return f(u, v) in self.faces or f(v, u) in self.faces

    def bfs(self, src: int, cap: int | None = None, target: int | None = None):
        """``(dist, parent)`` dicts; neighbours explored in ascending id."""
        dist = {src: 0}
        parent = {src: -1}
        q = deque([src])
        adj = self.p.graph.adj
        while q:
            v = q.popleft()
            d = dist[v] + 1
            if cap is not None and d > cap:
                break
            for u in adj[v]:
                if u not in dist and self.edge_ok(v, u):
                    dist[u] = d
                    parent[u] = v
                    if u == target:
                        return dist, parent
                    q.append(u)
        return dist, parent

    def shortest_path(self, a: int, b: int) -> list[int]:
        _, parent = self.bfs(a, target=b)
        if b not in parent:
            raise FillingError(f"no path from {a} to {b} inside the region")
        path = [b]
        while path[-1] != a:
            path.append(parent[path[-1]])
        return path[::-1]

    def flood(self, seeds: Sequence[int], blocked: set[frozenset]) -> set[int]:
        """Faces of the region reachable from ``seeds`` without crossing ``blocked`` edges."""
        p = self.p
        seen = {f for f in seeds if f in self.faces}
        stack = list(seen)
        faces = p.faces
        while stack:
            f = stack.pop()
            for u, v in faces[f].darts:
                if frozenset((u, v)) in blocked:
                    continue
                g = p.face_of(v, u)
                if g in self.faces and g not in seen:
                    seen.add(g)
                    stack.append(g)
        return seen


class BoundedDistanceOracle:
    """Distance queries up to a radius bound inside a shrinking region.

    Cached BFS results are kept with the region version they were computed
    in.  Because regions only shrink, an old distance is a lower bound; a
    cached value that already proves ``d >= L`` is reused, anything else is
    recomputed in the current region.
    """

    def __init__(self, radius: int):
        self.radius = radius
        self.cache: dict[int, tuple[int, dict[int, int]]] = {}
        self.version = 0
        self.region: Region | None = None
        self.queries = 0

    def set_region(self, region: Region) -> None:
        self.region = region
        self.version += 1

    def _fresh(self, a: int) -> dict[int, int]:
        self.queries += 1
        dist, _ = self.region.bfs(a, cap=self.radius)
        self.cache[a] = (self.version, dist)
        return dist

    def shorter_than(self, a: int, b: int, length: int) -> bool:
        """Whether the region distance from ``a`` to ``b`` is below ``length``."""
        entry = self.cache.get(a)
        if entry is not None:
            d = entry[1].get(b, self.radius + 1)
            if d >= length:
                return False
            if entry[0] == self.version:
                return True
        d = self._fresh(a).get(b, self.radius + 1)
        return d < length

    def distance(self, a: int, b: int) -> int | None:
        """Exact distance if at most the radius, else ``None``."""
        entry = self.cache.get(a)
        dist = entry[1] if entry is not None and entry[0] == self.version else self._fresh(a)
        return dist.get(b)


@dataclass
class FillingStep:
    P: tuple[int, ...]
    Q: tuple[int, ...]
    host_faces: frozenset[int]
    interior: int
    weight: int


@dataclass
class Filling:
    """Result of :func:`greedy_fill`.

    ``faces`` lists the filling faces other than ``C``: one per step
    (``P`` followed by ``Q`` reversed) and then the final cycles.
    ``face_host_faces[i]`` is the set of host faces inside filling face ``i``
    and ``face_weights[i]`` the number of host vertices strictly inside it
    plus the host-face weights it carries.
    """

    host: PlaneGraph
    start_cycle: tuple[int, ...]
    outer_face: int
    delta: int
    steps: list[FillingStep]
    final_cycles: list[tuple[int, ...]]
    final_host_faces: list[frozenset[int]]
    final_interiors: list[int]
    final_weights: list[int]
    anomalies: list[str] = field(default_factory=list)
    oracle_queries: int = 0

    @property
    def final_cycle(self) -> tuple[int, ...]:
        return self.final_cycles[0]

    @property
    def faces(self) -> list[tuple[int, ...]]:
        out = [s.P + tuple(reversed(s.Q[1:-1])) for s in self.steps]
        return out + list(self.final_cycles)

    @property
    def face_host_faces(self) -> list[frozenset[int]]:
        return [s.host_faces for s in self.steps] + list(self.final_host_faces)

    @property
    def face_weights(self) -> list[int]:
        return [s.weight for s in self.steps] + list(self.final_weights)

    @property
    def face_interiors(self) -> list[int]:
        return [s.interior for s in self.steps] + list(self.final_interiors)

    @property
    def edges(self) -> set[frozenset]:
        e = cycle_edge_set(self.start_cycle)
        for s in self.steps:
            e |= {frozenset(x) for x in zip(s.Q, s.Q[1:])}
        for c in self.final_cycles:
            e |= cycle_edge_set(c)
        return e

    @property
    def vertices(self) -> set[int]:
        return {v for e in self.edges for v in e}

    @property
    def area(self) -> int:
        return len(self.edges)


def _interior_count(p: PlaneGraph, faces: set[int], boundary: set[int]) -> int:
    """Host vertices off ``boundary`` whose incident faces all lie in ``faces``."""
    cand = {v for f in faces for v in p.faces[f].vertices} - boundary
    count = 0
    for v in cand:
        if all(p.face_of(v, u) in faces for u in p.rotation[v]):
            count += 1
    return count


def _region_side_face(region: Region, a: int, b: int) -> int:
    p = region.p
    f1, f2 = p.face_of(a, b), p.face_of(b, a)
    if f1 in region.faces:
        return f1
    if f2 in region.faces:
        return f2
    raise FillingError(f"edge ({a}, {b}) does not border the region")


def greedy_fill(
    p: PlaneGraph,
    cycle: Sequence[int],
    delta: int,
    face_weight: Sequence[int] | None = None,
    check_two_connected: bool = True,
) -> Filling:
    """Greedy filling of the face cycle ``cycle`` with parameter ``delta``.

    Windows of the current cycle are scanned by length ``2 .. 10*delta - 1``
    (never beyond half the cycle) and then by position from the canonical
    start; the first window whose endpoints are closer inside the region
    is replaced by the canonical shortest path between them.  If that path
    touches the rest of the cycle, the new closed walk is split into simple
    cycles that are filled one after another.
    """
    if delta < 1:
        raise FillingError("delta must be at least 1")
    if check_two_connected:
        from .graph_core import biconnected_blocks

        if p.n < 3 or len(biconnected_blocks(p.graph)) != 1:
            raise FillingError("host must be 2-connected")
    outer = p.face_with_cycle(list(cycle))
    if outer is None:
        raise FillingError("cycle is not a face of the host")
    w = list(face_weight) if face_weight is not None else [0] * len(p.faces)
    K = 10 * delta
    oracle = BoundedDistanceOracle(K - 2)
    steps: list[FillingStep] = []
    finals: list[tuple[int, ...]] = []
    final_faces: list[frozenset[int]] = []
    final_int: list[int] = []
    final_w: list[int] = []
    anomalies: list[str] = []
    start = tuple(canonical_cycle(list(cycle)))
    all_faces = set(range(len(p.faces))) - {outer}
    work: list[tuple[list[int], set[int]]] = [(list(start), all_faces)]
    guard = 0
    while work:
        cur, faces = work.pop()
        region = Region(p, faces)
        oracle.set_region(region)
        while True:
            guard += 1
            if guard > 4 * p.m + 10:
                raise FillingError("filling did not terminate")
            cur = canonical_cycle(cur)
            m = len(cur)
            hit = None
            for L in range(2, min(K - 1, m // 2) + 1):
                for i in range(m):
                    if oracle.shorter_than(cur[i], cur[(i + L) % m], L):
                        hit = (i, L)
                        break
                if hit:
                    break
            if hit is None:
                boundary = set(cur)
                interior = _interior_count(p, faces, boundary)
                finals.append(tuple(cur))
                final_faces.append(frozenset(faces))
                final_int.append(interior)
                final_w.append(interior + sum(w[f] for f in faces))
                if m > 21 * delta:
                    raise FillingError(f"final cycle of length {m} exceeds {21 * delta}")
                if m > 20 * delta:
                    anomalies.append(f"final cycle of length {m} above {20 * delta}")
                break
            i, L = hit
            P = [cur[(i + t) % m] for t in range(L + 1)]
            Q = region.shortest_path(P[0], P[-1])
            if len(Q) >= len(P):
                raise FillingError("replacement path is not shorter")
            if set(Q[1:-1]) & set(P):
                raise FillingError("replacement path meets the replaced window")
            blocked = {frozenset(e) for e in zip(P, P[1:])} | {frozenset(e) for e in zip(Q, Q[1:])}
            seeds = [_region_side_face(region, a, b) for a, b in zip(P, P[1:])]
            carved = region.flood(seeds, blocked)
            boundary = set(P) | set(Q)
            interior = _interior_count(p, carved, boundary)
            steps.append(
                FillingStep(tuple(P), tuple(Q), frozenset(carved), interior, interior + sum(w[f] for f in carved))
            )
            rest = [cur[(i + L + t) % m] for t in range(m - L + 1)]  # from P's end back to P's start
            walk = rest + Q[1:-1]
            faces = faces - carved
            if len(set(walk)) == len(walk):
                cur = walk
                region = Region(p, faces)
                oracle.set_region(region)
                continue
            pieces = split_closed_walk(walk)
            blocked_all = set()
            for k in range(len(walk)):
                blocked_all.add(frozenset((walk[k], walk[(k + 1) % len(walk)])))
            sub = Region(p, faces)
            for piece in reversed(pieces):
                a, b = piece[0], piece[1]
                try:
                    seed = _region_side_face(sub, a, b)
                except FillingError:
                    continue
                piece_faces = sub.flood([seed], blocked_all)
                work.append((piece, piece_faces))
            break
    return Filling(
        p,
        start,
        outer,
        delta,
        steps,
        finals,
        final_faces,
        final_int,
        final_w,
        anomalies,
        oracle.queries,
    )


def filling_face_regions(filling: Filling) -> list[int]:
    """Filling face index for every host face (``-1`` for the outer face)."""
    owner = [-1] * len(filling.host.faces)
    for i, hf in enumerate(filling.face_host_faces):
        for f in hf:
            owner[f] = i
    return owner


def interacting_faces(filling: Filling, gamma: Sequence[int], reference_face: int | None = None) -> set[int]:
    """Filling faces that the simple cycle ``gamma`` interacts with.

    A filling face counts if one of its host faces lies on the side of
    ``gamma`` away from the reference face (default: the face ``C``).  This
    covers both ``gamma`` cutting through the face and ``gamma`` enclosing
    it; a face that only shares an edge with ``gamma`` from the reference
    side lies between the two and does not count.
    """
    p = filling.host
    ref = filling.outer_face if reference_face is None else reference_face
    same = cycle_face_sides(p, list(gamma), ref)
    return {i for i, hf in enumerate(filling.face_host_faces) if any(not same[f] for f in hf)}


def check_isoperimetry(filling: Filling, gamma: Sequence[int], k: int | None = None) -> bool:
    """Interaction bound ``(k + 1) * |gamma|``, tightened to ``|gamma|`` when ``gamma`` lies in the filling."""
    k = 20 * filling.delta if k is None else k
    count = len(interacting_faces(filling, gamma))
    ell = len(gamma)
    if count > (k + 1) * ell:
        return False
    if cycle_edge_set(gamma) <= filling.edges and count > ell:
        return False
    return True


def random_simple_cycle(p: PlaneGraph, rng, max_tries: int = 50) -> list[int] | None:
    """A random simple cycle: a random non-tree edge closed through a random spanning tree."""
    g = p.graph
    for _ in range(max_tries):
        root = rng.randrange(g.n)
        order = list(range(g.n))
        rng.shuffle(order)
        rank = {v: i for i, v in enumerate(order)}
        parent = {root: -1}
        depth = {root: 0}
        q = deque([root])
        while q:
            v = q.popleft()
            for u in sorted(g.adj[v], key=rank.__getitem__):
                if u not in parent:
                    parent[u] = v
                    depth[u] = depth[v] + 1
                    q.append(u)
        non_tree = [(u, v) for u, v in g.edges() if parent.get(u) != v and parent.get(v) != u]
        if not non_tree:
            return None
        u, v = non_tree[rng.randrange(len(non_tree))]
        a, b = [u], [v]
        while a[-1] != b[-1]:
            if depth[a[-1]] >= depth[b[-1]]:
                a.append(parent[a[-1]])
            else:
                b.append(parent[b[-1]])
        cyc = a + b[-2::-1]
        if len(cyc) >= 3 and len(set(cyc)) == len(cyc):
            return cyc
    return None


__all__ = [
    "BoundedDistanceOracle",
    "Filling",
    "FillingError",
    "FillingStep",
    "Region",
    "canonical_cycle",
    "check_isoperimetry",
    "filling_face_regions",
    "greedy_fill",
    "interacting_faces",
    "random_simple_cycle",
    "split_closed_walk",
]
