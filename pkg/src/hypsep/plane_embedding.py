"""Combinatorial sphere embeddings given by rotation systems.

A rotation lists each vertex's neighbours in clockwise order.  The face
to the left of dart ``u -> v`` continues with ``v -> w`` where ``w`` is the
successor of ``u`` in the rotation of ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph_core import Graph, GraphError, connected_components


class EmbeddingError(GraphError):
    """Raised when a rotation system is not a valid sphere embedding."""


Dart = tuple[int, int]


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(d[0] for d in self.darts)

    def edge_set(self) -> set[frozenset]:
        return {frozenset(d) for d in self.darts}


class PlaneGraph:
    """A graph together with a rotation system.

    Parameters
    ----------
    rotation : sequence of sequences
        ``rotation[v]`` is the clockwise cyclic order of ``v``'s neighbours.
    validate : bool
        Check symmetry, simplicity and Euler's formula.
    labels : sequence of int, optional
        Original vertex ids when this graph was cut out of a larger one.
    """

    def __init__(
        self,
        rotation: Sequence[Sequence[int]],
        validate: bool = True,
        labels: Sequence[int] | None = None,
    ):
        self.rotation: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotation)
        self.n = len(self.rotation)
        for v, r in enumerate(self.rotation):
            if len(set(r)) != len(r):
                raise EmbeddingError(f"rotation of {v} repeats a neighbour")
        try:
            self.graph = Graph.from_adjacency(self.rotation)
        except GraphError as exc:
            raise EmbeddingError(str(exc)) from exc
        self.labels = tuple(labels) if labels is not None else tuple(range(self.n))
        self._pos = [{u: i for i, u in enumerate(r)} for r in self.rotation]
        self._faces: list[Face] | None = None
        self._face_of: dict[Dart, int] | None = None
        if validate:
            self.check_euler()

    # -- construction helpers -------------------------------------------

    @classmethod
    def from_rotation(cls, rotation, validate=True) -> "PlaneGraph":
        return cls(rotation, validate=validate)

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.graph.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PlaneGraph) and self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash(self.rotation)

    @property
    def m(self) -> int:
        return self.graph.m

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` clockwise around ``v``."""
        r = self.rotation[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        r = self.rotation[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    def next_dart(self, d: Dart) -> Dart:
        u, v = d
        return (v, self.succ(v, u))

    # -- faces -----------------------------------------------------------

    def _trace(self) -> None:
        faces: list[Face] = []
        face_of: dict[Dart, int] = {}
        for u in range(self.n):
            for v in sorted(self.rotation[u]):
                if (u, v) in face_of:
                    continue
                fid = len(faces)
                walk = []
                d = (u, v)
                while d not in face_of:
                    face_of[d] = fid
                    walk.append(d)
                    d = self.next_dart(d)
                if d != (u, v):
                    raise EmbeddingError("face tracing did not close")
                faces.append(Face(fid, tuple(walk)))
        self._faces = faces
        self._face_of = face_of

    @property
    def faces(self) -> list[Face]:
        if self._faces is None:
            self._trace()
        return self._faces  # type: ignore[return-value]

    def face_of(self, u: int, v: int) -> int:
        if self._face_of is None:
            self._trace()
        return self._face_of[(u, v)]  # type: ignore[index]

    def check_euler(self) -> None:
        comps = connected_components(self.graph)
        isolated = sum(1 for c in comps if len(c) == 1 and not self.rotation[c[0]])
        lhs = self.n - self.m + len(self.faces) + isolated
        if lhs != 2 * len(comps) and self.n > 0:
            raise EmbeddingError(
                f"Euler check failed: V - E + F = {self.n - self.m + len(self.faces)}"
                f" for {len(comps)} component(s)"
            )

    def face_with_cycle(self, cycle: Sequence[int]) -> int | None:
        """Id of the face whose boundary is exactly the given vertex cycle, if any."""
        if len(cycle) < 3:
            return None
        target = cycle_edge_set(cycle)
        for d in ((cycle[0], cycle[1]), (cycle[1], cycle[0])):
            if d[1] not in self._pos[d[0]]:
                return None
            f = self.faces[self.face_of(*d)]
            if f.length == len(cycle) and f.edge_set() == target:
                return f.id
        return None

    # -- restriction -----------------------------------------------------

    def restrict(self, keep_edge) -> "PlaneGraph":
        """Drop edges for which ``keep_edge(u, v)`` is false; vertices keep ids."""
        rot = [[u for u in r if keep_edge(min(v, u), max(v, u))] for v, r in enumerate(self.rotation)]
        return PlaneGraph(rot, validate=False, labels=self.labels)

    def subgraph(self, vertices: Iterable[int], keep_edge=None) -> "PlaneGraph":
        """Plane subgraph on ``vertices`` (relabelled in ascending order).

        Edges are those of the induced subgraph, filtered by ``keep_edge`` on
        old ids.  ``labels`` of the result map into this graph's labels.
        """
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        rot = []
        for v in old:
            row = []
            for u in self.rotation[v]:
                if u in index and (keep_edge is None or keep_edge(min(u, v), max(u, v))):
                    row.append(index[u])
            rot.append(row)
        return PlaneGraph(rot, validate=True, labels=[self.labels[v] for v in old])


def cycle_edge_set(cycle: Sequence[int]) -> set[frozenset]:
    k = len(cycle)
    return {frozenset((cycle[i], cycle[(i + 1) % k])) for i in range(k)}


def _check_simple_cycle(p: PlaneGraph, cycle: Sequence[int]) -> None:
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise GraphError("not a simple cycle")
    k = len(cycle)
    for i in range(k):
        if not p.graph.has_edge(cycle[i], cycle[(i + 1) % k]):
            raise GraphError(f"cycle edge ({cycle[i]}, {cycle[(i + 1) % k]}) not in graph")


class _DSU:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        a, b = self.find(a), self.find(b)
        if a != b:
            if a < b:
                self.parent[b] = a
            else:
                self.parent[a] = b


def face_regions(p: PlaneGraph, blocking_edges: set[frozenset]) -> list[int]:
    """Group faces into regions separated only by ``blocking_edges``.

    Returns a list mapping face id to region representative (its least face id).
    """
    dsu = _DSU(len(p.faces))
    for f in p.faces:
        for (u, v) in f.darts:
            if frozenset((u, v)) not in blocking_edges:
                dsu.union(f.id, p.face_of(v, u))
    return [dsu.find(f) for f in range(len(p.faces))]


def cycle_face_sides(p: PlaneGraph, cycle: Sequence[int], reference_face: int) -> list[bool]:
    """For each face, True if it lies on the same side of ``cycle`` as ``reference_face``."""
    _check_simple_cycle(p, cycle)
    if not 0 <= reference_face < len(p.faces):
        raise GraphError("reference face out of range")
    block = cycle_edge_set(cycle)
    region = face_regions(p, block)
    ref = region[reference_face]
    out = [region[f] == ref for f in range(len(p.faces))]
    k = len(cycle)
    for i in range(k):
        a, b = cycle[i], cycle[(i + 1) % k]
        if out[p.face_of(a, b)] == out[p.face_of(b, a)]:
            raise GraphError("cycle does not separate the faces on either side of an edge")
    return out


def cycle_sides(
    p: PlaneGraph, cycle: Sequence[int], reference_face: int
) -> tuple[set[int], set[int]]:
    """Split ``V - V(cycle)`` into ``(inside, outside)``.

    ``outside`` is the side containing ``reference_face``.
    """
    same = cycle_face_sides(p, cycle, reference_face)
    on_cycle = set(cycle)
    inside: set[int] = set()
    outside: set[int] = set()
    for v in range(p.n):
        if v in on_cycle:
            continue
        r = p.rotation[v]
        if not r:
            outside.add(v)
            continue
        (outside if same[p.face_of(v, r[0])] else inside).add(v)
    return inside, outside


@dataclass
class FaceWeightedPlaneGraph:
    """A plane graph whose faces carry integer weights (carved-away vertices)."""

    plane: PlaneGraph
    face_weight: list[int] = field(default_factory=list)

    def __post_init__(self):
        if not self.face_weight:
            self.face_weight = [0] * len(self.plane.faces)
        if len(self.face_weight) != len(self.plane.faces):
            raise GraphError("face weight list does not match face count")
        if any(w < 0 for w in self.face_weight):
            raise GraphError("negative face weight")

    @property
    def total_weight(self) -> int:
        return self.plane.n + sum(self.face_weight)


def region_weights(
    fwp: FaceWeightedPlaneGraph, subgraph_vertices: Iterable[int]
) -> tuple[list[int], dict[int, int]]:
    """Face regions of the induced subgraph and the weight each region holds.

    Returns ``(region_of_face, weight_by_region)``.
    """
    p = fwp.plane
    sub = set(subgraph_vertices)
    block = {frozenset((u, v)) for u in sub for v in p.rotation[u] if v in sub}
    region = face_regions(p, block)
    weight: dict[int, int] = {}
    for f in range(len(p.faces)):
        weight.setdefault(region[f], 0)
        weight[region[f]] += fwp.face_weight[f]
    for v in range(p.n):
        if v in sub or not p.rotation[v]:
            continue
        rid = region[p.face_of(v, p.rotation[v][0])]
        weight[rid] += 1
    return region, weight


def split_balance(
    fwp: FaceWeightedPlaneGraph, subgraph_vertices: Iterable[int], original_n: int
) -> Fraction:
    """``1 - (heaviest face region of the induced subgraph) / original_n``."""
    sub = set(subgraph_vertices)
    if not sub:
        raise GraphError("empty subgraph")
    _, weight = region_weights(fwp, sub)
    heaviest = max(weight.values(), default=0)
    return Fraction(original_n - heaviest, original_n)


def cycle_side_flood(p: PlaneGraph, cycle: Sequence[int]) -> set[int]:
    """Vertices on one side of a simple cycle.

    At each cycle vertex the neighbours strictly inside the rotation sector
    from the next cycle vertex round to the previous one all lie on the same
    side; a flood from them that never enters the cycle collects that side.
    """
    _check_simple_cycle(p, cycle)
    on = set(cycle)
    k = len(cycle)
    seen: set[int] = set()
    stack = []
    for i in range(k):
        prev_v, v, next_v = cycle[i - 1], cycle[i], cycle[(i + 1) % k]
        u = p.succ(v, next_v)
        while u != prev_v:
            if u not in on and u not in seen:
                seen.add(u)
                stack.append(u)
            u = p.succ(v, u)
    adj = p.graph.adj
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in on and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def cycle_split_balance(p: PlaneGraph, cycle: Sequence[int], weights: Sequence[int] | None = None,
                        original_n: int | None = None) -> Fraction:
    """Split balance of a simple cycle: the heavier side against ``original_n``."""
    if weights is None or not any(weights):
        total = original_n if original_n is not None else p.n
        left = len(cycle_side_flood(p, cycle))
        return Fraction(total - max(left, p.n - len(cycle) - left), total)
    w = list(weights)
    total = original_n if original_n is not None else p.n + sum(w)
    same = cycle_face_sides(p, cycle, 0)
    side = [0, 0]
    for f in range(len(p.faces)):
        side[same[f]] += w[f]
    on = set(cycle)
    for v in range(p.n):
        if v not in on and p.rotation[v]:
            side[same[p.face_of(v, p.rotation[v][0])]] += 1
    return Fraction(total - max(side), total)


@dataclass
class DualGraph:
    """Dual multigraph: one node per face, one edge per primal edge."""

    node_count: int
    edges: list[tuple[int, int, tuple[int, int]]]
    node_weight: list[int]
    adjacency: list[list[tuple[int, int]]]

    @property
    def total_weight(self) -> int:
        return sum(self.node_weight)


def dual_with_weights(
    fwp: FaceWeightedPlaneGraph,
    face_anchor: Sequence[int] | None = None,
    require_triangles: bool = True,
    skip_faces: Iterable[int] = (),
) -> DualGraph:
    """Dual graph where each face carries its weight plus one unit per charged vertex.

    Every primal vertex is charged to one incident face: the incident face
    of least id among non-skipped faces.  ``face_anchor[f]`` redirects the
    weight of face ``f`` to another dual node (defaults to ``f`` itself).

    Raises
    ------
    GraphError
        If ``require_triangles`` and some non-skipped face is not a triangle.
    """
    p = fwp.plane
    skip = set(skip_faces)
    if require_triangles:
        for f in p.faces:
            if f.id not in skip and f.length != 3:
                raise GraphError(f"face {f.id} has length {f.length}; triangulated input required")
    k = len(p.faces)
    weight = [0] * k
    anchor = list(face_anchor) if face_anchor is not None else list(range(k))
    for f in range(k):
        weight[anchor[f]] += fwp.face_weight[f]
    for v in range(p.n):
        inc = [p.face_of(v, u) for u in p.rotation[v]]
        inc = [f for f in inc if f not in skip] or inc
        if inc:
            weight[min(inc)] += 1
    edges = []
    adjacency: list[list[tuple[int, int]]] = [[] for _ in range(k)]
    for u, v in p.graph.edges():
        a, b = p.face_of(u, v), p.face_of(v, u)
        idx = len(edges)
        edges.append((a, b, (u, v)))
        adjacency[a].append((b, idx))
        if b != a:
            adjacency[b].append((a, idx))
    return DualGraph(k, edges, weight, adjacency)


# ---------------------------------------------------------------------------
# Rotation editing used by generators and the wheel gadget
# ---------------------------------------------------------------------------


def insert_after(rotation: list[list[int]], v: int, anchor: int, new: Sequence[int]) -> None:
    """Insert ``new`` (in order) right after ``anchor`` in the rotation of ``v``."""
    r = rotation[v]
    i = r.index(anchor)
    r[i + 1:i + 1] = list(new)


def insert_before(rotation: list[list[int]], v: int, anchor: int, new: Sequence[int]) -> None:
    r = rotation[v]
    i = r.index(anchor)
    r[i:i] = list(new)


def add_path_in_face(rotation: list[list[int]], x: int, y: int, inner: Sequence[int]) -> None:
    """Draw the path ``x, inner..., y`` inside the face left of dart ``x -> y``.

    ``inner`` vertices must be fresh rows (empty lists) of ``rotation``.
    The old face keeps dart ``x -> y``'s twin side unchanged; a new face
    ``x -> y -> inner[-1] -> ... -> inner[0] -> x`` is created.
    """
    seq = [x, *inner, y]
    for i in range(1, len(seq) - 1):
        rotation[seq[i]].extend([seq[i + 1], seq[i - 1]])
    # The face left of x->y continues at y with succ_y(x); the path must
    # leave y right after x, and arrive at x right before y.
    if inner:
        insert_after(rotation, y, x, [inner[-1]])
        insert_before(rotation, x, y, [inner[0]])
    else:
        raise GraphError("add_path_in_face needs at least one inner vertex")


def add_vertex_in_face(rotation: list[list[int]], hub: int, face_walk: Sequence[int]) -> None:
    """Place ``hub`` inside a face given by its traced vertex walk and join it to every vertex.

    ``face_walk`` must list the face's vertices in tracing order and be simple.
    """
    k = len(face_walk)
    for i in range(k):
        prev_v, v = face_walk[i - 1], face_walk[i]
        insert_after(rotation, v, prev_v, [hub])
    rotation[hub].extend(reversed(list(face_walk)))
