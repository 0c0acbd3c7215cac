"""Undirected simple graphs, deterministic BFS, and block-cut trees.

Every traversal explores neighbours in ascending id order and fixes a
vertex's parent on first visit, so shortest paths are reproducible.
"""

from __future__ import annotations

from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

UNREACHABLE = -1


class GraphError(ValueError):
    """Raised on malformed graphs or out-of-range vertices."""


class NoPathError(GraphError):
    """Raised when two vertices lie in different components."""


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int)
        Undirected edges.  Duplicates are merged; self-loops are rejected.
    """

    __slots__ = ("n", "adj", "m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError("negative vertex count")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in nbrs)
        self.m = sum(len(a) for a in self.adj) // 2

    @classmethod
    def from_adjacency(cls, adjacency: Sequence[Iterable[int]]) -> "Graph":
        adjacency = [list(a) for a in adjacency]
        n = len(adjacency)
        for v, nb in enumerate(adjacency):
            for u in nb:
                if not 0 <= u < n:
                    raise GraphError(f"neighbour {u} of {v} out of range")
                if v not in adjacency[u]:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")
        return cls(n, ((v, u) for v, nb in enumerate(adjacency) for u in nb))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        """Sorted list of edges ``(u, v)`` with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(sub, labels)`` where ``labels[i]`` is the old id of new vertex ``i``.

        New ids follow ascending old ids, so BFS tie-breaking is preserved.
        """
        labels = sorted(set(vertices))
        index = {v: i for i, v in enumerate(labels)}
        edges = []
        for i, v in enumerate(labels):
            for u in self.adj[v]:
                j = index.get(u)
                if j is not None and i < j:
                    edges.append((i, j))
        return Graph(len(labels), edges), labels


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def bfs_tree(
    g: Graph,
    source: int,
    depth_cap: int | None = None,
    allowed: Sequence[bool] | None = None,
) -> tuple[list[int], list[int]]:
    """Breadth-first search returning ``(dist, parent)`` lists.

    Unreached vertices (or those beyond ``depth_cap``) have distance
    ``UNREACHABLE`` and parent ``-1``.  ``allowed`` masks vertices that may
    be entered; the source is always entered.
    """
    _check_vertex(g, source)
    n = g.n
    dist = [UNREACHABLE] * n
    parent = [-1] * n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        if depth_cap is not None and d > depth_cap:
            continue
        for u in adj[v]:
            if dist[u] == UNREACHABLE and (allowed is None or allowed[u]):
                dist[u] = d
                parent[u] = v
                queue.append(u)
    return dist, parent


def bfs_distances(
    g: Graph,
    source: int,
    depth_cap: int | None = None,
    allowed: Sequence[bool] | None = None,
) -> list[int]:
    """Unweighted distances from ``source``; ``UNREACHABLE`` where not found.

    Examples
    --------
    >>> bfs_distances(Graph(3, [(0, 1), (1, 2)]), 0)
    [0, 1, 2]
    """
    return bfs_tree(g, source, depth_cap, allowed)[0]


def path_from_parents(parent: Sequence[int], source: int, target: int) -> list[int]:
    path = [target]
    while path[-1] != source:
        p = parent[path[-1]]
        if p < 0:
            raise NoPathError(f"no path from {source} to {target}")
        path.append(p)
    path.reverse()
    return path


def shortest_path(
    g: Graph,
    a: int,
    b: int,
    allowed: Sequence[bool] | None = None,
    depth_cap: int | None = None,
) -> list[int]:
    """Canonical shortest path from ``a`` to ``b``.

    BFS is rooted at ``a``; the path is read back from ``b`` along parents.

    Raises
    ------
    NoPathError
        If ``b`` is not reachable (within ``depth_cap`` if given).
    """
    _check_vertex(g, b)
    if a == b:
        _check_vertex(g, a)
        return [a]
    _check_vertex(g, a)
    n = g.n
    dist = [UNREACHABLE] * n
    parent = [-1] * n
    dist[a] = 0
    queue = deque([a])
    adj = g.adj
    while queue:
        v = queue.popleft()
        d = dist[v] + 1
        if depth_cap is not None and d > depth_cap:
            break
        for u in adj[v]:
            if dist[u] == UNREACHABLE and (allowed is None or allowed[u]):
                dist[u] = d
                parent[u] = v
                if u == b:
                    return path_from_parents(parent, a, b)
                queue.append(u)
    raise NoPathError(f"no path from {a} to {b}")


def distance_matrix(g: Graph) -> list[list[int]]:
    """All-pairs BFS distances (``UNREACHABLE`` across components)."""
    return [bfs_distances(g, s) for s in range(g.n)]


def connected_components(
    g: Graph, removed: Iterable[int] | None = None
) -> list[list[int]]:
    """Components of ``g`` minus ``removed``, each sorted, ordered by least vertex."""
    blocked = [False] * g.n
    if removed is not None:
        for v in removed:
            blocked[v] = True
    seen = list(blocked)
    comps = []
    adj = g.adj
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    comp.append(u)
                    stack.append(u)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def is_acyclic(g: Graph) -> bool:
    return g.m == g.n - len(connected_components(g))


def component_balance(g: Graph, separator: Iterable[int], total: int | None = None):
    """Return ``(largest_component_size, balance)`` after deleting ``separator``.

    ``balance`` is the exact fraction ``1 - largest/total``.
    """
    from fractions import Fraction

    comps = connected_components(g, separator)
    largest = max((len(c) for c in comps), default=0)
    total = g.n if total is None else total
    return largest, Fraction(total - largest, total) if total else Fraction(1)


# ---------------------------------------------------------------------------
# Block-cut tree
# ---------------------------------------------------------------------------


@dataclass
class BlockCutTree:
    """Block-cut tree of a connected graph.

    Tree nodes ``0..len(blocks)-1`` are blocks; node ``len(blocks)+i`` is
    ``cut_vertices[i]``.  ``omega[(u, v)]`` is the number of graph vertices
    covered by the component of the tree minus edge ``uv`` containing ``u``.
    """

    n: int
    blocks: list[tuple[int, ...]]
    cut_vertices: list[int]
    tree_adjacency: list[list[int]]
    omega: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def node_count(self) -> int:
        return len(self.blocks) + len(self.cut_vertices)

    def is_block(self, node: int) -> bool:
        return node < len(self.blocks)

    def node_vertices(self, node: int) -> tuple[int, ...]:
        if self.is_block(node):
            return self.blocks[node]
        return (self.cut_vertices[node - len(self.blocks)],)

    def cut_node(self, vertex: int) -> int:
        return len(self.blocks) + self.cut_vertices.index(vertex)

    def side_vertices(self, u: int, v: int) -> set[int]:
        """Graph vertices covered by the tree component containing ``u`` after deleting ``uv``."""
        out: set[int] = set()
        stack = [u]
        seen = {u, v}
        while stack:
            x = stack.pop()
            out.update(self.node_vertices(x))
            for y in self.tree_adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return out

    def directed_out(self, u: int, v: int) -> bool:
        """True if tree edge ``uv`` points from ``u`` towards the heavier side at ``v``.

        Balanced edges point nowhere, so a sink always exists and lies at a
        weight centroid of the tree.
        """
        return self.omega[(v, u)] > self.omega[(u, v)]


def biconnected_blocks(g: Graph) -> list[tuple[int, ...]]:
    """Maximal 2-connected blocks (bridges are 2-vertex blocks), iteratively.

    Isolated vertices form singleton blocks.
    """
    n = g.n
    disc = [-1] * n
    low = [0] * n
    blocks: list[tuple[int, ...]] = []
    timer = 0
    adj = g.adj
    for root in range(n):
        if disc[root] != -1:
            continue
        if not adj[root]:
            disc[root] = timer
            timer += 1
            blocks.append((root,))
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, 0)]
        while stack:
            v, p, i = stack[-1]
            if i < len(adj[v]):
                stack[-1] = (v, p, i + 1)
                u = adj[v][i]
                if u == p:
                    continue
                if disc[u] == -1:
                    edge_stack.append((v, u))
                    disc[u] = low[u] = timer
                    timer += 1
                    stack.append((u, v, 0))
                elif disc[u] < disc[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], disc[u])
            else:
                stack.pop()
                if p >= 0:
                    low[p] = min(low[p], low[v])
                    if low[v] >= disc[p]:
                        comp: set[int] = set()
                        while True:
                            e = edge_stack.pop()
                            comp.update(e)
                            if e == (p, v):
                                break
                        blocks.append(tuple(sorted(comp)))
    blocks.sort()
    return blocks


def block_cut_tree(g: Graph) -> BlockCutTree:
    """Build the block-cut tree with subtree weights for each directed edge.

    Raises
    ------
    GraphError
        If ``g`` is disconnected.
    """
    if not is_connected(g):
        raise GraphError("block_cut_tree requires a connected graph")
    blocks = biconnected_blocks(g)
    if g.n == 0:
        return BlockCutTree(0, [], [], [])
    membership: list[list[int]] = [[] for _ in range(g.n)]
    for b, verts in enumerate(blocks):
        for v in verts:
            membership[v].append(b)
    cuts = [v for v in range(g.n) if len(membership[v]) > 1]
    nb = len(blocks)
    tree = [[] for _ in range(nb + len(cuts))]
    for i, x in enumerate(cuts):
        node = nb + i
        for b in membership[x]:
            tree[node].append(b)
            tree[b].append(node)
    for row in tree:
        row.sort()
    t = BlockCutTree(g.n, blocks, cuts, tree)
    for u in range(t.node_count):
        for v in tree[u]:
            t.omega[(u, v)] = len(t.side_vertices(u, v))
    return t


def find_sink_block(t: BlockCutTree) -> int:
    """A tree node with no outgoing edge under the omega-direction rule.

    Among sinks, prefer larger covered weight (the node's own side sizes),
    then lower node id.
    """
    sinks = []
    for x in range(t.node_count):
        if all(not t.directed_out(x, y) for y in t.tree_adjacency[x]):
            sinks.append(x)
    if not sinks:
        raise GraphError("block-cut tree has no sink; omega weights inconsistent")
    return min(sinks, key=lambda x: (-len(t.node_vertices(x)), x))
