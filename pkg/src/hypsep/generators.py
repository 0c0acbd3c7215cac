"""Reproducible plane-graph families.

Every generator returns a :class:`PlaneGraph` whose rotation comes from a
straight-line drawing (or a combinatorial construction), so outputs are
identical for identical parameters.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Sequence

from .graph_core import Graph, GraphError
from .plane_embedding import PlaneGraph, add_vertex_in_face

MAX_VERTICES = 2_000_000


class GeneratorRefusal(GraphError):
    """Raised when a requested instance exceeds the configured size cap."""


def rotation_from_coordinates(coords: Sequence[tuple[float, float]], edges) -> list[list[int]]:
    """Clockwise rotation for a planar straight-line drawing."""
    n = len(coords)
    nbrs: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = []
    for v in range(n):
        x0, y0 = coords[v]
        rot.append(sorted(nbrs[v], key=lambda u: -math.atan2(coords[u][1] - y0, coords[u][0] - x0)))
    return rot


def _plane(coords, edges) -> PlaneGraph:
    return PlaneGraph(rotation_from_coordinates(coords, edges))


# ---------------------------------------------------------------------------
# Basic families
# ---------------------------------------------------------------------------


def grid_diag(n: int) -> PlaneGraph:
    """``n x n`` grid with the diagonal ``(a, b)(a+1, b+1)`` in every cell.

    Vertex ``a * n + b`` sits in row ``a``, column ``b``.
    """
    if n < 1:
        raise GraphError("grid_diag needs n >= 1")
    coords = [(b, -a) for a in range(n) for b in range(n)]
    edges = []
    for a in range(n):
        for b in range(n):
            v = a * n + b
            if b + 1 < n:
                edges.append((v, v + 1))
            if a + 1 < n:
                edges.append((v, v + n))
            if a + 1 < n and b + 1 < n:
                edges.append((v, v + n + 1))
    return _plane(coords, edges)


def grid_vertex(n: int, a: int, b: int) -> int:
    return a * n + b


def wheel(k: int) -> PlaneGraph:
    """Wheel with ``k`` vertices: rim ``0..k-2`` and hub ``k-1`` drawn inside.

    ``k <= 3`` gives a vertex, an edge, and a triangle.
    """
    if k < 1:
        raise GraphError("wheel needs k >= 1")
    if k == 1:
        return PlaneGraph([[]])
    if k == 2:
        return PlaneGraph([[1], [0]])
    if k == 3:
        return _plane([(0, 0), (1, 0), (0, 1)], [(0, 1), (1, 2), (0, 2)])
    rim = k - 1
    coords = [(math.cos(-2 * math.pi * i / rim), math.sin(-2 * math.pi * i / rim)) for i in range(rim)]
    coords.append((0.0, 0.0))
    edges = [(i, (i + 1) % rim) for i in range(rim)] + [(i, rim) for i in range(rim)]
    return _plane(coords, edges)


def cycle_graph(k: int) -> PlaneGraph:
    if k < 3:
        raise GraphError("cycle needs at least 3 vertices")
    coords = [(math.cos(2 * math.pi * i / k), math.sin(2 * math.pi * i / k)) for i in range(k)]
    return _plane(coords, [(i, (i + 1) % k) for i in range(k)])


def path_graph(k: int) -> PlaneGraph:
    return _plane([(i, 0) for i in range(k)], [(i, i + 1) for i in range(k - 1)])


def star(leaves: int) -> PlaneGraph:
    """Star with centre ``0``."""
    coords = [(0.0, 0.0)] + [
        (math.cos(2 * math.pi * i / leaves), math.sin(2 * math.pi * i / leaves)) for i in range(leaves)
    ]
    return _plane(coords, [(0, i + 1) for i in range(leaves)])


def cylinder(delta: int, rings: int) -> PlaneGraph:
    """``rings`` copies of a ``delta``-cycle joined ring to ring by paths.

    Vertex ``r * delta + i`` is position ``i`` of ring ``r``.
    """
    if delta < 3:
        raise GraphError("cylinder needs delta >= 3")
    if rings < 1:
        raise GraphError("cylinder needs at least one ring")
    coords = []
    for r in range(rings):
        for i in range(delta):
            t = -2 * math.pi * i / delta
            coords.append(((r + 1) * math.cos(t), (r + 1) * math.sin(t)))
    edges = []
    for r in range(rings):
        for i in range(delta):
            v = r * delta + i
            edges.append((v, r * delta + (i + 1) % delta))
            if r + 1 < rings:
                edges.append((v, v + delta))
    return _plane(coords, edges)


def binary_tiling_points(m: int) -> tuple[list[tuple[int, int]], list[tuple[int, int]], int]:
    """Integer drawing of the binary-tiling patch with rows ``1..m``.

    Level ``i`` (``0..m``) is the line ``y = 2^-i``; it carries the points
    ``x = k / 2^(i+1)``.  Coordinates are scaled by ``2^(m+1)``.
    Returns ``(points, edges, scale)``; points are ordered level by level.
    """
    scale = 2 ** (m + 1)
    points: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}
    for i in range(m + 1):
        y = scale >> i
        step = scale >> (i + 1)
        for k in range(2 ** (i + 1) + 1):
            index[(k * step, y)] = len(points)
            points.append((k * step, y))
    edges = []
    for i in range(m + 1):
        y = scale >> i
        step = scale >> (i + 1)
        for k in range(2 ** (i + 1)):
            edges.append((index[(k * step, y)], index[((k + 1) * step, y)]))
    for i in range(1, m + 1):
        y_bot, y_top = scale >> i, scale >> (i - 1)
        width = scale >> i
        for j in range(2 ** i + 1):
            edges.append((index[(j * width, y_bot)], index[(j * width, y_top)]))
    return points, edges, scale


def binary_tiling_patch(m: int) -> PlaneGraph:
    """Finite patch of the binary tiling with ``2^i`` tiles in row ``i`` for ``i = 1..m``."""
    if m < 1:
        raise GraphError("binary_tiling_patch needs m >= 1")
    if sum(2 ** (i + 1) + 1 for i in range(m + 1)) > MAX_VERTICES:
        raise GeneratorRefusal(f"binary tiling patch with m={m} exceeds {MAX_VERTICES} vertices")
    points, edges, _ = binary_tiling_points(m)
    return _plane(points, edges)


def random_planar_triangulation(n: int, seed: int = 0, flips: int | None = None) -> PlaneGraph:
    """Random triangulation of the sphere: stacked insertions then random edge flips."""
    if n < 3:
        raise GraphError("triangulation needs n >= 3")
    rng = random.Random(seed)
    rot: list[list[int]] = [[1, 2], [2, 0], [0, 1]]
    faces = [(0, 1, 2), (0, 2, 1)]
    for v in range(3, n):
        i = rng.randrange(len(faces))
        a, b, c = faces[i]
        rot.append([])
        add_vertex_in_face(rot, v, [a, b, c])
        faces[i] = (a, b, v)
        faces.append((b, c, v))
        faces.append((c, a, v))
    p = PlaneGraph(rot, validate=False)
    flips = 2 * n if flips is None else flips
    for _ in range(flips):
        u = rng.randrange(n)
        if len(rot[u]) <= 3:
            continue
        v = rot[u][rng.randrange(len(rot[u]))]
        if len(rot[v]) <= 3:
            continue
        iu = rot[u].index(v)
        x = rot[u][(iu + 1) % len(rot[u])]
        iv = rot[v].index(u)
        w = rot[v][(iv + 1) % len(rot[v])]
        if w == x or x in rot[w]:
            continue
        rot[w].insert(rot[w].index(v) + 1, x)
        rot[x].insert(rot[x].index(u) + 1, w)
        rot[u].remove(v)
        rot[v].remove(u)
    p = PlaneGraph(rot)
    for f in p.faces:
        if f.length != 3:
            raise GraphError("triangulation generator produced a non-triangular face")
    return p


# ---------------------------------------------------------------------------
# Binary-tiling host with refined tiles and the embedded grid subdivision
# ---------------------------------------------------------------------------


def delta_hat(delta: int) -> int:
    """Least multiple of 4 strictly greater than ``delta``."""
    return 4 * (delta // 4 + 1)


def host_rows(n: int, dh: int) -> int:
    return math.ceil(9 * n / dh) - 1


def first_row(n: int, dh: int) -> int:
    return max(0, math.ceil(math.log2(4 * n / dh)))


def grid_placement(n: int, dh: int, a: int, b: int) -> tuple[int, int, int, int]:
    """Tile ``(i, j)`` and sub-tile corner ``(x, y)`` receiving grid vertex ``v_{a,b}``."""
    i0 = first_row(n, dh)
    q = dh // 4
    i = i0 + 1 + 2 * ((4 * a) // dh)
    j = 1 + 2 ** (i - i0) * ((4 * b) // dh)
    x = 4 * (a % q) + 2
    y = 4 * (b % q) + 2
    return i, j, x, y


def is_feasible(n: int, delta: int) -> bool:
    dh = delta_hat(delta)
    rows = host_rows(n, dh)
    i, j, _, _ = grid_placement(n, dh, n - 1, n - 1)
    return rows >= 1 and i <= rows and j <= 2 ** i


def smallest_feasible_delta(n: int) -> int:
    """Smallest ``delta`` for which the grid of size ``n`` fits the host patch."""
    delta = 0
    while not is_feasible(n, delta):
        delta += 4
    return delta


@dataclass
class BGrid:
    """Refined binary-tiling host.

    ``plane`` is the full host graph.  ``inner`` holds host edges that are
    not pieces of subdivided patch edges.  ``drawing_vertex`` maps a lattice
    point of the unsubdivided drawing to its host id and ``chain`` maps a
    drawing edge (as a sorted pair of host ids) to its host path.
    """

    n: int
    delta: int
    dh: int
    rows: int
    plane: PlaneGraph
    inner: set[frozenset]
    drawing_vertex: dict[tuple[int, int], int]
    chain: dict[tuple[int, int], list[int]]
    scale: int
    coords: list[tuple[int, int]] = field(repr=False, default_factory=list)


def b_grid(n: int, delta: int, max_vertices: int = MAX_VERTICES) -> BGrid:
    """Host graph: patch tiles refined into ``dh x dh`` grids with diagonals.

    Patch edges are subdivided into ``dh`` pieces (boundary edges); every
    other drawing edge is subdivided twice (three inner pieces).
    """
    dh = delta_hat(delta)
    rows = host_rows(n, dh)
    if rows < 1:
        raise GeneratorRefusal(f"no host rows for n={n}, delta={delta}")
    tiles = 2 ** (rows + 1) - 2
    estimate = tiles * (3 * dh * dh + 6 * dh * (dh - 1) + 5 * dh)
    if estimate > max_vertices:
        raise GeneratorRefusal(f"host would have about {estimate} vertices (cap {max_vertices})")
    # Lattice spacing: bottom half-edges of the last row are split in dh pieces.
    scale = 2 ** (rows + 1) * dh
    coords: list[tuple[int, int]] = []
    index: dict[tuple[int, int], int] = {}

    def vid(pt: tuple[int, int]) -> int:
        k = index.get(pt)
        if k is None:
            k = index[pt] = len(coords)
            coords.append(pt)
        return k

    boundary_edges: set[tuple[int, int]] = set()
    drawing_inner: set[tuple[int, int]] = set()

    def seg(p, q, pieces, bucket):
        (x0, y0), (x1, y1) = p, q
        prev = vid(p)
        for t in range(1, pieces + 1):
            cur = vid((x0 + (x1 - x0) * t // pieces, y0 + (y1 - y0) * t // pieces))
            bucket.add((min(prev, cur), max(prev, cur)))
            prev = cur

    for i in range(1, rows + 1):
        w = scale >> i
        y_top, y_bot = 2 * w, w
        for j in range(1, 2 ** i + 1):
            left = (j - 1) * w
            right = left + w
            seg((left, y_bot), (left, y_top), dh, boundary_edges)
            seg((right, y_bot), (right, y_top), dh, boundary_edges)
            seg((left, y_top), (right, y_top), dh, boundary_edges)
            seg((left, y_bot), (left + w // 2, y_bot), dh, boundary_edges)
            seg((left + w // 2, y_bot), (right, y_bot), dh, boundary_edges)
            step = w // dh
            for x in range(dh + 1):
                for y in range(dh + 1):
                    pt = (left + y * step, y_top - x * step)
                    if 0 < x < dh and 0 < y < dh:
                        vid(pt)
            for x in range(dh + 1):
                for y in range(dh + 1):
                    p = (left + y * step, y_top - x * step)
                    if y < dh and 0 < x < dh:
                        drawing_inner.add(tuple(sorted((vid(p), vid((p[0] + step, p[1]))))))
                    if x < dh and 0 < y < dh:
                        drawing_inner.add(tuple(sorted((vid(p), vid((p[0], p[1] - step))))))
                    if x < dh and y < dh:
                        drawing_inner.add(tuple(sorted((vid(p), vid((p[0] + step, p[1] - step))))))
    drawing_vertex = dict(index)
    # Subdivide inner drawing edges twice; scale coordinates by 3 for exact thirds.
    coords3 = [(3 * x, 3 * y) for x, y in coords]
    edges: list[tuple[int, int]] = list(boundary_edges)
    inner: set[frozenset] = set()
    chain: dict[tuple[int, int], list[int]] = {}
    for u, v in sorted(boundary_edges):
        chain[(u, v)] = [u, v]
    for u, v in sorted(drawing_inner):
        (xu, yu), (xv, yv) = coords3[u], coords3[v]
        a = len(coords3)
        coords3.append((xu + (xv - xu) // 3, yu + (yv - yu) // 3))
        b = len(coords3)
        coords3.append((xu + 2 * (xv - xu) // 3, yu + 2 * (yv - yu) // 3))
        for e in ((u, a), (a, b), (b, v)):
            edges.append(e)
            inner.add(frozenset(e))
        chain[(u, v)] = [u, a, b, v]
    plane = PlaneGraph(rotation_from_coordinates(coords3, edges))
    return BGrid(n, delta, dh, rows, plane, inner, drawing_vertex, chain, scale, coords3)


@dataclass
class GridEmbeddingMap:
    """Placement of ``grid_diag(n)`` into a :class:`BGrid` host.

    ``f_v[(a, b)]`` is the host vertex of grid vertex ``v_{a,b}`` and
    ``paths[(u, v)]`` the host path for grid edge ``uv`` (grid ids, ``u < v``).
    """

    n: int
    host: BGrid
    f_v: dict[tuple[int, int], int]
    paths: dict[tuple[int, int], list[int]]


def _tile_lattice(host: BGrid, i: int, j: int, x: int, y: int) -> tuple[int, int]:
    w = host.scale >> i
    step = w // host.dh
    return ((j - 1) * w + y * step, 2 * w - x * step)


def _walk(host: BGrid, points: list[tuple[int, int]]) -> list[int]:
    """Expand consecutive lattice points (unit drawing steps) into a host path."""
    out = [host.drawing_vertex[points[0]]]
    for p, q in zip(points, points[1:]):
        u, v = host.drawing_vertex[p], host.drawing_vertex[q]
        key = (min(u, v), max(u, v))
        if key not in host.chain:
            raise GraphError(f"drawing has no edge between {p} and {q}")
        piece = host.chain[key]
        if piece[0] != u:
            piece = piece[::-1]
        out.extend(piece[1:])
    return out


def _line(host: BGrid, start: tuple[int, int], stop: tuple[int, int], dx: int, dy: int) -> list[tuple[int, int]]:
    """Lattice points from ``start`` to ``stop`` moving by ``(dx, dy)``, inclusive."""
    pts = [start]
    cur = start
    guard = 0
    while cur != stop:
        cur = (cur[0] + dx, cur[1] + dy)
        pts.append(cur)
        guard += 1
        if guard > 10 ** 7:
            raise GraphError("lattice walk did not reach its target")
    return pts


def _row_step(host: BGrid, i: int) -> int:
    return (host.scale >> i) // host.dh


def embed_grid(n: int, delta: int, host: BGrid | None = None) -> GridEmbeddingMap:
    """Embed a subdivision of ``grid_diag(n)`` into the refined host.

    Paths stay on the lattice lines of the tile grids: horizontal and
    vertical moves follow grid lines, diagonal moves follow tile diagonals.
    Vertical neighbours in different parts are routed through the two tiles
    below the upper part with a staircase (down, across, down).
    """
    host = host if host is not None else b_grid(n, delta)
    dh = host.dh
    q = dh // 4
    place = {(a, b): grid_placement(n, dh, a, b) for a in range(n) for b in range(n)}
    if any(i > host.rows or j > 2 ** i for i, j, _, _ in place.values()):
        raise GeneratorRefusal(f"grid of size {n} does not fit the host for delta={delta}")
    pt = {ab: _tile_lattice(host, i, j, x, y) for ab, (i, j, x, y) in place.items()}
    f_v = {ab: host.drawing_vertex[p] for ab, p in pt.items()}
    paths: dict[tuple[int, int], list[int]] = {}

    def gid(a, b):
        return a * n + b

    for a in range(n):
        for b in range(n):
            i, j, x, y = place[(a, b)]
            s = _row_step(host, i)
            p0 = pt[(a, b)]
            # horizontal neighbour: a straight run along the row line
            if b + 1 < n:
                pts = _line(host, p0, pt[(a, b + 1)], s, 0)
                paths[(gid(a, b), gid(a, b + 1))] = _walk(host, pts)
            # vertical neighbour
            if a + 1 < n:
                if (a + 1) % q:
                    pts = _line(host, p0, pt[(a + 1, b)], 0, -s)
                else:
                    pts = _vertical_cross(host, i, j, x, y, p0, pt[(a + 1, b)], diagonal=False)
                paths[(gid(a, b), gid(a + 1, b))] = _walk(host, pts)
            # diagonal neighbour
            if a + 1 < n and b + 1 < n:
                same_rowpart = (a + 1) % q != 0
                same_colpart = (b + 1) % q != 0
                target = pt[(a + 1, b + 1)]
                if same_rowpart and same_colpart:
                    pts = _line(host, p0, target, s, -s)
                elif same_rowpart:
                    mid = (p0[0] + 2 * s, p0[1] - 2 * s)
                    far = (target[0] - 2 * s, target[1] + 2 * s)
                    pts = _line(host, p0, mid, s, -s)[:-1] + _line(host, mid, far, s, 0)[:-1] + _line(host, far, target, s, -s)
                elif same_colpart:
                    pts = _vertical_cross(host, i, j, x, y, p0, target, diagonal=True)
                else:
                    pts = _diagonal_cross(host, i, j, p0, target, place[(a + 1, b + 1)])
                paths[(gid(a, b), gid(a + 1, b + 1))] = _walk(host, pts)
    return GridEmbeddingMap(n, host, f_v, paths)


def _vertical_cross(host, i, j, x, y, p0, target, diagonal):
    """Route from the bottom part row of ``sigma(i, j)`` to the top row of ``sigma(i+2, 4j-3)``."""
    dh = host.dh
    s = _row_step(host, i)
    # inside the upper tile: straight down (or diagonal) to the bottom boundary
    if diagonal:
        exit_pt = (p0[0] + 2 * s, p0[1] - 2 * s)
        head = _line(host, p0, exit_pt, s, -s)
        exit_col = y + 2
    else:
        exit_pt = (p0[0], p0[1] - 2 * s)
        head = _line(host, p0, exit_pt, 0, -s)
        exit_col = y
    # connection index k (1-based) in left-to-right order of exits
    k = exit_col // 2
    # the two tiles below, seen as one 2dh x dh lattice with step s/2
    cs = s // 2
    left = (2 * j - 2) * (host.scale >> (i + 1))
    top_y = exit_pt[1]
    start = (left + 2 * exit_col * cs, top_y)
    if start != exit_pt:
        raise GraphError("vertical routing start does not match tile exit")
    turn = (start[0], top_y - k * cs)
    col_t = k
    corner = (left + col_t * cs, top_y - k * cs)
    bottom = (left + col_t * cs, top_y - dh * cs)
    mid = _line(host, start, turn, 0, -cs)[:-1] + _line(host, turn, corner, -cs, 0)[:-1] + _line(host, corner, bottom, 0, -cs)
    # inside the lower tile: from its top boundary straight down or diagonally
    ls = _row_step(host, i + 2)
    if diagonal:
        tail = _line(host, bottom, target, ls, -ls)
    else:
        tail = _line(host, bottom, target, 0, -ls)
    return head[:-1] + mid[:-1] + tail


def _diagonal_cross(host, i, j, p0, target, target_place):
    """Route a diagonal edge between diagonally neighbouring parts via row ``i + 1``."""
    dh = host.dh
    s = _row_step(host, i)
    corner = (p0[0] + 2 * s, p0[1] - 2 * s)
    head = _line(host, p0, corner, s, -s)
    cs = _row_step(host, i + 1)
    middle = (corner[0] + (dh // 2) * cs, corner[1] - (dh // 2) * cs)
    down1 = _line(host, corner, middle, cs, -cs)
    ti, tj, _, _ = target_place
    if ti != i + 2:
        raise GraphError("diagonal routing expects the target two rows below")
    jj = (tj - 1) // 2
    w1 = host.scale >> (i + 1)
    target_middle = ((jj - 1) * w1 + (dh // 2) * cs, middle[1])
    across = _line(host, middle, target_middle, cs, 0)
    corner2 = (target_middle[0] + (dh // 2) * cs, target_middle[1] - (dh // 2) * cs)
    down2 = _line(host, target_middle, corner2, cs, -cs)
    ls = _row_step(host, i + 2)
    tail = _line(host, corner2, target, ls, -ls)
    return head[:-1] + down1[:-1] + across[:-1] + down2[:-1] + tail


@dataclass
class LowerBoundInstance:
    """Output of :func:`lower_bound_reduce`."""

    graph: PlaneGraph
    gb_vertices: set[int]
    subdivision_offset: Fraction
    gadget_offset: Fraction
    grid_vertices: int

    @property
    def offset(self) -> Fraction:
        return self.subdivision_offset + self.gadget_offset



def lower_bound_reduce(
    n: int,
    sub_vertices: Sequence[int],
    sub_edges: Sequence[tuple[int, int]],
    delta: int,
    embedding: GridEmbeddingMap | None = None,
) -> LowerBoundInstance:
    """Plant an even subdivision of a subgraph of ``grid_diag(n)`` in the host and add pendant pairs.

    ``sub_vertices`` and ``sub_edges`` use grid ids ``a * n + b``.
    Paths of even length get one inner edge subdivided once more; every
    host vertex outside the planted subdivision gains two pendant neighbours.
    """
    emb = embedding if embedding is not None else embed_grid(n, delta)
    host = emb.host
    rot = [list(r) for r in host.plane.rotation]
    coords = list(host.coords)
    verts = set(sub_vertices)
    edge_keys = set()
    for u, v in sub_edges:
        u, v = min(u, v), max(u, v)
        if (u, v) not in emb.paths:
            raise GraphError(f"({u}, {v}) is not an edge of grid_diag({n})")
        if u not in verts or v not in verts:
            raise GraphError("subgraph edge uses a vertex outside the subgraph")
        edge_keys.add((u, v))
    gb: set[int] = {emb.f_v[divmod(v, n)] for v in verts}

    def subdivide(x: int, y: int) -> int:
        z = len(rot)
        rot.append([x, y])
        rot[x][rot[x].index(y)] = z
        rot[y][rot[y].index(x)] = z
        coords.append(((coords[x][0] + coords[y][0]) / 2, (coords[x][1] + coords[y][1]) / 2))
        return z

    for key in sorted(edge_keys):
        path = list(emb.paths[key])
        if (len(path) - 1) % 2 == 0:
            for t in range(len(path) - 1):
                if frozenset((path[t], path[t + 1])) in host.inner:
                    z = subdivide(path[t], path[t + 1])
                    path.insert(t + 1, z)
                    break
            else:
                raise GraphError("path has no inner edge to subdivide")
        gb.update(path)
    base = len(rot)
    outside = [v for v in range(base) if v not in gb]
    for v in outside:
        for _ in range(2):
            z = len(rot)
            rot.append([v])
            rot[v].append(z)
    plane = PlaneGraph(rot)
    sub_off = Fraction(len(gb) - len(verts), 2)
    gadget_off = Fraction(2, 3) * (plane.n - len(gb))
    return LowerBoundInstance(plane, gb, sub_off, gadget_off, len(verts))


# ---------------------------------------------------------------------------
# Generator specs
# ---------------------------------------------------------------------------


class Family(str, Enum):
    GRID_DIAG = "grid_diag"
    WHEEL = "wheel"
    CYLINDER = "cylinder"
    BINARY_TILING = "binary_tiling"
    BGRID = "b_grid"
    LOWER_BOUND = "lower_bound"
    TRIANGULATION = "triangulation"


@dataclass(frozen=True)
class GeneratorSpec:
    family: Family
    params: tuple[tuple[str, Any], ...] = ()

    @classmethod
    def make(cls, family: str | Family, **params) -> "GeneratorSpec":
        return cls(Family(family), tuple(sorted(params.items())))

    def as_dict(self) -> dict:
        return {"family": self.family.value, **dict(self.params)}


def generate(spec: GeneratorSpec) -> PlaneGraph:
    p = dict(spec.params)
    fam = spec.family
    if fam is Family.GRID_DIAG:
        return grid_diag(int(p["n"]))
    if fam is Family.WHEEL:
        return wheel(int(p["k"]))
    if fam is Family.CYLINDER:
        return cylinder(int(p["delta"]), int(p["rings"]))
    if fam is Family.BINARY_TILING:
        return binary_tiling_patch(int(p["m"]))
    if fam is Family.BGRID:
        return b_grid(int(p["n"]), int(p["delta"])).plane
    if fam is Family.TRIANGULATION:
        return random_planar_triangulation(int(p["n"]), int(p.get("seed", 0)))
    if fam is Family.LOWER_BOUND:
        n = int(p["n"])
        g = grid_diag(n).graph
        verts = list(range(g.n))
        return lower_bound_reduce(n, verts, g.edges(), int(p["delta"])).graph
    raise GraphError(f"unknown family {fam}")
