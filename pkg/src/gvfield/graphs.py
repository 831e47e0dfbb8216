"""Graph domains: 2D grids, triangle-mesh vertex graphs, and face dual graphs.

Every reconstruction operates on a :class:`DomainGraph`; the builders in this
module produce one from a grid description or a triangle mesh, and the
distance routines supply the shortest-path metrics the extension algorithms
consume.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import EmptySourceSet, NonManifoldEdge, UnreachablePair

FOUR_NEIGHBOR = "four_neighbor"
EIGHT_NEIGHBOR = "eight_neighbor"
ADJACENCY_SCHEMES = (FOUR_NEIGHBOR, EIGHT_NEIGHBOR)

HOP = "hop"
WEIGHTED = "weighted"
METRICS = (HOP, WEIGHTED)


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class DomainGraph:
    """Immutable undirected graph with optional edge weights and positions.

    Attributes
    ----------
    vertex_count : int
        Number of vertices; ids are dense integers ``0 .. vertex_count-1``.
    adjacency : tuple of tuples
        Per-vertex sorted neighbor ids. Symmetric, no self-loops.
    edge_weights : mapping or None
        Optional ``(u, v) -> w`` with ``u < v`` and ``w > 0``. Absent means
        unit weights.
    positions : tuple or None
        Optional per-vertex 2D/3D coordinates.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    edge_weights: Mapping[tuple[int, int], float] | None = None
    positions: tuple[tuple[float, ...], ...] | None = None

    def __post_init__(self) -> None:
        n = self.vertex_count
        if n < 0:
            raise ValueError("vertex_count must be nonnegative")
        if len(self.adjacency) != n:
            raise ValueError("adjacency length must equal vertex_count")
        for u, nbrs in enumerate(self.adjacency):
            prev = -1
            for v in nbrs:
                if not 0 <= v < n:
                    raise ValueError(f"neighbor id {v} out of range at vertex {u}")
                if v == u:
                    raise ValueError(f"self-loop at vertex {u}")
                if v <= prev:
                    raise ValueError(f"neighbors of {u} must be sorted and distinct")
                prev = v
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u not in self.adjacency[v]:
                    raise ValueError(f"adjacency not symmetric: {u} -> {v}")
        if self.edge_weights is not None:
            expected = set(self.edges)
            got = set(self.edge_weights)
            if got != expected:
                raise ValueError("edge_weights keys must be exactly the (u < v) edge set")
            for key, w in self.edge_weights.items():
                if not w > 0:
                    raise ValueError(f"edge weight {key} must be positive, got {w}")
        if self.positions is not None and len(self.positions) != n:
            raise ValueError("positions length must equal vertex_count")

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[tuple[int, int]],
        weights: Mapping[tuple[int, int], float] | None = None,
        positions: Sequence[Sequence[float]] | None = None,
    ) -> "DomainGraph":
        """Build a graph from an undirected edge list (any orientation)."""
        nbrs: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, v in edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        adjacency = tuple(tuple(sorted(s)) for s in nbrs)
        canon_weights = None
        if weights is not None:
            canon_weights = {_edge_key(u, v): float(w) for (u, v), w in weights.items()}
        pos = None
        if positions is not None:
            pos = tuple(tuple(float(c) for c in p) for p in positions)
        return cls(vertex_count, adjacency, canon_weights, pos)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """All undirected edges as (u, v) pairs with u < v, lexicographic."""
        out = []
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    out.append((u, v))
        return tuple(out)

    @cached_property
    def _directed_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        # Both directions of every edge, for vectorized neighbor averaging.
        src, dst = [], []
        for u, nbrs in enumerate(self.adjacency):
            src.extend([u] * len(nbrs))
            dst.extend(nbrs)
        return np.asarray(src, dtype=np.intp), np.asarray(dst, dtype=np.intp)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.asarray([len(nbrs) for nbrs in self.adjacency], dtype=np.intp)

    def degree(self, u: int) -> int:
        return len(self.adjacency[u])

    def weight(self, u: int, v: int) -> float:
        if self.edge_weights is None:
            return 1.0
        return self.edge_weights[_edge_key(u, v)]


@dataclass(frozen=True)
class Grid2D:
    """A width x height cell grid; cell (x, y) has vertex id ``y*width + x``."""

    width: int
    height: int
    adjacency_scheme: str = FOUR_NEIGHBOR

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise ValueError("grid dimensions must be positive")
        if self.adjacency_scheme not in ADJACENCY_SCHEMES:
            raise ValueError(f"unknown adjacency scheme {self.adjacency_scheme!r}")

    @property
    def vertex_count(self) -> int:
        return self.width * self.height

    def vertex_id(self, x: int, y: int) -> int:
        return y * self.width + x

    def cell_at(self, vertex: int) -> tuple[int, int]:
        return vertex % self.width, vertex // self.width

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height


@dataclass(frozen=True)
class TriMesh:
    """Triangle mesh given by 3D vertex coordinates and index triples."""

    vertices: tuple[tuple[float, float, float], ...]
    triangles: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        n = len(self.vertices)
        for t, (a, b, c) in enumerate(self.triangles):
            for i in (a, b, c):
                if not 0 <= i < n:
                    raise ValueError(f"triangle {t} references vertex {i} out of range")
            if a == b or b == c or a == c:
                raise ValueError(f"triangle {t} has repeated vertices")

    @classmethod
    def from_lists(cls, vertices, triangles) -> "TriMesh":
        vs = tuple(tuple(float(c) for c in v) for v in vertices)
        ts = tuple(tuple(int(i) for i in t) for t in triangles)
        return cls(vs, ts)

    @cached_property
    def edge_triangles(self) -> dict[tuple[int, int], tuple[int, ...]]:
        """Map each undirected mesh edge to the triangles containing it."""
        incidence: dict[tuple[int, int], list[int]] = {}
        for t, (a, b, c) in enumerate(self.triangles):
            for u, v in ((a, b), (b, c), (a, c)):
                incidence.setdefault(_edge_key(u, v), []).append(t)
        return {e: tuple(ts) for e, ts in incidence.items()}

    def non_manifold_edges(self) -> tuple[tuple[int, int], ...]:
        """Edges shared by more than two triangles, lexicographic order."""
        bad = [e for e, ts in self.edge_triangles.items() if len(ts) > 2]
        return tuple(sorted(bad))


def _require_manifold(mesh: TriMesh) -> None:
    bad = mesh.non_manifold_edges()
    if bad:
        raise NonManifoldEdge(
            f"{len(bad)} edge(s) shared by more than two triangles; first: {bad[0]}"
        )


def build_grid_graph(grid: Grid2D) -> DomainGraph:
    """Unit-weight graph of grid cells under the grid's adjacency scheme."""
    offsets = [(1, 0), (0, 1)]
    if grid.adjacency_scheme == EIGHT_NEIGHBOR:
        offsets += [(1, 1), (1, -1)]
    edges = []
    for y in range(grid.height):
        for x in range(grid.width):
            u = grid.vertex_id(x, y)
            for dx, dy in offsets:
                nx, ny = x + dx, y + dy
                if grid.in_bounds(nx, ny):
                    edges.append((u, grid.vertex_id(nx, ny)))
    positions = tuple(
        (float(x), float(y)) for y in range(grid.height) for x in range(grid.width)
    )
    return DomainGraph.from_edges(grid.vertex_count, edges, positions=positions)


def build_vertex_graph(mesh: TriMesh, edge_lengths: bool = False) -> DomainGraph:
    """Graph on mesh vertices; an edge wherever two vertices share a triangle.

    With ``edge_lengths=True`` the edges carry Euclidean lengths computed
    from the vertex coordinates; otherwise weights are implicit units.
    """
    _require_manifold(mesh)
    edges = tuple(mesh.edge_triangles)
    weights = None
    if edge_lengths:
        weights = {}
        for u, v in edges:
            d = math.dist(mesh.vertices[u], mesh.vertices[v])
            if d <= 0:
                raise ValueError(f"coincident vertices on edge ({u}, {v})")
            weights[(u, v)] = d
    return DomainGraph.from_edges(
        len(mesh.vertices), edges, weights=weights, positions=mesh.vertices
    )


def build_cell_graph(mesh: TriMesh) -> DomainGraph:
    """Dual graph: one vertex per triangle, edges across shared mesh edges.

    Dual vertex ids equal triangle indices; positions are face centroids.
    """
    _require_manifold(mesh)
    edges = []
    for tris in mesh.edge_triangles.values():
        if len(tris) == 2:
            edges.append(tuple(tris))
    centroids = []
    for a, b, c in mesh.triangles:
        pa, pb, pc = mesh.vertices[a], mesh.vertices[b], mesh.vertices[c]
        centroids.append(tuple((pa[i] + pb[i] + pc[i]) / 3.0 for i in range(3)))
    return DomainGraph.from_edges(len(mesh.triangles), edges, positions=centroids)


def is_connected(g: DomainGraph) -> bool:
    """True iff every vertex is reachable from vertex 0 (vacuous when empty)."""
    if g.vertex_count == 0:
        return True
    seen = [False] * g.vertex_count
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                queue.append(v)
    return count == g.vertex_count


def _check_metric(g: DomainGraph, metric: str) -> None:
    if metric not in METRICS:
        raise ValueError(f"unknown metric {metric!r}")
    if metric == WEIGHTED and g.edge_weights is None:
        raise ValueError("weighted metric requires edge weights on the graph")


def multi_source_distances(
    g: DomainGraph, sources: Iterable[int], metric: str = HOP
) -> np.ndarray:
    """Shortest-path distance from each vertex to its nearest source.

    Hop metric counts edges regardless of weights; the weighted metric
    sums edge weights (Dijkstra). Unreachable vertices get ``inf``.
    """
    src = sorted(set(sources))
    if not src:
        raise EmptySourceSet("no source vertices given")
    for s in src:
        if not 0 <= s < g.vertex_count:
            raise ValueError(f"source vertex {s} out of range")
    _check_metric(g, metric)
    dist = np.full(g.vertex_count, np.inf)
    if metric == HOP:
        queue = deque(src)
        for s in src:
            dist[s] = 0.0
        while queue:
            u = queue.popleft()
            du = dist[u]
            for v in g.adjacency[u]:
                if math.isinf(dist[v]):
                    dist[v] = du + 1.0
                    queue.append(v)
    else:
        heap = [(0.0, s) for s in src]
        for s in src:
            dist[s] = 0.0
        heapq.heapify(heap)
        while heap:
            du, u = heapq.heappop(heap)
            if du > dist[u]:
                continue
            for v in g.adjacency[u]:
                nd = du + g.weight(u, v)
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
    return dist


def source_distance_rows(
    g: DomainGraph, sources: Sequence[int], metric: str = HOP
) -> np.ndarray:
    """Matrix of shape (len(sources), vertex_count); row i is distances from sources[i]."""
    return np.vstack([multi_source_distances(g, [s], metric) for s in sources])


def pairwise_guiding_distances(
    g: DomainGraph, guiding_vertices: Sequence[int], metric: str = HOP
) -> np.ndarray:
    """Symmetric distance matrix between guiding vertices.

    Raises :class:`UnreachablePair` if any two guiding vertices are
    disconnected, since every extension needs a connected domain.
    """
    verts = list(guiding_vertices)
    if len(set(verts)) != len(verts):
        raise ValueError("guiding vertices must be distinct")
    for v in verts:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"guiding vertex {v} out of range")
    rows = source_distance_rows(g, verts, metric)
    matrix = rows[:, verts]
    if np.isinf(matrix).any():
        i, j = np.argwhere(np.isinf(matrix))[0]
        raise UnreachablePair(
            f"guiding vertices {verts[i]} and {verts[j]} are not connected"
        )
    return matrix
