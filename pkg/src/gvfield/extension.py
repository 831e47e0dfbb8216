"""Gradually varied extension and fitting.

A function on a graph into an ordered level chain is gradually varied when
adjacent vertices take equal or consecutive levels. Given observations on a
subset J of vertices, an extension to the whole graph exists iff every
guiding pair satisfies ``d(x, y) >= |i - j|``, where d is the hop distance
and i, j are the observed level indices. The algorithms here decide that
condition, construct an extension when it holds, fit real-valued data by
quantizing onto a feasible chain, and generalize the range from a chain to
a tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    DisconnectedDomain,
    EmptyCandidateSet,
    EmptyGuidingSet,
    IndexOutOfRange,
    InfeasibleGuidingSet,
    InternalIntervalEmpty,
)
from .graphs import HOP, DomainGraph, is_connected, source_distance_rows
from .levels import (
    GuidingIndices,
    GuidingSet,
    LevelChain,
    RangeTree,
    TreeElement,
    levels_from_max_slope,
    quantize_guiding,
)


@dataclass(frozen=True)
class Witness:
    """A guiding pair whose distance cannot accommodate its level gap."""

    x: int
    y: int
    distance: int
    index_gap: int


@dataclass(frozen=True)
class FeasibilityReport:
    feasible: bool
    witness: Witness | None = None


@dataclass(frozen=True)
class IndexField:
    """A level index per vertex plus the chain the indices refer to."""

    indices: tuple[int, ...]
    chain: LevelChain

    def __post_init__(self) -> None:
        n = len(self.chain)
        for i in self.indices:
            if not 1 <= i <= n:
                raise IndexOutOfRange(f"index {i} outside [1, {n}]")

    def values(self) -> np.ndarray:
        """Dequantized per-vertex values."""
        levels = np.asarray(self.chain.levels)
        return levels[np.asarray(self.indices, dtype=np.intp) - 1]


def is_gradually_varied(g: DomainGraph, indices: Sequence[int]) -> bool:
    """Check the defining property: every edge spans at most one level."""
    for u, v in g.edges:
        if abs(indices[u] - indices[v]) > 1:
            return False
    return True


def _validated_guiding(
    g: DomainGraph, guiding: GuidingIndices, chain: LevelChain
) -> None:
    if len(guiding) == 0:
        raise EmptyGuidingSet("no guiding points")
    if not is_connected(g):
        raise DisconnectedDomain("the domain graph must be connected")
    n = len(chain)
    for v, i in guiding.pairs():
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"guiding vertex {v} out of range")
        if not 1 <= i <= n:
            raise IndexOutOfRange(f"guiding index {i} outside [1, {n}]")


def _scan_pairs(
    verts: Sequence[int], gaps: Sequence[int], pairwise: np.ndarray
) -> Witness | None:
    """First pair (ascending vertex ids) with distance < gap, else None."""
    order = sorted(range(len(verts)), key=lambda k: verts[k])
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            d = int(pairwise[i, j])
            gap = abs(gaps[i] - gaps[j])
            if d < gap:
                return Witness(verts[i], verts[j], d, gap)
    return None


def check_feasible(
    g: DomainGraph, guiding: GuidingIndices, chain: LevelChain
) -> FeasibilityReport:
    """Decide whether a gradually varied extension of the guiding data exists.

    Feasible iff every guiding pair satisfies ``d(x, y) >= |i - j|`` in the
    hop metric. The witness, when present, is the first violating pair in
    ascending (vertex id, vertex id) order.
    """
    _validated_guiding(g, guiding, chain)
    rows = source_distance_rows(g, guiding.vertices, HOP)
    witness = _scan_pairs(guiding.vertices, guiding.indices, rows[:, guiding.vertices])
    return FeasibilityReport(witness is None, witness)


def gvf_extend_int(
    g: DomainGraph, guiding: GuidingIndices, chain: LevelChain
) -> IndexField:
    """Extend guiding level indices to a gradually varied field on all vertices.

    Vertices are processed in ascending (hop distance to the guiding set,
    vertex id) order. Each vertex receives the floor midpoint of its
    feasible interval: the intersection of ``[i_j - d(u,j), i_j + d(u,j)]``
    over all guiding points j, ``[F(v)-1, F(v)+1]`` over already assigned
    neighbors v, and ``[1, n]``. Feasibility keeps that interval nonempty,
    so the result always exists, agrees exactly with the guiding data, and
    is deterministic.
    """
    _validated_guiding(g, guiding, chain)
    rows = source_distance_rows(g, guiding.vertices, HOP)
    witness = _scan_pairs(guiding.vertices, guiding.indices, rows[:, guiding.vertices])
    if witness is not None:
        raise InfeasibleGuidingSet(
            f"guiding pair ({witness.x}, {witness.y}): distance "
            f"{witness.distance} < index gap {witness.index_gap}",
            witness,
        )
    n = len(chain)
    idx = np.asarray(guiding.indices, dtype=np.int64)[:, None]
    lo = np.maximum((idx - rows).max(axis=0), 1).astype(np.int64)
    hi = np.minimum((idx + rows).min(axis=0), n).astype(np.int64)
    dist_to_guiding = rows.min(axis=0)

    assigned = np.zeros(g.vertex_count, dtype=bool)
    out = np.zeros(g.vertex_count, dtype=np.int64)
    for v, i in guiding.pairs():
        out[v] = i
        assigned[v] = True
    order = sorted(
        (v for v in range(g.vertex_count) if not assigned[v]),
        key=lambda v: (dist_to_guiding[v], v),
    )
    for u in order:
        low, high = lo[u], hi[u]
        for v in g.adjacency[u]:
            if assigned[v]:
                low = max(low, out[v] - 1)
                high = min(high, out[v] + 1)
        if low > high:
            raise InternalIntervalEmpty(
                f"empty interval at vertex {u}: [{low}, {high}]"
            )
        out[u] = (low + high) // 2
        assigned[u] = True
    return IndexField(tuple(int(i) for i in out), chain)


def gvf_fit_real(
    g: DomainGraph, guiding: GuidingSet, smoothing_passes: int = 0
) -> np.ndarray:
    """Fit real-valued observations with the gradually varied pipeline.

    Builds the max-slope level chain (always feasible by construction),
    quantizes the observations, extends, dequantizes, restores the exact
    observed values at the guiding vertices, and finally runs the requested
    number of guided averaging passes with the observations held fixed.
    The result agrees exactly with the observations; after smoothing it may
    or may not remain gradually varied.
    """
    from .smoothing import constrained_smooth

    if len(guiding) == 0:
        raise EmptyGuidingSet("no guiding points")
    if smoothing_passes < 0:
        raise ValueError("smoothing_passes must be nonnegative")
    if not is_connected(g):
        raise DisconnectedDomain("the domain graph must be connected")
    rows = source_distance_rows(g, guiding.vertices, HOP)
    pairwise = rows[:, guiding.vertices]
    chain = levels_from_max_slope(guiding, pairwise)
    extended = gvf_extend_int(g, quantize_guiding(guiding, chain), chain)
    field = extended.values().astype(float)
    field[list(guiding.vertices)] = guiding.values
    if smoothing_passes:
        field = constrained_smooth(g, field, set(guiding.vertices), smoothing_passes)
    return field


def gvf_extend_tree(
    g: DomainGraph, tree: RangeTree, guiding: Mapping[int, TreeElement]
) -> tuple[TreeElement, ...]:
    """Extend vertex-to-element assignments into a tree-valued gradual field.

    Mirrors :func:`gvf_extend_int` with intervals replaced by metric balls
    of the tree's element graph: a vertex's candidates are the elements
    within ``d(u, j)`` of every guiding element and within 1 of every
    assigned neighbor. Among candidates the most central one is chosen
    (minimum eccentricity within the candidate set), ties resolved by the
    tree's depth-first element order; on chain-shaped trees this reproduces
    the floor-midpoint rule of the integer extension.
    """
    if not guiding:
        raise EmptyGuidingSet("no guiding assignments")
    if not is_connected(g):
        raise DisconnectedDomain("the domain graph must be connected")
    verts = sorted(guiding)
    for v in verts:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"guiding vertex {v} out of range")
    ranks = [tree.rank_of(guiding[v]) for v in verts]
    dm = tree.distance_matrix
    rows = source_distance_rows(g, verts, HOP)
    pairwise = rows[:, verts]
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            gap = int(dm[ranks[a], ranks[b]])
            d = int(pairwise[a, b])
            if d < gap:
                raise InfeasibleGuidingSet(
                    f"guiding pair ({verts[a]}, {verts[b]}): distance {d} "
                    f"< tree distance {gap}",
                    Witness(verts[a], verts[b], d, gap),
                )

    # Ball membership per guiding point, vectorized over elements.
    guide_dists = dm[ranks]  # (|J|, m)
    dist_to_guiding = rows.min(axis=0)
    assigned = np.zeros(g.vertex_count, dtype=bool)
    out = np.zeros(g.vertex_count, dtype=np.int64)
    for v, r in zip(verts, ranks):
        out[v] = r
        assigned[v] = True
    order = sorted(
        (v for v in range(g.vertex_count) if not assigned[v]),
        key=lambda v: (dist_to_guiding[v], v),
    )
    for u in order:
        mask = (guide_dists <= rows[:, u][:, None]).all(axis=0)
        for v in g.adjacency[u]:
            if assigned[v]:
                mask &= dm[out[v]] <= 1
        candidates = np.nonzero(mask)[0]
        if candidates.size == 0:
            raise EmptyCandidateSet(f"no feasible tree element at vertex {u}")
        ecc = dm[np.ix_(candidates, candidates)].max(axis=1)
        out[u] = candidates[int(np.argmin(ecc))]
        assigned[u] = True
    return tuple(tree.elements[r] for r in out)
