"""Seeded synthetic guiding data for demos and stress tests.

Integer-mode data is drawn from a randomly built gradually varied field so
the sampled indices are always extendable; real-mode data can be anything,
since the max-slope chain construction makes any real samples feasible.
"""

from __future__ import annotations

import random

from .graphs import DomainGraph, multi_source_distances
from .levels import GuidingIndices, GuidingSet


def random_gvf_indices(
    g: DomainGraph, n_levels: int, rng: random.Random, peaks: int | None = None
) -> list[int]:
    """A random gradually varied index field built from distance cones.

    Each of a few random peak vertices projects the 1-Lipschitz cone
    ``target - d(v, peak)``; the pointwise maximum of 1-Lipschitz cones is
    1-Lipschitz, so clamping into [1, n] yields a valid field.
    """
    if g.vertex_count == 0:
        return []
    if n_levels < 1:
        raise ValueError("n_levels must be positive")
    k = peaks if peaks is not None else rng.randint(1, 4)
    k = max(1, min(k, g.vertex_count))
    peak_vertices = rng.sample(range(g.vertex_count), k)
    field = [1] * g.vertex_count
    for p in peak_vertices:
        target = rng.randint(1, n_levels)
        dist = multi_source_distances(g, [p])
        for v in range(g.vertex_count):
            cone = target - int(dist[v])
            if cone > field[v]:
                field[v] = cone
    return [min(max(x, 1), n_levels) for x in field]


def random_guiding_indices(
    g: DomainGraph, count: int, n_levels: int, rng: random.Random
) -> GuidingIndices:
    """Sample a feasible index-form guiding set from a random gradual field."""
    if not 1 <= count <= g.vertex_count:
        raise ValueError(f"count must be in [1, {g.vertex_count}]")
    field = random_gvf_indices(g, n_levels, rng)
    vertices = sorted(rng.sample(range(g.vertex_count), count))
    return GuidingIndices(tuple(vertices), tuple(field[v] for v in vertices))


def random_guiding_values(
    g: DomainGraph,
    count: int,
    rng: random.Random,
    low: float = 0.0,
    high: float = 100.0,
) -> GuidingSet:
    """Uniform random real observations on distinct random vertices."""
    if not 1 <= count <= g.vertex_count:
        raise ValueError(f"count must be in [1, {g.vertex_count}]")
    vertices = sorted(rng.sample(range(g.vertex_count), count))
    values = tuple(round(rng.uniform(low, high), 6) for _ in vertices)
    return GuidingSet(tuple(vertices), values)
