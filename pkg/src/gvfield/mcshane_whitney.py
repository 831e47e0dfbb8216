"""McShane-Whitney Lipschitz extensions over graph metrics.

Given samples f on J with Lipschitz constant L, the minimal extension
``INF(u) = min_j (f(j) + L*d(u, j))`` and the maximal extension
``SUP(u) = max_j (f(j) - L*d(u, j))`` bound every L-Lipschitz extension;
their average, the mid function, is itself an L-Lipschitz extension whose
values stay inside the sample range. It serves as the comparison baseline
for the gradually varied reconstructions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedDomain, EmptyGuidingSet
from .graphs import HOP, DomainGraph, is_connected, source_distance_rows
from .levels import GuidingSet


@dataclass(frozen=True)
class LipschitzEstimate:
    """Minimal Lipschitz constant certified by the samples, with a witness pair."""

    constant: float
    witness_pair: tuple[int, int] | None = None


def lipschitz_constant(
    guiding: GuidingSet, distances: np.ndarray
) -> LipschitzEstimate:
    """Max slope ``|f(x)-f(y)| / d(x,y)`` over distinct sample pairs.

    A single sample certifies L = 0 with no witness. The witness is the
    first maximizing pair in ascending (vertex id, vertex id) order.
    """
    m = len(guiding)
    if m == 0:
        raise EmptyGuidingSet("no guiding points")
    distances = np.asarray(distances, dtype=float)
    if distances.shape != (m, m):
        raise ValueError("distance matrix shape must match the guiding set")
    order = sorted(range(m), key=lambda k: guiding.vertices[k])
    best = 0.0
    witness = None
    for a in range(m):
        for b in range(a + 1, m):
            i, j = order[a], order[b]
            d = distances[i, j]
            if not (np.isfinite(d) and d > 0):
                raise ValueError("pairwise distances must be finite and positive")
            slope = abs(guiding.values[i] - guiding.values[j]) / d
            if slope > best:
                best = slope
                witness = (guiding.vertices[i], guiding.vertices[j])
    return LipschitzEstimate(best, witness)


def _guiding_rows(g: DomainGraph, guiding: GuidingSet, metric: str) -> np.ndarray:
    if len(guiding) == 0:
        raise EmptyGuidingSet("no guiding points")
    if not is_connected(g):
        raise DisconnectedDomain("the domain graph must be connected")
    for v in guiding.vertices:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"guiding vertex {v} out of range")
    return source_distance_rows(g, guiding.vertices, metric)


def mw_inf(
    g: DomainGraph, guiding: GuidingSet, L: float, metric: str = HOP
) -> np.ndarray:
    """Minimal L-Lipschitz extension ``min_j (f(j) + L*d(u, j))``."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    rows = _guiding_rows(g, guiding, metric)
    values = np.asarray(guiding.values, dtype=float)[:, None]
    return (values + L * rows).min(axis=0)


def mw_sup(
    g: DomainGraph, guiding: GuidingSet, L: float, metric: str = HOP
) -> np.ndarray:
    """Maximal L-Lipschitz extension ``max_j (f(j) - L*d(u, j))``."""
    if L < 0:
        raise ValueError("L must be nonnegative")
    rows = _guiding_rows(g, guiding, metric)
    values = np.asarray(guiding.values, dtype=float)[:, None]
    return (values - L * rows).max(axis=0)


def mw_mid(
    g: DomainGraph,
    guiding: GuidingSet,
    metric: str = HOP,
    L_override: float | None = None,
) -> np.ndarray:
    """The mid function ``(INF + SUP) / 2``.

    L defaults to the minimal sample-certified constant, which makes the
    mid function interpolate the samples exactly.
    """
    rows = _guiding_rows(g, guiding, metric)
    if L_override is None:
        L = lipschitz_constant(guiding, rows[:, guiding.vertices]).constant
    else:
        if L_override < 0:
            raise ValueError("L must be nonnegative")
        L = L_override
    values = np.asarray(guiding.values, dtype=float)[:, None]
    inf_field = (values + L * rows).min(axis=0)
    sup_field = (values - L * rows).max(axis=0)
    return 0.5 * (inf_field + sup_field)
