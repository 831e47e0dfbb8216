"""Finite differences, guided averaging, and discrete harmonic relaxation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, EmptyFixedSet, IsolatedFreeVertex
from .graphs import DomainGraph, Grid2D


@dataclass(frozen=True)
class GradientField:
    """Per-cell partial derivatives of a grid field (flat, vertex-ordered)."""

    ddx: np.ndarray
    ddy: np.ndarray


@dataclass(frozen=True)
class RelaxationResult:
    field: np.ndarray
    iterations_run: int
    final_residual: float


def finite_diff_gradient(
    grid: Grid2D, field: np.ndarray, spacing: float = 1.0
) -> GradientField:
    """Central-difference gradient, one-sided on boundary rows and columns.

    Interior cells use ``(f(x+1) - f(x-1)) / (2 * spacing)``; the first and
    last row/column fall back to first differences so the output keeps the
    grid's full size. Exact for affine fields, and for quadratics at
    interior cells.
    """
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    field = np.asarray(field, dtype=float)
    if field.shape != (grid.vertex_count,):
        raise DimensionMismatch(
            f"field has {field.size} values, grid has {grid.vertex_count} cells"
        )
    f = field.reshape(grid.height, grid.width)
    ddx = np.zeros_like(f)
    ddy = np.zeros_like(f)
    if grid.width > 1:
        ddx[:, 1:-1] = (f[:, 2:] - f[:, :-2]) / (2.0 * spacing)
        ddx[:, 0] = (f[:, 1] - f[:, 0]) / spacing
        ddx[:, -1] = (f[:, -1] - f[:, -2]) / spacing
    if grid.height > 1:
        ddy[1:-1, :] = (f[2:, :] - f[:-2, :]) / (2.0 * spacing)
        ddy[0, :] = (f[1, :] - f[0, :]) / spacing
        ddy[-1, :] = (f[-1, :] - f[-2, :]) / spacing
    return GradientField(ddx.reshape(-1), ddy.reshape(-1))


def _neighbor_means(g: DomainGraph, field: np.ndarray) -> np.ndarray:
    """Mean neighbor value per vertex; vertices without neighbors keep their own."""
    src, dst = g._directed_arrays
    sums = np.bincount(src, weights=field[dst], minlength=g.vertex_count)
    deg = g.degrees
    means = field.copy()
    touched = deg > 0
    means[touched] = sums[touched] / deg[touched]
    return means


def constrained_smooth(
    g: DomainGraph, field: np.ndarray, fixed: Iterable[int], passes: int
) -> np.ndarray:
    """Synchronous neighbor-averaging rounds with a held-fixed vertex set.

    Each pass replaces every free vertex by the arithmetic mean of its
    neighbors' previous-pass values; fixed vertices never change, and free
    vertices without neighbors keep their value. All reads in a pass see
    the previous pass only (Jacobi updates), so the result is independent
    of vertex order.
    """
    if passes < 0:
        raise ValueError("passes must be nonnegative")
    field = np.asarray(field, dtype=float).copy()
    if field.shape != (g.vertex_count,):
        raise ValueError("field length must equal the vertex count")
    free = np.ones(g.vertex_count, dtype=bool)
    for v in fixed:
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"fixed vertex {v} out of range")
        free[v] = False
    for _ in range(passes):
        means = _neighbor_means(g, field)
        field[free] = means[free]
    return field


def harmonic_residual(g: DomainGraph, field: np.ndarray, fixed: Iterable[int]) -> float:
    """Max deviation of free vertices from their neighbor mean (0 if none)."""
    field = np.asarray(field, dtype=float)
    free = np.ones(g.vertex_count, dtype=bool)
    for v in fixed:
        free[v] = False
    free &= g.degrees > 0
    if not free.any():
        return 0.0
    means = _neighbor_means(g, field)
    return float(np.abs(field[free] - means[free]).max())


def harmonic_relax(
    g: DomainGraph,
    field: np.ndarray,
    fixed: Iterable[int],
    max_iter: int,
    tol: float,
) -> RelaxationResult:
    """Relax free vertices toward the discrete harmonic solution.

    Runs single averaging passes until every free vertex deviates from its
    neighbor mean by less than ``tol``, or ``max_iter`` passes have run.
    With the fixed set as boundary the limit is the unique discrete
    harmonic interpolant. ``max_iter=0`` performs no passes and reports
    the entry residual.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    fixed = set(fixed)
    if not fixed and g.vertex_count > 0:
        raise EmptyFixedSet("harmonic relaxation needs a nonempty fixed set")
    field = np.asarray(field, dtype=float).copy()
    for v in range(g.vertex_count):
        if v not in fixed and g.degree(v) == 0:
            raise IsolatedFreeVertex(f"free vertex {v} has no neighbors")
    iterations = 0
    residual = harmonic_residual(g, field, fixed)
    while residual >= tol and iterations < max_iter:
        field = constrained_smooth(g, field, fixed, 1)
        iterations += 1
        residual = harmonic_residual(g, field, fixed)
    return RelaxationResult(field, iterations, residual)


def laplacian_energy(g: DomainGraph, field: np.ndarray) -> float:
    """Sum of squared value differences across all edges."""
    field = np.asarray(field, dtype=float)
    if not g.edges:
        return 0.0
    e = np.asarray(g.edges, dtype=np.intp)
    diffs = field[e[:, 0]] - field[e[:, 1]]
    return float(np.dot(diffs, diffs))
