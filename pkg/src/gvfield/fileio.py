"""Sample, mesh, and field file formats.

Samples travel as small CSV files (``x,y,value`` on grids, ``id,value`` on
mesh entities), meshes as plain-text OFF, and reconstructed fields as CSV
plus an optional plain PGM intensity image for grids.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    DimensionMismatch,
    DuplicateLocation,
    IndexOutOfRange,
    NonTriangleFace,
    OutOfBounds,
    ParseError,
)
from .graphs import Grid2D, TriMesh
from .levels import GuidingSet, TreeElement

GRID_XY = "grid_xy"
ENTITY_ID = "entity_id"

GRID_CELL = "grid_cell"
VERTEX = "vertex"
FACE = "face"


@dataclass(frozen=True)
class SampleRecord:
    """One observation: a grid (x, y) cell or an entity id, plus its value."""

    location: tuple[int, int] | int
    value: float


def _data_lines(stream: Iterable[str]):
    for ln, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield ln, line


def read_samples_csv(stream: Iterable[str], mode: str) -> list[SampleRecord]:
    """Parse sample records; ``#`` comments and blank lines are skipped.

    ``grid_xy`` rows are ``x,y,value``; ``entity_id`` rows are ``id,value``.
    Duplicate locations are rejected.
    """
    if mode not in (GRID_XY, ENTITY_ID):
        raise ValueError(f"unknown sample mode {mode!r}")
    records: list[SampleRecord] = []
    seen: set = set()
    for ln, line in _data_lines(stream):
        parts = [p.strip() for p in line.split(",")]
        if mode == GRID_XY:
            if len(parts) != 3:
                raise ParseError(f"expected 'x,y,value', got {line!r}", ln)
            try:
                loc: tuple[int, int] | int = (int(parts[0]), int(parts[1]))
                value = float(parts[2])
            except ValueError:
                raise ParseError(f"bad grid sample {line!r}", ln) from None
        else:
            if len(parts) != 2:
                raise ParseError(f"expected 'id,value', got {line!r}", ln)
            try:
                loc = int(parts[0])
                value = float(parts[1])
            except ValueError:
                raise ParseError(f"bad entity sample {line!r}", ln) from None
        if not math.isfinite(value):
            raise ParseError(f"non-finite value {parts[-1]!r}", ln)
        if loc in seen:
            raise DuplicateLocation(f"line {ln}: duplicate location {loc}")
        seen.add(loc)
        records.append(SampleRecord(loc, value))
    return records


def read_element_samples_csv(
    stream: Iterable[str],
) -> list[tuple[int, TreeElement]]:
    """Parse tree-mode assignments: rows ``id,segment@ordinal``."""
    out: list[tuple[int, TreeElement]] = []
    seen: set[int] = set()
    for ln, line in _data_lines(stream):
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or "@" not in parts[1]:
            raise ParseError(f"expected 'id,segment@ordinal', got {line!r}", ln)
        try:
            vid = int(parts[0])
            seg, ordinal = (int(t) for t in parts[1].split("@"))
        except ValueError:
            raise ParseError(f"bad element assignment {line!r}", ln) from None
        if vid in seen:
            raise DuplicateLocation(f"line {ln}: duplicate location {vid}")
        seen.add(vid)
        out.append((vid, TreeElement(seg, ordinal)))
    return out


def guiding_from_samples(
    records: Sequence[SampleRecord],
    grid: Grid2D | None = None,
    entity_count: int | None = None,
) -> GuidingSet:
    """Resolve sample locations to vertex ids, with bounds checking."""
    if (grid is None) == (entity_count is None):
        raise ValueError("pass exactly one of grid or entity_count")
    pairs = []
    for rec in records:
        if grid is not None:
            if not isinstance(rec.location, tuple):
                raise ValueError("grid samples must carry (x, y) locations")
            x, y = rec.location
            if not grid.in_bounds(x, y):
                raise OutOfBounds(
                    f"sample at ({x}, {y}) outside {grid.width}x{grid.height} grid"
                )
            pairs.append((grid.vertex_id(x, y), rec.value))
        else:
            if isinstance(rec.location, tuple):
                raise ValueError("entity samples must carry integer ids")
            if not 0 <= rec.location < entity_count:
                raise OutOfBounds(
                    f"sample id {rec.location} outside [0, {entity_count})"
                )
            pairs.append((rec.location, rec.value))
    return GuidingSet.from_pairs(pairs)


def read_off_mesh(stream: Iterable[str]) -> TriMesh:
    """Parse a plain-text OFF triangle mesh.

    Expects the ``OFF`` header, a ``V F E`` counts line, V coordinate
    lines, and F face lines of the form ``3 i j k``. Faces with other
    vertex counts and out-of-range indices are rejected.
    """
    lines = list(_data_lines(stream))
    pos = 0

    def next_line(what: str) -> tuple[int, str]:
        nonlocal pos
        if pos >= len(lines):
            raise ParseError(f"unexpected end of file, expected {what}")
        item = lines[pos]
        pos += 1
        return item

    ln, header = next_line("OFF header")
    if header != "OFF":
        raise ParseError(f"expected 'OFF' header, got {header!r}", ln)
    ln, counts = next_line("counts line")
    parts = counts.split()
    if len(parts) != 3:
        raise ParseError(f"expected 'V F E' counts, got {counts!r}", ln)
    try:
        n_vertices, n_faces, _ = (int(p) for p in parts)
    except ValueError:
        raise ParseError(f"bad counts line {counts!r}", ln) from None
    if n_vertices < 0 or n_faces < 0:
        raise ParseError("vertex and face counts must be nonnegative", ln)
    vertices = []
    for _ in range(n_vertices):
        ln, line = next_line("vertex coordinates")
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 3 coordinates, got {line!r}", ln)
        try:
            vertices.append(tuple(float(p) for p in parts))
        except ValueError:
            raise ParseError(f"bad coordinates {line!r}", ln) from None
    faces = []
    for _ in range(n_faces):
        ln, line = next_line("face line")
        parts = line.split()
        if not parts:
            raise ParseError("empty face line", ln)
        try:
            arity = int(parts[0])
            ids = [int(p) for p in parts[1:]]
        except ValueError:
            raise ParseError(f"bad face line {line!r}", ln) from None
        if arity != 3 or len(ids) != 3:
            raise NonTriangleFace(f"line {ln}: face with {arity} vertices")
        for i in ids:
            if not 0 <= i < n_vertices:
                raise IndexOutOfRange(
                    f"line {ln}: face index {i} outside [0, {n_vertices})"
                )
        if len(set(ids)) != 3:
            raise ParseError(f"degenerate face {line!r}", ln)
        faces.append(tuple(ids))
    if pos != len(lines):
        ln, line = lines[pos]
        raise ParseError(f"unexpected trailing data {line!r}", ln)
    return TriMesh(tuple(vertices), tuple(faces))


def write_off_mesh(mesh: TriMesh, stream: TextIO) -> None:
    """Write a mesh in the plain-text OFF layout read_off_mesh accepts."""
    stream.write("OFF\n")
    n_edges = len(mesh.edge_triangles)
    stream.write(f"{len(mesh.vertices)} {len(mesh.triangles)} {n_edges}\n")
    for v in mesh.vertices:
        stream.write(" ".join(repr(float(c)) for c in v) + "\n")
    for a, b, c in mesh.triangles:
        stream.write(f"3 {a} {b} {c}\n")


def write_field_pgm(grid: Grid2D, field: np.ndarray, stream: TextIO) -> None:
    """Write a plain PGM (P2) intensity image of a grid field.

    Values rescale linearly from [min, max] to [0, 255], rounding half up;
    a constant field maps to uniform 128. Rows run y ascending, x ascending
    within each row.
    """
    field = np.asarray(field, dtype=float)
    if field.shape != (grid.vertex_count,):
        raise DimensionMismatch(
            f"field has {field.size} values, grid has {grid.vertex_count} cells"
        )
    lo, hi = float(field.min()), float(field.max())
    if hi > lo:
        scaled = (field - lo) / (hi - lo) * 255.0
        pixels = np.floor(scaled + 0.5).astype(int)
        pixels = np.clip(pixels, 0, 255)
    else:
        pixels = np.full(field.shape, 128, dtype=int)
    stream.write("P2\n")
    stream.write(f"{grid.width} {grid.height}\n")
    stream.write("255\n")
    rows = pixels.reshape(grid.height, grid.width)
    for row in rows:
        stream.write(" ".join(str(p) for p in row) + "\n")


def write_field_csv(
    entity_kind: str,
    field: np.ndarray,
    stream: TextIO,
    grid: Grid2D | None = None,
) -> None:
    """Write per-entity field values at full precision, ids ascending.

    ``grid_cell`` rows are ``x,y,value`` and require the grid; ``vertex``
    and ``face`` rows are ``id,value``.
    """
    field = np.asarray(field, dtype=float)
    if entity_kind == GRID_CELL:
        if grid is None:
            raise ValueError("grid_cell output requires the grid")
        if field.shape != (grid.vertex_count,):
            raise ValueError("field length must equal the grid cell count")
        for vid in range(grid.vertex_count):
            x, y = grid.cell_at(vid)
            stream.write(f"{x},{y},{float(field[vid])!r}\n")
    elif entity_kind in (VERTEX, FACE):
        for vid in range(field.shape[0]):
            stream.write(f"{vid},{float(field[vid])!r}\n")
    else:
        raise ValueError(f"unknown entity kind {entity_kind!r}")
