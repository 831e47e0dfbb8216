"""Discrete value ranges: level chains, quantization, and range trees.

An integer-valued reconstruction maps vertices into an ordered chain of
levels ``A_1 < ... < A_n``. When one chain cannot represent the data, a
tree of chains sharing values at branch points serves as the range
instead; equal numeric values on different branches stay distinct
elements.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    ElementNotFound,
    EmptyGuidingSet,
    IndexOutOfRange,
    ParseError,
)


@dataclass(frozen=True)
class LevelChain:
    """Strictly increasing levels; indices are 1-based (1 .. n)."""

    levels: tuple[float, ...]

    def __post_init__(self) -> None:
        if not self.levels:
            raise ValueError("a level chain must contain at least one level")
        for a, b in zip(self.levels, self.levels[1:]):
            if not a < b:
                raise ValueError("levels must be strictly increasing")

    def __len__(self) -> int:
        return len(self.levels)

    def value_at(self, index: int) -> float:
        if not 1 <= index <= len(self.levels):
            raise IndexOutOfRange(
                f"index {index} outside [1, {len(self.levels)}]"
            )
        return self.levels[index - 1]

    @property
    def spacing(self) -> float:
        """Level spacing for uniform chains; 0 for a single level."""
        if len(self.levels) < 2:
            return 0.0
        return self.levels[1] - self.levels[0]


@dataclass(frozen=True)
class GuidingSet:
    """Observed real values on a distinct set of vertices (value form)."""

    vertices: tuple[int, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.values):
            raise ValueError("vertices and values must have equal length")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("guiding vertices must be distinct")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, float]]) -> "GuidingSet":
        vs, xs = [], []
        for v, x in pairs:
            vs.append(int(v))
            xs.append(float(x))
        return cls(tuple(vs), tuple(xs))

    def __len__(self) -> int:
        return len(self.vertices)

    def pairs(self) -> Iterator[tuple[int, float]]:
        return zip(self.vertices, self.values)


@dataclass(frozen=True)
class GuidingIndices:
    """Guiding observations as 1-based level indices (index form)."""

    vertices: tuple[int, ...]
    indices: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.vertices) != len(self.indices):
            raise ValueError("vertices and indices must have equal length")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("guiding vertices must be distinct")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "GuidingIndices":
        vs, ks = [], []
        for v, k in pairs:
            vs.append(int(v))
            ks.append(int(k))
        return cls(tuple(vs), tuple(ks))

    def __len__(self) -> int:
        return len(self.vertices)

    def pairs(self) -> Iterator[tuple[int, int]]:
        return zip(self.vertices, self.indices)


def levels_from_max_slope(guiding: GuidingSet, distances: np.ndarray) -> LevelChain:
    """Uniform chain whose spacing is the maximum pairwise sample slope.

    The spacing ``delta = max |f(x)-f(y)| / d(x,y)`` guarantees that the
    quantized samples satisfy the gradual-variation existence condition,
    because no pair's level gap can then exceed its graph distance. The
    chain starts at the minimum sample value and covers the full sample
    range. All samples equal (or a single sample) degenerate to one level.
    """
    m = len(guiding)
    if m == 0:
        raise EmptyGuidingSet("cannot derive levels from an empty guiding set")
    distances = np.asarray(distances, dtype=float)
    if distances.shape != (m, m):
        raise ValueError("distance matrix shape must match the guiding set")
    values = np.asarray(guiding.values, dtype=float)
    v_min = float(values.min())
    v_max = float(values.max())
    delta = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            d = distances[i, j]
            if not (math.isfinite(d) and d > 0):
                raise ValueError(
                    f"distance between guiding entries {i} and {j} must be finite and positive"
                )
            delta = max(delta, abs(values[i] - values[j]) / d)
    if delta == 0.0:
        return LevelChain((v_min,))
    steps = math.ceil((v_max - v_min) / delta)
    levels = [v_min + k * delta for k in range(steps + 1)]
    # Float rounding may leave the top level a hair below the max sample.
    while levels[-1] < v_max:
        levels.append(levels[-1] + delta)
    return LevelChain(tuple(levels))


def quantize(value: float, chain: LevelChain) -> int:
    """1-based index of the chain level nearest to ``value`` (ties go lower).

    Values outside the chain clamp to the nearest end.
    """
    gaps = np.abs(np.asarray(chain.levels) - float(value))
    return int(np.argmin(gaps)) + 1


def dequantize(index: int, chain: LevelChain) -> float:
    """The level value stored at a 1-based chain index."""
    return chain.value_at(index)


def quantize_guiding(guiding: GuidingSet, chain: LevelChain) -> GuidingIndices:
    """Quantize every guiding value onto the chain."""
    return GuidingIndices(
        guiding.vertices, tuple(quantize(v, chain) for v in guiding.values)
    )


@dataclass(frozen=True)
class TreeElement:
    """Reference to one element of a range tree: segment id + 0-based ordinal."""

    segment: int
    ordinal: int


@dataclass(frozen=True)
class TreeSegment:
    """One strictly increasing value chain inside a range tree.

    A non-root segment attaches to its parent at ``attach`` (an ordinal in
    the parent) and its first value must equal the parent value there; the
    two references denote the same element.
    """

    values: tuple[float, ...]
    parent: int | None = None
    attach: int | None = None


@dataclass(frozen=True)
class RangeTree:
    """Tree of level chains agreeing at branch points.

    Elements are identified by position, not by numeric value, so equal
    values on different branches remain distinct.
    """

    segments: tuple[TreeSegment, ...]

    def __post_init__(self) -> None:
        if not self.segments:
            raise ValueError("a range tree needs at least one segment")
        roots = [i for i, s in enumerate(self.segments) if s.parent is None]
        if len(roots) != 1:
            raise ValueError(f"exactly one root segment required, found {len(roots)}")
        for sid, seg in enumerate(self.segments):
            if not seg.values:
                raise ValueError(f"segment {sid} is empty")
            for a, b in zip(seg.values, seg.values[1:]):
                if not a < b:
                    raise ValueError(f"segment {sid} values must be strictly increasing")
            if (seg.parent is None) != (seg.attach is None):
                raise ValueError(f"segment {sid}: parent and attach must come together")
            if seg.parent is not None:
                if not 0 <= seg.parent < len(self.segments) or seg.parent == sid:
                    raise ValueError(f"segment {sid} has invalid parent {seg.parent}")
                parent = self.segments[seg.parent]
                if not 0 <= seg.attach < len(parent.values):
                    raise ValueError(f"segment {sid} attach ordinal out of range")
                if seg.values[0] != parent.values[seg.attach]:
                    raise ValueError(
                        f"segment {sid} must start at its attachment value "
                        f"({seg.values[0]} != {parent.values[seg.attach]})"
                    )
        # Parent links must be acyclic for the element graph to be a tree.
        for sid in range(len(self.segments)):
            seen = set()
            cur = sid
            while cur is not None:
                if cur in seen:
                    raise ValueError("segment parent links form a cycle")
                seen.add(cur)
                cur = self.segments[cur].parent

    @property
    def root(self) -> int:
        for i, s in enumerate(self.segments):
            if s.parent is None:
                return i
        raise AssertionError("unreachable: validated at construction")

    def canonical(self, element: TreeElement) -> TreeElement:
        """Resolve shared branch-point references to a single element identity."""
        sid, k = element.segment, element.ordinal
        if not 0 <= sid < len(self.segments):
            raise ElementNotFound(f"segment {sid} does not exist")
        if not 0 <= k < len(self.segments[sid].values):
            raise ElementNotFound(f"segment {sid} has no ordinal {k}")
        while k == 0 and self.segments[sid].parent is not None:
            seg = self.segments[sid]
            sid, k = seg.parent, seg.attach
        return TreeElement(sid, k)

    def element_value(self, element: TreeElement) -> float:
        e = self.canonical(element)
        return self.segments[e.segment].values[e.ordinal]

    @cached_property
    def elements(self) -> tuple[TreeElement, ...]:
        """All distinct elements in depth-first order.

        The walk starts at the root segment's first value, runs along each
        segment in increasing order, and descends into children (by segment
        id) as soon as their attachment element is visited.
        """
        children: dict[TreeElement, list[int]] = defaultdict(list)
        for sid, seg in enumerate(self.segments):
            if seg.parent is not None:
                anchor = self.canonical(TreeElement(seg.parent, seg.attach))
                children[anchor].append(sid)
        order: list[TreeElement] = []

        def visit(sid: int, start: int) -> None:
            seg = self.segments[sid]
            for k in range(start, len(seg.values)):
                e = TreeElement(sid, k)
                order.append(e)
                for child in sorted(children.get(e, ())):
                    visit(child, 1)

        visit(self.root, 0)
        return tuple(order)

    @cached_property
    def _ranks(self) -> dict[TreeElement, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def element_count(self) -> int:
        return len(self.elements)

    def rank_of(self, element: TreeElement) -> int:
        """Depth-first rank of an element; the tie-break order for extension."""
        return self._ranks[self.canonical(element)]

    @cached_property
    def _adjacency(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[set[int]] = [set() for _ in self.elements]
        for sid, seg in enumerate(self.segments):
            for k in range(len(seg.values) - 1):
                a = self.rank_of(TreeElement(sid, k))
                b = self.rank_of(TreeElement(sid, k + 1))
                nbrs[a].add(b)
                nbrs[b].add(a)
        return tuple(tuple(sorted(s)) for s in nbrs)

    @cached_property
    def distance_matrix(self) -> np.ndarray:
        """All-pairs path lengths (edge counts) between elements, by rank."""
        m = len(self.elements)
        dist = np.full((m, m), -1, dtype=np.int64)
        for start in range(m):
            dist[start, start] = 0
            queue = deque([start])
            while queue:
                u = queue.popleft()
                for v in self._adjacency[u]:
                    if dist[start, v] < 0:
                        dist[start, v] = dist[start, u] + 1
                        queue.append(v)
        return dist


def tree_distance(tree: RangeTree, e1: TreeElement, e2: TreeElement) -> int:
    """Path length between two elements in the tree's element graph."""
    a = tree.rank_of(e1)
    b = tree.rank_of(e2)
    return int(tree.distance_matrix[a, b])


def chain_tree(chain: LevelChain) -> RangeTree:
    """A degenerate range tree holding a single chain."""
    return RangeTree((TreeSegment(chain.levels),))


def format_range_tree(tree: RangeTree) -> str:
    """Serialize a range tree, one segment per line.

    ``segment <id> parent=<id>@<ordinal> values=v1,v2,...`` with
    ``parent=root`` marking the root segment; ordinals are 0-based.
    """
    lines = []
    for sid, seg in enumerate(tree.segments):
        parent = "root" if seg.parent is None else f"{seg.parent}@{seg.attach}"
        values = ",".join(repr(v) for v in seg.values)
        lines.append(f"segment {sid} parent={parent} values={values}")
    return "\n".join(lines) + "\n"


def parse_range_tree(text: str) -> RangeTree:
    """Parse the one-segment-per-line format written by :func:`format_range_tree`."""
    entries: dict[int, TreeSegment] = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "segment":
            raise ParseError("expected 'segment <id> parent=<ref> values=<list>'", ln)
        try:
            sid = int(parts[1])
        except ValueError:
            raise ParseError(f"bad segment id {parts[1]!r}", ln) from None
        if sid in entries:
            raise ParseError(f"duplicate segment id {sid}", ln)
        if not parts[2].startswith("parent=") or not parts[3].startswith("values="):
            raise ParseError("expected parent= and values= fields", ln)
        parent_ref = parts[2][len("parent=") :]
        if parent_ref == "root":
            parent, attach = None, None
        else:
            try:
                pid, ordinal = parent_ref.split("@")
                parent, attach = int(pid), int(ordinal)
            except ValueError:
                raise ParseError(f"bad parent reference {parent_ref!r}", ln) from None
        try:
            values = tuple(float(v) for v in parts[3][len("values=") :].split(","))
        except ValueError:
            raise ParseError("bad values list", ln) from None
        entries[sid] = TreeSegment(values, parent, attach)
    if not entries:
        raise ParseError("no segments found")
    if sorted(entries) != list(range(len(entries))):
        raise ParseError(f"segment ids must be 0..{len(entries) - 1}")
    try:
        return RangeTree(tuple(entries[i] for i in range(len(entries))))
    except ValueError as exc:
        raise ParseError(str(exc)) from None
