"""Command-line pipeline: feasibility checks, reconstruction, baselines.

Exit codes are a stable contract: 0 on success, 1 on input or system
errors, 2 when the guiding data is infeasible.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from dataclasses import dataclass

import numpy as np

from . import fileio
from .errors import GvfError, InfeasibleGuidingSet
from .extension import (
    check_feasible,
    gvf_extend_int,
    gvf_extend_tree,
    gvf_fit_real,
    is_gradually_varied,
)
from .graphs import (
    EIGHT_NEIGHBOR,
    FOUR_NEIGHBOR,
    HOP,
    WEIGHTED,
    DomainGraph,
    Grid2D,
    TriMesh,
    build_cell_graph,
    build_grid_graph,
    build_vertex_graph,
    pairwise_guiding_distances,
)
from .levels import (
    GuidingIndices,
    GuidingSet,
    LevelChain,
    parse_range_tree,
)
from .mcshane_whitney import lipschitz_constant, mw_inf, mw_mid, mw_sup
from .smoothing import harmonic_relax, harmonic_residual
from .synth import random_guiding_indices, random_guiding_values

SPACE_GRID = "grid"
SPACE_VERTEX = "vertex"
SPACE_CELL = "cell"


class _Parser(argparse.ArgumentParser):
    """Argument errors are input errors: exit 1, not argparse's default 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


@dataclass
class Domain:
    graph: DomainGraph
    space: str
    grid: Grid2D | None = None
    mesh: TriMesh | None = None

    @property
    def entity_kind(self) -> str:
        if self.space == SPACE_GRID:
            return fileio.GRID_CELL
        return fileio.VERTEX if self.space == SPACE_VERTEX else fileio.FACE


def _parse_grid_dims(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise GvfError(f"bad grid size {text!r}, expected WxH")
    try:
        w, h = int(parts[0]), int(parts[1])
    except ValueError:
        raise GvfError(f"bad grid size {text!r}, expected WxH") from None
    if w < 1 or h < 1:
        raise GvfError("grid dimensions must be positive")
    return w, h


def _load_domain(args) -> Domain:
    if (args.grid is None) == (args.mesh is None):
        raise GvfError("pass exactly one domain: --grid WxH or --mesh PATH")
    if args.grid is not None:
        if args.space not in (None, SPACE_GRID):
            raise GvfError("--grid implies --space grid")
        w, h = _parse_grid_dims(args.grid)
        scheme = EIGHT_NEIGHBOR if args.adjacency == "8" else FOUR_NEIGHBOR
        grid = Grid2D(w, h, scheme)
        return Domain(build_grid_graph(grid), SPACE_GRID, grid=grid)
    space = args.space or SPACE_VERTEX
    if space == SPACE_GRID:
        raise GvfError("--mesh requires --space vertex or --space cell")
    with open(args.mesh) as fh:
        mesh = fileio.read_off_mesh(fh)
    weighted = getattr(args, "metric", HOP) == WEIGHTED
    if space == SPACE_VERTEX:
        graph = build_vertex_graph(mesh, edge_lengths=weighted)
    else:
        if weighted:
            raise GvfError("weighted metric is only available in vertex space")
        graph = build_cell_graph(mesh)
    return Domain(graph, space, mesh=mesh)


def _load_guiding(args, domain: Domain) -> GuidingSet:
    if not args.samples:
        raise GvfError("--samples PATH is required")
    mode = fileio.GRID_XY if domain.space == SPACE_GRID else fileio.ENTITY_ID
    with open(args.samples) as fh:
        records = fileio.read_samples_csv(fh, mode)
    if not records:
        raise GvfError(f"no samples found in {args.samples}")
    if domain.space == SPACE_GRID:
        return fileio.guiding_from_samples(records, grid=domain.grid)
    return fileio.guiding_from_samples(
        records, entity_count=domain.graph.vertex_count
    )


def _guiding_as_indices(guiding: GuidingSet) -> tuple[GuidingIndices, LevelChain]:
    """Integer-mode samples are the level indices themselves; chain is 1..n."""
    indices = []
    for v, x in guiding.pairs():
        i = int(x)
        if i != x or i < 1:
            raise GvfError(
                f"int mode needs integer level indices >= 1; vertex {v} has {x}"
            )
        indices.append(i)
    chain = LevelChain(tuple(float(k) for k in range(1, max(indices) + 1)))
    return GuidingIndices(guiding.vertices, tuple(indices)), chain


def _open_out(path: str):
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    return open(path, "w")


def _write_field(domain: Domain, field: np.ndarray, prefix: str, stem: str) -> list[str]:
    written = []
    csv_path = f"{prefix}.{stem}.csv"
    with _open_out(csv_path) as fh:
        fileio.write_field_csv(domain.entity_kind, field, fh, grid=domain.grid)
    written.append(csv_path)
    if domain.grid is not None:
        pgm_path = f"{prefix}.{stem}.pgm"
        with _open_out(pgm_path) as fh:
            fileio.write_field_pgm(domain.grid, field, fh)
        written.append(pgm_path)
    return written


def _require_out(args) -> str:
    if not args.out:
        raise GvfError("--out PREFIX is required")
    return args.out


def _load_tree_inputs(args, domain: Domain):
    if not args.tree:
        raise GvfError("tree mode requires --tree PATH")
    if not args.samples:
        raise GvfError("--samples PATH is required")
    with open(args.tree) as fh:
        tree = parse_range_tree(fh.read())
    with open(args.samples) as fh:
        assignments = fileio.read_element_samples_csv(fh)
    if not assignments:
        raise GvfError(f"no samples found in {args.samples}")
    for vid, _ in assignments:
        if not 0 <= vid < domain.graph.vertex_count:
            raise GvfError(f"sample id {vid} outside the domain")
    return tree, dict(assignments)


def cmd_check(args) -> int:
    domain = _load_domain(args)
    mode = args.mode or "int"
    if mode == "tree":
        tree, assignments = _load_tree_inputs(args, domain)
        try:
            gvf_extend_tree(domain.graph, tree, assignments)
        except InfeasibleGuidingSet as exc:
            w = exc.witness
            print(
                f"INFEASIBLE: vertices ({w.x}, {w.y}): "
                f"distance {w.distance} < tree distance {w.index_gap}"
            )
            return 2
        print("FEASIBLE")
        return 0
    if mode != "int":
        raise GvfError("check supports --mode int or --mode tree")
    guiding = _load_guiding(args, domain)
    indices, chain = _guiding_as_indices(guiding)
    report = check_feasible(domain.graph, indices, chain)
    if report.feasible:
        print("FEASIBLE")
        return 0
    w = report.witness
    print(
        f"INFEASIBLE: vertices ({w.x}, {w.y}): "
        f"distance {w.distance} < index gap {w.index_gap}"
    )
    return 2


def cmd_fit(args) -> int:
    domain = _load_domain(args)
    prefix = _require_out(args)
    mode = args.mode or "real"
    if mode == "tree":
        tree, assignments = _load_tree_inputs(args, domain)
        elements = gvf_extend_tree(domain.graph, tree, assignments)
        field = np.asarray([tree.element_value(e) for e in elements])
        written = _write_field(domain, field, prefix, "field")
        refs_path = f"{prefix}.elements.csv"
        with _open_out(refs_path) as fh:
            for vid, e in enumerate(elements):
                fh.write(f"{vid},{e.segment}@{e.ordinal}\n")
        written.append(refs_path)
        print(f"elements={tree.element_count()} segments={len(tree.segments)}")
        for path in written:
            print(f"wrote {path}")
        return 0
    guiding = _load_guiding(args, domain)
    if mode == "int":
        indices, chain = _guiding_as_indices(guiding)
        try:
            result = gvf_extend_int(domain.graph, indices, chain)
        except InfeasibleGuidingSet as exc:
            w = exc.witness
            print(
                f"INFEASIBLE: vertices ({w.x}, {w.y}): "
                f"distance {w.distance} < index gap {w.index_gap}"
            )
            return 2
        field = result.values()
        if args.verify:
            assert is_gradually_varied(domain.graph, result.indices)
            for v, i in indices.pairs():
                assert result.indices[v] == i
            print("verify: ok")
        print(f"levels={len(chain)} delta={chain.spacing:g} passes=0")
    elif mode == "real":
        field = gvf_fit_real(domain.graph, guiding, smoothing_passes=args.passes)
        pairwise = pairwise_guiding_distances(domain.graph, guiding.vertices, HOP)
        from .levels import levels_from_max_slope

        chain = levels_from_max_slope(guiding, pairwise)
        if args.verify:
            for v, x in guiding.pairs():
                assert field[v] == x
            print("verify: ok")
        print(
            f"levels={len(chain)} delta={chain.spacing:g} passes={args.passes}"
        )
    else:
        raise GvfError(f"unknown mode {mode!r}")
    for path in _write_field(domain, field, prefix, "field"):
        print(f"wrote {path}")
    return 0


def cmd_harmonic(args) -> int:
    domain = _load_domain(args)
    prefix = _require_out(args)
    guiding = _load_guiding(args, domain)
    seed_field = gvf_fit_real(domain.graph, guiding, smoothing_passes=args.passes)
    result = harmonic_relax(
        domain.graph, seed_field, set(guiding.vertices), args.max_iter, args.tol
    )
    if args.verify:
        recheck = harmonic_residual(domain.graph, result.field, set(guiding.vertices))
        assert recheck == result.final_residual
        for v, x in guiding.pairs():
            assert result.field[v] == x
        print("verify: ok")
    print(
        f"iterations={result.iterations_run} residual={result.final_residual:.3e}"
    )
    for path in _write_field(domain, result.field, prefix, "field"):
        print(f"wrote {path}")
    return 0


def cmd_mw(args) -> int:
    domain = _load_domain(args)
    prefix = _require_out(args)
    guiding = _load_guiding(args, domain)
    metric = args.metric
    pairwise = pairwise_guiding_distances(domain.graph, guiding.vertices, metric)
    estimate = lipschitz_constant(guiding, pairwise)
    L = estimate.constant
    inf_field = mw_inf(domain.graph, guiding, L, metric)
    sup_field = mw_sup(domain.graph, guiding, L, metric)
    mid_field = mw_mid(domain.graph, guiding, metric)
    if args.verify:
        _verify_mw(domain.graph, guiding, L, inf_field, sup_field, mid_field)
        print("verify: ok")
    witness = estimate.witness_pair
    print(f"L={L:g} witness={witness if witness else 'none'}")
    written = []
    written += _write_field(domain, inf_field, prefix, "inf")
    written += _write_field(domain, sup_field, prefix, "sup")
    written += _write_field(domain, mid_field, prefix, "mid")
    for path in written:
        print(f"wrote {path}")
    return 0


def _verify_mw(g, guiding, L, inf_field, sup_field, mid_field) -> None:
    scale = max(1.0, float(np.abs(mid_field).max()))
    for u, v in g.edges:
        bound = L * g.weight(u, v)
        if abs(mid_field[u] - mid_field[v]) > bound + 1e-12 * scale:
            raise GvfError(f"mid function breaks the Lipschitz bound on edge ({u}, {v})")
    if not ((sup_field <= mid_field + 1e-12 * scale).all() and
            (mid_field <= inf_field + 1e-12 * scale).all()):
        raise GvfError("envelope ordering SUP <= MID <= INF failed")
    lo, hi = min(guiding.values), max(guiding.values)
    if mid_field.min() < lo - 1e-12 * scale or mid_field.max() > hi + 1e-12 * scale:
        raise GvfError("mid function left the sample value range")
    for v, x in guiding.pairs():
        if abs(mid_field[v] - x) > 1e-12 * scale:
            raise GvfError(f"mid function misses the sample at vertex {v}")


def cmd_gen(args) -> int:
    domain = _load_domain(args)
    prefix = _require_out(args)
    mode = args.mode or "real"
    if mode == "tree":
        raise GvfError("gen supports --mode real or --mode int")
    n = domain.graph.vertex_count
    if args.count < 1:
        raise GvfError("--count must be positive")
    if args.count > n:
        raise GvfError(f"--count {args.count} exceeds the {n} domain entities")
    rng = random.Random(args.seed)
    path = f"{prefix}.samples.csv"
    with _open_out(path) as fh:
        if mode == "real":
            guiding = random_guiding_values(domain.graph, args.count, rng)
            for v, x in guiding.pairs():
                fh.write(_sample_row(domain, v, f"{x:.6f}"))
        else:
            n_levels = rng.randint(3, 9)
            guiding = random_guiding_indices(domain.graph, args.count, n_levels, rng)
            for v, i in guiding.pairs():
                fh.write(_sample_row(domain, v, str(i)))
    print(f"wrote {path}")
    return 0


def _sample_row(domain: Domain, vertex: int, value: str) -> str:
    if domain.grid is not None:
        x, y = domain.grid.cell_at(vertex)
        return f"{x},{y},{value}\n"
    return f"{vertex},{value}\n"


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gvf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_samples: bool = True) -> None:
        p.add_argument("--grid", help="grid domain, WxH")
        p.add_argument("--mesh", help="OFF mesh domain path")
        p.add_argument("--space", choices=[SPACE_GRID, SPACE_VERTEX, SPACE_CELL])
        p.add_argument("--adjacency", choices=["4", "8"], default="4")
        p.add_argument("--metric", choices=[HOP, WEIGHTED], default=HOP)
        if with_samples:
            p.add_argument("--samples", help="samples CSV path")
        p.add_argument("--out", help="output path prefix")

    p = sub.add_parser("check", help="decide guiding-set feasibility")
    common(p)
    p.add_argument("--mode", choices=["int", "real", "tree"])
    p.add_argument("--tree", help="range tree path (tree mode)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fit", help="reconstruct a field from samples")
    common(p)
    p.add_argument("--mode", choices=["int", "real", "tree"])
    p.add_argument("--tree", help="range tree path (tree mode)")
    p.add_argument("--passes", type=int, default=0, help="smoothing passes (real mode)")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("harmonic", help="harmonic fitting seeded by the gradual fit")
    common(p)
    p.add_argument("--passes", type=int, default=0, help="smoothing passes on the seed")
    p.add_argument("--max-iter", type=int, default=100, dest="max_iter")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_harmonic)

    p = sub.add_parser("mw", help="McShane-Whitney INF/SUP/mid extensions")
    common(p)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_mw)

    p = sub.add_parser("gen", help="generate a seeded synthetic sample set")
    common(p, with_samples=False)
    p.add_argument("--mode", choices=["int", "real", "tree"])
    p.add_argument("--count", type=int, default=10, help="number of samples")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GvfError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
