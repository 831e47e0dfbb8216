"""Scalar field reconstruction on graph domains via gradually varied functions.

The package covers the full pipeline: loading sparse observations, building
a domain graph (2D grid, mesh vertex graph, or face dual graph), deciding
extendability, extending to a discrete field, real-valued fitting with
max-slope level chains, finite-difference and harmonic smoothing, and the
McShane-Whitney Lipschitz-extension baseline.
"""

from .errors import (
    DimensionMismatch,
    DisconnectedDomain,
    DuplicateLocation,
    ElementNotFound,
    EmptyCandidateSet,
    EmptyFixedSet,
    EmptyGuidingSet,
    EmptySourceSet,
    GvfError,
    IndexOutOfRange,
    InfeasibleGuidingSet,
    InternalIntervalEmpty,
    IsolatedFreeVertex,
    NonManifoldEdge,
    NonTriangleFace,
    OutOfBounds,
    ParseError,
    UnreachablePair,
)
from .extension import (
    FeasibilityReport,
    IndexField,
    Witness,
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
    is_connected,
    multi_source_distances,
    pairwise_guiding_distances,
    source_distance_rows,
)
from .levels import (
    GuidingIndices,
    GuidingSet,
    LevelChain,
    RangeTree,
    TreeElement,
    TreeSegment,
    chain_tree,
    dequantize,
    format_range_tree,
    levels_from_max_slope,
    parse_range_tree,
    quantize,
    quantize_guiding,
    tree_distance,
)
from .mcshane_whitney import (
    LipschitzEstimate,
    lipschitz_constant,
    mw_inf,
    mw_mid,
    mw_sup,
)
from .smoothing import (
    GradientField,
    RelaxationResult,
    constrained_smooth,
    finite_diff_gradient,
    harmonic_relax,
    harmonic_residual,
    laplacian_energy,
)

__version__ = "0.1.0"
