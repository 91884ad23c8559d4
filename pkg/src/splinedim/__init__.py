"""Exact dimensions of degree-2 smoothness-1 spline spaces on
edge-labeled planar graphs, with a triangulation front end.
"""

from .errors import (
    BadRotation,
    Degenerate,
    Disconnected,
    HorizontalEdge,
    HypothesisViolation,
    InvalidGraph,
    MissingLabel,
    NonHomogeneousLabel,
    NoneExists,
    NonSquare,
    NotContractible,
    NotFound,
    NotGeneric,
    SharedEdgeViolation,
    SizeGuard,
    SpecialPosition,
    SplinedimError,
    UnboundVariable,
    ZeroDivisor,
)
from .exact_algebra import (
    MultiPoly,
    Quadratic,
    det,
    det_poly,
    divides,
    expand_label,
    format_rational,
    kernel_basis,
    rank,
    rational,
)
from .graph_model import (
    Edge,
    EdgeLabel,
    PlanarGraph,
    ValidationReport,
    graph_from_dict,
    graph_to_dict,
    load_graph,
    require_valid,
    save_graph,
    subgraph_from_faces,
    validate,
)
from .spline_matrix import (
    GenericReport,
    SplineVector,
    build_M,
    build_Mext,
    build_Mext_symbolic,
    expected_generic_rank,
    generic_check,
    special_position_test,
    spline_dimension,
    splines_from_kernel,
    verify_vertex_labeling,
)
from .edge_injective import (
    DualGraph,
    DualOrientation,
    EdgeInjectiveFn,
    build_dual,
    count_directed_cycles,
    det_expansion,
    enumerate_all,
    find_coloring,
    greedy_maximal,
    greedy_with_stalls,
    orientation_from,
)
from .contraction import (
    ContractionTrace,
    SpecialLocus,
    all_minimal_contractible,
    classify_minimal_contractible,
    contract,
    contract_with_maps,
    dimension_by_contraction,
    find_minimal_contractible,
    is_contractible,
    special_locus,
)
from .triangulation_frontend import (
    Triangulation,
    dualize,
    face_translatable_check,
    find_rotation,
    homogenize,
    homogenize_labels,
    load_triangulation,
    rotate,
    rotate_graph,
    rotate_labels,
    rotate_triangulation,
    validate_triangulation,
)

__version__ = "0.1.0"

__all__ = [
    "BadRotation",
    "ContractionTrace",
    "Degenerate",
    "Disconnected",
    "DualGraph",
    "DualOrientation",
    "Edge",
    "EdgeInjectiveFn",
    "EdgeLabel",
    "GenericReport",
    "HorizontalEdge",
    "HypothesisViolation",
    "InvalidGraph",
    "MissingLabel",
    "MultiPoly",
    "NonHomogeneousLabel",
    "NonSquare",
    "NoneExists",
    "NotContractible",
    "NotFound",
    "NotGeneric",
    "PlanarGraph",
    "Quadratic",
    "SharedEdgeViolation",
    "SizeGuard",
    "SpecialLocus",
    "SpecialPosition",
    "SplineVector",
    "SplinedimError",
    "Triangulation",
    "UnboundVariable",
    "ValidationReport",
    "ZeroDivisor",
    "all_minimal_contractible",
    "build_M",
    "build_Mext",
    "build_Mext_symbolic",
    "build_dual",
    "classify_minimal_contractible",
    "contract",
    "contract_with_maps",
    "count_directed_cycles",
    "det",
    "det_expansion",
    "det_poly",
    "dimension_by_contraction",
    "divides",
    "expand_label",
    "dualize",
    "enumerate_all",
    "expected_generic_rank",
    "face_translatable_check",
    "find_coloring",
    "find_minimal_contractible",
    "find_rotation",
    "format_rational",
    "generic_check",
    "graph_from_dict",
    "graph_to_dict",
    "greedy_maximal",
    "greedy_with_stalls",
    "homogenize",
    "homogenize_labels",
    "is_contractible",
    "kernel_basis",
    "load_graph",
    "load_triangulation",
    "orientation_from",
    "rank",
    "rational",
    "require_valid",
    "rotate",
    "rotate_graph",
    "rotate_labels",
    "rotate_triangulation",
    "save_graph",
    "special_locus",
    "special_position_test",
    "spline_dimension",
    "splines_from_kernel",
    "subgraph_from_faces",
    "validate",
    "validate_triangulation",
    "verify_vertex_labeling",
]
