"""Shortest-path engine for conic multi-source multi-destination graphs.

Alongside the classic heap-driven search and contraction shortcuts, the
engine invents candidate edges between adjacent destinations of a source
as the absolute difference of their edge weights, and grades them against
known hidden paths.
"""

from .contraction import (
    Contractor,
    Overlay,
    Shortcut,
    additive_contract,
    build_hierarchy,
    contract_node,
    witness_exists,
)
from .dijkstra import PathResult, SearchState, path_to, relax, shortest_paths
from .dot import export_dot
from .errors import (
    AlreadyContracted,
    ConicRouteError,
    CycleCreated,
    DuplicateLabel,
    DuplicateOffset,
    EmptyChain,
    EndpointMismatch,
    EqualAdjacentWeight,
    GraphFrozen,
    GraphNotFrozen,
    MalformedHeader,
    NonIntegerCell,
    NonPositiveWeight,
    NotASource,
    ParseError,
    RaggedRow,
    Unreachable,
    UnknownNode,
    UnknownSourceLabel,
    ValidationFailed,
)
from .graph import (
    ConicGraph,
    Edge,
    Node,
    NodeKind,
    Provenance,
    Violation,
    validate,
)
from .invention import (
    DEFAULT_TOLERANCE,
    FitnessReport,
    HiddenPath,
    InventedEdge,
    PolicyThreshold,
    absolute_edge_difference,
    fitness,
    invent_all,
    invent_for_source,
    triangle_bounds,
)
from .matrix_io import (
    BuildMatrix,
    MatrixRow,
    build_graph,
    emit_build_matrix,
    from_graph,
    parse_build_matrix,
    parse_hidden_paths,
    to_graph,
)

__version__ = "0.1.0"

__all__ = [
    "AlreadyContracted",
    "BuildMatrix",
    "ConicGraph",
    "ConicRouteError",
    "Contractor",
    "CycleCreated",
    "DEFAULT_TOLERANCE",
    "DuplicateLabel",
    "DuplicateOffset",
    "Edge",
    "EmptyChain",
    "EndpointMismatch",
    "EqualAdjacentWeight",
    "FitnessReport",
    "GraphFrozen",
    "GraphNotFrozen",
    "HiddenPath",
    "InventedEdge",
    "MalformedHeader",
    "MatrixRow",
    "Node",
    "NodeKind",
    "NonIntegerCell",
    "NonPositiveWeight",
    "NotASource",
    "Overlay",
    "ParseError",
    "PathResult",
    "PolicyThreshold",
    "Provenance",
    "RaggedRow",
    "SearchState",
    "Shortcut",
    "Unreachable",
    "UnknownNode",
    "UnknownSourceLabel",
    "ValidationFailed",
    "Violation",
    "absolute_edge_difference",
    "additive_contract",
    "build_graph",
    "build_hierarchy",
    "contract_node",
    "emit_build_matrix",
    "export_dot",
    "fitness",
    "from_graph",
    "invent_all",
    "invent_for_source",
    "parse_build_matrix",
    "parse_hidden_paths",
    "path_to",
    "relax",
    "shortest_paths",
    "to_graph",
    "triangle_bounds",
    "validate",
    "witness_exists",
]
