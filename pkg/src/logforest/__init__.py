"""Logarithmic forest distances on weighted multigraphs."""

from .classical import (
    metric_violations,
    resistance_matrix,
    shortest_path_matrix,
    weighted_shortest_path_matrix,
)
from .errors import (
    EnumerationCapError,
    GraphError,
    GraphFormatError,
    NumericalError,
    TransformError,
)
from .family import (
    PRESETS,
    SHORTEST_PATH_FAMILY,
    UNIFIED_FAMILY,
    WSP_FAMILY,
    Constant,
    FamilyConfig,
    Formula13,
    HVariant,
    Interpolating,
    One,
    convergence_report,
    log_forest_distance_matrix,
    ordinary_forest_distance_matrix,
)
from .forests import enumerate_rooted_forests, matrix_forest_check, resistance_via_forests
from .geodetic import separates, verify_geodetic
from .graph import (
    Edge,
    Transform,
    WeightedMultigraph,
    connected_components,
    laplacian,
    parse_edge_list,
    total_weight_matrix,
    transform_weights,
)

__version__ = "0.1.0"
