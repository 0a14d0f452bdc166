"""Cartographic graph drawing: vertices as latitudes, edges as longitudes."""

from .compare import (
    ComparisonResult,
    KindMismatch,
    Membership,
    compare,
    comparison_layout,
    derive_boolean,
)
from .graph import (
    DensityClass,
    Edge,
    Graph,
    GraphError,
    GraphKind,
    ParallelEdge,
    Vertex,
    classify_density,
    complement,
    degrees,
)
from .incidence import (
    AugmentedIncidenceMatrix,
    EmptyUniverse,
    build_augmented_incidence,
    canonical_slot_index,
    edge_slot_count,
)
from .io import emit_graph, export_layout, parse_config, parse_graph
from .layout import CartographicLayout, LayoutOptions, compute_layout, estimate_canvas
from .ordering import (
    Column,
    ColumnKind,
    EdgeOrdering,
    order_by_degree,
    order_by_weight,
    order_canonical,
    order_custom,
    permute_vertices,
)
from .render import RenderStyle, apply_weight_style, render_svg

__version__ = "0.1.0"

__all__ = [
    "apply_weight_style",
    "AugmentedIncidenceMatrix",
    "build_augmented_incidence",
    "canonical_slot_index",
    "CartographicLayout",
    "classify_density",
    "Column",
    "ColumnKind",
    "compare",
    "comparison_layout",
    "ComparisonResult",
    "complement",
    "compute_layout",
    "degrees",
    "DensityClass",
    "derive_boolean",
    "Edge",
    "edge_slot_count",
    "EdgeOrdering",
    "emit_graph",
    "EmptyUniverse",
    "estimate_canvas",
    "export_layout",
    "Graph",
    "GraphError",
    "GraphKind",
    "KindMismatch",
    "LayoutOptions",
    "Membership",
    "order_by_degree",
    "order_by_weight",
    "order_canonical",
    "order_custom",
    "ParallelEdge",
    "parse_config",
    "parse_graph",
    "permute_vertices",
    "render_svg",
    "RenderStyle",
    "Vertex",
]
