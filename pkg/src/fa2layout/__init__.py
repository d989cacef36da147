"""ForceAtlas2 graph layout with warm-start chaining, transforms, styling and SVG output."""

from .engine import (
    Fa2Params,
    ForceAtlas2,
    ForceField,
    IterationDiagnostics,
    LayoutResult,
    LayoutState,
    NonFiniteLayoutError,
    run_layout,
)
from .graph import Edge, Graph, GraphFormatError, NodeRecord, parse_edge_list, parse_weight_matrix
from .render import RenderSpec, render_snapshots, render_svg
from .style import StyleMap, assign_edge_colors, assign_node_colors, size_from_attribute
from .transforms import rotate_positions, scale_positions, translate_to

__version__ = "0.1.0"
