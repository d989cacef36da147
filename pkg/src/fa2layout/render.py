"""Standalone SVG rendering of a laid-out graph.

The layout is fit to the canvas minus a margin with its aspect ratio kept and
+y pointing up. Edges are drawn first, then nodes, then labels. No axes,
frame or background are emitted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union
from xml.sax.saxutils import quoteattr, escape

import numpy as np

from .graph import Graph
from .style import FALLBACK_GRAY, StyleMap


@dataclass
class RenderSpec:
    label_size: float = 3.0
    vertex_size: Union[float, Sequence[float]] = 3.0
    edge_arrow_size: float = 0.2
    vertex_label_color: str = "black"
    edge_color: Optional[str] = None
    width: int = 2000
    height: int = 2000
    margin: float = 0.05
    # node radius in px = vertex_size * min(width, height) * radius_factor
    radius_factor: float = 1 / 200
    show_labels: bool = True

    def __post_init__(self) -> None:
        if self.width <= 0 or self.height <= 0:
            raise ValueError("canvas dimensions must be positive")
        if not 0 <= self.margin < 0.5:
            raise ValueError("margin must be in [0, 0.5)")
        if self.label_size < 0 or self.edge_arrow_size < 0:
            raise ValueError("sizes must be non-negative")
        if np.any(np.asarray(self.vertex_size, dtype=float) < 0):
            raise ValueError("vertex sizes must be non-negative")


def bounding_box(layouts) -> tuple[float, float, float, float]:
    pts = [np.asarray(p, dtype=float).reshape(-1, 2) for p in layouts]
    pts = [p for p in pts if len(p)]
    if not pts:
        return (0.0, 0.0, 0.0, 0.0)
    allp = np.vstack(pts)
    (x0, y0), (x1, y1) = allp.min(axis=0), allp.max(axis=0)
    return (float(x0), float(y0), float(x1), float(y1))


def fit_transform(bbox, spec: RenderSpec):
    """Return a function mapping layout coordinates to SVG pixel coordinates."""
    x0, y0, x1, y1 = bbox
    mx, my = spec.width * spec.margin, spec.height * spec.margin
    avail_w, avail_h = spec.width - 2 * mx, spec.height - 2 * my
    bw, bh = x1 - x0, y1 - y0
    scales = [s for s in (avail_w / bw if bw > 0 else None, avail_h / bh if bh > 0 else None) if s]
    k = min(scales) if scales else 1.0
    cx, cy = (x0 + x1) / 2, (y0 + y1) / 2

    def to_screen(points):
        p = np.asarray(points, dtype=float).reshape(-1, 2)
        sx = spec.width / 2 + k * (p[:, 0] - cx)
        sy = spec.height / 2 - k * (p[:, 1] - cy)
        return np.column_stack([sx, sy])

    return to_screen


def _node_sizes(graph: Graph, style: StyleMap, spec: RenderSpec) -> list[float]:
    base = np.broadcast_to(np.asarray(spec.vertex_size, dtype=float), (len(graph),))
    return [style.node_sizes.get(n.id, float(b)) for n, b in zip(graph.nodes, base)]


def _f(v: float) -> str:
    return f"{v:.3f}"


def render_svg(graph: Graph, layout, style: Optional[StyleMap] = None,
               spec: Optional[RenderSpec] = None, viewport=None) -> str:
    """Render to an SVG 1.1 document string.

    ``viewport`` (a layout-space bounding box) overrides the layout's own
    extent; snapshot series use it to share one frame.
    """
    style = style or StyleMap()
    spec = spec or RenderSpec()
    layout = np.asarray(layout, dtype=float).reshape(-1, 2)
    if len(layout) != len(graph):
        raise ValueError(f"layout has {len(layout)} rows but graph has {len(graph)} nodes")

    to_screen = fit_transform(viewport or bounding_box([layout]), spec)
    screen = to_screen(layout)
    unit = min(spec.width, spec.height) * spec.radius_factor
    radii = [s * unit for s in _node_sizes(graph, style, spec)]
    arrow_len = spec.edge_arrow_size * min(spec.width, spec.height) * 0.05

    edge_colors = []
    for k, e in enumerate(graph.edges):
        c = spec.edge_color or style.edge_colors.get(k) or style.node_colors.get(e.source) or FALLBACK_GRAY
        edge_colors.append(c)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="yes"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{spec.width}" height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">',
    ]
    arrows = graph.directed and arrow_len > 0 and len(graph.edges) > 0
    marker_ids = {}
    if arrows:
        out.append("<defs>")
        for c in sorted(set(edge_colors)):
            mid = f"arrow{len(marker_ids)}"
            marker_ids[c] = mid
            out.append(
                f'<marker id="{mid}" markerUnits="userSpaceOnUse" orient="auto" '
                f'markerWidth="{_f(arrow_len)}" markerHeight="{_f(arrow_len)}" '
                f'refX="{_f(arrow_len)}" refY="{_f(arrow_len / 2)}">'
                f'<polygon points="0,0 {_f(arrow_len)},{_f(arrow_len / 2)} 0,{_f(arrow_len)}" '
                f'fill={quoteattr(c)}/></marker>'
            )
        out.append("</defs>")

    out.append('<g class="edges" stroke-width="1.5">')
    idx = graph._index
    for e, c in zip(graph.edges, edge_colors):
        i, j = idx[e.source], idx[e.target]
        (x1, y1), (x2, y2) = screen[i], screen[j]
        d = float(np.hypot(x2 - x1, y2 - y1))
        if arrows and d > radii[j]:
            # stop at the target's rim so the arrowhead stays visible
            x2 -= (x2 - x1) * radii[j] / d
            y2 -= (y2 - y1) * radii[j] / d
        marker = f' marker-end="url(#{marker_ids[c]})"' if arrows else ""
        out.append(f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                   f'stroke={quoteattr(c)}{marker}/>')
    out.append("</g>")

    out.append('<g class="nodes">')
    for n, (x, y), r in zip(graph.nodes, screen, radii):
        c = style.node_colors.get(n.id, FALLBACK_GRAY)
        out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="{_f(r)}" fill={quoteattr(c)}/>')
    out.append("</g>")

    if spec.show_labels:
        out.append(f'<g class="labels" font-family="sans-serif" font-size="{spec.label_size:g}em" '
                   f'fill={quoteattr(spec.vertex_label_color)} text-anchor="middle" '
                   f'dominant-baseline="central">')
        for n, (x, y) in zip(graph.nodes, screen):
            out.append(f'<text x="{_f(x)}" y="{_f(y)}">{escape(n.label)}</text>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"


def snapshot_filename(basename: str, iteration: int) -> str:
    return f"{basename}_iter{iteration}.svg"


def render_snapshots(snapshots, graph: Graph, style: Optional[StyleMap] = None,
                     spec: Optional[RenderSpec] = None) -> list[tuple[int, str]]:
    """Render ``(iteration, layout)`` pairs into one shared viewport."""
    viewport = bounding_box([layout for _, layout in snapshots])
    return [(k, render_svg(graph, layout, style, spec, viewport=viewport)) for k, layout in snapshots]
