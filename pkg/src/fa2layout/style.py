"""Node colors by categorical attribute, edge colors by origin, node sizes by numeric attribute."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from typing import Optional

from .graph import Graph

FALLBACK_GRAY = "#808080"

# blue, purple, pink, orange, green, red (CSS named colors)
DEFAULT_PALETTE = ("#0000ff", "#800080", "#ffc0cb", "#ffa500", "#008000", "#ff0000")

_HEX = re.compile(r"^#[0-9a-fA-F]{6}$")


class StyleError(ValueError):
    pass


def check_color(color: str) -> str:
    if not isinstance(color, str) or not _HEX.match(color):
        raise StyleError(f"invalid color {color!r}; expected #rrggbb")
    return color.lower()


@dataclass
class StyleMap:
    node_colors: dict[str, str] = field(default_factory=dict)
    edge_colors: dict[int, str] = field(default_factory=dict)
    node_sizes: dict[str, float] = field(default_factory=dict)


def assign_node_colors(graph: Graph, attribute: str, palette=DEFAULT_PALETTE,
                       mapping: Optional[dict] = None, fallback: str = FALLBACK_GRAY,
                       style: Optional[StyleMap] = None) -> StyleMap:
    """Color nodes by the value of ``attribute``.

    Values are bound to palette entries in first-appearance order, cycling when
    the palette runs out; ``mapping`` pins specific values to colors first.
    Nodes without the attribute get ``fallback``.
    """
    palette = [check_color(c) for c in palette]
    if not palette:
        raise StyleError("palette is empty")
    if not any(attribute in n.attributes for n in graph.nodes):
        raise StyleError(f"attribute {attribute!r} is not set on any node")
    fallback = check_color(fallback)
    bound = {k: check_color(v) for k, v in (mapping or {}).items()}

    colors = {}
    next_slot = 0
    for node in graph.nodes:
        value = node.attributes.get(attribute)
        if value is None:
            colors[node.id] = fallback
            continue
        if value not in bound:
            bound[value] = palette[next_slot % len(palette)]
            next_slot += 1
        colors[node.id] = bound[value]
    return replace(style or StyleMap(), node_colors=colors)


def assign_edge_colors(graph: Graph, style: StyleMap) -> StyleMap:
    """Each edge takes its source node's color."""
    colors = {}
    for k, e in enumerate(graph.edges):
        try:
            colors[k] = style.node_colors[e.source]
        except KeyError:
            raise StyleError(f"node {e.source} has no color") from None
    return replace(style, edge_colors=colors)


def size_from_attribute(graph: Graph, attribute: str, min_size: float = 3.0,
                        max_size: float = 10.0, style: Optional[StyleMap] = None) -> StyleMap:
    """Linearly rescale a numeric attribute onto ``[min_size, max_size]``.

    A constant attribute puts every node at ``min_size``.
    """
    if min_size > max_size:
        raise StyleError("min_size must not exceed max_size")
    if min_size <= 0:
        raise StyleError("sizes must be positive")
    values = {}
    for node in graph.nodes:
        raw = node.attributes.get(attribute)
        try:
            v = float(raw)
        except (TypeError, ValueError):
            raise StyleError(f"node {node.id}: {attribute}={raw!r} is not numeric") from None
        if not v >= 0:
            raise StyleError(f"node {node.id}: {attribute}={raw!r} is negative")
        values[node.id] = v
    if not values:
        return replace(style or StyleMap(), node_sizes={})
    lo, hi = min(values.values()), max(values.values())
    span = hi - lo
    sizes = {k: min_size if span == 0 else min_size + (v - lo) / span * (max_size - min_size)
             for k, v in values.items()}
    return replace(style or StyleMap(), node_sizes=sizes)


def load_style_file(path, graph: Graph) -> StyleMap:
    """Apply a JSON style file ``{"attribute", "mapping", "fallback", "palette"}``."""
    with open(path, encoding="utf-8") as fh:
        spec = json.load(fh)
    if "attribute" not in spec:
        raise StyleError("style file needs an 'attribute' key")
    return assign_node_colors(
        graph,
        spec["attribute"],
        palette=spec.get("palette", DEFAULT_PALETTE),
        mapping=spec.get("mapping"),
        fallback=spec.get("fallback", FALLBACK_GRAY),
    )
