"""Graph data model and CSV ingestion.

Three input formats are supported: an edge list (``source,target[,weight]``),
a square weight matrix with label row/column, and a node attribute table
keyed by ``id``. Node order is always first-appearance order; it fixes the
row index of every position and force matrix downstream.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace


class GraphFormatError(ValueError):
    """Raised when an input file cannot be turned into a Graph."""


@dataclass
class NodeRecord:
    id: str
    label: str
    attributes: dict[str, str] = field(default_factory=dict)
    degree: int = 0


@dataclass(frozen=True)
class Edge:
    source: str
    target: str
    weight: float = 1.0


@dataclass
class Graph:
    nodes: list[NodeRecord]
    edges: list[Edge]
    directed: bool = True

    def __post_init__(self) -> None:
        self._index = {n.id: i for i, n in enumerate(self.nodes)}
        if len(self._index) != len(self.nodes):
            raise GraphFormatError("duplicate node ids")
        for e in self.edges:
            for end in (e.source, e.target):
                if end not in self._index:
                    raise GraphFormatError(f"edge endpoint {end!r} is not a node")
            if e.weight < 0:
                raise GraphFormatError(f"negative weight on edge {e.source}->{e.target}")
        counts = [0] * len(self.nodes)
        for e in self.edges:
            counts[self._index[e.source]] += 1
            counts[self._index[e.target]] += 1
        for node, c in zip(self.nodes, counts):
            node.degree = c

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def ids(self) -> list[str]:
        return [n.id for n in self.nodes]

    def index(self, node_id: str) -> int:
        try:
            return self._index[node_id]
        except KeyError:
            raise KeyError(f"unknown node {node_id}") from None

    def node(self, node_id: str) -> NodeRecord:
        return self.nodes[self.index(node_id)]

    def degrees(self) -> list[int]:
        return [n.degree for n in self.nodes]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.nodes, self.edges, self.directed) == (other.nodes, other.edges, other.directed)


def from_edges(edges, nodes=None, directed: bool = True) -> Graph:
    """Build a Graph from ``(source, target, weight)`` triples.

    Nodes are registered in first-appearance order (explicit ``nodes`` first),
    and repeated (source, target) pairs are merged by summing their weights.
    """
    order: dict[str, None] = {}
    for n in nodes or ():
        order.setdefault(str(n), None)
    merged: dict[tuple[str, str], float] = {}
    for s, t, w in edges:
        s, t = str(s), str(t)
        order.setdefault(s, None)
        order.setdefault(t, None)
        merged[(s, t)] = merged.get((s, t), 0.0) + float(w)
    records = [NodeRecord(id=i, label=i) for i in order]
    return Graph(records, [Edge(s, t, w) for (s, t), w in merged.items()], directed)


def _data_rows(text: str):
    """Yield (line_number, row) for non-blank, non-comment CSV rows."""
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        lineno = reader.line_num
        if not row or all(not c.strip() for c in row):
            continue
        if row[0].lstrip().startswith("#"):
            continue
        yield lineno, [c.strip() for c in row]


def parse_edge_list(text: str, directed: bool = True) -> Graph:
    rows = _data_rows(text)
    try:
        _, header = next(rows)
    except StopIteration:
        raise GraphFormatError("edge list is empty (header required)") from None
    header = [h.lower() for h in header]
    if header not in (["source", "target"], ["source", "target", "weight"]):
        raise GraphFormatError(f"unknown header {','.join(header)!r}; expected source,target[,weight]")
    has_weight = len(header) == 3

    triples = []
    for lineno, row in rows:
        if len(row) != len(header) or not row[0] or not row[1]:
            raise GraphFormatError(f"malformed row at line {lineno}")
        w = 1.0
        if has_weight:
            try:
                w = float(row[2]) if row[2] else 1.0
            except ValueError:
                raise GraphFormatError(f"non-numeric weight at line {lineno}") from None
            if w < 0:
                raise GraphFormatError(f"negative weight at line {lineno}")
            if w != w:
                raise GraphFormatError(f"NaN weight at line {lineno}")
        triples.append((row[0], row[1], w))
    return from_edges(triples, directed=directed)


def parse_weight_matrix(text: str) -> Graph:
    rows = list(_data_rows(text))
    if not rows:
        raise GraphFormatError("weight matrix is empty")
    _, header = rows[0]
    if header[0] not in ("", "id"):
        raise GraphFormatError("cell (0,0) must be empty or 'id'")
    labels = header[1:]
    body = rows[1:]
    if len(body) != len(labels) or any(len(r) != len(labels) + 1 for _, r in body):
        widths = sorted({len(r) - 1 for _, r in body}) or [0]
        raise GraphFormatError(
            f"weight matrix is not square: {len(body)} rows x {widths[-1]} columns "
            f"({len(labels)} labels)"
        )
    if len(set(labels)) != len(labels):
        raise GraphFormatError("duplicate labels in weight matrix")

    triples = []
    for i, (_, row) in enumerate(body):
        if row[0] != labels[i]:
            raise GraphFormatError(f"row label {row[0]!r} does not match column label {labels[i]!r}")
        for j, cell in enumerate(row[1:]):
            try:
                w = float(cell)
            except ValueError:
                raise GraphFormatError(f"non-numeric cell at ({i + 1},{j + 1}): {cell!r}") from None
            if i != j and w > 0:
                triples.append((labels[i], labels[j], w))
    return from_edges(triples, nodes=labels, directed=True)


def parse_node_attributes(text: str, graph: Graph) -> Graph:
    """Attach attribute columns to nodes; returns a new Graph.

    A ``label`` column, if present, sets the display label instead of being
    stored as an attribute.
    """
    rows = _data_rows(text)
    try:
        _, header = next(rows)
    except StopIteration:
        return graph
    if not header or header[0] != "id":
        raise GraphFormatError("attribute file must start with an 'id' column")

    nodes = [replace(n, attributes=dict(n.attributes)) for n in graph.nodes]
    for lineno, row in rows:
        if len(row) != len(header):
            raise GraphFormatError(f"malformed row at line {lineno}")
        node_id = row[0]
        if node_id not in graph._index:
            raise GraphFormatError(f"unknown node {node_id}")
        rec = nodes[graph._index[node_id]]
        for key, value in zip(header[1:], row[1:]):
            if key == "label":
                rec.label = value
            else:
                rec.attributes[key] = value
    return Graph(nodes, list(graph.edges), graph.directed)


def degree(graph: Graph, node_id: str) -> int:
    return graph.node(node_id).degree


def to_edge_list(graph: Graph) -> str:
    """Serialize edges back to the edge-list CSV format (isolated nodes are lost)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["source", "target", "weight"])
    for e in graph.edges:
        w.writerow([e.source, e.target, repr(e.weight)])
    return buf.getvalue()


def read_graph(path, attributes=None) -> Graph:
    """Load a graph file, sniffing edge list vs weight matrix from the header."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    first = next((r for _, r in _data_rows(text)), None)
    if first is not None and first[0] in ("", "id"):
        g = parse_weight_matrix(text)
    else:
        g = parse_edge_list(text)
    if attributes is not None:
        with open(attributes, encoding="utf-8") as fh:
            g = parse_node_attributes(fh.read(), g)
    return g
