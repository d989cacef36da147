"""Layout TSV and diagnostics CSV readers/writers."""

from __future__ import annotations

import csv
import io

import numpy as np


class LayoutFileError(ValueError):
    pass


def format_layout(ids, positions) -> str:
    positions = np.asarray(positions, dtype=float)
    lines = [f"{i}\t{x:.17g}\t{y:.17g}" for i, (x, y) in zip(ids, positions)]
    return "".join(line + "\n" for line in lines)


def parse_layout(text: str) -> tuple[list[str], np.ndarray]:
    ids, rows = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise LayoutFileError(f"line {lineno}: expected node_id<TAB>x<TAB>y")
        try:
            rows.append((float(parts[1]), float(parts[2])))
        except ValueError:
            raise LayoutFileError(f"line {lineno}: non-numeric coordinate") from None
        ids.append(parts[0])
    if len(set(ids)) != len(ids):
        raise LayoutFileError("duplicate node ids in layout")
    return ids, np.array(rows, dtype=float).reshape(-1, 2)


def write_layout(path, ids, positions) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_layout(ids, positions))


def read_layout(path) -> tuple[list[str], np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        return parse_layout(fh.read())


def align_layout(graph_ids, layout_ids, positions) -> np.ndarray:
    """Reorder layout rows to graph order; every graph node must be present."""
    lookup = {i: k for k, i in enumerate(layout_ids)}
    missing = [i for i in graph_ids if i not in lookup]
    if missing:
        raise LayoutFileError(f"layout is missing nodes: {', '.join(missing)}")
    extra = [i for i in layout_ids if i not in set(graph_ids)]
    if extra:
        raise LayoutFileError(f"layout has nodes not in graph: {', '.join(extra)}")
    return np.asarray(positions)[[lookup[i] for i in graph_ids]]


DIAGNOSTICS_HEADER = ["iteration", "global_swinging", "global_traction",
                      "global_speed", "effective_tolerance"]


def format_diagnostics(trace) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(DIAGNOSTICS_HEADER)
    for d in trace:
        w.writerow([d.iteration, repr(d.global_swinging), repr(d.global_traction),
                    repr(d.global_speed), repr(d.effective_tolerance)])
    return buf.getvalue()
