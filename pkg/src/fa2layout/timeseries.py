"""Warm-start layout chaining across a sequence of periods."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .engine import Fa2Params, init_positions, run_layout
from .graph import Graph, read_graph


class PeriodError(RuntimeError):
    """A per-period failure, tagged with the period label."""


@dataclass
class Period:
    label: str
    graph_file: Path


@dataclass
class TimeSeriesManifest:
    periods: list[Period]
    params: Fa2Params
    chain: bool = True
    attributes: Optional[Path] = None
    style: Optional[Path] = None

    @classmethod
    def load(cls, path) -> "TimeSeriesManifest":
        path = Path(path)
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
        root = path.parent
        periods = [Period(str(p["label"]), root / p["graph"]) for p in raw.get("periods", [])]
        if not periods:
            raise ValueError("manifest has no periods")
        labels = [p.label for p in periods]
        if len(set(labels)) != len(labels):
            raise ValueError("period labels must be unique")
        for p in periods:
            if not p.graph_file.exists():
                raise FileNotFoundError(f"period {p.label}: {p.graph_file} does not exist")
        opt = lambda key: root / raw[key] if raw.get(key) else None
        return cls(periods, Fa2Params.from_dict(raw.get("params", {})), bool(raw.get("chain", True)),
                   opt("attributes"), opt("style"))


@dataclass
class PeriodLayout:
    label: str
    graph: Graph
    positions: np.ndarray
    trace: list
    snapshots: list


def period_seed(seed: Optional[int], k: int) -> Optional[int]:
    """Seed for period ``k``; period 0 uses ``seed`` itself."""
    if seed is None or k == 0:
        return seed
    return int(np.random.SeedSequence([seed, k]).generate_state(1)[0])


def warm_start_from(prev_ids, prev_positions, graph: Graph, seed: Optional[int]) -> np.ndarray:
    """Carry positions over by node id; nodes new in ``graph`` get random positions."""
    lookup = {i: k for k, i in enumerate(prev_ids)}
    fresh = [i for i in graph.ids if i not in lookup]
    random_rows = iter(init_positions(len(fresh), seed)) if fresh else iter(())
    rows = [prev_positions[lookup[i]] if i in lookup else next(random_rows) for i in graph.ids]
    return np.array(rows, dtype=float).reshape(-1, 2)


def chain_layouts(periods, params: Fa2Params, chain: bool = True, start=None,
                  workers: int = 1) -> list[PeriodLayout]:
    """Lay out ``(label, graph)`` periods in order.

    With ``chain`` each period starts from the previous final layout (matched
    by node id); otherwise every period starts from its own random draw.
    ``start`` optionally fixes the first period's initial positions.
    """
    out: list[PeriodLayout] = []
    for k, (label, graph) in enumerate(periods):
        p = replace(params, seed=period_seed(params.seed, k))
        if k == 0:
            warm = start
        elif chain:
            prev = out[-1]
            warm = warm_start_from(prev.graph.ids, prev.positions, graph, p.seed)
        else:
            warm = None
        try:
            res = run_layout(graph, p, warm_start=warm, workers=workers)
        except (ValueError, FloatingPointError) as exc:
            raise PeriodError(f"period {label}: {exc}") from exc
        out.append(PeriodLayout(label, graph, res.final, res.trace, res.snapshots))
    return out


def layout_diameter(positions) -> float:
    p = np.asarray(positions, dtype=float)
    if len(p) < 2:
        return 0.0
    diff = p[:, None, :] - p[None, :, :]
    return float(np.sqrt((diff ** 2).sum(axis=2)).max())


def node_displacements(a: PeriodLayout, b: PeriodLayout) -> list[tuple[str, float]]:
    """Per-node distance moved between two periods, for nodes present in both."""
    lookup = {i: k for k, i in enumerate(a.graph.ids)}
    return [(i, float(np.hypot(*(b.positions[k] - a.positions[lookup[i]]))))
            for k, i in enumerate(b.graph.ids) if i in lookup]


def transition_summary(layouts: list[PeriodLayout]) -> list[dict]:
    rows = []
    for a, b in zip(layouts, layouts[1:]):
        disp = [d for _, d in node_displacements(a, b)]
        mean = float(np.mean(disp)) if disp else 0.0
        diam = layout_diameter(b.positions)
        rows.append({"from_period": a.label, "to_period": b.label, "nodes": len(disp),
                     "mean_displacement": mean, "diameter": diam,
                     "relative": mean / diam if diam > 0 else 0.0})
    return rows


def format_displacement_report(layouts: list[PeriodLayout]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["from_period", "to_period", "node_id", "displacement"])
    for a, b in zip(layouts, layouts[1:]):
        for node_id, d in node_displacements(a, b):
            w.writerow([a.label, b.label, node_id, repr(d)])
    return buf.getvalue()


def load_periods(manifest: TimeSeriesManifest) -> list[tuple[str, Graph]]:
    periods = []
    for p in manifest.periods:
        try:
            periods.append((p.label, read_graph(p.graph_file, manifest.attributes)))
        except (OSError, ValueError) as exc:
            raise PeriodError(f"period {p.label}: {exc}") from exc
    return periods
