"""Wall-clock scaling benchmark: layout time versus node count."""

from __future__ import annotations

import csv
import io
import math
import time
from dataclasses import astuple, dataclass, fields

import numpy as np
from scipy import stats

from .engine import Fa2Params, run_layout
from .synth import erdos_renyi

MEAN_DEGREE = 10.0


@dataclass
class BenchResult:
    n_nodes: int
    iterations: int
    repetitions: int
    mean_seconds: float
    stddev_seconds: float
    ci95_low: float
    ci95_high: float


def summarize(n_nodes: int, iterations: int, seconds) -> BenchResult:
    """Mean, sample stddev and Student-t 95% interval of the timings."""
    t = np.asarray(seconds, dtype=float)
    reps = len(t)
    if reps < 1:
        raise ValueError("need at least one repetition")
    mean = float(t.mean())
    if reps == 1:
        return BenchResult(n_nodes, iterations, 1, mean, 0.0, mean, mean)
    sd = float(t.std(ddof=1))
    half = float(stats.t.ppf(0.975, reps - 1)) * sd / math.sqrt(reps)
    return BenchResult(n_nodes, iterations, reps, mean, sd, mean - half, mean + half)


def time_layout(graph, params: Fa2Params, repetitions: int, workers: int = 1) -> list[float]:
    out = []
    for _ in range(repetitions):
        t0 = time.perf_counter()
        run_layout(graph, params, workers=workers)
        out.append(time.perf_counter() - t0)
    return out


def run_bench(node_counts, iteration_counts, repetitions: int = 10, seed: int = 0,
              workers: int = 1, progress=None) -> list[BenchResult]:
    """Time layouts of seeded G(n, p) graphs with mean degree 10, sequentially."""
    results = []
    for n in node_counts:
        graph = erdos_renyi(n, MEAN_DEGREE, seed)
        for iters in iteration_counts:
            params = Fa2Params(iterations=iters, seed=seed, plotstep=0)
            res = summarize(n, iters, time_layout(graph, params, repetitions, workers))
            if progress:
                progress(res)
            results.append(res)
    return results


def loglog_slopes(results) -> dict[int, float]:
    """Least-squares slope of log(mean time) on log(N), per iteration count."""
    by_iter: dict[int, list[BenchResult]] = {}
    for r in results:
        by_iter.setdefault(r.iterations, []).append(r)
    slopes = {}
    for iters, rows in sorted(by_iter.items()):
        if len({r.n_nodes for r in rows}) < 2:
            continue
        x = np.log([r.n_nodes for r in rows])
        y = np.log([r.mean_seconds for r in rows])
        slopes[iters] = float(np.polyfit(x, y, 1)[0])
    return slopes


def format_results(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f.name for f in fields(BenchResult)])
    for r in results:
        w.writerow(astuple(r))
    return buf.getvalue()
