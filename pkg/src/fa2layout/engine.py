"""ForceAtlas2 solver with exact pairwise repulsion and warm start.

Each iteration computes repulsion, attraction and (optionally) strong gravity,
measures per-node swinging and effective traction against the previous
iteration's net force, derives a global speed and damped local speeds, and
moves every node by ``speed * force``.

Repulsion is evaluated in fixed-size row blocks. Every block sums its rows
over all columns in the same order no matter which worker runs it, so the
result is bit-identical for any worker count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from .graph import Graph

MIN_DISTANCE = 1e-4
INIT_HALF_RANGE = 500.0
# elements per repulsion block; keeps the temporaries cache-resident
BLOCK_ELEMENTS = 16384


class NonFiniteLayoutError(FloatingPointError):
    """A position became NaN or infinite (usually a parameter blow-up)."""

    def __init__(self, node: int, iteration: Optional[int] = None):
        self.node = node
        self.iteration = iteration
        where = f" at iteration {iteration}" if iteration is not None else ""
        super().__init__(f"non-finite position for node {node}{where}")


@dataclass
class Fa2Params:
    scaling_s: float = 10.0
    edge_weight_influence: int = 1
    tolerance: float = 1.0
    speed_constant: float = 1.0
    gravity_constant: float = 1.0
    linlog: bool = False
    strong_gravity: bool = False
    iterations: int = 100
    seed: Optional[int] = None
    center: tuple[float, float] = (0.0, 0.0)
    plotstep: int = 10
    adaptive_tolerance: bool = True
    # LinLog attraction ignores edge weights by default; True multiplies by w^delta.
    linlog_weighted: bool = False

    def __post_init__(self) -> None:
        if self.edge_weight_influence not in (0, 1):
            raise ValueError("edge_weight_influence must be 0 or 1")
        if not self.iterations >= 1:
            raise ValueError("iterations must be >= 1")
        if not self.scaling_s > 0:
            raise ValueError("scaling_s must be > 0")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        if not self.speed_constant > 0:
            raise ValueError("speed_constant must be > 0")
        if self.gravity_constant < 0:
            raise ValueError("gravity_constant must be >= 0")
        if self.plotstep < 0:
            raise ValueError("plotstep must be >= 0")
        self.center = (float(self.center[0]), float(self.center[1]))

    @classmethod
    def from_dict(cls, d: dict) -> "Fa2Params":
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown layout parameters: {sorted(unknown)}")
        d = dict(d)
        if "center" in d:
            d["center"] = tuple(d["center"])
        return cls(**d)


@dataclass
class LayoutState:
    positions: np.ndarray
    prev_forces: np.ndarray
    prev_global_speed: float = 0.0
    iteration_index: int = 0

    @classmethod
    def start(cls, positions: np.ndarray) -> "LayoutState":
        positions = np.array(positions, dtype=float)
        return cls(positions, np.zeros_like(positions))


@dataclass
class ForceField:
    repulsion: np.ndarray
    attraction: np.ndarray
    gravity: np.ndarray

    @property
    def net(self) -> np.ndarray:
        return self.repulsion + self.attraction + self.gravity


@dataclass
class IterationDiagnostics:
    iteration: int
    swinging: np.ndarray
    traction: np.ndarray
    global_swinging: float
    global_traction: float
    global_speed: float
    local_speeds: np.ndarray
    effective_tolerance: float


class LayoutResult(NamedTuple):
    final: np.ndarray
    trace: list
    snapshots: list


# --------------------------------------------------------------------------
# Positions


def init_positions(n: int, seed: Optional[int] = None, warm_start=None) -> np.ndarray:
    """Initial N x 2 positions: ``warm_start`` verbatim, else uniform in [-500, 500]^2.

    Random positions come from numpy's PCG64 generator seeded with ``seed``.
    """
    if warm_start is not None:
        arr = np.array(warm_start, dtype=float)
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise ValueError(f"warm start must be an N x 2 matrix, got shape {arr.shape}")
        if arr.shape[0] != n:
            raise ValueError(f"expected {n} rows, got {arr.shape[0]}")
        if not np.isfinite(arr).all():
            raise ValueError("warm start contains non-finite entries")
        return arr
    rng = np.random.default_rng(seed)
    return rng.uniform(-INIT_HALF_RANGE, INIT_HALF_RANGE, size=(n, 2))


# --------------------------------------------------------------------------
# Forces


def _masses(graph_or_mass) -> np.ndarray:
    if isinstance(graph_or_mass, Graph):
        return np.asarray(graph_or_mass.degrees(), dtype=float) + 1.0
    return np.asarray(graph_or_mass, dtype=float)


def _repulsion_block(mass, pos, scaling_s, lo, hi, out):
    dx = pos[lo:hi, 0, None] - pos[None, :, 0]
    dy = pos[lo:hi, 1, None] - pos[None, :, 1]
    # vector form S*m1*m2*(p1 - p2)/d^2 with d clamped at MIN_DISTANCE
    d2 = dx * dx
    d2 += dy * dy
    np.maximum(d2, MIN_DISTANCE * MIN_DISTANCE, out=d2)
    coef = np.multiply.outer(scaling_s * mass[lo:hi], mass)
    coef /= d2
    dx *= coef
    dy *= coef
    out[lo:hi, 0] = dx.sum(axis=1)
    out[lo:hi, 1] = dy.sum(axis=1)


def _row_blocks(n: int) -> list[tuple[int, int]]:
    rows = max(1, BLOCK_ELEMENTS // max(n, 1))
    return [(lo, min(lo + rows, n)) for lo in range(0, n, rows)]


def repulsion_forces(graph, positions, scaling_s: float, executor=None) -> np.ndarray:
    """Pairwise repulsion ``S (deg1+1)(deg2+1) / d`` pushing every pair apart.

    ``graph`` may also be a precomputed vector of ``deg + 1`` masses.
    """
    mass = _masses(graph)
    pos = np.asarray(positions, dtype=float)
    n = len(pos)
    out = np.empty((n, 2))
    blocks = _row_blocks(n)
    if executor is None or len(blocks) == 1:
        for lo, hi in blocks:
            _repulsion_block(mass, pos, scaling_s, lo, hi, out)
    else:
        futures = [executor.submit(_repulsion_block, mass, pos, scaling_s, lo, hi, out)
                   for lo, hi in blocks]
        for f in futures:
            f.result()
    return out


def _edge_arrays(graph: Graph):
    idx = graph._index
    src = np.fromiter((idx[e.source] for e in graph.edges), dtype=np.intp, count=len(graph.edges))
    tgt = np.fromiter((idx[e.target] for e in graph.edges), dtype=np.intp, count=len(graph.edges))
    w = np.fromiter((e.weight for e in graph.edges), dtype=float, count=len(graph.edges))
    keep = src != tgt
    return src[keep], tgt[keep], w[keep]


def _attraction(n, src, tgt, w, pos, delta, linlog, linlog_weighted=False):
    dvec = pos[src] - pos[tgt]
    factor = w if delta == 1 else np.ones_like(w)
    if linlog:
        d = np.hypot(dvec[:, 0], dvec[:, 1])
        mag = np.log1p(d)
        if linlog_weighted:
            mag = mag * factor
        per_unit = np.divide(mag, d, out=np.zeros_like(d), where=d > 0.0)
    else:
        per_unit = factor
    fx = per_unit * dvec[:, 0]
    fy = per_unit * dvec[:, 1]
    out = np.empty((n, 2))
    out[:, 0] = np.bincount(tgt, weights=fx, minlength=n) - np.bincount(src, weights=fx, minlength=n)
    out[:, 1] = np.bincount(tgt, weights=fy, minlength=n) - np.bincount(src, weights=fy, minlength=n)
    return out


def attraction_forces(graph: Graph, positions, delta: int = 1, linlog: bool = False,
                      linlog_weighted: bool = False) -> np.ndarray:
    """Per-edge attraction pulling endpoints together.

    Base mode has magnitude ``w^delta * d``; LinLog mode ``log(1 + d)`` with no
    weight factor unless ``linlog_weighted``. Self-loops contribute nothing.
    """
    src, tgt, w = _edge_arrays(graph)
    pos = np.asarray(positions, dtype=float)
    return _attraction(len(pos), src, tgt, w, pos, delta, linlog, linlog_weighted)


def gravity_forces(graph, positions, k_g: float, center=(0.0, 0.0), enabled: bool = True) -> np.ndarray:
    pos = np.asarray(positions, dtype=float)
    out = np.zeros_like(pos)
    if not enabled:
        return out
    mass = _masses(graph)
    vec = np.asarray(center, dtype=float)[None, :] - pos
    dist = np.hypot(vec[:, 0], vec[:, 1])
    scale = np.divide(k_g * np.log(mass), dist, out=np.zeros_like(dist), where=dist > 0.0)
    return vec * scale[:, None]


# --------------------------------------------------------------------------
# Speed control


def swinging_and_traction(net, prev_net):
    net = np.asarray(net, dtype=float)
    prev_net = np.asarray(prev_net, dtype=float)
    if net.shape != prev_net.shape:
        raise ValueError(f"force shapes differ: {net.shape} vs {prev_net.shape}")
    diff = net - prev_net
    both = net + prev_net
    swg = np.hypot(diff[:, 0], diff[:, 1])
    tra = np.hypot(both[:, 0], both[:, 1]) / 2.0
    return swg, tra


def global_speed(swg, tra, degrees, tolerance: float, adaptive: bool,
                 prev_global_speed: float, n: int):
    """Return ``(global_speed, effective_tolerance)``.

    Adaptive mode scales the user tolerance by
    ``clamp(0.05 * sqrt(N) * tra(G) / N^2, 0.05, 10)`` and limits growth to
    1.5x the previous global speed.
    """
    if n < 1:
        raise ValueError("need at least one node")
    weight = np.asarray(degrees, dtype=float) + 1.0
    swg_g = float(np.dot(weight, swg))
    tra_g = float(np.dot(weight, tra))
    if adaptive:
        density = 0.05 * math.sqrt(n) * tra_g / (n * n)
        tau = tolerance * min(max(density, 0.05), 10.0)
    else:
        tau = tolerance
    if swg_g > 0.0:
        s = tau * tra_g / swg_g
        if adaptive and prev_global_speed > 0.0:
            s = min(s, 1.5 * prev_global_speed)
    else:
        s = tau * 10.0
        if prev_global_speed > 0.0:
            s = min(s, 1.5 * prev_global_speed)
    return s, tau


def local_speeds(s_g: float, swg, k_s: float = 1.0) -> np.ndarray:
    swg = np.asarray(swg, dtype=float)
    return k_s * s_g / (1.0 + s_g * np.sqrt(swg))


def apply_displacement(positions, net, speeds) -> np.ndarray:
    positions = np.asarray(positions, dtype=float)
    new = positions + np.asarray(speeds, dtype=float)[:, None] * np.asarray(net, dtype=float)
    bad = ~np.isfinite(new).all(axis=1)
    if bad.any():
        raise NonFiniteLayoutError(int(np.flatnonzero(bad)[0]))
    return new


# --------------------------------------------------------------------------
# Driver


class ForceAtlas2:
    """Caches per-graph arrays and runs iterations for one (graph, params) pair."""

    def __init__(self, graph: Graph, params: Fa2Params, workers: int = 1):
        if len(graph) == 0:
            raise ValueError("cannot lay out an empty graph")
        if workers < 1:
            raise ValueError("workers must be >= 1")
        self.graph = graph
        self.params = params
        self.workers = workers
        self.degrees = np.asarray(graph.degrees(), dtype=float)
        self.mass = self.degrees + 1.0
        self.src, self.tgt, self.weight = _edge_arrays(graph)
        self._executor = None

    def __enter__(self):
        if self.workers > 1:
            self._executor = ThreadPoolExecutor(max_workers=self.workers)
        return self

    def __exit__(self, *exc):
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None

    def forces(self, positions: np.ndarray) -> ForceField:
        p = self.params
        n = len(positions)
        rep = repulsion_forces(self.mass, positions, p.scaling_s, self._executor)
        att = _attraction(n, self.src, self.tgt, self.weight, positions,
                          p.edge_weight_influence, p.linlog, p.linlog_weighted)
        grav = gravity_forces(self.mass, positions, p.gravity_constant, p.center, p.strong_gravity)
        return ForceField(rep, att, grav)

    def step(self, state: LayoutState):
        """Advance one iteration; returns ``(new_state, forces, diagnostics)``."""
        p = self.params
        n = len(state.positions)
        iteration = state.iteration_index + 1
        # overflow surfaces as NonFiniteLayoutError below
        with np.errstate(over="ignore", invalid="ignore"):
            field_ = self.forces(state.positions)
            net = field_.net
            swg, tra = swinging_and_traction(net, state.prev_forces)
            s_g, tau = global_speed(swg, tra, self.degrees, p.tolerance, p.adaptive_tolerance,
                                    state.prev_global_speed, n)
            speeds = local_speeds(s_g, swg, p.speed_constant)
            try:
                new_pos = apply_displacement(state.positions, net, speeds)
            except NonFiniteLayoutError as exc:
                raise NonFiniteLayoutError(exc.node, iteration) from None
        diag = IterationDiagnostics(
            iteration=iteration,
            swinging=swg,
            traction=tra,
            global_swinging=float(np.dot(self.mass, swg)),
            global_traction=float(np.dot(self.mass, tra)),
            global_speed=s_g,
            local_speeds=speeds,
            effective_tolerance=tau,
        )
        return LayoutState(new_pos, net, s_g, iteration), field_, diag

    def run(self, warm_start=None) -> LayoutResult:
        p = self.params
        state = LayoutState.start(init_positions(len(self.graph), p.seed, warm_start))
        trace, snapshots = [], []
        with self:
            for _ in range(p.iterations):
                state, _, diag = self.step(state)
                trace.append(diag)
                if p.plotstep and state.iteration_index % p.plotstep == 0:
                    snapshots.append((state.iteration_index, state.positions.copy()))
        return LayoutResult(state.positions, trace, snapshots)


def run_layout(graph: Graph, params: Optional[Fa2Params] = None, warm_start=None,
               workers: int = 1) -> LayoutResult:
    """Run ``params.iterations`` rounds of ForceAtlas2 on ``graph``.

    Output is a pure function of (graph, params, warm_start); ``workers``
    only changes how repulsion rows are distributed across threads.
    """
    return ForceAtlas2(graph, params or Fa2Params(), workers).run(warm_start)
