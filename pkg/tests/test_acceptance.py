"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import math
import time
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from fa2layout.bench import loglog_slopes, run_bench
from fa2layout.engine import (
    Fa2Params,
    ForceAtlas2,
    LayoutState,
    init_positions,
    repulsion_forces,
    run_layout,
)
from fa2layout.graph import from_edges
from fa2layout.layout_io import format_layout
from fa2layout.render import render_svg
from fa2layout.synth import WeightedBlockSeries, block_labels, erdos_renyi, planted_partition
from fa2layout.timeseries import chain_layouts, transition_summary
from fa2layout.transforms import rotate_positions, scale_positions

from helpers import edge_indices, random_graph
import oracle


@pytest.fixture
def report(capsys):
    def _report(criterion, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}")
        assert ok, detail
    return _report


def pairwise(p):
    return np.linalg.norm(p[:, None] - p[None], axis=2)


def pair():
    return from_edges([("A", "B", 1.0)])


def test_c01_two_node_equilibrium(report):
    t0 = time.perf_counter()
    res = run_layout(pair(), Fa2Params(iterations=500, adaptive_tolerance=False, plotstep=0),
                     warm_start=[[0, 0], [1, 0]])
    elapsed = time.perf_counter() - t0
    dist = float(np.linalg.norm(res.final[0] - res.final[1]))
    target = math.sqrt(4 * 10 / 1)
    ok = abs(dist - target) <= 0.1 * target and elapsed < 1.0
    report(1, ok, f"distance {dist:.6f} vs sqrt(40)={target:.6f}, {elapsed:.3f}s")


def test_c02_hand_trace(report):
    solver = ForceAtlas2(pair(), Fa2Params(adaptive_tolerance=False))
    state = LayoutState.start([[0.0, 0.0], [1.0, 0.0]])
    new_state, field, _ = solver.step(state)
    speed = 0.5 / (1 + 0.5 * math.sqrt(39))
    expected_force = np.array([[-39.0, 0.0], [39.0, 0.0]])
    expected_pos = np.array([[-39 * speed, 0.0], [1 + 39 * speed, 0.0]])
    force_err = np.max(np.abs(field.net - expected_force)) / 39
    step = np.linalg.norm(new_state.positions - state.positions, axis=1)
    step_err = np.max(np.abs(step - 39 * speed)) / (39 * speed)
    pos_err = np.max(np.abs(new_state.positions - expected_pos)) / np.max(np.abs(expected_pos))
    ok = max(force_err, step_err, pos_err) <= 1e-9
    report(2, ok, f"net force rel err {force_err:.1e}, displacement {step[0]:.6f} "
                  f"(rel err {step_err:.1e}), position rel err {pos_err:.1e}")


def test_c03_oracle_equivalence(report):
    t0 = time.perf_counter()
    modes = [dict(), dict(linlog=True), dict(strong_gravity=True, gravity_constant=3.0),
             dict(linlog=True, strong_gravity=True, gravity_constant=0.5), dict(edge_weight_influence=0)]
    worst = 0.0
    for k in range(100):
        rng = np.random.default_rng(1000 + k)
        g = random_graph(rng, int(rng.integers(1, 9)), self_loops=True)
        mode = modes[k % len(modes)]
        params = Fa2Params(seed=k, center=tuple(rng.uniform(-20, 20, 2)), **mode)
        solver = ForceAtlas2(g, params)
        state = LayoutState.start(init_positions(len(g), k))
        for _ in range(10):
            field = solver.forces(state.positions)
            expected = oracle.net_forces(
                len(g), edge_indices(g), state.positions.tolist(), params.scaling_s,
                params.edge_weight_influence, params.linlog, params.strong_gravity,
                params.gravity_constant, params.center)
            scale = max(np.abs(field.repulsion).max(), np.abs(field.attraction).max(),
                        np.abs(field.gravity).max(), 1e-300)
            worst = max(worst, float(np.max(np.abs(field.net - np.asarray(expected)))) / scale)
            state, _, _ = solver.step(state)
    elapsed = time.perf_counter() - t0
    report(3, worst <= 1e-9 and elapsed < 30, f"max relative deviation {worst:.2e} over 100 graphs, {elapsed:.1f}s")


def test_c04_property_suite(report):
    rng = np.random.default_rng(44)
    g = random_graph(rng, 60, p=0.1)
    checks = {}

    f = ForceAtlas2(g, Fa2Params()).forces(init_positions(len(g), 1))
    internal = (f.repulsion + f.attraction).sum(axis=0)
    scale = np.abs(f.repulsion).sum() + np.abs(f.attraction).sum()
    checks["newton"] = bool(np.all(np.abs(internal) <= 1e-9 * scale))

    iso = from_edges([], nodes="AB")
    checks["zero-degree repulsion"] = bool(np.linalg.norm(repulsion_forces(iso, [[0, 0], [3, 4]], 10.0)[0]) > 0)

    p = Fa2Params(iterations=50, seed=9, plotstep=0)
    runs = [run_layout(g, p, workers=w).final for w in (1, 1, 2, 4)]
    checks["determinism"] = all(np.array_equal(runs[0], r) for r in runs[1:])

    start = init_positions(len(g), 2)
    v = np.array([123.25, -77.5])
    a = run_layout(g, p, warm_start=start).final
    b = run_layout(g, p, warm_start=start + v).final
    checks["translation"] = bool(np.max(np.abs(b - v - a)) <= 1e-9 * (np.ptp(a) + np.abs(v).sum()))

    p0 = Fa2Params(iterations=50, seed=9, plotstep=0, edge_weight_influence=0)
    scaled = from_edges([(e.source, e.target, 7.3 * e.weight) for e in g.edges], nodes=g.ids)
    checks["delta=0 rescale"] = bool(np.array_equal(run_layout(g, p0).final, run_layout(scaled, p0).final))

    off = run_layout(g, Fa2Params(iterations=100, seed=9, plotstep=0)).final
    on = run_layout(g, Fa2Params(iterations=100, seed=9, plotstep=0, strong_gravity=True,
                                 gravity_constant=10.0)).final
    d_off, d_on = np.linalg.norm(off, axis=1).mean(), np.linalg.norm(on, axis=1).mean()
    checks["strong gravity"] = bool(d_on < d_off)

    failed = [k for k, ok in checks.items() if not ok]
    report(4, not failed, f"{len(checks) - len(failed)}/{len(checks)} properties hold"
                          f" (gravity mean radius {d_on:.1f} vs {d_off:.1f})"
                          + (f"; failed: {failed}" if failed else ""))


def test_c05_cluster_separation(report):
    t0 = time.perf_counter()
    lab = block_labels(40, 2)
    same = lab[:, None] == lab[None, :]
    upper = np.triu(np.ones((40, 40), dtype=bool), k=1)
    wins = 0
    for seed in range(100):
        g = planted_partition(40, 2, 0.5, 0.02, seed=seed)
        pos = run_layout(g, Fa2Params(iterations=200, seed=seed, plotstep=0)).final
        dist = np.linalg.norm(pos[:, None] - pos[None], axis=2)
        wins += dist[same & upper].mean() < dist[~same & upper].mean()
    elapsed = time.perf_counter() - t0
    report(5, wins >= 95 and elapsed < 60, f"{wins}/100 seeds separate clusters, {elapsed:.1f}s")


def test_c06_timeseries_stability(report):
    series = WeightedBlockSeries(n=96, blocks=6, seed=6)
    periods = [("t0", series.graph())]
    periods += [(f"t{k}", series.step(0.02)) for k in range(1, 10)]
    params = Fa2Params(iterations=100, seed=6, plotstep=0)
    chained = transition_summary(chain_layouts(periods, params, chain=True))
    fresh = transition_summary(chain_layouts(periods, params, chain=False))
    worst = max(r["relative"] for r in chained)
    smaller = all(c["mean_displacement"] < f["mean_displacement"] for c, f in zip(chained, fresh))
    best_fresh = min(r["relative"] for r in fresh)
    report(6, worst < 0.05 and smaller,
           f"chained worst {100 * worst:.2f}% of diameter; fresh best {100 * best_fresh:.2f}%; "
           f"chained smaller in every transition: {smaller}")


def test_c07_transform_identities(report):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        p = rng.normal(size=(int(rng.integers(2, 30)), 2)) * rng.uniform(0.1, 1e3)
        theta, a = rng.uniform(-360, 360), rng.uniform(0.01, 100)
        tol = 1 + np.abs(p).max()
        worst = max(worst, np.abs(rotate_positions(rotate_positions(p, theta), -theta) - p).max() / tol)
        worst = max(worst, np.abs(scale_positions(scale_positions(p, a), 1 / a) - p).max() / tol)
        d0, dr, ds = (pairwise(q) for q in (p, rotate_positions(p, theta), scale_positions(p, a)))
        mask = d0 > 0
        worst = max(worst, np.abs(dr[mask] / d0[mask] - 1).max(), np.abs(ds[mask] / (a * d0[mask]) - 1).max())
    report(7, worst <= 1e-9, f"worst identity / distance deviation {worst:.1e}")


def test_c08_renderer_contract(report):
    ns = "{http://www.w3.org/2000/svg}"
    bad = []
    for k in range(20):
        rng = np.random.default_rng(800 + k)
        g = random_graph(rng, int(rng.integers(1, 40)), self_loops=True)
        layout = rng.normal(size=(len(g), 2)) * 50
        svg = render_svg(g, layout)
        root = ET.fromstring(svg.encode())
        circles = len(root.findall(f".//{ns}circle"))
        edges = len(root.findall(f".//{ns}g[@class='edges']/{ns}line"))
        if circles != len(g) or edges != len(g.edges) or render_svg(g, layout) != svg:
            bad.append(k)
    report(8, not bad, f"{20 - len(bad)}/20 graphs parse with exact counts and identical bytes")


def test_c09_scaling_law(report):
    results = run_bench([250, 500, 1000, 2000], [100], repetitions=3, seed=0)
    slope = loglog_slopes(results)[100]
    t1000 = next(r.mean_seconds for r in results if r.n_nodes == 1000)
    times = ", ".join(f"N={r.n_nodes}: {r.mean_seconds:.2f}s" for r in results)
    report(9, 1.7 <= slope <= 2.3 and t1000 < 10.0, f"log-log slope {slope:.3f}; {times}")


def test_c10_parallel_determinism(report):
    g = erdos_renyi(500, 10, seed=10)
    p = Fa2Params(iterations=100, seed=10, plotstep=0)
    outputs = {w: format_layout(g.ids, run_layout(g, p, workers=w).final).encode() for w in (1, 2, 4)}
    ok = outputs[1] == outputs[2] == outputs[4]
    report(10, ok, "layout TSV bytes identical for workers 1, 2, 4" if ok else "TSVs differ across worker counts")
