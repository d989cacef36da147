"""Layout stability across a sequence of perturbed networks, chained vs fresh start.

Two graph models are compared: a dense weighted block network whose weights are
re-drawn for a small fraction of pairs each period, and a sparse unweighted
planted partition where a few edges are rewired each period. Prints the mean
node displacement per transition as a percentage of the layout diameter.
"""

import argparse

import numpy as np

from fa2layout.engine import Fa2Params
from fa2layout.graph import from_edges
from fa2layout.synth import WeightedBlockSeries, planted_partition
from fa2layout.timeseries import chain_layouts, transition_summary


def weighted_series(periods, seed, fraction):
    series = WeightedBlockSeries(seed=seed)
    out = [("t0", series.graph())]
    out += [(f"t{k}", series.step(fraction)) for k in range(1, periods)]
    return out


def sparse_series(periods, seed, fraction):
    rng = np.random.default_rng(seed)
    g = planted_partition(96, blocks=6, p_in=0.3, p_out=0.01, seed=seed)
    ids, edges = g.ids, [(e.source, e.target) for e in g.edges]
    out = [("t0", g)]
    for k in range(1, periods):
        keep = rng.random(len(edges)) >= fraction
        edges = [e for e, kp in zip(edges, keep) if kp]
        while len(edges) < len(g.edges):
            a, b = rng.choice(len(ids), 2, replace=False)
            edges.append((ids[a], ids[b]))
        out.append((f"t{k}", from_edges([(a, b, 1.0) for a, b in edges], nodes=ids, directed=False)))
    return out


def report(name, periods, params):
    chained = transition_summary(chain_layouts(periods, params, chain=True))
    fresh = transition_summary(chain_layouts(periods, params, chain=False))
    print(f"\n{name}")
    print(f"{'transition':<12}{'chained %':>12}{'fresh %':>12}")
    for c, f in zip(chained, fresh):
        print(f"{c['from_period'] + '->' + c['to_period']:<12}"
              f"{100 * c['relative']:>12.2f}{100 * f['relative']:>12.2f}")
    print(f"max chained {100 * max(r['relative'] for r in chained):.2f}%")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--periods", type=int, default=10)
    ap.add_argument("--iterations", type=int, default=100)
    ap.add_argument("--fraction", type=float, default=0.02)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    params = Fa2Params(iterations=args.iterations, seed=args.seed, plotstep=0)
    report("weighted block network", weighted_series(args.periods, args.seed, args.fraction), params)
    report("sparse planted partition", sparse_series(args.periods, args.seed, args.fraction), params)


if __name__ == "__main__":
    main()
