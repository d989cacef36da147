"""Wall-clock scaling of the layout engine on Erdos-Renyi graphs (mean degree 10).

Writes a CSV with one row per (N, iterations) cell and prints the log-log slope
of time against N for each iteration count.
"""

import argparse
import sys

from fa2layout.bench import format_results, loglog_slopes, run_bench


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nodes", default="250,500,1000,2000")
    ap.add_argument("--iterations", default="100,200,400")
    ap.add_argument("--repetitions", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("-o", "--output", default="scaling.csv")
    args = ap.parse_args(argv)

    nodes = [int(x) for x in args.nodes.split(",")]
    iters = [int(x) for x in args.iterations.split(",")]

    def progress(r):
        print(f"N={r.n_nodes} iterations={r.iterations}: {r.mean_seconds:.3f}s "
              f"[{r.ci95_low:.3f}, {r.ci95_high:.3f}]", file=sys.stderr)

    results = run_bench(nodes, iters, args.repetitions, seed=args.seed, workers=args.workers,
                        progress=progress)
    with open(args.output, "w") as fh:
        fh.write(format_results(results))
    for it, slope in sorted(loglog_slopes(results).items()):
        print(f"iterations={it}: log-log slope {slope:.3f}")


if __name__ == "__main__":
    main()
