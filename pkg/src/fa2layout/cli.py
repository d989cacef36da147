"""Command-line entry point: ``fa2layout {layout,timeseries,transform,render,bench}``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import bench, layout_io, render, style, timeseries, transforms
from .engine import Fa2Params, NonFiniteLayoutError, run_layout
from .graph import GraphFormatError, read_graph


class CliError(Exception):
    pass


def _point(text: str) -> tuple[float, float]:
    try:
        x, y = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y but got {text!r}") from None
    return x, y


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


class _Ordered(argparse.Action):
    """Append ``(flag, value)`` to a shared list so transforms keep command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        ops = getattr(namespace, self.dest) or []
        ops.append((self.metavar, values))
        setattr(namespace, self.dest, ops)


def _add_layout_flags(p: argparse.ArgumentParser) -> None:
    d = Fa2Params()
    g = p.add_argument_group("ForceAtlas2 parameters")
    g.add_argument("--iterations", type=int, default=d.iterations)
    g.add_argument("--plotstep", type=int, default=d.plotstep,
                   help="snapshot every N iterations (0 disables)")
    g.add_argument("--linlog", action="store_true", help="logarithmic attraction (lower --scaling to tighten)")
    g.add_argument("--linlog-weighted", action="store_true",
                   help="multiply LinLog attraction by the edge weight")
    g.add_argument("--stronggravity", action="store_true")
    g.add_argument("--gravity", type=float, default=d.gravity_constant,
                   help="gravity constant, used only with --stronggravity")
    g.add_argument("--center", type=_point, default=d.center, help="gravity center x,y")
    g.add_argument("--jittertol", type=float, default=d.tolerance, help="swinging tolerance")
    g.add_argument("--fixed-tolerance", action="store_true",
                   help="use --jittertol as-is instead of the density-adaptive rule")
    g.add_argument("--scaling", type=float, default=d.scaling_s, help="repulsion constant S")
    g.add_argument("--edge-weight-influence", type=int, choices=(0, 1), default=d.edge_weight_influence)
    g.add_argument("--speed", type=float, default=d.speed_constant, help="local speed constant")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--workers", type=int, default=1, help="threads for the repulsion pass")


def _params(args) -> Fa2Params:
    return Fa2Params(
        scaling_s=args.scaling,
        edge_weight_influence=args.edge_weight_influence,
        tolerance=args.jittertol,
        speed_constant=args.speed,
        gravity_constant=args.gravity,
        linlog=args.linlog,
        strong_gravity=args.stronggravity,
        iterations=args.iterations,
        seed=args.seed,
        center=args.center,
        plotstep=args.plotstep,
        adaptive_tolerance=not args.fixed_tolerance,
        linlog_weighted=args.linlog_weighted,
    )


def _add_render_flags(p: argparse.ArgumentParser) -> None:
    d = render.RenderSpec()
    g = p.add_argument_group("rendering")
    g.add_argument("--attributes", type=Path, help="node attribute CSV (id,label,...)")
    g.add_argument("--style", type=Path, help="JSON style file")
    g.add_argument("--color-attr", help="color nodes by this attribute")
    g.add_argument("--vertex-size-attr", help="size nodes by this numeric attribute")
    g.add_argument("--min-size", type=float, default=3.0)
    g.add_argument("--max-size", type=float, default=10.0)
    g.add_argument("--label-size", type=float, default=d.label_size)
    g.add_argument("--vertex-size", type=float, default=d.vertex_size)
    g.add_argument("--edge-arrow-size", type=float, default=d.edge_arrow_size)
    g.add_argument("--vertex-label-color", default=d.vertex_label_color)
    g.add_argument("--edge-color", default=None)
    g.add_argument("--width", type=int, default=d.width)
    g.add_argument("--height", type=int, default=d.height)
    g.add_argument("--no-labels", action="store_true")


def _render_spec(args) -> render.RenderSpec:
    return render.RenderSpec(
        label_size=args.label_size,
        vertex_size=args.vertex_size,
        edge_arrow_size=args.edge_arrow_size,
        vertex_label_color=args.vertex_label_color,
        edge_color=style.check_color(args.edge_color) if args.edge_color else None,
        width=args.width,
        height=args.height,
        show_labels=not args.no_labels,
    )


def _style(graph, args, style_file=None) -> style.StyleMap:
    smap = style.StyleMap()
    style_file = args.style or style_file
    if style_file:
        smap = style.load_style_file(style_file, graph)
    elif args.color_attr:
        smap = style.assign_node_colors(graph, args.color_attr)
    if smap.node_colors:
        smap = style.assign_edge_colors(graph, smap)
    if args.vertex_size_attr:
        smap = style.size_from_attribute(graph, args.vertex_size_attr, args.min_size, args.max_size, smap)
    return smap


def _write(text: str, path) -> None:
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# --------------------------------------------------------------------------


def cmd_layout(args) -> None:
    graph = read_graph(args.graph, args.attributes)
    warm = None
    if args.pos:
        ids, pos = layout_io.read_layout(args.pos)
        if sorted(ids) != sorted(graph.ids):
            raise CliError(f"warm start has {len(ids)} rows but graph has {len(graph)} nodes"
                           + _id_diff(graph.ids, ids))
        warm = layout_io.align_layout(graph.ids, ids, pos)
    result = run_layout(graph, _params(args), warm_start=warm, workers=args.workers)
    _write(layout_io.format_layout(graph.ids, result.final), args.output)
    if args.diagnostics:
        Path(args.diagnostics).write_text(layout_io.format_diagnostics(result.trace), encoding="utf-8")
    if args.snapshots:
        smap = _style(graph, args)
        for k, svg in render.render_snapshots(result.snapshots, graph, smap, _render_spec(args)):
            Path(render.snapshot_filename(args.snapshots, k)).write_text(svg, encoding="utf-8")


def _id_diff(expected, got) -> str:
    missing = [i for i in expected if i not in set(got)]
    extra = [i for i in got if i not in set(expected)]
    parts = []
    if missing:
        parts.append("missing: " + ", ".join(missing))
    if extra:
        parts.append("unexpected: " + ", ".join(extra))
    return ("; " + "; ".join(parts)) if parts else ""


def cmd_timeseries(args) -> None:
    manifest = timeseries.TimeSeriesManifest.load(args.manifest)
    if args.attributes:
        manifest.attributes = args.attributes
    periods = timeseries.load_periods(manifest)
    start = None
    if args.pos:
        ids, pos = layout_io.read_layout(args.pos)
        first = periods[0][1]
        start = timeseries.warm_start_from(ids, pos, first, manifest.params.seed)
    chain = manifest.chain and not args.no_chain
    layouts = timeseries.chain_layouts(periods, manifest.params, chain=chain, start=start,
                                       workers=args.workers)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    spec = _render_spec(args)
    for pl in layouts:
        layout_io.write_layout(out / f"{pl.label}.tsv", pl.graph.ids, pl.positions)
        if not args.no_render:
            smap = _style(pl.graph, args, manifest.style)
            (out / f"{pl.label}.svg").write_text(render.render_svg(pl.graph, pl.positions, smap, spec),
                                                 encoding="utf-8")
    (out / "displacement.csv").write_text(timeseries.format_displacement_report(layouts), encoding="utf-8")
    for row in timeseries.transition_summary(layouts):
        print(f"{row['from_period']} -> {row['to_period']}: mean displacement "
              f"{row['mean_displacement']:.6g} ({100 * row['relative']:.2f}% of diameter)")


def cmd_transform(args) -> None:
    ids, pos = layout_io.read_layout(args.layout)
    for op, value in args.ops or []:
        if op == "scale":
            pos = transforms.scale_positions(pos, value)
        elif op == "rotate":
            pos = transforms.rotate_positions(pos, value)
        else:
            pos = transforms.translate_to(pos, value)
    _write(layout_io.format_layout(ids, pos), args.output)


def cmd_render(args) -> None:
    graph = read_graph(args.graph, args.attributes)
    ids, pos = layout_io.read_layout(args.layout)
    if sorted(ids) != sorted(graph.ids):
        raise CliError("layout and graph node sets differ" + _id_diff(graph.ids, ids))
    pos = layout_io.align_layout(graph.ids, ids, pos)
    svg = render.render_svg(graph, pos, _style(graph, args), _render_spec(args))
    _write(svg, args.output)


def cmd_bench(args) -> None:
    def progress(r):
        print(f"n={r.n_nodes} iterations={r.iterations}: {r.mean_seconds:.4f}s "
              f"[{r.ci95_low:.4f}, {r.ci95_high:.4f}]", file=sys.stderr)

    results = bench.run_bench(args.nodes, args.iterations, args.repetitions, args.seed,
                              workers=args.workers, progress=progress)
    _write(bench.format_results(results), args.output)
    for iters, slope in bench.loglog_slopes(results).items():
        print(f"log-log slope (iterations={iters}): {slope:.3f}", file=sys.stderr)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fa2layout", description="ForceAtlas2 layouts with warm-start chaining.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("layout", help="compute a ForceAtlas2 layout")
    p.add_argument("graph", type=Path, help="edge-list or weight-matrix CSV")
    p.add_argument("-o", "--output", help="layout TSV (default: stdout)")
    p.add_argument("--pos", type=Path, help="warm-start layout TSV")
    p.add_argument("--diagnostics", type=Path, help="write per-iteration diagnostics CSV")
    p.add_argument("--snapshots", help="write <basename>_iter<k>.svg every --plotstep iterations")
    _add_layout_flags(p)
    _add_render_flags(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("timeseries", help="chain layouts across periods from a JSON manifest")
    p.add_argument("manifest", type=Path)
    p.add_argument("-o", "--output", type=Path, required=True, help="output directory")
    p.add_argument("--pos", type=Path, help="initial layout TSV for the first period")
    p.add_argument("--no-chain", action="store_true", help="fresh random start every period")
    p.add_argument("--no-render", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    _add_render_flags(p)
    p.set_defaults(func=cmd_timeseries)

    p = sub.add_parser("transform", help="scale / rotate / recenter a layout TSV (applied in flag order)")
    p.add_argument("layout", type=Path)
    p.add_argument("-o", "--output")
    p.add_argument("--scale", dest="ops", type=float, action=_Ordered, metavar="scale")
    p.add_argument("--rotate", dest="ops", type=float, action=_Ordered, metavar="rotate",
                   help="degrees counterclockwise about the centroid")
    p.add_argument("--center", dest="ops", type=_point, action=_Ordered, metavar="center",
                   help="move the centroid to x,y")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("render", help="render a graph and layout to SVG")
    p.add_argument("graph", type=Path)
    p.add_argument("layout", type=Path)
    p.add_argument("-o", "--output")
    _add_render_flags(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("bench", help="time layouts on seeded random graphs")
    p.add_argument("--nodes", type=_int_list, default=[250, 500, 1000])
    p.add_argument("--iterations", type=_int_list, default=[100])
    p.add_argument("--repetitions", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (CliError, GraphFormatError, layout_io.LayoutFileError, style.StyleError,
            timeseries.PeriodError, NonFiniteLayoutError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
