"""``hyperview`` command line: each stage standalone, or everything with ``all``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .expand import CLIQUE, EXTRA_NODE, ExpandedGraph, expand
from .hypergraph import Hypergraph, build_hypergraph
from .ingest import extract_attribute_sets, filter_records, read_corpus, write_corpus
from .layout import LayoutParams, LayoutState, force_atlas2, louvain, transfer_coordinates
from .render import DEFAULT_PALETTE, RenderStyle, clarity, entropy, render_view
from .report import ViewReport, aggregate_csv, aggregate_reports, emit_gain_scatter, stats_tables

log = logging.getLogger("hyperview")

VIEW_CHOICES = {"clique": CLIQUE, "extra": EXTRA_NODE, "extra_node": EXTRA_NODE}


def _read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8", newline="\n")


def _palette(text):
    if not text:
        return DEFAULT_PALETTE
    colors = []
    for item in text.split(","):
        item = item.strip().lstrip("#")
        if len(item) != 6:
            raise argparse.ArgumentTypeError(f"bad colour {item!r}; use RRGGBB")
        colors.append(tuple(int(item[i:i + 2], 16) for i in (0, 2, 4)))
    return tuple(colors)


def _layout_params(args) -> LayoutParams:
    return LayoutParams(iterations=args.iterations, kr=args.kr, gravity=args.gravity,
                        edge_weight_influence=args.edge_weight_influence, seed=args.seed)


def _style(args) -> RenderStyle:
    return RenderStyle(width=args.width, height=args.height, node_radius=args.node_radius,
                       extra_node_radius=args.extra_node_radius, palette=args.palette)


def _add_layout_flags(p):
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--kr", type=float, default=10.0, help="repulsion scaling")
    p.add_argument("--gravity", type=float, default=1.0)
    p.add_argument("--edge-weight-influence", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)


def _add_render_flags(p):
    p.add_argument("--width", type=int, default=2000)
    p.add_argument("--height", type=int, default=2000)
    p.add_argument("--node-radius", type=int, default=6)
    p.add_argument("--extra-node-radius", type=int, default=3)
    p.add_argument("--palette", type=_palette, default=DEFAULT_PALETTE,
                   help="comma-separated RRGGBB colours (no black)")
    p.add_argument("--png", action="store_true", help="also write a PNG next to each PPM")


# -- subcommands -------------------------------------------------------------------


def cmd_ingest(args):
    records = read_corpus(args.corpus)
    if args.query:
        records = filter_records(records, args.query)
    write_corpus(records, args.out)
    print(f"{len(records)} record(s) -> {args.out}")


def cmd_build(args):
    records = read_corpus(args.records)
    h = build_hypergraph(extract_attribute_sets(records, args.attr), args.attr)
    _write_text(args.out, h.dumps())
    print(f"{h.n_nodes} node(s), {h.n_hyperedges} hyperedge(s) -> {args.out}")


def cmd_expand(args):
    h = Hypergraph.from_json(_read_json(args.hypergraph))
    g = expand(h, VIEW_CHOICES[args.view])
    _write_text(args.out, g.dumps())
    print(f"{g.view_kind}: {g.n_nodes} node(s), {g.n_edges} edge(s) -> {args.out}")


def cmd_layout(args):
    g = ExpandedGraph.from_json(_read_json(args.graph))
    params = _layout_params(args)
    initial = LayoutState.from_json(_read_json(args.initial)) if args.initial else None
    labels, q, _ = louvain(g, args.seed)
    state = force_atlas2(g, params, initial, labels)
    _write_text(args.out, state.dumps())
    print(f"layout of {g.n_nodes} node(s), modularity {q:.4f} -> {args.out}")


def cmd_transfer(args):
    state = LayoutState.from_json(_read_json(args.layout))
    src = ExpandedGraph.from_json(_read_json(args.from_graph))
    dst = ExpandedGraph.from_json(_read_json(args.to_graph))
    moved = transfer_coordinates(state, src, dst)
    _write_text(args.out, moved.dumps())
    print(f"transferred {src.view_kind} -> {dst.view_kind} -> {args.out}")


def cmd_render(args):
    g = ExpandedGraph.from_json(_read_json(args.graph))
    state = LayoutState.from_json(_read_json(args.layout))
    img = render_view(g, state, _style(args))
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    img.save_ppm(args.out)
    if args.png:
        img.save_png(str(Path(args.out).with_suffix(".png")))
    c = clarity(img)
    print(json.dumps({"image": str(args.out), "clarity": c, "entropy": entropy(c)}))


def cmd_report_stats(args):
    h = Hypergraph.from_json(_read_json(args.hypergraph))
    tables = stats_tables(h, tuple(args.fit_range) if args.fit_range else None)
    out = Path(args.out)
    _write_text(out / "histogram.csv", tables["histogram_csv"])
    _write_text(out / "gain_table.csv", tables["gain_csv"])
    _write_text(out / "gain_table.txt", tables["gain_text"])
    _write_text(out / "fit.json", json.dumps(tables["fit"], sort_keys=True, indent=1))
    sys.stdout.write(tables["gain_text"] + "\n" + tables["fit_text"])


def cmd_report_aggregate(args):
    reports = [ViewReport.from_json(_read_json(p)) for p in args.reports]
    out = Path(args.out)
    _write_text(out / "aggregate.csv", aggregate_csv(aggregate_reports(reports)))
    _write_text(out / "gain_scatter.csv", emit_gain_scatter(reports))
    print(f"aggregated {len(reports)} report(s) -> {out}")


def cmd_all(args):
    from .pipeline import RunConfig, run_pipeline

    protocols = (CLIQUE, EXTRA_NODE) if args.layout_on == "both" else (VIEW_CHOICES[args.layout_on],)
    if args.transfer_to not in (None, "none"):
        target = VIEW_CHOICES[args.transfer_to]
        if len(protocols) != 1 or protocols[0] == target:
            raise ValueError("--transfer-to must name the view opposite to a single --layout-on view")
    config = RunConfig(
        corpus=args.corpus,
        out_dir=args.out,
        query=args.query,
        attr_types=tuple(a.strip() for a in args.attr.split(",") if a.strip()),
        layout=_layout_params(args),
        style=_style(args),
        layout_on=protocols,
        search_id=args.search_id,
        transfer=args.transfer_to != "none",
        png=args.png,
    )
    reports = run_pipeline(config)
    base = Path(args.out) / config.resolved_search_id()
    _write_text(base / "gain_scatter.csv", emit_gain_scatter(reports))
    for r in reports:
        print(f"{r.attr_type}: {r.collaborations} collaborations, "
              f"edges {r.clique_edges}/{r.extra_edges}, G_edge {r.edge_gain}")


def cmd_synth(args):
    from .synthetic import generate_corpus

    records = generate_corpus(args.records, seed=args.seed)
    write_corpus(records, args.out)
    print(f"{len(records)} synthetic record(s) -> {args.out}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hyperview", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="filter a corpus with a boolean query")
    p.add_argument("--corpus", required=True)
    p.add_argument("--query")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("build", help="records -> weighted hypergraph JSON")
    p.add_argument("--records", required=True)
    p.add_argument("--attr", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("expand", help="hypergraph -> clique or extra-node graph JSON")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--view", choices=sorted(VIEW_CHOICES), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("layout", help="Louvain + ForceAtlas2 on one graph view")
    p.add_argument("--graph", required=True)
    p.add_argument("--initial", help="layout JSON to start from")
    p.add_argument("--out", required=True)
    _add_layout_flags(p)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("transfer", help="carry a layout to the other view")
    p.add_argument("--layout", required=True)
    p.add_argument("--from-graph", required=True)
    p.add_argument("--to-graph", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_transfer)

    p = sub.add_parser("render", help="rasterise a positioned view to PPM and print its metrics")
    p.add_argument("--graph", required=True)
    p.add_argument("--layout", required=True)
    p.add_argument("--out", required=True)
    _add_render_flags(p)
    p.set_defaults(func=cmd_render)

    rp = sub.add_parser("report", help="statistics and aggregation")
    rsub = rp.add_subparsers(dest="report_command", required=True)
    p = rsub.add_parser("stats", help="size histogram, power-law fit, potential-gain table")
    p.add_argument("--hypergraph", required=True)
    p.add_argument("--fit-range", type=int, nargs=2, metavar=("KMIN", "KMAX"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report_stats)
    p = rsub.add_parser("aggregate", help="summaries across many report.json files")
    p.add_argument("reports", nargs="+")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report_aggregate)

    p = sub.add_parser("all", help="full pipeline with both layout protocols")
    p.add_argument("--corpus", required=True)
    p.add_argument("--query")
    p.add_argument("--attr", default="organisation", help="comma-separated attribute types")
    p.add_argument("--out", required=True)
    p.add_argument("--search-id")
    p.add_argument("--layout-on", choices=["both", "clique", "extra"], default="both")
    p.add_argument("--transfer-to", choices=["clique", "extra", "none"], default=None,
                   help="'none' renders only the view each layout was computed on")
    _add_layout_flags(p)
    _add_render_flags(p)
    p.set_defaults(func=cmd_all)

    p = sub.add_parser("synth", help="write a seeded synthetic corpus")
    p.add_argument("--records", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except (ValueError, KeyError, OSError, RuntimeError) as exc:
        log.error("%s", exc)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
