"""Command-line front end: ``nobelnet <subcommand> [options]``.

Every subcommand writes tidy CSV (or DOT/GraphML) either to ``--out DIR``
or, without ``--out``, its main table to stdout. Options may also come from
a ``--config`` file of ``key = value`` lines; flags on the command line win.
"""

from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from . import affiliation, baseline, construct, dynamics, harvest, metrics
from .core import DatasetError, GenealogyGraph, load_dataset, validate, write_edges, write_nodes
from .export import export_dot, export_graphml

ENV_DATA = "NOBELNET_DATA"
EXIT_OK, EXIT_DATA, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return f"{x:.12g}"
    return "" if x is None else str(x)


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(x) for x in row])
    return buf.getvalue()


@dataclass
class Context:
    args: argparse.Namespace
    universe: GenealogyGraph
    cohorts: dict

    def series(self) -> construct.NetworkSeries:
        return construct.build_series(self.universe, self.cohorts, self.args.depth)

    def year(self, series) -> int:
        year = self.args.year if self.args.year is not None else series.years[-1]
        if year < series.years[0]:
            raise UsageError(f"--year {year} is before the first award year {series.years[0]}")
        return year


def resolve_dataset(name: str | None) -> Path:
    """A directory path, a bundled dataset name, or the env default."""
    if name is None:
        name = os.environ.get(ENV_DATA)
        if not name:
            raise UsageError(f"no dataset given (use --dataset or set {ENV_DATA})")
    path = Path(name)
    if path.is_dir():
        return path
    bundled = resources.files("nobelnet") / "data" / name.lower()
    if bundled.is_dir():
        return Path(str(bundled))
    raise UsageError(f"dataset not found: {name}")


def _load(args) -> Context:
    nodes = Path(args.nodes) if args.nodes else None
    edges = Path(args.edges) if args.edges else None
    cohorts_path = Path(args.cohorts) if args.cohorts else None
    if nodes is None or edges is None:
        root = resolve_dataset(args.dataset)
        nodes = nodes or root / "nodes.csv"
        edges = edges or root / "edges.csv"
        if cohorts_path is None and (root / "cohorts.csv").exists():
            cohorts_path = root / "cohorts.csv"
    for p in (nodes, edges, cohorts_path, Path(args.overlay) if args.overlay else None):
        if p is not None and not p.exists():
            raise UsageError(f"missing file: {p}")
    universe = load_dataset(nodes, edges)
    if args.overlay:
        universe = construct.apply_overlay(universe, construct.load_overlay(args.overlay))
    if cohorts_path is not None:
        cohorts = construct.load_cohorts(cohorts_path, universe)
    else:
        cohorts = construct.cohorts_from_graph(universe)
    return Context(args, universe, cohorts)


def _emit(args, outputs: dict[str, str], main: str) -> None:
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for name, text in outputs.items():
            with open(out / name, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    else:
        sys.stdout.write(outputs[main])


# -- subcommands -------------------------------------------------------------

def cmd_validate(args) -> int:
    root = None if (args.nodes and args.edges) else resolve_dataset(args.dataset)
    nodes = Path(args.nodes) if args.nodes else root / "nodes.csv"
    edges = Path(args.edges) if args.edges else root / "edges.csv"
    for p in (nodes, edges):
        if not p.exists():
            raise UsageError(f"missing file: {p}")
    try:
        graph = load_dataset(nodes, edges)
    except DatasetError as exc:
        text = "".join(f"error\tload\t{p}\n" for p in exc.problems)
        _emit(args, {"validation.tsv": text}, "validation.tsv")
        return EXIT_DATA
    report = validate(graph)
    text = report.format()
    summary = f"persons={len(graph)} edges={len(graph.edges)} errors={len(report.errors)} " \
              f"warnings={len(report.warnings)}\n"
    _emit(args, {"validation.tsv": summary + (text + "\n" if text else "")}, "validation.tsv")
    return EXIT_OK if report.ok else EXIT_DATA


def cmd_build(ctx: Context) -> int:
    series = ctx.series()
    rows, members = [], []
    for snap in series:
        count, _ = dynamics.components(snap)
        rows.append((snap.year, len(snap.graph), len(snap.graph.pair_set), count,
                     len(snap.laureates())))
        members += [(snap.year, pid, reason) for pid, reason in snap.included_reason.items()]
    final = series[-1].graph
    nodes_buf, edges_buf = io.StringIO(), io.StringIO()
    write_nodes(final, nodes_buf)
    write_edges(final, edges_buf)
    _emit(ctx.args, {
        "series.csv": _csv(["year", "nodes", "edges", "components", "laureates"], rows),
        "membership.csv": _csv(["year", "node_id", "reason"], members),
        "final_nodes.csv": nodes_buf.getvalue(),
        "final_edges.csv": edges_buf.getvalue(),
    }, "series.csv")
    return EXIT_OK


def _centrality_rows(snap, measures, top):
    rows = []
    for measure in measures:
        table = metrics.rank_table(snap, measure)
        body = table.rows[:top] if top else table.rows
        for rank, pid, score in body:
            rows.append((snap.year, pid, snap.graph[pid].name, measure, score, rank))
    return rows


def cmd_centrality(ctx: Context) -> int:
    args = ctx.args
    series = ctx.series()
    measures = metrics.MEASURES if args.measure == "both" else (args.measure,)
    if args.history:
        snaps = list(series)
    else:
        snaps = [series.at(ctx.year(series))]
    rows = []
    for snap in snaps:
        rows += _centrality_rows(snap, measures, args.top)
    header = ["year", "node_id", "name", "measure", "score", "rank"]
    _emit(args, {"centrality.csv": _csv(header, rows)}, "centrality.csv")
    return EXIT_OK


def cmd_timeline(ctx: Context) -> int:
    rows = [(d.year, d.nodes_added, d.edges_added, d.total, d.components_after)
            for d in dynamics.edit_series(ctx.series())]
    header = ["year", "nodes_added", "edges_added", "total", "components"]
    _emit(ctx.args, {"timeline.csv": _csv(header, rows)}, "timeline.csv")
    return EXIT_OK


def cmd_universities(ctx: Context) -> int:
    scheme = affiliation.WeightScheme(mode=ctx.args.scheme)
    rows = affiliation.share_series(ctx.series(), scheme, ctx.args.top_k)
    _emit(ctx.args, {"universities.csv": _csv(["year", "institution", "points", "share"], rows)},
          "universities.csv")
    return EXIT_OK


def cmd_subgraph(ctx: Context) -> int:
    args = ctx.args
    series = ctx.series()
    snap = series.at(ctx.year(series))
    if args.root not in snap.graph:
        raise UsageError(f"--root {args.root!r} is not in the {snap.year} network")
    sub = dynamics.descendant_subgraph(snap, args.root)
    marks = dynamics.highlighted(snap, sub)
    stem = f"subgraph_{args.root}"
    outputs = {}
    if args.format in ("dot", "both"):
        outputs[f"{stem}.dot"] = export_dot(sub, marks, name=args.root)
    if args.format in ("graphml", "both"):
        outputs[f"{stem}.graphml"] = export_graphml(sub, marks)
    _emit(args, outputs, next(iter(outputs)))
    return EXIT_OK


def cmd_candidates(ctx: Context) -> int:
    series = ctx.series()
    year = ctx.year(series)
    snap = series.at(year)
    snap = construct.Snapshot(year, snap.graph, snap.included_reason)
    cands = sorted(pid for pid, p in ctx.universe.persons.items()
                   if p.candidate and not p.is_laureate_by(year))
    attached = construct.attach_candidates(snap, ctx.universe, cands, ctx.args.depth)
    rows = []
    for mode in ("network", "laureates"):
        sc = {c: metrics.incloseness(attached, c, mode) for c in cands}
        for rank, pid, score in metrics.rank_scores(sc, f"incloseness_{mode}").rows:
            rows.append((year, pid, ctx.universe[pid].name, f"incloseness_{mode}", score, rank))
    delta = metrics.counterfactual_rank_delta(attached, cands)
    old = metrics.rank_table(attached, "harmonic").ranks()
    cf = [(year, pid, snap.graph[pid].name, old[pid], old[pid] + delta[pid], delta[pid])
          for pid in snap.laureates()]
    _emit(ctx.args, {
        "candidates.csv": _csv(["year", "node_id", "name", "measure", "score", "rank"], rows),
        "counterfactual.csv": _csv(["year", "node_id", "name", "old_rank", "new_rank", "delta"], cf),
    }, "candidates.csv")
    return EXIT_OK


def cmd_baseline(ctx: Context) -> int:
    args = ctx.args
    series = ctx.series()
    year = ctx.year(series)
    reference = ctx.universe.laureates(year)
    band = baseline.baseline_band(ctx.universe, reference, trials=args.trials, level=args.level,
                                  seed=args.seed, strata_key=args.strata, variant=args.variant)
    hist = band.reference
    hist_rows = [(L, hist.count(L)) for L in band.lengths] + [("unreachable", hist.unreachable)]
    band_rows = list(zip(band.lengths, band.lower, band.upper))
    _emit(args, {
        "histogram.csv": _csv(["length", "count"], hist_rows),
        "band.csv": _csv(["length", "lower", "upper"], band_rows),
    }, "band.csv")
    return EXIT_OK


def cmd_fetch(args) -> int:
    cfg = harvest.SourceConfig(args.source, args.base_url or "", cache_dir=args.cache_dir,
                               min_request_interval=args.interval, offline=args.offline)
    if not args.base_url and not args.offline:
        raise UsageError("--base-url is required unless --offline")
    sets, gaps = [], []
    for pid in args.ids:
        res = harvest.fetch_ancestry(cfg, pid, args.depth)
        sets.append(res.records.values())
        gaps += res.gaps
    for path in args.manual or ():
        recs = [harvest.parse_record(p.read_text(encoding="utf-8"), "manual")
                for p in sorted(Path(path).glob("*.rec"))]
        sets.append(recs)
    merged = harvest.merge_sources(sets)
    for pid, reason in gaps:
        print(f"gap\t{pid}\t{reason}", file=sys.stderr)
    for w in merged.warnings:
        print(f"warning\t{w}", file=sys.stderr)
    nodes_buf, edges_buf = io.StringIO(), io.StringIO()
    write_nodes(merged.graph, nodes_buf)
    write_edges(merged.graph, edges_buf)
    _emit(args, {"nodes.csv": nodes_buf.getvalue(), "edges.csv": edges_buf.getvalue()}, "nodes.csv")
    return EXIT_OK if not gaps else EXIT_DATA


# -- parser ------------------------------------------------------------------

def _dataset_opts(p):
    g = p.add_argument_group("dataset")
    g.add_argument("--dataset", help=f"dataset directory or bundled name (default: ${ENV_DATA})")
    g.add_argument("--nodes", help="nodes CSV (overrides --dataset)")
    g.add_argument("--edges", help="edges CSV (overrides --dataset)")


def _analysis_opts(p):
    _dataset_opts(p)
    p.add_argument("--cohorts", help="year,laureate_id CSV (default: dataset cohorts.csv "
                                     "or prize years)")
    p.add_argument("--overlay", help="action,advisor_id,student_id,kind edits to apply first")
    p.add_argument("--depth", type=int, default=construct.DEFAULT_DEPTH,
                   help="ancestor generations per laureate (default: 5)")
    p.add_argument("--year", type=int, help="analysis year (default: last award year)")


def _common(p):
    p.add_argument("--out", help="output directory (default: main table to stdout)")
    p.add_argument("--config", help="key = value defaults file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nobelnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    parser.subcommands = sub.choices

    p = sub.add_parser("validate", help="check a dataset")
    _dataset_opts(p)
    _common(p)
    p.set_defaults(handler=cmd_validate, raw=True)

    p = sub.add_parser("build", help="build the yearly network series")
    _analysis_opts(p)
    _common(p)
    p.set_defaults(handler=cmd_build)

    p = sub.add_parser("centrality", help="closeness ranks")
    _analysis_opts(p)
    p.add_argument("--measure", choices=["arithmetic", "harmonic", "both"], default="both")
    p.add_argument("--history", action="store_true", help="every award year, not just --year")
    p.add_argument("--top", type=int, default=0, help="rows per year and measure (0 = all)")
    _common(p)
    p.set_defaults(handler=cmd_centrality)

    p = sub.add_parser("timeline", help="edit distance and component counts per year")
    _analysis_opts(p)
    _common(p)
    p.set_defaults(handler=cmd_timeline)

    p = sub.add_parser("universities", help="institution points and shares")
    _analysis_opts(p)
    p.add_argument("--scheme", choices=["halving", "centrality_weighted"], default="halving")
    p.add_argument("--top-k", type=int, default=10)
    _common(p)
    p.set_defaults(handler=cmd_universities)

    p = sub.add_parser("subgraph", help="descendants of one person as DOT/GraphML")
    _analysis_opts(p)
    p.add_argument("--root", required=True)
    p.add_argument("--format", choices=["dot", "graphml", "both"], default="dot")
    _common(p)
    p.set_defaults(handler=cmd_subgraph)

    p = sub.add_parser("candidates", help="candidate incloseness and counterfactual ranks")
    _analysis_opts(p)
    _common(p)
    p.set_defaults(handler=cmd_candidates)

    p = sub.add_parser("baseline", help="laureate path histogram against stratified samples")
    _analysis_opts(p)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--level", type=float, default=0.90)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--strata", choices=list(baseline.STRATA_KEYS), default="degree_year")
    p.add_argument("--variant", choices=list(baseline.VARIANTS), default="minimum")
    _common(p)
    p.set_defaults(handler=cmd_baseline)

    p = sub.add_parser("fetch", help="harvest ancestries into a dataset")
    p.add_argument("ids", nargs="+", help="source-local person ids")
    p.add_argument("--source", choices=list(harvest.SOURCES), default="academic_tree")
    p.add_argument("--base-url", help="URL prefix or template containing {id}")
    p.add_argument("--cache-dir", default="cache")
    p.add_argument("--depth", type=int, default=construct.DEFAULT_DEPTH)
    p.add_argument("--interval", type=float, default=1.0, help="seconds between requests")
    p.add_argument("--offline", action="store_true", help="use the cache only")
    p.add_argument("--manual", action="append", help="directory of manual .rec files")
    _common(p)
    p.set_defaults(handler=cmd_fetch, raw=True)
    return parser


def read_config(path: str) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{n}: expected key = value")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


def _apply_config(parser, argv, args):
    cfg = read_config(args.config)
    sub = parser.subcommands[args.command]
    actions = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in cfg.items():
        action = actions.get(key)
        if action is None or key in ("config", "help"):
            raise UsageError(f"{args.config}: unknown key {key!r} for {args.command}")
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            if action.choices is not None and value not in action.choices:
                raise UsageError(f"{args.config}: {key} must be one of "
                                 + ", ".join(map(str, action.choices)))
            defaults[key] = value
    sub.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config:
            if not os.path.exists(args.config):
                raise UsageError(f"missing file: {args.config}")
            try:
                args = _apply_config(parser, argv, args)
            except SystemExit as exc:
                return int(exc.code or 0)
        if getattr(args, "raw", False):
            return args.handler(args)
        return args.handler(_load(args))
    except UsageError as exc:
        print(f"nobelnet: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DatasetError as exc:
        for p in exc.problems:
            print(f"nobelnet: data error: {p}", file=sys.stderr)
        return EXIT_DATA
    except (harvest.HarvestError, dynamics.NotASubgraphError) as exc:
        print(f"nobelnet: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except KeyError as exc:
        print(f"nobelnet: unknown id: {exc.args[0]}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
