"""Command line front end.

`ontoview load` runs the batch pipeline (parse, classify, build, layout)
and optionally writes SVG/DOT artifacts or a summary view; `ontoview
serve` starts the HTTP service.  Exit codes: 0 success, 1 document
problems (unreadable, unparsable, inconsistent), 2 invalid arguments.
Diagnostics go to standard error; skipped-construct records are emitted
through the `ontoview.owlfss.skips` logger.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import replace

from .config import AppConfig, ConfigError, load_config
from .graph import DetailWindow, WindowError
from .layout import LayoutConfig
from .owlfss import parse_class_expression
from .reasoner import InconsistentOntologyError
from .relevance import SummaryRequest, scorer_names, summarize
from .session import DocumentError, Engine
from .svg import export_dot, export_svg, layout_view
from .viewstate import ViewState, initial_state


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontoview", description="Ontology visualization engine")
    parser.add_argument("--config", help="path to a TOML configuration file")
    sub = parser.add_subparsers(dest="command", required=True)

    load_p = sub.add_parser("load", help="load a document and run the pipeline")
    load_p.add_argument("file", help="ontology document (functional-style syntax)")
    load_p.add_argument("--reasoner-check", action="store_true",
                        help="report consistency and unsatisfiable classes")
    load_p.add_argument("--summarize", metavar="METHOD:N",
                        help="restrict the view to a relevance summary, "
                             f"methods: {', '.join(scorer_names())}")
    load_p.add_argument("--detail-window", nargs=2, metavar=("UPPER", "LOWER"),
                        help="class expressions bounding displayed expressions")
    load_p.add_argument("--export", metavar="OUT.SVG", help="write an SVG snapshot")
    load_p.add_argument("--export-dot", metavar="OUT.DOT",
                        help="write a Graphviz rendition")
    load_p.add_argument("--stats", action="store_true",
                        help="print counts and stage timings")

    serve_p = sub.add_parser("serve", help="start the HTTP service")
    serve_p.add_argument("--host")
    serve_p.add_argument("--port", type=int)
    serve_p.add_argument("--static", help="directory of UI assets to mount at /ui")
    return parser


def _parse_summarize(value: str) -> tuple[str, int]:
    method, sep, count = value.partition(":")
    if not sep or not count.isdigit() or int(count) < 1:
        raise ValueError(f"expected METHOD:N with positive N, got {value!r}")
    if method not in scorer_names():
        raise ValueError(f"unknown summary method {method!r}")
    return method, int(count)


def _cmd_load(args, config: AppConfig) -> int:
    window = DetailWindow()
    if args.detail_window:
        try:
            window = DetailWindow(
                upper=parse_class_expression(args.detail_window[0]),
                lower=parse_class_expression(args.detail_window[1]))
        except ValueError as exc:
            print(f"ontoview: bad detail window: {exc}", file=sys.stderr)
            return 2
    summary = None
    if args.summarize:
        try:
            summary = _parse_summarize(args.summarize)
        except ValueError as exc:
            print(f"ontoview: {exc}", file=sys.stderr)
            return 2

    try:
        text = open(args.file, encoding="utf-8").read()
    except OSError as exc:
        print(f"ontoview: cannot read {args.file}: {exc}", file=sys.stderr)
        return 1

    engine = Engine(config)
    try:
        bundle = engine.load_text(text, window)
    except DocumentError as exc:
        for err in exc.errors:
            print(f"{args.file}:{err.line}:{err.column}: {err.message}",
                  file=sys.stderr)
        print(f"ontoview: {len(exc.errors)} parse error(s)", file=sys.stderr)
        return 1
    except InconsistentOntologyError as exc:
        print(f"ontoview: ontology is inconsistent: {exc}", file=sys.stderr)
        return 1
    except WindowError as exc:
        print(f"ontoview: {exc}", file=sys.stderr)
        return 2

    graph = bundle.graph
    state = initial_state(graph, step_percent=config.view.step_percent,
                          policy=config.view.policy)
    if summary is not None:
        method, n = summary
        scores = bundle.scores(method, config.relevance)
        chosen = summarize(graph, SummaryRequest(method=method, n=n), scores)
        state = replace(state, visible=frozenset(chosen))

    t0 = time.perf_counter()
    view_layout = layout_view(graph, state, LayoutConfig(sweeps=config.layout.sweeps),
                              bundle.levels)
    layout_ms = (time.perf_counter() - t0) * 1e3

    if args.reasoner_check:
        unsat = bundle.reasoner.unsatisfiable_classes()
        print("consistent: yes")
        print(f"unsatisfiable classes: {len(unsat)}")
        for iri in unsat:
            print(f"  {iri}")

    if args.stats:
        onto = bundle.ontology
        anon = sum(1 for n_ in graph.nodes.values() if n_.kind == "anonymous")
        rows = [
            ("named classes", len(onto.signature.classes)),
            ("axioms", len(onto.axioms)),
            ("skipped constructs", len(bundle.skips)),
            ("general inclusions", len(onto.gcis())),
            ("graph nodes", len(graph.nodes)),
            ("anonymous nodes", anon),
            ("isA edges", len(graph.isa_edges)),
            ("visible nodes", len(state.visible)),
        ]
        for name, value in rows:
            print(f"{name:>20}: {value}")
        for name in ("parseMs", "classifyMs", "buildMs"):
            print(f"{name:>20}: {bundle.timings[name]:.1f}")
        print(f"{'layoutMs':>20}: {layout_ms:.1f}")

    if args.export:
        doc = export_svg(state, graph, view_layout)
        with open(args.export, "w", encoding="utf-8") as fh:
            fh.write(doc)
        print(f"wrote {args.export}")
    if args.export_dot:
        with open(args.export_dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(graph, state))
        print(f"wrote {args.export_dot}")

    if not (args.stats or args.export or args.export_dot or args.reasoner_check):
        print(f"loaded {len(bundle.ontology.signature.classes)} classes, "
              f"{len(bundle.ontology.axioms)} axioms; graph has "
              f"{len(graph.nodes)} nodes, {len(graph.isa_edges)} edges")
    return 0


def _cmd_serve(args, config: AppConfig) -> int:
    import uvicorn

    from .server import create_app

    server = config.server
    if args.host:
        server = replace(server, host=args.host)
    if args.port:
        server = replace(server, port=args.port)
    if args.static:
        server = replace(server, static_dir=args.static)
    config = replace(config, server=server)
    uvicorn.run(create_app(config), host=server.host, port=server.port)
    return 0


def main(argv: list[str] | None = None) -> int:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(name)s: %(message)s"))
    skip_logger = logging.getLogger("ontoview.owlfss.skips")
    skip_logger.addHandler(handler)
    skip_logger.setLevel(logging.INFO)
    try:
        parser = _build_parser()
        args = parser.parse_args(argv)
        try:
            config = load_config(args.config)
        except ConfigError as exc:
            print(f"ontoview: {exc}", file=sys.stderr)
            return 2
        if args.command == "load":
            return _cmd_load(args, config)
        return _cmd_serve(args, config)
    finally:
        skip_logger.removeHandler(handler)


if __name__ == "__main__":
    sys.exit(main())
