"""Command-line front end.

Subcommands cover the authoring loop: ingest files into a store, project
the link graph to N-Triples, run ad-hoc queries, apply contexts to a
document, and serve the whole store over HTTP.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 evaluation error.
"""

from __future__ import annotations

import argparse
import sys
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Optional

from semlink import store as storage
from semlink.metadata import parse_metadata
from semlink.contexts import parse_context
from semlink.links import parse_linkbase, project_linkbase
from semlink.ntriples import format_term, parse_ntriples, serialize_ntriples
from semlink.pipeline import build_snapshot, decorate_document
from semlink.rdf import ParseError, SemlinkError
from semlink.rdql import evaluate, parse_query
from semlink.store import Store, classify

OK = 0
USAGE = 1
PARSE = 2
EVAL = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad flags; 2 means parse error here, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(USAGE)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="semlink",
                     description="Adaptive linking: store, project, query, apply.")
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="parse files and copy them into a store")
    ingest.add_argument("--store", required=True, help="store root directory")
    ingest.add_argument("files", nargs="+", help="entity files (.xml, .meta.xml, .lb.xml, .ctx.xml)")

    project = sub.add_parser("project", help="project stored linkbases and metadata to N-Triples")
    project.add_argument("--store", required=True)
    project.add_argument("--mode", choices=["reified", "simple"], default="reified")
    project.add_argument("--format", choices=["nt"], default="nt")
    project.add_argument("--out", help="output file (default: standard output)")

    query = sub.add_parser("query", help="run a query file against an N-Triples graph")
    query.add_argument("graph", help="N-Triples file")
    query.add_argument("queryfile", help="file holding one query")
    query.add_argument("--format", choices=["tsv"], default="tsv")

    apply_ = sub.add_parser("apply", help="decorate a stored document with active contexts")
    apply_.add_argument("--store", required=True)
    apply_.add_argument("document", help="logical document path in the store")
    apply_.add_argument("--context", action="append", default=[],
                        help="logical context path; repeatable")
    apply_.add_argument("--format", choices=["xml"], default="xml")

    serve = sub.add_parser("serve", help="serve the store over HTTP")
    serve.add_argument("--store", required=True)
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    return parser


_VALIDATORS = {
    storage.DOCUMENT: ET.fromstring,
    storage.METADATA: parse_metadata,
    storage.LINKBASE: parse_linkbase,
    storage.CONTEXT: parse_context,
    storage.GRAPH: parse_ntriples,
}


def _logical_path(file: Path, store_root: Path) -> Optional[tuple[str, str]]:
    hit = classify(file.name)
    if hit is None:
        return None
    name, kind = hit
    try:
        rel = file.resolve().relative_to(store_root.resolve())
        prefix = "/".join(rel.parts[:-1])
    except ValueError:
        prefix = ""
    return (f"{prefix}/{name}" if prefix else name), kind


def cmd_ingest(args) -> int:
    store = Store(args.store)
    status = OK
    for name in args.files:
        file = Path(name)
        located = _logical_path(file, Path(args.store))
        if located is None:
            print(f"ERROR {name}: unrecognized extension", file=sys.stderr)
            status = max(status, USAGE)
            continue
        path, kind = located
        try:
            text = file.read_text(encoding="utf-8")
            _VALIDATORS[kind](text)
        except OSError as exc:
            print(f"ERROR {name}: {exc}", file=sys.stderr)
            status = max(status, EVAL)
            continue
        except (ParseError, ET.ParseError) as exc:
            print(f"ERROR {name}: {exc}", file=sys.stderr)
            status = max(status, PARSE)
            continue
        store.put(path, kind, text)
        print(f"OK {path} ({kind})")
    return status


def cmd_project(args) -> int:
    snap = build_snapshot(Store(args.store))
    graph = snap.content_graph
    for _path, linkbase in sorted(snap.linkbases.items()):
        graph = graph.union(project_linkbase(
            linkbase, mode=args.mode, content_graph=snap.content_graph))
    text = serialize_ntriples(graph)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return OK


def cmd_query(args) -> int:
    try:
        graph = parse_ntriples(Path(args.graph).read_text(encoding="utf-8"))
        query = parse_query(Path(args.queryfile).read_text(encoding="utf-8"))
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    try:
        bindings = evaluate(query, graph)
    except SemlinkError as exc:
        print(f"evaluation error: {exc}", file=sys.stderr)
        return EVAL
    for binding in bindings:
        line = "\t".join(f"{name}={format_term(term)}"
                         for name, term in sorted(binding.items()))
        print(line)
    return OK


def cmd_apply(args) -> int:
    try:
        snap = build_snapshot(Store(args.store))
        decorated = decorate_document(snap, args.document, args.context)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except SemlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EVAL
    sys.stdout.write(decorated)
    if not decorated.endswith("\n"):
        sys.stdout.write("\n")
    return OK


def cmd_serve(args) -> int:
    import uvicorn

    from semlink.server import create_app
    uvicorn.run(create_app(args.store), host=args.host, port=args.port)
    return OK


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE
    handlers = {
        "ingest": cmd_ingest,
        "project": cmd_project,
        "query": cmd_query,
        "apply": cmd_apply,
        "serve": cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except SemlinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EVAL


if __name__ == "__main__":
    raise SystemExit(main())
