"""End-to-end composition: load a store, build the link graph, decorate.

A Snapshot is an immutable view of everything the store held at load time:
parsed entities, the content graph (metadata statements), and the full
link graph (content plus reified link projections).  The CLI and server
both run requests against a snapshot; the server swaps in a fresh one on
reload.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from semlink import store as storage
from semlink.contexts import (
    LinkContext, SelectedLink, compose_contexts, filter_by_document,
    parse_context,
)
from semlink.links import Linkbase, parse_linkbase, project_linkbase
from semlink.metadata import MetadataRecord, metadata_to_rdf, parse_metadata
from semlink.rdf import Graph, ParseError, SemlinkError, Term, iri
from semlink.render import decorate, plan_decorations
from semlink.store import Store

log = logging.getLogger(__name__)

STORE_BASE = "store:/"


def document_iri(path: str) -> Term:
    """Logical store path -> the IRI hrefs and metadata use for it."""
    return iri(STORE_BASE + path + ".xml")


class UnknownDocument(SemlinkError):
    """No document stored at the requested path."""


class UnknownContext(SemlinkError):
    """No link context stored at the requested path."""


class InvalidContext(SemlinkError):
    """The stored context exists but cannot be used; carries the diagnostic."""


@dataclass
class Snapshot:
    documents: dict[str, str] = field(default_factory=dict)
    metadata: dict[str, MetadataRecord] = field(default_factory=dict)
    linkbases: dict[str, Linkbase] = field(default_factory=dict)
    contexts: dict[str, LinkContext] = field(default_factory=dict)
    errors: dict[str, str] = field(default_factory=dict)
    content_graph: Graph = field(default_factory=Graph)
    graph: Graph = field(default_factory=Graph)
    merged_linkbase: Linkbase = field(default_factory=lambda: Linkbase(STORE_BASE))


def build_snapshot(store: Store) -> Snapshot:
    """Parse every stored entity and project the link graph.

    Entities that fail to parse are recorded under errors keyed by path and
    skipped; one bad file must not take the whole store down.
    """
    snap = Snapshot()
    for path, kind in store.list():
        text = store.get(path, kind)
        try:
            if kind == storage.DOCUMENT:
                snap.documents[path] = text
            elif kind == storage.METADATA:
                snap.metadata[path] = parse_metadata(text)
            elif kind == storage.LINKBASE:
                base = STORE_BASE + path + ".lb.xml"
                snap.linkbases[path] = parse_linkbase(text, base=base)
            elif kind == storage.CONTEXT:
                base = STORE_BASE + path + ".ctx.xml"
                snap.contexts[path] = parse_context(text, base=base)
        except ParseError as exc:
            snap.errors[path] = str(exc)
            log.warning("skipping %s %s: %s", kind, path, exc)

    triples = []
    for record in snap.metadata.values():
        triples.extend(metadata_to_rdf(record))
    snap.content_graph = Graph(triples)

    merged = Linkbase(STORE_BASE)
    graph = snap.content_graph
    for _path, linkbase in sorted(snap.linkbases.items()):
        merged.anchors.extend(linkbase.anchors)
        merged.links.extend(linkbase.links)
        graph = graph.union(project_linkbase(
            linkbase, content_graph=snap.content_graph))
    snap.merged_linkbase = merged
    snap.graph = graph
    return snap


def _active_contexts(snap: Snapshot, context_paths: list[str]) -> list[LinkContext]:
    active = []
    for path in context_paths:
        ctx = snap.contexts.get(path)
        if ctx is None:
            if path in snap.errors:
                raise InvalidContext(f"context {path!r}: {snap.errors[path]}")
            raise UnknownContext(f"no link context at {path!r}")
        active.append(ctx)
    return active


def select_links(snap: Snapshot, document_path: str,
                 context_paths: list[str]) -> list[SelectedLink]:
    """Links the active contexts pick that start on the given document."""
    if document_path not in snap.documents:
        raise UnknownDocument(f"no document at {document_path!r}")
    active = _active_contexts(snap, context_paths)
    selected = compose_contexts(active, snap.graph)
    return filter_by_document(
        selected, document_iri(document_path), snap.merged_linkbase)


def decorate_document(snap: Snapshot, document_path: str,
                      context_paths: list[str]) -> str:
    """The document with all applicable links materialized.

    With no active contexts the stored text passes through verbatim.
    """
    if document_path not in snap.documents:
        raise UnknownDocument(f"no document at {document_path!r}")
    text = snap.documents[document_path]
    if not context_paths:
        return text
    applicable = select_links(snap, document_path, context_paths)
    decorations = plan_decorations(
        document_iri(document_path), applicable, snap.merged_linkbase)
    return decorate(text, decorations)
