"""Link contexts: descriptive metadata plus a stored query over the link graph.

A context document is RDF/XML carrying who wrote it and what it is for,
with the selection query embedded as CDATA.  Contexts never create links
or anchors; evaluating one merely extracts reified links already present
in the graph.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional

from semlink.links import Linkbase
from semlink.rdf import (
    DC_NS, DC_TITLE, Graph, IncompleteReification, MIR_NS, ParseError,
    SemlinkError, Term, Triple, TriplePattern, Var, iri, resolve_iri, unreify,
)
from semlink.rdql import Query, evaluate, parse_query

log = logging.getLogger(__name__)

RDF_SYNTAX_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"

# Context documents in the wild write the mir namespace with and without
# the trailing hash; element matching accepts both spellings.
_MIR_SPELLINGS = (MIR_NS, MIR_NS.rstrip("#"))


class InvalidQuery(ParseError):
    """The embedded query text does not parse."""


class MissingDescriptor(ParseError):
    """A context must say who wrote it (creator) and what for (title)."""


class UnknownAnchor(SemlinkError):
    """A selected link references an anchor the linkbase does not declare."""


@dataclass(frozen=True)
class LinkContext:
    id: Term
    creator: str
    title: str
    query_text: str
    query: Query
    title_language: Optional[str] = None
    description: Optional[str] = None
    description_language: Optional[str] = None


@dataclass(frozen=True)
class SelectedLink:
    """A link a context picked out: its id, its unreified inner statement
    (subject = target anchor, object = source anchor), and its title."""
    link: Term
    inner: Triple
    title: Optional[str] = None


def _split_tag(tag) -> tuple[str, str]:
    if not isinstance(tag, str) or not tag.startswith("{"):
        return "", tag if isinstance(tag, str) else ""
    namespace, _, local = tag[1:].partition("}")
    return namespace, local


def parse_context(rdf_xml: str, base: Optional[str] = None) -> LinkContext:
    """Parse a link-context document.

    Expected shape: an rdf:RDF root holding one rdf:Description with
    dc creator/title (+ optional description) children and one
    mir link-context child whose body is the query.  Descriptor element
    names are matched case-insensitively (legacy files capitalize them).
    """
    try:
        root = ET.fromstring(rdf_xml)
    except ET.ParseError as exc:
        raise ParseError(f"context is not well-formed XML: {exc}") from None
    if _split_tag(root.tag) != (RDF_SYNTAX_NS, "RDF"):
        raise ParseError("expected an rdf:RDF root element")

    descriptions = [e for e in root
                    if _split_tag(e.tag) == (RDF_SYNTAX_NS, "Description")]
    if len(descriptions) != 1:
        raise ParseError(
            f"expected exactly one rdf:Description, found {len(descriptions)}")
    description = descriptions[0]

    about = description.get(f"{{{RDF_SYNTAX_NS}}}about")
    if about is None:
        raise ParseError("rdf:Description needs an rdf:about id")
    context_id = iri(resolve_iri(base or "store:/", about))

    creator = title = title_language = None
    describes = describes_language = None
    query_text = None
    for child in description:
        namespace, local = _split_tag(child.tag)
        text = (child.text or "").strip()
        if namespace == DC_NS:
            name = local.lower()
            if name == "creator":
                creator = text
            elif name == "title":
                title = text
                title_language = child.get(XML_LANG)
            elif name == "description":
                describes = text
                describes_language = child.get(XML_LANG)
        elif namespace in _MIR_SPELLINGS and local == "link-context":
            if query_text is not None:
                raise ParseError("multiple link-context queries in one context")
            query_text = text

    if query_text is None:
        raise ParseError("context has no link-context query element")
    if not creator:
        raise MissingDescriptor("context has no creator")
    if not title:
        raise MissingDescriptor("context has no title")
    try:
        query = parse_query(query_text)
    except ParseError as exc:
        raise InvalidQuery(f"embedded query does not parse: {exc}") from None

    return LinkContext(
        id=context_id,
        creator=creator,
        title=title,
        title_language=title_language,
        description=describes or None,
        description_language=describes_language,
        query_text=query_text,
        query=query,
    )


def _link_title(graph: Graph, link: Term) -> Optional[str]:
    for binding in graph.match(TriplePattern(link, DC_TITLE, Var("t"))):
        if binding["t"].kind == "literal":
            return binding["t"].value
    return None


def evaluate_context(ctx: LinkContext, link_graph: Graph) -> list[SelectedLink]:
    """Run the context's query and keep every bound term that is a link.

    A term counts as a link when it unreifies, i.e. the graph carries its
    rdf:subject/rdf:predicate/rdf:object description.  Bindings that bind
    no link at all are dropped (with a warning tally); the same link
    selected through several bindings appears once.
    """
    selected: list[SelectedLink] = []
    seen: set[Term] = set()
    linkless = 0
    for binding in evaluate(ctx.query, link_graph):
        bound_a_link = False
        for term in binding.values():
            if term.kind == "literal":
                continue
            if term in seen:
                bound_a_link = True
                continue
            try:
                inner = unreify(link_graph, term)
            except IncompleteReification:
                continue
            bound_a_link = True
            seen.add(term)
            selected.append(SelectedLink(
                link=term, inner=inner, title=_link_title(link_graph, term)))
        if not bound_a_link:
            linkless += 1
    if linkless:
        log.warning("context %s: %d binding(s) bound no link",
                    ctx.id.value, linkless)
    return selected


def filter_by_document(selected: list[SelectedLink], document: Term,
                       linkbase: Linkbase) -> list[SelectedLink]:
    """Keep links that start on the given document.

    The inner statement's object is the source anchor; a link survives iff
    that anchor's owning resource is the document being viewed.
    """
    owners: dict[Term, Term] = {a.id: a.resource for a in linkbase.anchors}
    kept = []
    for sel in selected:
        source = sel.inner.object
        if source not in owners:
            raise UnknownAnchor(
                f"link {sel.link.value} starts at undeclared anchor {source.value}")
        if owners[source] == document:
            kept.append(sel)
    return kept


def compose_contexts(contexts: list[LinkContext],
                     link_graph: Graph) -> list[SelectedLink]:
    """Union of several active contexts' selections, keyed by link id.

    When two contexts pick the same link, the earlier context's view of it
    wins; ordering is context order, then per-context selection order.
    """
    combined: list[SelectedLink] = []
    seen: set[Term] = set()
    for ctx in contexts:
        for sel in evaluate_context(ctx, link_graph):
            if sel.link not in seen:
                seen.add(sel.link)
                combined.append(sel)
    return combined
