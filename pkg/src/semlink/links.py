"""Links: typed, directed connections between anchors, stored in linkbases.

A linkbase is an XML document holding extended links: locator children name
anchors (href + label), arc children connect labels.  Arcs expand to one
Link per (from-locator, to-locator) pair.

Projection to RDF has two modes.  Reified mode encodes each link as a
higher-order statement: the link id reifies the *inner statement*
``(to-anchor, arcrole, from-anchor)`` -- the target anchor is the subject,
offering the arcrole relation to the source anchor as object.  This is
deliberate and easy to get backwards.  Simple mode harvests one plain
triple ``(from-anchor, arcrole, to-anchor)`` per link and drops titles:
it cannot say anything *about* the link.
"""

from __future__ import annotations

import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from semlink.anchors import Anchor, derive_anchor_descriptors, split_href
from semlink.rdf import (
    DC_CREATOR, DC_TITLE, Graph, ParseError, SemlinkError, Term, Triple,
    iri, literal, reify, resolve_iri,
)

log = logging.getLogger(__name__)

XLINK_NS = "http://www.w3.org/1999/xlink"
XML_BASE = "{http://www.w3.org/XML/1998/namespace}base"
DC_ELEM_NS = "http://purl.org/dc/elements/1.1/"
XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"

UNI = "uni"
BI = "bi"

REIFIED = "reified"
SIMPLE = "simple"


class DanglingLabel(ParseError):
    """An arc references a label no locator declares."""


class MissingHref(ParseError):
    """A locator has no href and therefore anchors nothing."""


class MissingArcrole(SemlinkError):
    """The arc gives no relation type, so no predicate exists to project."""


@dataclass(frozen=True)
class Link:
    id: Term
    from_anchor: Term
    to_anchor: Term
    arcrole: Optional[Term]
    title: Optional[str] = None
    title_language: Optional[str] = None
    creator: Optional[str] = None
    direction: str = UNI

    def __post_init__(self):
        if self.direction not in (UNI, BI):
            raise ValueError(f"direction must be uni or bi, got {self.direction!r}")


@dataclass
class Linkbase:
    base: str
    anchors: list[Anchor] = field(default_factory=list)
    links: list[Link] = field(default_factory=list)

    def anchor(self, anchor_id: Term) -> Anchor:
        for a in self.anchors:
            if a.id == anchor_id:
                return a
        raise KeyError(anchor_id.value)


def _local(tag) -> str:
    if not isinstance(tag, str):
        return ""
    return tag.rpartition("}")[2]


def _xattr(elem: ET.Element, name: str) -> Optional[str]:
    """Attribute lookup, xlink-qualified first, bare as fallback."""
    value = elem.get(f"{{{XLINK_NS}}}{name}")
    if value is None:
        value = elem.get(name)
    return value


def _mint(base: str, explicit: Optional[str], fallback: str) -> Term:
    if explicit is None:
        return iri(resolve_iri(base, "#" + fallback))
    if ":" in explicit:
        return iri(explicit)
    return iri(resolve_iri(base, "#" + explicit))


def _parse_locator(elem: ET.Element, base: str, ordinal: int) -> Anchor:
    href = _xattr(elem, "href")
    if href is None:
        raise MissingHref(f"locator #{ordinal} has no href")
    resource_ref, selector = split_href(href)
    resource = iri(resolve_iri(base, resource_ref))
    return Anchor(
        id=_mint(base, elem.get("id"), f"anchor-{ordinal}"),
        resource=resource,
        selector=selector,
        title=_xattr(elem, "title"),
        label=_xattr(elem, "label"),
    )


def _arc_titles(elem: ET.Element) -> tuple[Optional[str], Optional[str]]:
    """First title (and its language) from the attribute or title children.

    One title per language is the model's capacity; anything beyond the
    first is dropped with a warning.
    """
    found: list[tuple[Optional[str], str]] = []
    attr = _xattr(elem, "title")
    if attr is not None:
        found.append((None, attr))
    for child in elem:
        if _local(child.tag) == "title":
            found.append((child.get(XML_LANG), (child.text or "").strip()))
    if not found:
        return None, None
    kept_language, kept = found[0]
    for language, text in found[1:]:
        log.warning("dropping extra arc title %r (lang=%s)", text, language)
    return kept, kept_language


def _arc_creator(elem: ET.Element) -> Optional[str]:
    for child in elem:
        if _local(child.tag) == "creator":
            return (child.text or "").strip() or None
    return None


def parse_linkbase(xml: str, base: Optional[str] = None) -> Linkbase:
    """Parse a linkbase document.

    The root element's xml:base wins over the ``base`` argument; with
    neither, ids and hrefs resolve against "store:/".  Arcs referencing
    undeclared labels fail the whole parse (DanglingLabel), keeping the
    invariant that every link endpoint is a declared anchor.
    """
    try:
        root = ET.fromstring(xml)
    except ET.ParseError as exc:
        raise ParseError(f"linkbase is not well-formed XML: {exc}") from None
    if _local(root.tag) != "linkbase":
        raise ParseError(f"expected linkbase root, got {_local(root.tag)!r}")
    base = root.get(XML_BASE) or base or "store:/"

    linkbase = Linkbase(base=base)
    anchor_ordinal = 0
    link_ordinal = 0
    seen_ids: set[str] = set()

    def claim(term: Term, what: str) -> None:
        if term.value in seen_ids:
            raise ParseError(f"duplicate {what} id {term.value!r}")
        seen_ids.add(term.value)

    for extended in root:
        if _local(extended.tag) != "extendedlink":
            continue
        locators = []
        for child in extended:
            if _local(child.tag) == "locator":
                anchor_ordinal += 1
                anchor = _parse_locator(child, base, anchor_ordinal)
                claim(anchor.id, "anchor")
                locators.append(anchor)
        linkbase.anchors.extend(locators)
        by_label: dict[str, list[Anchor]] = {}
        for anchor in locators:
            if anchor.label is not None:
                by_label.setdefault(anchor.label, []).append(anchor)

        for child in extended:
            if _local(child.tag) != "arc":
                continue
            link_ordinal += 1
            from_label = _xattr(child, "from")
            to_label = _xattr(child, "to")
            if from_label is None or to_label is None:
                raise ParseError(f"arc #{link_ordinal} lacks from/to labels")
            sources = by_label.get(from_label)
            targets = by_label.get(to_label)
            if not sources:
                raise DanglingLabel(f"arc references undeclared label {from_label!r}")
            if not targets:
                raise DanglingLabel(f"arc references undeclared label {to_label!r}")

            arcrole_text = _xattr(child, "arcrole")
            if arcrole_text is not None and ":" not in arcrole_text:
                raise ParseError(f"arcrole must be an absolute IRI: {arcrole_text!r}")
            arcrole = iri(arcrole_text) if arcrole_text is not None else None
            title, title_language = _arc_titles(child)
            creator = _arc_creator(child)
            direction = child.get("direction", UNI)
            if direction not in (UNI, BI):
                raise ParseError(f"arc direction must be uni or bi: {direction!r}")

            pairs = [(s, t) for s in sources for t in targets]
            explicit = child.get("id")
            for k, (source, target) in enumerate(pairs, start=1):
                if explicit is not None and len(pairs) > 1:
                    link_id = _mint(base, f"{explicit}-{k}", "")
                elif explicit is not None:
                    link_id = _mint(base, explicit, "")
                else:
                    link_id = _mint(base, None, f"link-{link_ordinal}")
                    if len(pairs) > 1:
                        link_id = iri(f"{link_id.value}-{k}")
                claim(link_id, "link")
                linkbase.links.append(Link(
                    id=link_id,
                    from_anchor=source.id,
                    to_anchor=target.id,
                    arcrole=arcrole,
                    title=title,
                    title_language=title_language,
                    creator=creator,
                    direction=direction,
                ))
    return linkbase


def link_to_reified_rdf(link: Link) -> list[Triple]:
    """Reified projection: link.id reifies (to, arcrole, from).

    Bidirectional links also reify the reversed statement under id + "-rev".
    """
    if link.arcrole is None:
        raise MissingArcrole(f"link {link.id.value} has no arcrole")
    inner = Triple(link.to_anchor, link.arcrole, link.from_anchor)
    triples = reify(inner, link.id)
    if link.title is not None:
        triples.append(Triple(link.id, DC_TITLE,
                              literal(link.title, link.title_language)))
    if link.creator is not None:
        triples.append(Triple(link.id, DC_CREATOR, literal(link.creator)))
    if link.direction == BI:
        reverse = Triple(link.from_anchor, link.arcrole, link.to_anchor)
        triples.extend(reify(reverse, iri(link.id.value + "-rev")))
    return triples


def link_to_simple_rdf(link: Link) -> list[Triple]:
    """Harvest projection: one plain (from, arcrole, to) triple, titles gone."""
    if link.arcrole is None:
        raise MissingArcrole(f"link {link.id.value} has no arcrole")
    return [Triple(link.from_anchor, link.arcrole, link.to_anchor)]


def project_linkbase(linkbase: Linkbase, mode: str = REIFIED,
                     content_graph: Optional[Graph] = None) -> Graph:
    """Project a whole linkbase: anchor descriptors plus per-link triples.

    ``content_graph`` supplies the statements anchors inherit from their
    resources; omitting it just means anchors inherit nothing.
    """
    if mode not in (REIFIED, SIMPLE):
        raise ValueError(f"unknown projection mode: {mode!r}")
    if content_graph is None:
        content_graph = Graph()
    triples: list[Triple] = []
    for anchor in linkbase.anchors:
        triples.extend(derive_anchor_descriptors(anchor, content_graph))
    for link in linkbase.links:
        if mode == REIFIED:
            triples.extend(link_to_reified_rdf(link))
        else:
            triples.extend(link_to_simple_rdf(link))
    return Graph(triples)
