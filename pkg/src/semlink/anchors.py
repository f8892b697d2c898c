"""Anchors: addressable fragments of content resources.

An anchor owns a selector that picks an element out of an XML document,
plus optional title/label specialization.  Its semantic description is the
owning resource's statements restated about the anchor (inheritance),
the specialization statements, and a provenance statement tying the anchor
back to its resource.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional

from semlink.rdf import (
    DC_TITLE, MIR_LABEL, MIR_PART_OF, Graph, ParseError, SemlinkError, Term,
    Triple, TriplePattern, Var, literal,
)

WHOLE_RESOURCE = "whole-resource"
SHORTHAND_ID = "shorthand-id"
ELEMENT_PATH = "element-path"


class NoMatch(SemlinkError):
    """The selector picks nothing in the document."""


class AmbiguousMatch(SemlinkError):
    """A shorthand id occurs on more than one element."""


@dataclass(frozen=True)
class Selector:
    scheme: str
    value: str = ""

    def __post_init__(self):
        if self.scheme not in (WHOLE_RESOURCE, SHORTHAND_ID, ELEMENT_PATH):
            raise ValueError(f"unknown selector scheme: {self.scheme!r}")
        if self.scheme == ELEMENT_PATH:
            parts = self.value.split("/")
            if parts[0] != "" or len(parts) < 2 or not all(
                    p.isdigit() and int(p) > 0 for p in parts[1:]):
                raise ValueError(
                    f"element path must be /n/n/... with positive steps: {self.value!r}")

    def fragment(self) -> str:
        """The selector rendered as an href fragment ('' for whole resource)."""
        if self.scheme == WHOLE_RESOURCE:
            return ""
        if self.scheme == SHORTHAND_ID:
            return "#" + self.value
        return f"#element({self.value})"


@dataclass(frozen=True)
class Anchor:
    id: Term
    resource: Term
    selector: Selector
    title: Optional[str] = None
    label: Optional[str] = None


def split_href(href: str) -> tuple[str, Selector]:
    """Split an href into its resource reference and selector.

    ``doc.xml`` is the whole resource, ``doc.xml#myid`` a shorthand id, and
    ``doc.xml#element(/1/3/2)`` an element path.
    """
    resource, sep, fragment = href.partition("#")
    if not sep or not fragment:
        return resource, Selector(WHOLE_RESOURCE)
    if fragment.startswith("element(") and fragment.endswith(")"):
        try:
            return resource, Selector(ELEMENT_PATH, fragment[8:-1])
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    return resource, Selector(SHORTHAND_ID, fragment)


XML_ID = "{http://www.w3.org/XML/1998/namespace}id"


def resolve_in_tree(root: ET.Element, selector: Selector) -> ET.Element:
    """Resolve a selector against an already-parsed element tree."""
    if selector.scheme == WHOLE_RESOURCE:
        return root
    if selector.scheme == SHORTHAND_ID:
        hits = [e for e in root.iter()
                if e.get(XML_ID) == selector.value or e.get("id") == selector.value]
        if not hits:
            raise NoMatch(f"no element with id {selector.value!r}")
        if len(hits) > 1:
            raise AmbiguousMatch(f"id {selector.value!r} occurs {len(hits)} times")
        return hits[0]
    node = root
    for step in selector.value.split("/")[1:]:
        children = [c for c in node if isinstance(c.tag, str)]
        index = int(step)
        if index > len(children):
            raise NoMatch(
                f"path {selector.value!r} walks off the tree at step {step}")
        node = children[index - 1]
    return node


def resolve_selector(document: str, selector: Selector) -> ET.Element:
    """Resolve a selector against document text; NoMatch on non-XML input."""
    try:
        root = ET.fromstring(document)
    except ET.ParseError as exc:
        raise NoMatch(f"document is not well-formed XML: {exc}") from None
    return resolve_in_tree(root, selector)


def derive_anchor_descriptors(anchor: Anchor, content_graph: Graph) -> list[Triple]:
    """Inherited statements restated about the anchor, plus specialization.

    Adding content statements only ever adds descriptors; two anchors on the
    same resource differ only in their specialization and provenance triples.
    """
    triples = []
    pattern = TriplePattern(anchor.resource, Var("p"), Var("o"))
    for binding in content_graph.match(pattern):
        triples.append(Triple(anchor.id, binding["p"], binding["o"]))
    if anchor.title is not None:
        triples.append(Triple(anchor.id, DC_TITLE, literal(anchor.title)))
    if anchor.label is not None:
        triples.append(Triple(anchor.id, MIR_LABEL, literal(anchor.label)))
    triples.append(Triple(anchor.id, MIR_PART_OF, anchor.resource))
    return triples
