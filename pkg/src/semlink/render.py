"""Renderer: materialize selected links into a document on the fly.

Planning turns each selected link into a Decoration: which element of the
viewed document to wrap (the link's source anchor) and what the wrapper
should point at (the target anchor as a relative href).  Decoration then
rewrites the document tree, wrapping each addressed element in an ``a``
element carrying href, title, data-arcrole and data-link.  Nothing else
about the document changes; stripping the wrappers gives the input back.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Optional

from semlink.anchors import Anchor, resolve_in_tree
from semlink.contexts import SelectedLink, UnknownAnchor
from semlink.links import Linkbase
from semlink.rdf import ParseError, Term


@dataclass(frozen=True)
class Decoration:
    anchor: Anchor
    target_href: str
    arcrole: Term
    link_id: Term
    title: Optional[str] = None


def relativize(target: str, against: str) -> str:
    """Express target relative to the document IRI it will appear in.

    Same directory collapses to the bare filename; different scheme stays
    absolute.
    """
    scheme = target.partition(":")[0]
    if scheme != against.partition(":")[0]:
        return target
    target_parts = target[len(scheme) + 1:].split("/")
    against_dirs = against[len(scheme) + 1:].split("/")[:-1]
    target_dirs, name = target_parts[:-1], target_parts[-1]
    shared = 0
    while (shared < len(target_dirs) and shared < len(against_dirs)
           and target_dirs[shared] == against_dirs[shared]):
        shared += 1
    hops = [".."] * (len(against_dirs) - shared)
    return "/".join(hops + target_dirs[shared:] + [name])


def plan_decorations(document: Term, selected: list[SelectedLink],
                     linkbase: Linkbase) -> list[Decoration]:
    """One Decoration per selected link.

    ``selected`` is expected to be pre-filtered to links starting on
    ``document``; the inner statement's object names the source anchor to
    wrap and its subject the target anchor the href must reach.
    """
    anchors: dict[Term, Anchor] = {a.id: a for a in linkbase.anchors}
    decorations = []
    for sel in selected:
        source = anchors.get(sel.inner.object)
        target = anchors.get(sel.inner.subject)
        if source is None:
            raise UnknownAnchor(f"undeclared source anchor {sel.inner.object.value}")
        if target is None:
            raise UnknownAnchor(f"undeclared target anchor {sel.inner.subject.value}")
        href = relativize(target.resource.value, document.value)
        decorations.append(Decoration(
            anchor=source,
            target_href=href + target.selector.fragment(),
            arcrole=sel.inner.predicate,
            link_id=sel.link,
            title=sel.title,
        ))
    return decorations


def _wrapper(decoration: Decoration) -> ET.Element:
    elem = ET.Element("a")
    elem.set("href", decoration.target_href)
    if decoration.title is not None:
        elem.set("title", decoration.title)
    elem.set("data-arcrole", decoration.arcrole.value)
    elem.set("data-link", decoration.link_id.value)
    return elem


def decorate(document_xml: str, decorations: list[Decoration]) -> str:
    """Wrap each decoration's element; decorations listed first wrap outermost.

    All selectors resolve against the pristine tree, so earlier wrappers can
    never hide an element from a later decoration.
    """
    try:
        root = ET.fromstring(document_xml)
    except ET.ParseError as exc:
        raise ParseError(f"document is not well-formed XML: {exc}") from None

    targets = [resolve_in_tree(root, d.anchor.selector) for d in decorations]
    parent: dict[ET.Element, ET.Element] = {
        child: elem for elem in root.iter() for child in elem}

    # Wrap innermost-first (reversed list) around each element's current
    # outermost wrapper, so the final nesting is decoration-list order.
    outermost: dict[ET.Element, ET.Element] = {}
    for decoration, element in reversed(list(zip(decorations, targets))):
        current = outermost.get(element, element)
        wrapper = _wrapper(decoration)
        wrapper.tail, current.tail = current.tail, None
        holder = parent.get(current)
        if holder is None:
            root = wrapper
        else:
            index = list(holder).index(current)
            holder.remove(current)
            holder.insert(index, wrapper)
            parent[wrapper] = holder
        wrapper.append(current)
        parent[current] = wrapper
        outermost[element] = wrapper

    body = ET.tostring(root, encoding="unicode")
    return '<?xml version="1.0" encoding="UTF-8"?>\n' + body
