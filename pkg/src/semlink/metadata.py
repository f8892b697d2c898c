"""Content metadata ingest: a flat descriptor-list XML profile projected to RDF.

The profile is a root ``metadata`` element with an ``about`` attribute naming
the described resource; each child element is one descriptor (element name =
descriptor name, text content = value, ``xml:lang`` = language).  Nested
vocabulary categories are written as dotted element names
(``general.description``) rather than nested elements.

Projection turns each descriptor into one statement: the described resource
is the subject, the namespace-expanded descriptor name the predicate, and
the value a plain literal.
"""

from __future__ import annotations

import io
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from semlink.rdf import ParseError, SemlinkError, Term, Triple, iri, literal

XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"


class MissingResource(ParseError):
    """The metadata document does not say which resource it describes."""


class UnknownNamespacePrefix(SemlinkError):
    """A descriptor name uses a prefix with no declared namespace."""


@dataclass(frozen=True)
class Descriptor:
    name: str
    value: str
    language: Optional[str] = None


@dataclass
class MetadataRecord:
    resource: Term
    descriptors: list[Descriptor] = field(default_factory=list)
    # prefix -> namespace IRI, captured from the document ("" = default ns)
    prefixes: dict[str, str] = field(default_factory=dict)


def parse_metadata(xml: str) -> MetadataRecord:
    """Read one metadata document into a record, preserving document order."""
    prefixes: dict[str, str] = {}
    uri_to_prefix: dict[str, str] = {}
    root = None
    descriptors: list[Descriptor] = []
    depth = 0
    try:
        for event, payload in ET.iterparse(io.StringIO(xml),
                                           ("start-ns", "start", "end")):
            if event == "start-ns":
                prefix, uri = payload
                prefixes[prefix] = uri
                uri_to_prefix.setdefault(uri, prefix)
                continue
            if event == "start":
                depth += 1
                if depth == 1:
                    root = payload
                    if _local(root.tag) != "metadata":
                        raise ParseError(
                            f"expected a 'metadata' root element, got {root.tag!r}")
                elif depth > 2:
                    raise ParseError(
                        f"nested element {payload.tag!r}: descriptors are leaf "
                        "elements (write dotted names instead of nesting)")
                continue
            depth -= 1
            if depth == 1:
                # end of a direct child: its text content is complete now
                descriptors.append(_descriptor_from(payload, uri_to_prefix))
    except ET.ParseError as exc:
        line, column = exc.position
        raise ParseError(f"malformed XML: {exc.msg}", line, column) from None

    if root is None:
        raise ParseError("empty document")
    about = root.get("about")
    if not about:
        raise MissingResource("metadata root has no 'about' attribute")
    try:
        resource = iri(about)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return MetadataRecord(resource, descriptors, prefixes)


def _local(tag: str) -> str:
    return tag.rsplit("}", 1)[-1]


def _descriptor_from(elem: ET.Element, uri_to_prefix: dict[str, str]) -> Descriptor:
    tag = elem.tag
    if tag.startswith("{"):
        uri, local = tag[1:].split("}", 1)
        prefix = uri_to_prefix.get(uri)
        if prefix is None:
            raise ParseError(f"element in unmapped namespace: {tag!r}")
        name = f"{prefix}:{local}" if prefix else local
    else:
        name = tag
    value = elem.text or ""
    return Descriptor(name, value, elem.get(XML_LANG))


def metadata_to_rdf(record: MetadataRecord) -> list[Triple]:
    """One statement per descriptor, with the content object as subject."""
    triples = []
    for d in record.descriptors:
        prefix, sep, local = d.name.partition(":")
        if not sep:
            prefix, local = "", d.name
        namespace = record.prefixes.get(prefix)
        if namespace is None:
            raise UnknownNamespacePrefix(
                f"descriptor {d.name!r} has no declared namespace")
        triples.append(Triple(record.resource, iri(namespace + local),
                              literal(d.value, d.language)))
    return triples
