"""Triple-store foundation: terms, triples, graphs, patterns, reification.

Everything above the data layer talks in these types.  Graphs are immutable
values: ``insert`` returns a new graph, which keeps snapshot handling in the
server trivial (readers hold a reference, writers swap a new one in).
Iteration order is insertion order, so serialized output is reproducible.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union


class SemlinkError(Exception):
    """Base class for all errors raised by this package."""


class InvalidTriple(SemlinkError):
    """A triple with a literal subject or a non-IRI predicate."""


class IncompleteReification(SemlinkError):
    """A reification node lacks (or duplicates) one of its role statements."""


class ParseError(SemlinkError):
    """Malformed textual input; carries line/column when known."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line = line
        self.column = column
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{message} ({where})"
        super().__init__(message)


_SCHEME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.\-]*:")

IRI = "iri"
LITERAL = "literal"
BLANK = "blank"


@dataclass(frozen=True)
class Term:
    """An RDF term: IRI, plain literal (optional language tag), or blank node."""

    kind: str
    value: str
    language: Optional[str] = None

    def __post_init__(self):
        if self.kind not in (IRI, LITERAL, BLANK):
            raise ValueError(f"unknown term kind: {self.kind!r}")
        if self.kind == IRI and not _SCHEME_RE.match(self.value):
            raise ValueError(f"IRI is not absolute (no scheme): {self.value!r}")
        if self.kind == BLANK and not self.value:
            raise ValueError("blank node label must be nonempty")
        if self.language is not None and self.kind != LITERAL:
            raise ValueError("language tag is only allowed on literals")


def iri(value: str) -> Term:
    return Term(IRI, value)


def literal(value: str, language: Optional[str] = None) -> Term:
    return Term(LITERAL, value, language)


def blank(label: str) -> Term:
    return Term(BLANK, label)


@dataclass(frozen=True)
class Var:
    """A query variable; the name is stored without the surface ``?``."""

    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")


PatternSlot = Union[Term, Var]


@dataclass(frozen=True)
class Triple:
    subject: Term
    predicate: Term
    object: Term

    def __post_init__(self):
        if self.subject.kind == LITERAL:
            raise InvalidTriple(f"literal subject: {self.subject.value!r}")
        if self.predicate.kind != IRI:
            raise InvalidTriple(f"non-IRI predicate: {self.predicate!r}")


@dataclass(frozen=True)
class TriplePattern:
    subject: PatternSlot
    predicate: PatternSlot
    object: PatternSlot

    def variables(self) -> tuple[str, ...]:
        seen = []
        for slot in (self.subject, self.predicate, self.object):
            if isinstance(slot, Var) and slot.name not in seen:
                seen.append(slot.name)
        return tuple(seen)


Binding = dict[str, Term]


def _match_slot(slot: PatternSlot, term: Term, binding: Binding) -> bool:
    if isinstance(slot, Var):
        bound = binding.get(slot.name)
        if bound is None:
            binding[slot.name] = term
            return True
        return bound == term
    return slot == term


class Graph:
    """An unordered set of triples with deterministic (insertion) iteration."""

    __slots__ = ("_triples",)

    def __init__(self, triples: Iterable[Triple] = ()):
        self._triples: dict[Triple, None] = dict.fromkeys(triples)

    def insert(self, triple: Triple) -> "Graph":
        """Return a new graph containing ``triple`` plus everything here."""
        if triple in self._triples:
            return self
        g = Graph()
        g._triples = dict(self._triples)
        g._triples[triple] = None
        return g

    def union(self, other: Iterable[Triple]) -> "Graph":
        g = Graph()
        g._triples = dict(self._triples)
        for t in other:
            g._triples.setdefault(t, None)
        return g

    def match(self, pattern: TriplePattern) -> list[Binding]:
        """All bindings of the pattern's variables against triples here.

        A fully concrete pattern yields the empty binding once if present.
        Repeated variables in one pattern must bind consistently.
        """
        out = []
        for t in self._triples:
            binding: Binding = {}
            if (_match_slot(pattern.subject, t.subject, binding)
                    and _match_slot(pattern.predicate, t.predicate, binding)
                    and _match_slot(pattern.object, t.object, binding)):
                out.append(binding)
        return out

    def __len__(self) -> int:
        return len(self._triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self._triples)

    def __contains__(self, triple: Triple) -> bool:
        return triple in self._triples

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._triples.keys() == other._triples.keys()

    def __repr__(self) -> str:
        return f"Graph({len(self._triples)} triples)"


# Vocabulary used throughout the layers above.
RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
DC_NS = "http://purl.org/dc/elements/1.1/"
MIR_NS = "http://www.rz.fhtw-berlin.de/MIR#"

RDF_TYPE = iri(RDF_NS + "type")
RDF_STATEMENT = iri(RDF_NS + "Statement")
RDF_SUBJECT = iri(RDF_NS + "subject")
RDF_PREDICATE = iri(RDF_NS + "predicate")
RDF_OBJECT = iri(RDF_NS + "object")

DC_CREATOR = iri(DC_NS + "creator")
DC_TITLE = iri(DC_NS + "title")
DC_DESCRIPTION = iri(DC_NS + "description")

MIR_PART_OF = iri(MIR_NS + "partOf")
MIR_LABEL = iri(MIR_NS + "label")


def reify(statement: Triple, node: Term) -> list[Triple]:
    """The four statements describing ``statement`` with ``node`` as subject."""
    return [
        Triple(node, RDF_TYPE, RDF_STATEMENT),
        Triple(node, RDF_SUBJECT, statement.subject),
        Triple(node, RDF_PREDICATE, statement.predicate),
        Triple(node, RDF_OBJECT, statement.object),
    ]


def unreify(graph: Graph, node: Term) -> Triple:
    """Reconstruct the statement a reification node describes.

    The rdf:type triple is not required, so graphs produced by other
    reification conventions still unreify.
    """
    roles = []
    for role in (RDF_SUBJECT, RDF_PREDICATE, RDF_OBJECT):
        values = {b["o"] for b in graph.match(TriplePattern(node, role, Var("o")))}
        if len(values) != 1:
            what = "missing" if not values else "conflicting"
            raise IncompleteReification(
                f"{what} {role.value.rsplit('#', 1)[1]} for node {node.value!r}")
        roles.append(values.pop())
    return Triple(roles[0], roles[1], roles[2])


def resolve_iri(base: str, ref: str) -> str:
    """Resolve a possibly-relative reference against an absolute base IRI.

    Scheme-agnostic on purpose: store-internal IRIs use their own scheme,
    which urllib's resolver refuses to treat as hierarchical.
    """
    if not ref:
        return base.split("#", 1)[0]
    if _SCHEME_RE.match(ref):
        return ref
    base = base.split("#", 1)[0]
    if ref.startswith("#"):
        return base + ref
    head, sep, _ = base.rpartition("/")
    if not sep:
        return base + "/" + ref
    return head + "/" + ref
