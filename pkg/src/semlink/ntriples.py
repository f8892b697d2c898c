"""Line-oriented triple interchange: one statement per line, terminated by " .".

IRIs in angle brackets, blank nodes as ``_:label``, literals double-quoted
with backslash escapes and an optional ``@lang`` tag.  The serializer and
parser round-trip every graph this package can build.
"""

from __future__ import annotations

import re

from semlink.rdf import (
    BLANK, IRI, Graph, InvalidTriple, ParseError, Term, Triple, blank, iri,
    literal,
)

_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}
_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}

_BLANK_LABEL_RE = re.compile(r"[A-Za-z0-9_\-]+")
_LANG_RE = re.compile(r"[A-Za-z]+(?:-[A-Za-z0-9]+)*")


def _escape(text: str) -> str:
    return "".join(_ESCAPES.get(c, c) for c in text)


def format_term(term: Term) -> str:
    if term.kind == IRI:
        return f"<{term.value}>"
    if term.kind == BLANK:
        return f"_:{term.value}"
    quoted = f'"{_escape(term.value)}"'
    if term.language:
        quoted += f"@{term.language}"
    return quoted


def serialize_ntriples(graph: Graph) -> str:
    lines = []
    for t in graph:
        lines.append(
            f"{format_term(t.subject)} {format_term(t.predicate)} {format_term(t.object)} .\n")
    return "".join(lines)


class _LineScanner:
    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, line=self.lineno, column=self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def term(self) -> Term:
        if self.at_end():
            raise self.error("expected a term")
        c = self.text[self.pos]
        if c == "<":
            return self._iri()
        if c == "_":
            return self._blank()
        if c == '"':
            return self._literal()
        raise self.error(f"unexpected character {c!r}")

    def _iri(self) -> Term:
        end = self.text.find(">", self.pos + 1)
        if end < 0:
            raise self.error("unterminated IRI")
        value = self.text[self.pos + 1:end]
        try:
            term = iri(value)
        except ValueError as exc:
            raise self.error(str(exc)) from None
        self.pos = end + 1
        return term

    def _blank(self) -> Term:
        if not self.text.startswith("_:", self.pos):
            raise self.error("malformed blank node")
        m = _BLANK_LABEL_RE.match(self.text, self.pos + 2)
        if not m:
            raise self.error("blank node needs a label")
        self.pos = m.end()
        return blank(m.group())

    def _literal(self) -> Term:
        chars = []
        i = self.pos + 1
        while True:
            if i >= len(self.text):
                raise self.error("unterminated literal")
            c = self.text[i]
            if c == '"':
                i += 1
                break
            if c == "\\":
                if i + 1 >= len(self.text):
                    raise self.error("dangling escape")
                esc = self.text[i + 1]
                if esc not in _UNESCAPES:
                    raise self.error(f"unknown escape \\{esc}")
                chars.append(_UNESCAPES[esc])
                i += 2
            else:
                chars.append(c)
                i += 1
        self.pos = i
        language = None
        if self.text.startswith("@", self.pos):
            m = _LANG_RE.match(self.text, self.pos + 1)
            if not m:
                raise self.error("malformed language tag")
            language = m.group()
            self.pos = m.end()
        return literal("".join(chars), language)


def parse_ntriples(text: str) -> Graph:
    triples = []
    for lineno, line in enumerate(text.split("\n"), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        scanner = _LineScanner(line, lineno)
        scanner.skip_ws()
        parts = []
        for _ in range(3):
            parts.append(scanner.term())
            scanner.skip_ws()
        if scanner.at_end() or scanner.text[scanner.pos] != ".":
            raise scanner.error("expected terminating '.'")
        scanner.pos += 1
        scanner.skip_ws()
        if not scanner.at_end():
            raise scanner.error("trailing content after '.'")
        try:
            triples.append(Triple(parts[0], parts[1], parts[2]))
        except (InvalidTriple, ValueError) as exc:
            raise ParseError(str(exc), line=lineno, column=1) from None
    return Graph(triples)
