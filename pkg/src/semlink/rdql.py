"""A small RDQL query engine: SELECT projection over conjunctive triple patterns.

Surface form::

    SELECT * WHERE (?link, <rdf:predicate>, <mir:BackgroundInfo>) USING
    rdf FOR <http://www.w3.org/1999/02/22-rdf-syntax-ns#>,
    mir FOR <http://www.rz.fhtw-berlin.de/MIR#>

Angle brackets may hold either an absolute IRI or a prefixed name;
bare prefixed names (``rdf:predicate``) are accepted too.  Prefixed names
expand by plain concatenation of the declared namespace and the local part.
Resolution happens at evaluation time: a declared prefix always wins; an
undeclared head is accepted as an IRI scheme only when the reference looks
hierarchical (contains ``/``) or uses a common non-hierarchical scheme,
otherwise it is reported as an undeclared prefix instead of silently
matching nothing.

Evaluation is a natural join of the per-pattern matches, left to right,
with index-free scans: graphs at this scale do not need indexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from semlink.rdf import (
    Binding, Graph, ParseError, SemlinkError, Term, TriplePattern, Var, iri,
)
from semlink.ntriples import format_term

KEYWORDS = {"SELECT", "WHERE", "USING", "FOR"}

# Non-hierarchical schemes accepted without a prefix declaration.
_BARE_SCHEMES = {"urn", "mailto", "tag", "data", "mid", "doi", "isbn", "news"}


class LexError(ParseError):
    """Bad surface syntax before token structure exists; carries the offset."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        SemlinkError.__init__(self, f"{message} (offset {offset})")


class UndeclaredPrefix(SemlinkError):
    """A prefixed name whose prefix has no USING ... FOR declaration."""


@dataclass(frozen=True)
class Token:
    kind: str  # KEYWORD VAR ANGLE QNAME IDENT STRING STAR COMMA LPAREN RPAREN
    value: str
    offset: int
    language: Optional[str] = None


@dataclass(frozen=True)
class Ref:
    """An IRI or prefixed name, kept unresolved until evaluation."""

    raw: str


PatternTerm = Union[Var, Ref, Term]


@dataclass(frozen=True)
class QueryPattern:
    subject: PatternTerm
    predicate: PatternTerm
    object: PatternTerm

    def slots(self) -> tuple[PatternTerm, PatternTerm, PatternTerm]:
        return (self.subject, self.predicate, self.object)


@dataclass
class Query:
    projection: Optional[tuple[str, ...]]  # None means SELECT *
    patterns: tuple[QueryPattern, ...]
    prefixes: dict[str, str]

    def variables(self) -> tuple[str, ...]:
        seen: list[str] = []
        for pattern in self.patterns:
            for slot in pattern.slots():
                if isinstance(slot, Var) and slot.name not in seen:
                    seen.append(slot.name)
        return tuple(seen)


_STRING_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t"}


def _is_name_start(c: str) -> bool:
    return c.isalpha() or c == "_"


def _is_name_char(c: str) -> bool:
    return c.isalnum() or c in "_.-"


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        start = i
        if c == "(":
            tokens.append(Token("LPAREN", c, start))
            i += 1
        elif c == ")":
            tokens.append(Token("RPAREN", c, start))
            i += 1
        elif c == ",":
            tokens.append(Token("COMMA", c, start))
            i += 1
        elif c == "*":
            tokens.append(Token("STAR", c, start))
            i += 1
        elif c == "?":
            j = i + 1
            if j >= n or not _is_name_start(text[j]):
                raise LexError("variable needs a name after '?'", start)
            while j < n and _is_name_char(text[j]):
                j += 1
            tokens.append(Token("VAR", text[i + 1:j], start))
            i = j
        elif c == "<":
            end = text.find(">", i + 1)
            if end < 0:
                raise LexError("unterminated '<...>' term", start)
            tokens.append(Token("ANGLE", text[i + 1:end], start))
            i = end + 1
        elif c == '"':
            chars = []
            j = i + 1
            while True:
                if j >= n:
                    raise LexError("unterminated string literal", start)
                if text[j] == '"':
                    j += 1
                    break
                if text[j] == "\\":
                    if j + 1 >= n or text[j + 1] not in _STRING_UNESCAPES:
                        raise LexError("bad escape in string literal", j)
                    chars.append(_STRING_UNESCAPES[text[j + 1]])
                    j += 2
                else:
                    chars.append(text[j])
                    j += 1
            language = None
            if j < n and text[j] == "@":
                k = j + 1
                while k < n and (text[k].isalnum() or text[k] == "-"):
                    k += 1
                if k == j + 1:
                    raise LexError("empty language tag", j)
                language = text[j + 1:k]
                j = k
            tokens.append(Token("STRING", "".join(chars), start, language))
            i = j
        elif _is_name_start(c):
            j = i
            while j < n and _is_name_char(text[j]):
                j += 1
            word = text[i:j]
            if j < n and text[j] == ":" and j + 1 < n and _is_name_char(text[j + 1]):
                k = j + 1
                while k < n and _is_name_char(text[k]):
                    k += 1
                tokens.append(Token("QNAME", text[i:k], start))
                i = k
            elif word.upper() in KEYWORDS:
                tokens.append(Token("KEYWORD", word.upper(), start))
                i = j
            else:
                tokens.append(Token("IDENT", word, start))
                i = j
        else:
            raise LexError(f"unexpected character {c!r}", start)
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Optional[Token]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of query")
        self.pos += 1
        return tok

    def expect_keyword(self, word: str):
        tok = self.peek()
        if tok is None or tok.kind != "KEYWORD" or tok.value != word:
            got = tok.value if tok else "end of input"
            raise ParseError(f"expected {word}, got {got!r}")
        self.pos += 1

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "KEYWORD" and tok.value == word


def _parse_term(p: _Parser) -> PatternTerm:
    tok = p.take()
    if tok.kind == "VAR":
        return Var(tok.value)
    if tok.kind in ("ANGLE", "QNAME"):
        return Ref(tok.value)
    if tok.kind == "STRING":
        return Term("literal", tok.value, tok.language)
    raise ParseError(f"expected a term, got {tok.value!r}")


def _parse_pattern(p: _Parser) -> QueryPattern:
    tok = p.take()
    if tok.kind != "LPAREN":
        raise ParseError(f"expected '(' to open a pattern, got {tok.value!r}")
    slots = [_parse_term(p)]
    for _ in range(2):
        tok = p.take()
        if tok.kind != "COMMA":
            raise ParseError(f"expected ',' inside pattern, got {tok.value!r}")
        slots.append(_parse_term(p))
    tok = p.take()
    if tok.kind != "RPAREN":
        raise ParseError(f"expected ')' to close pattern, got {tok.value!r}")
    return QueryPattern(slots[0], slots[1], slots[2])


def parse_query(text: str) -> Query:
    p = _Parser(tokenize(text))
    p.expect_keyword("SELECT")

    projection: Optional[tuple[str, ...]]
    tok = p.peek()
    if tok is not None and tok.kind == "STAR":
        p.take()
        projection = None
    else:
        names: list[str] = []
        while True:
            tok = p.peek()
            if tok is None or tok.kind != "VAR":
                break
            names.append(p.take().value)
            if p.peek() is not None and p.peek().kind == "COMMA":
                p.take()
        if not names:
            raise ParseError("SELECT needs '*' or at least one variable")
        projection = tuple(names)

    p.expect_keyword("WHERE")
    patterns = [_parse_pattern(p)]
    while True:
        tok = p.peek()
        if tok is not None and tok.kind == "COMMA":
            p.take()
            patterns.append(_parse_pattern(p))
        elif tok is not None and tok.kind == "LPAREN":
            patterns.append(_parse_pattern(p))
        else:
            break

    prefixes: dict[str, str] = {}
    if p.at_keyword("USING"):
        p.take()
        while True:
            tok = p.take()
            if tok.kind not in ("IDENT", "KEYWORD"):
                raise ParseError(f"expected a prefix name, got {tok.value!r}")
            name = tok.value if tok.kind == "IDENT" else tok.value.lower()
            p.expect_keyword("FOR")
            ns = p.take()
            if ns.kind != "ANGLE":
                raise ParseError(f"expected <namespace> after FOR, got {ns.value!r}")
            prefixes[name] = ns.value
            if p.peek() is not None and p.peek().kind == "COMMA":
                p.take()
            else:
                break

    if p.peek() is not None:
        raise ParseError(f"trailing content after query: {p.peek().value!r}")

    query = Query(projection, tuple(patterns), prefixes)
    if projection is not None:
        pattern_vars = set(query.variables())
        for name in projection:
            if name not in pattern_vars:
                raise ParseError(f"projected variable ?{name} occurs in no pattern")
    return query


def _print_term(slot: PatternTerm) -> str:
    if isinstance(slot, Var):
        return f"?{slot.name}"
    if isinstance(slot, Ref):
        return f"<{slot.raw}>"
    return format_term(slot)


def print_query(query: Query) -> str:
    """Render a query back to surface syntax; ``parse_query`` inverts it."""
    if query.projection is None:
        head = "SELECT *"
    else:
        head = "SELECT " + ", ".join(f"?{v}" for v in query.projection)
    body = ", ".join(
        "(" + ", ".join(_print_term(s) for s in pat.slots()) + ")"
        for pat in query.patterns)
    out = f"{head} WHERE {body}"
    if query.prefixes:
        decls = ", ".join(f"{name} FOR <{ns}>" for name, ns in query.prefixes.items())
        out += f" USING {decls}"
    return out


def resolve_ref(ref: Ref, prefixes: dict[str, str]) -> Term:
    raw = ref.raw
    head, sep, rest = raw.partition(":")
    if sep and head in prefixes:
        return iri(prefixes[head] + rest)
    if sep and ("/" in raw or head.lower() in _BARE_SCHEMES):
        try:
            return iri(raw)
        except ValueError as exc:
            raise UndeclaredPrefix(str(exc)) from None
    raise UndeclaredPrefix(f"no declared prefix for {raw!r}")


def _resolve_pattern(pattern: QueryPattern, prefixes: dict[str, str]) -> TriplePattern:
    slots = [
        resolve_ref(s, prefixes) if isinstance(s, Ref) else s
        for s in pattern.slots()
    ]
    return TriplePattern(slots[0], slots[1], slots[2])


def _binding_key(binding: Binding) -> tuple:
    return tuple((name, format_term(binding[name])) for name in sorted(binding))


def evaluate(query: Query, graph: Graph) -> list[Binding]:
    """All variable bindings satisfying every pattern, as a duplicate-free
    list in lexicographic order of the bound terms' serializations."""
    resolved = [_resolve_pattern(pat, query.prefixes) for pat in query.patterns]

    rows: list[Binding] = [{}]
    for pattern in resolved:
        next_rows: list[Binding] = []
        for row in rows:
            grounded = TriplePattern(*(
                row[s.name] if isinstance(s, Var) and s.name in row else s
                for s in (pattern.subject, pattern.predicate, pattern.object)))
            for binding in graph.match(grounded):
                merged = dict(row)
                merged.update(binding)
                next_rows.append(merged)
        rows = next_rows

    if query.projection is not None:
        rows = [{name: row[name] for name in query.projection} for row in rows]

    unique: dict[tuple, Binding] = {}
    for row in rows:
        unique.setdefault(_binding_key(row), row)
    return [unique[key] for key in sorted(unique)]
