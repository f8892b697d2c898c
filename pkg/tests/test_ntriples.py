"""N-Triples reader/writer: escaping, error positions, round-trip."""

import pytest
from hypothesis import given, strategies as st

from semlink.ntriples import format_term, parse_ntriples, serialize_ntriples
from semlink.rdf import Graph, ParseError, Triple, blank, iri, literal

EX = "http://example.org/"


def test_serialize_one_triple_per_line():
    g = Graph([Triple(iri(EX + "s"), iri(EX + "p"), literal("v"))])
    assert serialize_ntriples(g) == f'<{EX}s> <{EX}p> "v" .\n'


@pytest.mark.parametrize("term,expected", [
    (iri(EX + "x"), f"<{EX}x>"),
    (blank("b1"), "_:b1"),
    (literal("plain"), '"plain"'),
    (literal("zweisprachig", "de"), '"zweisprachig"@de'),
    (literal('say "hi"\n'), '"say \\"hi\\"\\n"'),
    (literal("tab\there"), '"tab\\there"'),
])
def test_format_term(term, expected):
    assert format_term(term) == expected


def test_parse_skips_comments_and_blank_lines():
    text = f"# a comment\n\n<{EX}s> <{EX}p> <{EX}o> .\n"
    assert len(parse_ntriples(text)) == 1


def test_parse_reports_line_numbers():
    text = f"<{EX}s> <{EX}p> <{EX}o> .\n<{EX}s> <{EX}p> .\n"
    with pytest.raises(ParseError) as err:
        parse_ntriples(text)
    assert err.value.line == 2


@pytest.mark.parametrize("bad", [
    "<http://e/s> <http://e/p> <http://e/o>",      # missing dot
    "<http://e/s> <http://e/p> <http://e/o> . x",  # trailing content
    '"literal" <http://e/p> <http://e/o> .',       # literal subject
    "<http://e/s> _:b <http://e/o> .",             # blank predicate
    '<http://e/s> <http://e/p> "open .',           # unterminated literal
    '<http://e/s> <http://e/p> "bad\\q" .',        # unknown escape
])
def test_parse_rejects(bad):
    with pytest.raises(ParseError):
        parse_ntriples(bad)


iris = st.text(st.sampled_from("abcdefgXYZ09"), min_size=1, max_size=8).map(
    lambda s: iri(EX + s))
blanks = st.text(st.sampled_from("abc123"), min_size=1, max_size=5).map(blank)
literal_values = st.text(
    st.characters(blacklist_categories=("Cs",), max_codepoint=0x2FF),
    max_size=20)
languages = st.none() | st.sampled_from(["en", "de", "en-US"])
literals = st.builds(literal, literal_values, languages)

subjects = iris | blanks
objects = iris | blanks | literals
triples = st.builds(Triple, subjects, iris, objects)
graphs = st.lists(triples, max_size=25).map(Graph)


@given(graphs)
def test_round_trip(g):
    assert parse_ntriples(serialize_ntriples(g)) == g


def test_round_trip_hostile_literals():
    spiky = [
        literal('quote " backslash \\ done'),
        literal("line\nbreak\rऔर\ttab"),
        literal("", "en"),
        literal("   "),
    ]
    g = Graph([Triple(iri(EX + f"s{i}"), iri(EX + "p"), obj)
               for i, obj in enumerate(spiky)])
    assert parse_ntriples(serialize_ntriples(g)) == g
