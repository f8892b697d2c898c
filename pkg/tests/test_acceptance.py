"""Top-level acceptance checks.

Each test covers one externally stated guarantee and prints a single
PASS/FAIL line to the terminal, bypassing capture, so a plain pytest run
doubles as a checklist.
"""

import ast
import pathlib
import random
import time

import semlink
from conftest import BACKGROUND_CTX, HAMSTER_DOC, STORE_ROOT, UNRELATED_DOC
from oracles import (
    EX, binding_set, evaluate_by_enumeration, element_paths, random_document,
    random_graph_and_query, random_link, strip_wrappers, trees_equal,
)
from semlink.anchors import Anchor, Selector
from semlink.cli import main
from semlink.contexts import SelectedLink, filter_by_document
from semlink.links import BI, Link, Linkbase, link_to_reified_rdf, link_to_simple_rdf
from semlink.ntriples import parse_ntriples, serialize_ntriples
from semlink.rdf import Graph, Triple, blank, iri, literal, unreify
from semlink.rdql import evaluate
from semlink.render import Decoration, decorate

import xml.etree.ElementTree as ET

SRC_DIR = pathlib.Path(semlink.__file__).parent


def verdict(capsys, name, problems):
    with capsys.disabled():
        print(f"\n[acceptance] {name}: {'FAIL' if problems else 'PASS'}")
    assert not problems, "\n".join(problems)


def test_worked_example_end_to_end(capsys):
    problems = []
    base = ["apply", "--store", str(STORE_ROOT), "--context", BACKGROUND_CTX]
    start = time.perf_counter()
    code = main(base + [HAMSTER_DOC])
    decorated = capsys.readouterr().out
    code_bare = main(base + [UNRELATED_DOC])
    bare = capsys.readouterr().out
    elapsed = time.perf_counter() - start

    if code != 0 or code_bare != 0:
        problems.append(f"exit codes {code}, {code_bare}")
    if decorated.count("data-link=") != 1:
        problems.append(f"{decorated.count('data-link=')} anchors decorated, want 1")
    if 'href="hay-fever-handbook.xml"' not in decorated:
        problems.append("decorated anchor does not target the handbook")
    if 'title="For freshman"' not in decorated:
        problems.append("arc title missing from decoration")
    if bare.count("data-link=") != 0:
        problems.append("unrelated document picked up decorations")
    if elapsed >= 1.0:
        problems.append(f"took {elapsed:.2f}s, budget 1s")
    verdict(capsys, "worked example end to end", problems)


def test_query_evaluator_matches_enumeration(capsys):
    rng = random.Random(4101)
    problems = []
    start = time.perf_counter()
    for case in range(500):
        graph, query = random_graph_and_query(rng)
        got = binding_set(evaluate(query, graph))
        want = evaluate_by_enumeration(query, graph)
        if got != want:
            problems.append(f"case {case}: {len(got)} vs {len(want)} bindings")
    elapsed = time.perf_counter() - start
    if elapsed >= 30.0:
        problems.append(f"took {elapsed:.1f}s, budget 30s")
    verdict(capsys, "query evaluation vs enumeration (500 cases)", problems)


def test_link_reification_round_trips(capsys):
    rng = random.Random(4102)
    problems = []
    for n in range(200):
        link = random_link(rng, n)
        graph = Graph(link_to_reified_rdf(link))
        inner = unreify(graph, link.id)
        if inner != Triple(link.to_anchor, link.arcrole, link.from_anchor):
            problems.append(f"link {n}: inner statement mangled")
        swapped = Triple(inner.object, inner.predicate, inner.subject)
        if link_to_simple_rdf(link) != [swapped]:
            problems.append(f"link {n}: harvest form is not the swapped inner")
        if link.direction == BI:
            rev = unreify(graph, iri(link.id.value + "-rev"))
            if rev != swapped:
                problems.append(f"link {n}: reverse statement mangled")
    verdict(capsys, "link reification round-trip (200 links)", problems)


HOSTILE = ['plain', 'say "hi"', 'line\nbreak', 'tab\there',
           'back\\slash', 'trailing "']


def _hostile_graph(r):
    triples = []
    for _ in range(r.randint(0, 25)):
        node = lambda: r.choice(
            [iri(f"{EX}n{r.randint(0, 5)}"), blank(f"b{r.randint(0, 2)}")])
        obj = r.choice([
            node(),
            literal(r.choice(HOSTILE),
                    language="en" if r.random() < 0.4 else None),
        ])
        triples.append(Triple(node(), iri(f"{EX}p{r.randint(0, 3)}"), obj))
    return Graph(triples)


def test_ntriples_round_trips_hostile_literals(capsys):
    rng = random.Random(4103)
    worst = Graph([Triple(iri(EX + "s"), iri(EX + "p"), literal(text, language=lang))
                   for text in HOSTILE for lang in (None, "en", "de-AT")])
    problems = []
    for case in range(100):
        graph = worst if case == 0 else _hostile_graph(rng)
        if parse_ntriples(serialize_ntriples(graph)) != graph:
            problems.append(f"case {case}: graphs differ after round-trip")
    verdict(capsys, "N-Triples round-trip (100 graphs)", problems)


RDF_MODEL = {"rdf", "ntriples"}
LAYER_IMPORTS = {
    "anchors": RDF_MODEL,
    "links": RDF_MODEL | {"anchors"},
    "contexts": RDF_MODEL | {"links", "rdql"},
}


def _package_imports(module):
    """Names of semlink submodules a module's source imports, via ast."""
    tree = ast.parse((SRC_DIR / f"{module}.py").read_text())
    found = set()
    for node in ast.walk(tree):
        if isinstance(node, ast.Import):
            found.update(alias.name.split(".")[1]
                         for alias in node.names
                         if alias.name.startswith("semlink."))
        elif isinstance(node, ast.ImportFrom):
            if node.level:
                found.add((node.module or "").split(".")[0])
            elif node.module == "semlink":
                found.update(alias.name for alias in node.names)
            elif node.module and node.module.startswith("semlink."):
                found.add(node.module.split(".")[1])
    return found - {""}


def test_layers_import_only_their_neighbours(capsys):
    problems = []
    for module, allowed in LAYER_IMPORTS.items():
        stray = _package_imports(module) - allowed
        if stray:
            problems.append(f"{module}.py imports {sorted(stray)}")
    verdict(capsys, "layer import discipline", problems)


def test_decorating_is_reversible(capsys):
    rng = random.Random(4104)
    problems = []
    for case in range(100):
        doc = random_document(rng)
        original = ET.tostring(doc, encoding="unicode")
        pool = [("whole-resource", "")]
        pool += [("element-path", p) for p in element_paths(doc).values()]
        pool += [("shorthand-id", e.get("id")) for e in doc.iter() if e.get("id")]
        decorations = [
            Decoration(
                anchor=Anchor(id=iri(f"{EX}a#{i}"), resource=iri(EX + "d.xml"),
                              selector=Selector(*rng.choice(pool))),
                target_href="other.xml",
                arcrole=iri(EX + "rel"),
                link_id=iri(f"{EX}lb#{i}"),
                title=None,
            )
            for i in range(rng.randint(0, 5))
        ]
        out = decorate(original, decorations)
        restored = strip_wrappers(ET.fromstring(out))
        if not trees_equal(restored, ET.fromstring(original)):
            problems.append(f"case {case}: tree not restored")
        elif "".join(restored.itertext()) != "".join(doc.itertext()):
            problems.append(f"case {case}: character data drifted")
    verdict(capsys, "renderer reversibility (100 documents)", problems)


def test_filter_keeps_only_links_starting_here(capsys):
    here = iri(EX + "campus/alpha.xml")
    there = iri(EX + "campus/beta.xml")
    anchors = [Anchor(id=iri(f"{EX}lb#a{i}"), resource=here if i < 3 else there,
                      selector=Selector("whole-resource", ""))
               for i in range(6)]
    links, selected = [], []
    for i, source in enumerate([0, 3, 1, 4, 5, 3]):  # sources 0 and 1 live on `here`
        link = Link(id=iri(f"{EX}lb#link-{i}"),
                    from_anchor=anchors[source].id,
                    to_anchor=anchors[(source + 1) % 6].id,
                    arcrole=iri(EX + "rel"))
        links.append(link)
        selected.append(SelectedLink(
            link=link.id,
            inner=Triple(link.to_anchor, link.arcrole, link.from_anchor)))
    linkbase = Linkbase(base="store:/lb", anchors=anchors, links=links)

    kept = filter_by_document(selected, here, linkbase)
    problems = []
    if [s.link.value for s in kept] != [f"{EX}lb#link-0", f"{EX}lb#link-2"]:
        problems.append(f"kept {[s.link.value for s in kept]}")
    verdict(capsys, "start-resource filtering", problems)
