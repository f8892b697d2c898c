"""Independent reference implementations the tests check the library against.

Everything here is deliberately naive: exhaustive enumeration instead of
joins, tree surgery instead of the renderer's bookkeeping.  Slow and
obviously correct beats fast and clever for a reference.
"""

import itertools
import random
import xml.etree.ElementTree as ET

from semlink.links import Link
from semlink.ntriples import format_term
from semlink.rdf import Graph, Term, Triple, Var, blank, iri, literal
from semlink.rdql import Query, QueryPattern, Ref, resolve_ref

EX = "http://example.org/"


def evaluate_by_enumeration(query: Query, graph: Graph) -> set:
    """Try every assignment of query variables to terms of the graph.

    Sound for conjunctive queries because any satisfying binding can only
    use terms that occur in matching triples, hence in the graph.
    """
    facts = {(t.subject, t.predicate, t.object) for t in graph}
    pool = sorted({term for fact in facts for term in fact}, key=format_term)
    names = list(query.variables())
    resolved = [
        tuple(resolve_ref(s, query.prefixes) if isinstance(s, Ref) else s
              for s in pat.slots())
        for pat in query.patterns
    ]
    keep = names if query.projection is None else list(query.projection)
    found = set()
    for combo in itertools.product(pool, repeat=len(names)):
        env = dict(zip(names, combo))
        if all(tuple(env[s.name] if isinstance(s, Var) else s for s in fact)
               in facts for fact in resolved):
            found.add(frozenset((n, env[n]) for n in keep))
    return found


def binding_set(bindings) -> set:
    return {frozenset(b.items()) for b in bindings}


def random_graph_and_query(r: random.Random) -> tuple[Graph, Query]:
    """A small random graph plus a random conjunctive query over its terms.

    The term pool is kept tiny so joins actually produce matches and the
    enumeration oracle stays cheap.
    """
    nodes = [iri(EX + c) for c in "abcdef"] + [blank("n1"), blank("n2")]
    predicates = [iri(EX + p) for p in ("p", "q", "r")]
    values = [literal("v1"), literal("v2", "en"), literal("v3")]
    objects = nodes + values

    g = Graph([
        Triple(r.choice(nodes), r.choice(predicates), r.choice(objects))
        for _ in range(r.randint(0, 30))
    ])

    var_names = ["x", "y", "z"][: r.randint(1, 3)]

    def slot(position: str):
        if r.random() < 0.45:
            return Var(r.choice(var_names))
        if position == "s":
            return r.choice(nodes)
        if position == "p":
            return r.choice(predicates)
        return r.choice(objects)

    patterns = tuple(
        QueryPattern(slot("s"), slot("p"), slot("o"))
        for _ in range(r.randint(1, 3)))
    query = Query(None, patterns, {})
    used = query.variables()
    if used and r.random() < 0.4:
        query = Query(tuple(r.sample(used, r.randint(1, len(used)))),
                      patterns, {})
    return g, query


def random_link(r: random.Random, ordinal: int) -> Link:
    word = lambda: "".join(r.choices("abcdefghij", k=5))
    return Link(
        id=iri(f"{EX}lb#link-{ordinal}"),
        from_anchor=iri(EX + "anchors#" + word()),
        to_anchor=iri(EX + "anchors#" + word()),
        arcrole=iri(EX + "rel/" + word()),
        title=word() if r.random() < 0.6 else None,
        title_language="en" if r.random() < 0.2 else None,
        creator=word() if r.random() < 0.3 else None,
        direction="bi" if r.random() < 0.3 else "uni",
    )


# --- renderer reference: strip wrappers, compare trees -----------------

def strip_wrappers(root: ET.Element) -> ET.Element:
    """Remove every inserted traversal wrapper, splicing its child back."""
    def is_wrapper(elem):
        return elem.tag == "a" and elem.get("data-link") is not None

    while is_wrapper(root):
        child = list(root)[0]
        child.tail = root.tail
        root = child
    changed = True
    while changed:
        changed = False
        for parent in root.iter():
            for index, child in enumerate(list(parent)):
                if is_wrapper(child):
                    inner = list(child)[0]
                    inner.tail = child.tail
                    parent.remove(child)
                    parent.insert(index, inner)
                    changed = True
    return root


def trees_equal(a: ET.Element, b: ET.Element) -> bool:
    return (a.tag == b.tag
            and a.attrib == b.attrib
            and (a.text or "") == (b.text or "")
            and (a.tail or "") == (b.tail or "")
            and len(a) == len(b)
            and all(trees_equal(x, y) for x, y in zip(a, b)))


def random_document(r: random.Random) -> ET.Element:
    """Random element tree; never uses the wrapper tag so stripping is exact."""
    tags = ["doc", "section", "para", "item", "note"]
    words = ["alpha", "beta", "gamma", "delta", ""]
    counter = itertools.count(1)

    def build(depth: int) -> ET.Element:
        elem = ET.Element(r.choice(tags))
        if r.random() < 0.5:
            elem.set("id", f"n{next(counter)}")
        elem.text = r.choice(words)
        for _ in range(r.randint(0, 3) if depth < 3 else 0):
            child = build(depth + 1)
            child.tail = r.choice(words)
            elem.append(child)
        return elem

    return build(0)


def element_paths(root: ET.Element) -> dict:
    """Map each descendant element to its 1-based child-index path."""
    paths = {}

    def walk(elem, path):
        for index, child in enumerate(
                (c for c in elem if isinstance(c.tag, str)), start=1):
            child_path = path + [index]
            paths[child] = "/" + "/".join(str(i) for i in child_path)
            walk(child, child_path)

    walk(root, [])
    return paths
