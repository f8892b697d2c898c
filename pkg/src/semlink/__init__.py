"""semlink: hyperlinks as first-class, queryable semantic statements.

Links live outside documents, described in RDF as reified statements;
link contexts hold stored queries that pick which links exist for a
reader; the renderer materializes the survivors into the document on the
way out.  Swap the active contexts and the same document grows a
different link set.
"""

from semlink.rdf import (
    Graph, Term, Triple, TriplePattern, Var, blank, iri, literal, reify,
    unreify,
)
from semlink.rdql import evaluate, parse_query
from semlink.anchors import Anchor, Selector, split_href
from semlink.links import Link, Linkbase, parse_linkbase, project_linkbase
from semlink.contexts import (
    LinkContext, SelectedLink, compose_contexts, evaluate_context,
    filter_by_document, parse_context,
)
from semlink.render import Decoration, decorate, plan_decorations
from semlink.ntriples import parse_ntriples, serialize_ntriples
from semlink.store import Store

__version__ = "0.1.0"

__all__ = [
    "Anchor", "Decoration", "Graph", "Link", "Linkbase", "LinkContext",
    "SelectedLink", "Selector", "Store", "Term", "Triple", "TriplePattern",
    "Var", "blank", "compose_contexts", "decorate", "evaluate",
    "evaluate_context", "filter_by_document", "iri", "literal",
    "parse_context", "parse_linkbase", "parse_ntriples", "parse_query",
    "plan_decorations", "project_linkbase", "reify", "serialize_ntriples",
    "split_href", "unreify", "__version__",
]
