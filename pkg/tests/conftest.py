"""Shared fixtures and independent oracle helpers.

The oracle implementations here deliberately avoid the library's own
index/search code paths: they are linear scans and brute-force
enumerations the tests compare against.
"""

from __future__ import annotations

import itertools
from pathlib import Path

import pytest

from dcatq.rdf import BlankNode, Graph, Iri, Literal, Triple

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


# --- Oracles ---------------------------------------------------------------


def scan_filter(graph, subject=None, predicate=None, object=None):
    """Pattern matching by linear scan (oracle for TripleIndex.query)."""
    return {
        t
        for t in graph
        if (subject is None or t.subject == subject)
        and (predicate is None or t.predicate == predicate)
        and (object is None or t.object == object)
    }


def reachable_triples(graph, root, stop=frozenset()):
    """BFS reachability oracle working directly on the triple set."""
    out_edges = {}
    for t in graph:
        out_edges.setdefault(t.subject, []).append(t)
    visited = {root}
    frontier = [root]
    triples = set()
    while frontier:
        node = frontier.pop()
        for t in out_edges.get(node, []):
            triples.add(t)
            o = t.object
            if isinstance(o, (Iri, BlankNode)) and o not in visited and o not in stop:
                visited.add(o)
                frontier.append(o)
    return triples, visited


def _mask_blanks(triple):
    def mask(term):
        return BlankNode("*") if isinstance(term, BlankNode) else term

    return (mask(triple.subject), triple.predicate, mask(triple.object))


def graphs_isomorphic(a: Graph, b: Graph) -> bool:
    """Exact graph equality up to blank-node relabeling.

    Brute-forces the bijection between blank labels, so only suitable for
    small fixture graphs (≤ 8 blank nodes).
    """
    blanks_a = sorted({n.label for t in a for n in (t.subject, t.object) if isinstance(n, BlankNode)})
    blanks_b = sorted({n.label for t in b for n in (t.subject, t.object) if isinstance(n, BlankNode)})
    if len(blanks_a) != len(blanks_b) or len(a) != len(b):
        return False
    if sorted(map(repr, map(_mask_blanks, a))) != sorted(map(repr, map(_mask_blanks, b))):
        return False
    if len(blanks_a) > 8:
        raise ValueError("isomorphism oracle limited to 8 blank nodes")

    def rename(graph, mapping):
        def m(term):
            if isinstance(term, BlankNode):
                return BlankNode(mapping[term.label])
            return term

        return {Triple(m(t.subject), t.predicate, m(t.object)) for t in graph}

    target = set(b)
    for perm in itertools.permutations(blanks_b):
        mapping = dict(zip(blanks_a, perm))
        if rename(a, mapping) == target:
            return True
    return False


# --- Common fixture graphs ---------------------------------------------------

EX = "http://example.org/"


def iri(local: str) -> Iri:
    return Iri(EX + local)


FIXTURE_TWO_DATASETS = """\
<http://example.org/d1> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/ns/dcat#Dataset> .
<http://example.org/d1> <http://purl.org/dc/terms/title> "Haltestellen"@de .
<http://example.org/d1> <http://purl.org/dc/terms/publisher> <http://example.org/agency> .
<http://example.org/d1> <http://www.w3.org/ns/dcat#distribution> <http://example.org/d1/dist1> .
<http://example.org/d1/dist1> <http://www.w3.org/ns/dcat#downloadURL> <http://example.org/files/stops.csv> .
<http://example.org/d1/dist1> <http://purl.org/dc/terms/format> "CSV" .
<http://example.org/d2> <http://www.w3.org/1999/02/22-rdf-syntax-ns#type> <http://www.w3.org/ns/dcat#Dataset> .
<http://example.org/d2> <http://purl.org/dc/terms/title> "Bicycle counters"@en .
<http://example.org/d2> <http://purl.org/dc/terms/publisher> <http://example.org/agency> .
<http://example.org/agency> <http://xmlns.com/foaf/0.1/name> "Verkehrsamt" .
"""


@pytest.fixture
def two_dataset_graph():
    from dcatq.rdf import parse_ntriples

    return parse_ntriples(FIXTURE_TWO_DATASETS, document_id="fix2")
