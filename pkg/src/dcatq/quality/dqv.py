"""Quality measurement output using the W3C Data Quality Vocabulary."""

from __future__ import annotations

import hashlib
from typing import Iterable, Optional

from .. import vocab
from ..rdf import Graph, Iri, Literal, Triple
from .evaluate import MetricResult


def measurement_iri(dataset: Iri, metric_key: str) -> Iri:
    digest = hashlib.sha1(f"{dataset.value}|{metric_key}".encode("utf-8")).hexdigest()[:16]
    return Iri(f"{vocab.DCATQ_NS}measurement-{digest}")


def to_dqv(
    dataset: Iri,
    results: Iterable[MetricResult],
    remove_existing: bool = True,
    prior: Optional[Graph] = None,
) -> Graph:
    """Measurement triples for all computed results, merged with the prior graph.

    Each score becomes one measurement node with exactly four triples: its
    type, the metric it measures, the dataset it was computed on and the
    integer value. With ``remove_existing`` set, measurements already
    recorded for this dataset are dropped from the prior graph first, so
    re-running an evaluation never duplicates nodes.
    """
    base = set(prior) if prior is not None else set()
    if remove_existing and base:
        stale_nodes = {
            t.subject
            for t in base
            if t.predicate == vocab.DQV_COMPUTED_ON and t.object == dataset
        }
        base = {
            t
            for t in base
            if t.subject not in stale_nodes and t.object not in stale_nodes
        }
    for result in results:
        if result.score is None:
            continue
        node = measurement_iri(dataset, result.metric)
        base.add(Triple(node, vocab.RDF_TYPE, vocab.DQV_QUALITY_MEASUREMENT))
        base.add(Triple(node, vocab.DQV_IS_MEASUREMENT_OF, vocab.metric_iri(result.metric)))
        base.add(Triple(node, vocab.DQV_COMPUTED_ON, dataset))
        base.add(
            Triple(node, vocab.DQV_VALUE, Literal(str(result.score), datatype=vocab.XSD_INTEGER))
        )
    return Graph(base)


def parse_measurements(graph: Graph, dataset: Optional[Iri] = None) -> list[tuple[str, int]]:
    """(metric key, value) pairs recorded in a DQV graph, sorted.

    Metric keys are recovered from the metric IRI tail; foreign metric IRIs
    are returned verbatim.
    """
    computed_on = {}
    values = {}
    for t in graph:
        if t.predicate == vocab.DQV_COMPUTED_ON:
            computed_on[t.subject] = t.object
        elif t.predicate == vocab.DQV_VALUE and isinstance(t.object, Literal):
            values[t.subject] = t.object.lexical
    metric_of = {
        t.subject: t.object
        for t in graph
        if t.predicate == vocab.DQV_IS_MEASUREMENT_OF and isinstance(t.object, Iri)
    }
    out = []
    for node, metric in metric_of.items():
        if node not in values:
            continue
        if dataset is not None and computed_on.get(node) != dataset:
            continue
        key = metric.value
        if key.startswith(vocab.DCATQ_METRIC_NS):
            key = key[len(vocab.DCATQ_METRIC_NS):]
        try:
            out.append((key, int(values[node])))
        except ValueError:
            continue
    return sorted(out)
