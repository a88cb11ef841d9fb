"""Metadata quality and integration toolkit for DCAT open-data catalogs."""

__version__ = "0.1.0"

from .rdf import (  # noqa: F401
    BlankNode,
    Graph,
    Iri,
    Literal,
    NotFoundError,
    ParseError,
    Triple,
    TripleIndex,
    parse_ntriples,
    parse_turtle,
    serialize_ntriples,
    slice_dataset,
    split_dataset_graphs,
)
