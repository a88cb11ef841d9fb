"""Dataset-slice cleaning: empty structures, language filtering, format
normalization and catalog membership.

All steps are pure functions of (slice, config); the whole `clean` pass is
idempotent so re-running the pipeline over already-cleaned data is safe.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from . import vocab
from .properties import parse_properties
from .rdf import BlankNode, Graph, Iri, Literal, Triple


@dataclass(frozen=True)
class CleanConfig:
    allowed_languages: frozenset[str] = frozenset()  # empty set keeps every language
    remove_empty: bool = True
    normalize_formats: bool = True
    catalog_id: Optional[Iri] = None

    def __post_init__(self):
        object.__setattr__(self, "allowed_languages", frozenset(t.lower() for t in self.allowed_languages))


@dataclass
class CleanReport:
    empty_removed: int = 0
    language_removed: int = 0
    structure_pruned: int = 0
    formats_normalized: int = 0
    catalog_added: int = 0

    def as_dict(self) -> dict[str, int]:
        return {
            "empty_removed": self.empty_removed,
            "language_removed": self.language_removed,
            "structure_pruned": self.structure_pruned,
            "formats_normalized": self.formats_normalized,
            "catalog_added": self.catalog_added,
        }


# --- media type normalization ---------------------------------------------------

_alias_table: Optional[dict[str, str]] = None
_known_types: Optional[frozenset[str]] = None


def load_alias_table(path: Optional[Path] = None) -> dict[str, str]:
    if path is not None:
        return parse_properties(Path(path).read_text(encoding="utf-8"))
    text = resources.files("dcatq").joinpath("data/format_aliases.txt").read_text(encoding="utf-8")
    return parse_properties(text)


def _tables() -> tuple[dict[str, str], frozenset[str]]:
    global _alias_table, _known_types
    if _alias_table is None:
        _alias_table = {k.lower(): v for k, v in load_alias_table().items()}
        _known_types = frozenset(_alias_table.values())
    return _alias_table, _known_types


def normalize_media_type(value: str) -> tuple[str, bool]:
    """Trim/lowercase a format label and map it through the alias table.

    Returns the normalized value and whether it is a known media type.
    Unknown values pass through trimmed and lowercased. Idempotent.
    """
    aliases, known = _tables()
    v = value.strip().lower().lstrip(".")
    if v in aliases:
        return aliases[v], True
    if v in known:
        return v, True
    return v, False


# --- cleaning ---------------------------------------------------------------------

_FORMAT_PREDICATES = (vocab.DCT_FORMAT, vocab.DCAT_MEDIA_TYPE)


def clean(slice_graph: Graph, config: CleanConfig) -> tuple[Graph, CleanReport]:
    report = CleanReport()
    triples = set(slice_graph)

    # nodes that carry a description in the input; only these (and blank
    # nodes) are pruned when they end up childless
    had_outgoing = {t.subject for t in triples}

    if config.allowed_languages:
        dropped = {
            t
            for t in triples
            if isinstance(t.object, Literal)
            and t.object.language is not None
            and t.object.language not in config.allowed_languages
        }
        triples -= dropped
        report.language_removed = len(dropped)

    if config.normalize_formats:
        rewritten = []
        for t in triples:
            if t.predicate in _FORMAT_PREDICATES and isinstance(t.object, Literal):
                normalized, _known = normalize_media_type(t.object.lexical)
                if not normalized:
                    continue  # whitespace-only values are handled by empty removal
                if normalized != t.object.lexical or t.object.language or t.object.datatype:
                    rewritten.append((t, Triple(t.subject, t.predicate, Literal(normalized))))
        for old, new in rewritten:
            triples.discard(old)
            triples.add(new)
        report.formats_normalized = len(rewritten)

    if config.remove_empty:
        empty = {
            t
            for t in triples
            if isinstance(t.object, Literal) and not t.object.lexical.strip()
        }
        triples -= empty
        report.empty_removed = len(empty)

        # prune dangling references to structures that lost all content
        while True:
            with_outgoing = {t.subject for t in triples}
            dangling = {
                t
                for t in triples
                if isinstance(t.object, (Iri, BlankNode))
                and t.object not in with_outgoing
                and (isinstance(t.object, BlankNode) or t.object in had_outgoing)
            }
            if not dangling:
                break
            triples -= dangling
            report.structure_pruned += len(dangling)

    if config.catalog_id is not None:
        from .rdf import term_key

        for subject in sorted(
            {
                t.subject
                for t in triples
                if t.predicate == vocab.RDF_TYPE and t.object == vocab.DCAT_DATASET
            },
            key=term_key,
        ):
            membership = Triple(subject, vocab.DCT_IS_PART_OF, config.catalog_id)
            if membership not in triples:
                triples.add(membership)
                report.catalog_added += 1

    return Graph(triples), report
