"""Faceted full-text search over dataset entries.

An inverted index with BM25 ranking (k1=1.2, b=0.75) over three weighted
fields (title 2.0, keywords 1.5, description 1.0), facet filtering with
per-field AND/OR combination, synonym expansion at query time, bounding-box
filtering and distance sorting. The index is immutable after build and safe
for concurrent readers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

from .dcat import DatasetRecord
from .rdf import Iri

K1 = 1.2
B = 0.75
FIELD_BOOSTS = {"title": 2.0, "keywords": 1.5, "description": 1.0}
SYNONYM_WEIGHT = 0.5
FACET_FIELDS = ("category", "publisher", "catalog", "license")
EARTH_RADIUS_KM = 6371.0088

_TOKEN = re.compile(r"[^\W_]+(?:-[^\W_]+)*", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased word tokens; hyphenated compounds stay whole."""
    return [m.group(0).lower() for m in _TOKEN.finditer(text)]


@dataclass(frozen=True, slots=True)
class DocEntry:
    dataset: Iri
    titles: tuple[tuple[Optional[str], str], ...] = ()
    descriptions: tuple[tuple[Optional[str], str], ...] = ()
    keywords: tuple[tuple[Optional[str], str], ...] = ()
    categories: tuple[Iri, ...] = ()
    publisher: Optional[str] = None
    catalog: Optional[Iri] = None
    license: Optional[Iri] = None
    point: Optional[tuple[float, float]] = None
    quality: Optional[float] = None

    def __post_init__(self):
        if self.point is not None:
            lat, lon = self.point
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValueError(f"point out of range: {self.point}")

    def field_text(self, name: str) -> str:
        pairs = {
            "title": self.titles,
            "description": self.descriptions,
            "keywords": self.keywords,
        }[name]
        return " ".join(text for _, text in pairs)

    def display_title(self) -> str:
        for preferred in ("de", "en"):
            for lang, text in self.titles:
                if lang == preferred:
                    return text
        return self.titles[0][1] if self.titles else self.dataset.value

    def facet_values(self, facet: str) -> tuple[str, ...]:
        if facet == "category":
            return tuple(c.value for c in self.categories)
        if facet == "publisher":
            return (self.publisher,) if self.publisher else ()
        if facet == "catalog":
            return (self.catalog.value,) if self.catalog else ()
        if facet == "license":
            return (self.license.value,) if self.license else ()
        raise ValueError(f"unknown facet: {facet}")


def entry_from_record(record: DatasetRecord, quality: Optional[float] = None) -> DocEntry:
    """Searchable projection of a dataset record."""
    licenses = sorted(
        {d.license.value for d in record.distributions if d.license is not None}
    )
    publisher = None
    if record.publisher is not None:
        publisher = record.publisher.name or (
            record.publisher.iri.value if record.publisher.iri else None
        )
    point = None
    if record.spatial:
        point = record.spatial[0].centroid
    return DocEntry(
        dataset=record.iri,
        titles=record.titles,
        descriptions=record.descriptions,
        keywords=record.keywords,
        categories=record.themes,
        publisher=publisher,
        catalog=record.catalog,
        license=Iri(licenses[0]) if licenses else None,
        point=point,
        quality=quality,
    )


# --- synonyms ---------------------------------------------------------------------


class SynonymTable:
    """Canonical noun → synonyms, with a symmetric lookup closure.

    The canonical entries are what extraction produced (their count mirrors
    the extracted noun list); lookups go through the symmetric closure so a
    query for either side of a pair finds the other. No term maps to itself.
    """

    def __init__(self, mapping: Mapping[str, Iterable[str]] = ()):
        entries: dict[str, frozenset[str]] = {}
        for noun, syns in dict(mapping).items():
            noun = noun.lower()
            cleaned = frozenset(s.lower() for s in syns) - {noun}
            if cleaned:
                entries[noun] = cleaned
        self.entries = entries
        lookup: dict[str, set[str]] = {}
        for noun, syns in entries.items():
            for syn in syns:
                lookup.setdefault(noun, set()).add(syn)
                lookup.setdefault(syn, set()).add(noun)
        self._lookup = {term: frozenset(syns) for term, syns in lookup.items()}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, term: str) -> bool:
        return term.lower() in self._lookup

    def terms(self) -> list[str]:
        return sorted(self.entries)

    def synonyms(self, term: str) -> frozenset[str]:
        return self._lookup.get(term.lower(), frozenset())


def parse_synonym_table(text: str) -> SynonymTable:
    """TSV: ``noun<TAB>synonym1|synonym2|…`` per line, # comments."""
    mapping: dict[str, set[str]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"line {lineno}: expected noun<TAB>synonyms")
        noun, _, rest = line.partition("\t")
        syns = {s.strip().lower() for s in rest.split("|") if s.strip()}
        if syns:
            mapping.setdefault(noun.strip().lower(), set()).update(syns)
    return SynonymTable(mapping)


def write_synonym_table(table: SynonymTable, path) -> None:
    lines = [f"{term}\t{'|'.join(sorted(table.entries[term]))}" for term in table.terms()]
    Path(path).write_text("".join(l + "\n" for l in lines), encoding="utf-8")


def expand_synonyms(terms: Sequence[str], table: Optional[SynonymTable]) -> list[tuple[str, float]]:
    """Original terms at weight 1.0 plus their synonyms once at 0.5.

    Expansion is not recursive: synonyms of synonyms are not followed.
    """
    out: list[tuple[str, float]] = []
    seen: set[str] = set()
    for term in terms:
        t = term.lower()
        if t not in seen:
            seen.add(t)
            out.append((t, 1.0))
    if table is None:
        return out
    for term in [t for t, w in out if w == 1.0]:
        for syn in sorted(table.synonyms(term)):
            if syn not in seen:
                seen.add(syn)
                out.append((syn, SYNONYM_WEIGHT))
    return out


def extract_synonyms(lexicon, corpus_terms: Optional[set[str]] = None) -> SynonymTable:
    """Build a synonym table from a lexicon graph.

    Keeps German nouns that have at least one synonym, takes the canonical
    form of each noun and of its synonyms, and finally restricts the table
    to nouns occurring in the corpus vocabulary (when given).
    """
    from . import vocab
    from .rdf import Literal

    by_subject: dict = {}
    for t in lexicon:
        by_subject.setdefault(t.subject, []).append(t)

    def literal(node, predicate) -> Optional[str]:
        for t in sorted(by_subject.get(node, []), key=lambda t: str(t.object)):
            if t.predicate == predicate and isinstance(t.object, Literal):
                return t.object.lexical
        return None

    def canonical(node) -> Optional[str]:
        form = literal(node, vocab.DCATQ_LEX_CANONICAL) or literal(node, vocab.DCATQ_LEX_TERM)
        return form.lower() if form else None

    mapping: dict[str, set[str]] = {}
    for node, triples in by_subject.items():
        language = literal(node, vocab.DCATQ_LEX_LANGUAGE)
        pos = literal(node, vocab.DCATQ_LEX_POS)
        if language is None or language.lower() != "de" or pos != "noun":
            continue
        synonym_nodes = [t.object for t in triples if t.predicate == vocab.DCATQ_LEX_SYNONYM]
        if not synonym_nodes:
            continue
        noun = canonical(node)
        if noun is None:
            continue
        forms = {canonical(s) for s in synonym_nodes}
        forms.discard(None)
        forms.discard(noun)
        if forms:
            mapping.setdefault(noun, set()).update(forms)
    if corpus_terms is not None:
        wanted = {t.lower() for t in corpus_terms}
        mapping = {noun: syns for noun, syns in mapping.items() if noun in wanted}
    return SynonymTable(mapping)


# --- queries ----------------------------------------------------------------------


@dataclass(frozen=True)
class SearchQuery:
    text: str = ""
    facets: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    facet_mode: Mapping[str, str] = field(default_factory=dict)
    bbox: Optional[tuple[tuple[float, float], tuple[float, float]]] = None
    sort: str = "relevance"
    origin: Optional[tuple[float, float]] = None
    synonyms: bool = False
    page: int = 1
    size: int = 10

    def __post_init__(self):
        for facet in self.facets:
            if facet not in FACET_FIELDS:
                raise ValueError(f"unknown facet field: {facet}")
        for facet, mode in self.facet_mode.items():
            if facet not in FACET_FIELDS:
                raise ValueError(f"unknown facet field: {facet}")
            if mode not in ("and", "or"):
                raise ValueError(f"facet mode must be and/or, got {mode!r}")
        if self.bbox is not None:
            (sw_lat, sw_lon), (ne_lat, ne_lon) = self.bbox
            for lat, lon in self.bbox:
                if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                    raise ValueError("bbox corner out of range")
            if sw_lat > ne_lat or sw_lon > ne_lon:
                raise ValueError("bbox corners must be ordered SW <= NE (no antimeridian crossing)")
        if self.sort not in ("relevance", "distance"):
            raise ValueError(f"unknown sort: {self.sort}")
        if self.sort == "distance" and self.origin is None:
            raise ValueError("distance sort needs an origin")
        if self.page < 1:
            raise ValueError("page starts at 1")
        if not 1 <= self.size <= 100:
            raise ValueError("size must be 1..100")


@dataclass(frozen=True)
class SearchPage:
    total: int
    page: int
    size: int
    results: tuple[tuple[DocEntry, float], ...]
    facets: dict[str, dict[str, int]]


def haversine_km(a: tuple[float, float], b: tuple[float, float]) -> float:
    lat1, lon1 = (math.radians(x) for x in a)
    lat2, lon2 = (math.radians(x) for x in b)
    dlat = lat2 - lat1
    dlon = lon2 - lon1
    h = math.sin(dlat / 2) ** 2 + math.cos(lat1) * math.cos(lat2) * math.sin(dlon / 2) ** 2
    return 2 * EARTH_RADIUS_KM * math.asin(math.sqrt(h))


def bbox_filter(
    entries: Iterable[DocEntry],
    sw: tuple[float, float],
    ne: tuple[float, float],
) -> list[DocEntry]:
    """Entries whose point lies in the rectangle; boundary inclusive."""
    if sw[0] > ne[0] or sw[1] > ne[1]:
        raise ValueError("bbox corners must be ordered SW <= NE (no antimeridian crossing)")
    out = []
    for entry in entries:
        if entry.point is None:
            continue
        lat, lon = entry.point
        if sw[0] <= lat <= ne[0] and sw[1] <= lon <= ne[1]:
            out.append(entry)
    return out


def distance_sort(entries: Iterable[DocEntry], origin: tuple[float, float]) -> list[DocEntry]:
    """Ascending haversine distance; entries without a point last, IRI order."""
    entries = list(entries)
    with_point = [e for e in entries if e.point is not None]
    without = [e for e in entries if e.point is None]
    with_point.sort(key=lambda e: (haversine_km(e.point, origin), e.dataset.value))
    without.sort(key=lambda e: e.dataset.value)
    return with_point + without


# --- index -------------------------------------------------------------------------


class DuplicateDatasetError(ValueError):
    pass


class InvertedIndex:
    """Postings per (term, field) with per-field statistics for BM25."""

    def __init__(self, entries: Sequence[DocEntry]):
        by_iri: dict[str, DocEntry] = {}
        for entry in entries:
            if entry.dataset.value in by_iri:
                raise DuplicateDatasetError(f"duplicate dataset: {entry.dataset.value}")
            by_iri[entry.dataset.value] = entry
        self.docs: list[DocEntry] = [by_iri[v] for v in sorted(by_iri)]
        self.doc_ids: dict[str, int] = {e.dataset.value: i for i, e in enumerate(self.docs)}

        # postings: term -> field -> list of (doc_id, tf)
        self.postings: dict[str, dict[str, list[tuple[int, int]]]] = {}
        self.field_lengths: dict[str, list[int]] = {f: [] for f in FIELD_BOOSTS}
        for doc_id, entry in enumerate(self.docs):
            for field_name in FIELD_BOOSTS:
                tokens = tokenize(entry.field_text(field_name))
                self.field_lengths[field_name].append(len(tokens))
                counts: dict[str, int] = {}
                for token in tokens:
                    counts[token] = counts.get(token, 0) + 1
                for token, tf in counts.items():
                    self.postings.setdefault(token, {}).setdefault(field_name, []).append(
                        (doc_id, tf)
                    )
        self.avg_length = {
            f: (sum(lengths) / len(lengths) if lengths else 0.0)
            for f, lengths in self.field_lengths.items()
        }
        self.facet_tables: dict[str, dict[str, set[int]]] = {f: {} for f in FACET_FIELDS}
        for doc_id, entry in enumerate(self.docs):
            for facet in FACET_FIELDS:
                for value in entry.facet_values(facet):
                    self.facet_tables[facet].setdefault(value, set()).add(doc_id)

    def __len__(self) -> int:
        return len(self.docs)

    def rebuild_check(self) -> bool:
        """Postings and facet tables must equal a fresh build over the doc store."""
        fresh = InvertedIndex(self.docs)
        return (
            fresh.postings == self.postings
            and fresh.facet_tables == self.facet_tables
            and fresh.field_lengths == self.field_lengths
        )

    # -- scoring --

    def _idf(self, term: str, field_name: str) -> float:
        n = len(self.docs)
        df = len(self.postings.get(term, {}).get(field_name, ()))
        return math.log(1.0 + (n - df + 0.5) / (df + 0.5))

    def score_candidates(self, weighted_terms: Sequence[tuple[str, float]]) -> dict[int, float]:
        scores: dict[int, float] = {}
        for term, weight in weighted_terms:
            fields = self.postings.get(term)
            if not fields:
                continue
            for field_name, posting in fields.items():
                boost = FIELD_BOOSTS[field_name]
                idf = self._idf(term, field_name)
                avg = self.avg_length[field_name]
                for doc_id, tf in posting:
                    dl = self.field_lengths[field_name][doc_id]
                    denom = tf + K1 * (1.0 - B + B * (dl / avg if avg > 0 else 0.0))
                    contribution = boost * weight * idf * (tf * (K1 + 1.0) / denom)
                    scores[doc_id] = scores.get(doc_id, 0.0) + contribution
        return scores

    def _facet_filter(self, doc_ids: set[int], query: SearchQuery) -> set[int]:
        out = doc_ids
        for facet, values in sorted(query.facets.items()):
            if not values:
                continue
            mode = query.facet_mode.get(facet, "or")
            table = self.facet_tables[facet]
            if mode == "or":
                allowed = set()
                for value in values:
                    allowed |= table.get(value, set())
            else:
                allowed = set(range(len(self.docs)))
                for value in values:
                    allowed &= table.get(value, set())
            out = out & allowed
        return out

    def search(self, query: SearchQuery, synonym_table: Optional[SynonymTable] = None) -> SearchPage:
        """Execute a query; facet counts cover the filtered, unpaged result."""
        terms = tokenize(query.text)
        if terms:
            expanded = expand_synonyms(terms, synonym_table if query.synonyms else None)
            scores = self.score_candidates(expanded)
            candidate_ids = set(scores)
        else:
            scores = {}
            candidate_ids = set(range(len(self.docs)))

        candidate_ids = self._facet_filter(candidate_ids, query)

        if query.bbox is not None:
            sw, ne = query.bbox
            kept = {
                self.doc_ids[e.dataset.value]
                for e in bbox_filter((self.docs[i] for i in candidate_ids), sw, ne)
            }
            candidate_ids = kept

        if query.sort == "distance":
            ordered_docs = distance_sort((self.docs[i] for i in candidate_ids), query.origin)
            ordered = [self.doc_ids[e.dataset.value] for e in ordered_docs]
        else:
            ordered = sorted(
                candidate_ids,
                key=lambda i: (-scores.get(i, 0.0), self.docs[i].dataset.value),
            )

        facet_counts: dict[str, dict[str, int]] = {}
        for facet in FACET_FIELDS:
            counts: dict[str, int] = {}
            for i in candidate_ids:
                for value in self.docs[i].facet_values(facet):
                    counts[value] = counts.get(value, 0) + 1
            facet_counts[facet] = dict(sorted(counts.items()))

        start = (query.page - 1) * query.size
        page_ids = ordered[start : start + query.size]
        results = tuple((self.docs[i], scores.get(i, 0.0)) for i in page_ids)
        return SearchPage(
            total=len(ordered),
            page=query.page,
            size=query.size,
            results=results,
            facets=facet_counts,
        )

    # -- persistence --

    def to_state(self) -> dict:
        """Canonical (sorted, set-free) structure for serialization."""
        return {
            "docs": [_doc_state(e) for e in self.docs],
            "version": 1,
        }

    @classmethod
    def from_state(cls, state: dict) -> "InvertedIndex":
        return cls([_doc_from_state(d) for d in state["docs"]])


def build_index(entries: Sequence[DocEntry]) -> InvertedIndex:
    return InvertedIndex(entries)


def _doc_state(entry: DocEntry) -> dict:
    return {
        "dataset": entry.dataset.value,
        "titles": [[lang, text] for lang, text in entry.titles],
        "descriptions": [[lang, text] for lang, text in entry.descriptions],
        "keywords": [[lang, text] for lang, text in entry.keywords],
        "categories": [c.value for c in entry.categories],
        "publisher": entry.publisher,
        "catalog": entry.catalog.value if entry.catalog else None,
        "license": entry.license.value if entry.license else None,
        "point": list(entry.point) if entry.point else None,
        "quality": entry.quality,
    }


def _doc_from_state(state: dict) -> DocEntry:
    return DocEntry(
        dataset=Iri(state["dataset"]),
        titles=tuple((lang, text) for lang, text in state["titles"]),
        descriptions=tuple((lang, text) for lang, text in state["descriptions"]),
        keywords=tuple((lang, text) for lang, text in state["keywords"]),
        categories=tuple(Iri(v) for v in state["categories"]),
        publisher=state["publisher"],
        catalog=Iri(state["catalog"]) if state["catalog"] else None,
        license=Iri(state["license"]) if state["license"] else None,
        point=tuple(state["point"]) if state["point"] else None,
        quality=state["quality"],
    )
