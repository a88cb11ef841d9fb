"""Metadata enrichment: language-tag refinement and place-name detection.

The gazetteer follows the EU territorial hierarchy (NUTS levels above the
municipal LAU layer). Place names are matched case-insensitively on word
boundaries, longest name first, so "Frankfurt am Main" is never reported
as a match for a bare "Frankfurt" entry at the same position.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from . import vocab
from .dcat import DatasetRecord, GeoAnnotation, GeoLevel
from .language import Detector, default_detector

_LEVEL_RANK = {
    GeoLevel.NUTS0: 0,
    GeoLevel.NUTS1: 1,
    GeoLevel.NUTS2: 2,
    GeoLevel.NUTS3: 3,
    GeoLevel.LAU: 4,
}


@dataclass(frozen=True, slots=True)
class GazetteerEntry:
    id: str
    name: str
    level: GeoLevel
    parent: Optional[str]
    centroid: tuple[float, float]
    population: Optional[int] = None

    def __post_init__(self):
        lat, lon = self.centroid
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            raise ValueError(f"centroid out of range for {self.id}")
        if self.level not in _LEVEL_RANK:
            raise ValueError(f"{self.id}: level {self.level} not allowed in gazetteer")


_WORD = re.compile(r"[^\W\d_](?:[\w\-]*[^\W\d_])?", re.UNICODE)


def _word_tokens(text: str) -> list[tuple[str, int, int]]:
    """Lowercased word tokens with their spans."""
    return [(m.group(0).lower(), m.start(), m.end()) for m in _WORD.finditer(text)]


def _normalize_name(name: str) -> str:
    return " ".join(tok for tok, _, _ in _word_tokens(name))


class GazetteerError(ValueError):
    pass


class Gazetteer:
    """Hierarchical place database with a normalized-name lookup index."""

    def __init__(self, entries: Iterable[GazetteerEntry]):
        self.entries = list(entries)
        self.by_id: dict[str, GazetteerEntry] = {}
        for e in self.entries:
            if e.id in self.by_id:
                raise GazetteerError(f"duplicate gazetteer id: {e.id}")
            self.by_id[e.id] = e
        for e in self.entries:
            if e.parent is None:
                continue
            parent = self.by_id.get(e.parent)
            if parent is None:
                raise GazetteerError(f"{e.id}: unknown parent {e.parent}")
            if _LEVEL_RANK[parent.level] >= _LEVEL_RANK[e.level]:
                raise GazetteerError(
                    f"{e.id}: parent {parent.id} has level {parent.level.value}, "
                    f"not above {e.level.value}"
                )
        # normalized name -> entry ids; names may collide across levels
        self.name_index: dict[str, list[str]] = {}
        # first token of a name -> set of token lengths to try (longest first)
        self._first_token: dict[str, set[tuple[int, str]]] = {}
        for e in self.entries:
            normalized = _normalize_name(e.name)
            if not normalized:
                raise GazetteerError(f"{e.id}: empty name")
            self.name_index.setdefault(normalized, []).append(e.id)
            tokens = normalized.split(" ")
            self._first_token.setdefault(tokens[0], set()).add((len(tokens), normalized))

    def __len__(self) -> int:
        return len(self.entries)

    def resolve(self, normalized_name: str) -> Optional[GazetteerEntry]:
        """Best entry for a name: coarsest level, then population, then id."""
        ids = self.name_index.get(normalized_name)
        if not ids:
            return None
        candidates = [self.by_id[i] for i in ids]
        candidates.sort(
            key=lambda e: (_LEVEL_RANK[e.level], -(e.population or 0), e.id)
        )
        return candidates[0]

    def find_in_text(self, text: str) -> list[GazetteerEntry]:
        """Longest-match scan over word boundaries; non-overlapping."""
        tokens = _word_tokens(text)
        found = []
        i = 0
        while i < len(tokens):
            candidates = self._first_token.get(tokens[i][0])
            matched = None
            if candidates:
                for length, name in sorted(candidates, key=lambda c: -c[0]):
                    if i + length > len(tokens):
                        continue
                    window = " ".join(tok for tok, _, _ in tokens[i : i + length])
                    if window == name:
                        matched = (length, self.resolve(name))
                        break
            if matched and matched[1] is not None:
                found.append(matched[1])
                i += matched[0]
            else:
                i += 1
        return found


def parse_gazetteer(text: str) -> Gazetteer:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 7:
            raise GazetteerError(f"line {lineno}: expected 7 tab-separated fields")
        id_, name, level, parent, lat, lon, population = (p.strip() for p in parts)
        try:
            entries.append(
                GazetteerEntry(
                    id=id_,
                    name=name,
                    level=GeoLevel(level),
                    parent=parent or None,
                    centroid=(float(lat), float(lon)),
                    population=int(population) if population else None,
                )
            )
        except ValueError as exc:
            raise GazetteerError(f"line {lineno}: {exc}")
    return Gazetteer(entries)


def load_gazetteer(path: Optional[Path] = None) -> Gazetteer:
    if path is not None:
        return parse_gazetteer(Path(path).read_text(encoding="utf-8"))
    text = resources.files("dcatq").joinpath("data/gazetteer_de.tsv").read_text(encoding="utf-8")
    return parse_gazetteer(text)


# --- record-level enrichment -------------------------------------------------


def refine_language_tags(
    record: DatasetRecord,
    threshold: float = 0.75,
    detector: Optional[Detector] = None,
) -> DatasetRecord:
    """Attach detected language tags to untagged titles and descriptions.

    Already-tagged literals are never changed; a tag is only set when the
    detector's confidence reaches the threshold.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    det = detector if detector is not None else default_detector()

    def refresh(pairs):
        out = []
        for lang, text in pairs:
            if lang is None:
                guess = det.detect(text)
                if guess is not None and guess.confidence >= threshold:
                    lang = guess.lang
            out.append((lang, text))
        return tuple(sorted(set(out), key=lambda p: (p[0] or "", p[1])))

    return replace(
        record,
        titles=refresh(record.titles),
        descriptions=refresh(record.descriptions),
    )


def annotate_places(record: DatasetRecord, gazetteer: Gazetteer) -> DatasetRecord:
    """Scan titles/descriptions/keywords for gazetteer names, append matches."""
    hits: set[GeoAnnotation] = set()
    for _, text in record.text_values():
        for entry in gazetteer.find_in_text(text):
            hits.add(
                GeoAnnotation(
                    place_name=entry.name,
                    level=entry.level,
                    centroid=entry.centroid,
                    place_iri=vocab.place_iri(entry.id),
                )
            )
    if not hits:
        return record
    merged = set(record.spatial) | hits
    ordered = tuple(
        sorted(
            merged,
            key=lambda a: (a.place_name, a.level.value, a.centroid, a.place_iri.value if a.place_iri else ""),
        )
    )
    return replace(record, spatial=ordered)
