"""Duplicate-dataset detection over normalized distribution download URLs.

Datasets are linked when any pair of their download URLs reaches the
similarity threshold; clusters are the connected components of those links.
Comparison is exact all-pairs by default, which is what the desk-scale
corpora here need; ``block_by_host=True`` restricts comparisons to URLs on
the same host, an approximation that is only exact for threshold 1.0 with
host-preserving duplicates.
"""

from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass
from io import StringIO
from typing import Iterable, Optional, Sequence
from urllib.parse import urlsplit, urlunsplit

from . import vocab
from .dcat import DatasetRecord
from .rdf import Graph, Iri, Triple

log = logging.getLogger(__name__)

_UNRESERVED = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~")
_PCT = re.compile(r"%([0-9A-Fa-f]{2})")
_DEFAULT_PORTS = {"http": "80", "https": "443"}


def _decode_unreserved(text: str) -> str:
    def repl(m: re.Match) -> str:
        char = chr(int(m.group(1), 16))
        return char if char in _UNRESERVED else m.group(0)

    return _PCT.sub(repl, text)


def normalize_url(url: str) -> str:
    """Canonical spelling for URL comparison.

    Lowercases scheme and host, drops default ports, strips the trailing
    slash of non-root paths and percent-decodes unreserved characters.
    Unparseable values come back trimmed (and are logged).
    """
    trimmed = url.strip()
    try:
        parts = urlsplit(trimmed)
    except ValueError:
        log.warning("unparseable URL kept as-is: %r", trimmed)
        return trimmed
    if not parts.scheme or not parts.netloc:
        log.warning("URL without scheme/host kept as-is: %r", trimmed)
        return trimmed
    scheme = parts.scheme.lower()
    host = parts.hostname.lower() if parts.hostname else ""
    port = parts.port
    netloc = host
    if port is not None and str(port) != _DEFAULT_PORTS.get(scheme, ""):
        netloc = f"{host}:{port}"
    path = _decode_unreserved(parts.path)
    if len(path) > 1 and path.endswith("/"):
        path = path.rstrip("/")
        if not path:
            path = "/"
    query = _decode_unreserved(parts.query)
    return urlunsplit((scheme, netloc, path, query, parts.fragment))


def trigrams(text: str) -> frozenset[str]:
    return frozenset(text[i : i + 3] for i in range(len(text) - 2))


def trigram_similarity(a: str, b: str) -> float:
    """Jaccard coefficient of the character-trigram sets (no padding)."""
    if len(a) < 3 or len(b) < 3:
        return 1.0 if a == b else 0.0
    ta, tb = trigrams(a), trigrams(b)
    union = ta | tb
    if not union:
        return 1.0 if a == b else 0.0
    return len(ta & tb) / len(union)


@dataclass(frozen=True, slots=True)
class PairMatch:
    dataset_a: Iri
    dataset_b: Iri
    url_a: str
    url_b: str
    similarity: float


@dataclass(frozen=True, slots=True)
class DuplicateCluster:
    members: frozenset[Iri]
    evidence: tuple[tuple[str, str, float], ...]

    def sorted_members(self) -> list[Iri]:
        return sorted(self.members, key=lambda i: i.value)


def _download_urls(record: DatasetRecord) -> list[str]:
    urls = {
        normalize_url(d.download_url.value)
        for d in record.distributions
        if d.download_url is not None
    }
    return sorted(urls)


def duplicate_pairs(
    records: Sequence[DatasetRecord],
    threshold: float,
    block_by_host: bool = False,
) -> list[PairMatch]:
    """All qualifying (dataset, dataset, url, url) matches at the threshold."""
    if not 0.0 < threshold <= 1.0:
        raise ValueError("threshold must be in (0, 1]")
    items = sorted(
        ((r.iri, _download_urls(r)) for r in records),
        key=lambda p: p[0].value,
    )
    tri_cache: dict[str, frozenset[str]] = {}

    def host(url: str) -> str:
        try:
            return urlsplit(url).hostname or ""
        except ValueError:
            return ""

    matches: list[PairMatch] = []
    for i in range(len(items)):
        iri_a, urls_a = items[i]
        for j in range(i + 1, len(items)):
            iri_b, urls_b = items[j]
            if iri_a == iri_b:
                continue
            for ua in urls_a:
                for ub in urls_b:
                    if block_by_host and host(ua) != host(ub):
                        continue
                    if ua == ub:
                        sim = 1.0
                    else:
                        ta = tri_cache.setdefault(ua, trigrams(ua))
                        tb = tri_cache.setdefault(ub, trigrams(ub))
                        if len(ua) < 3 or len(ub) < 3:
                            sim = 1.0 if ua == ub else 0.0
                        else:
                            union = ta | tb
                            sim = len(ta & tb) / len(union) if union else 0.0
                    if sim >= threshold:
                        matches.append(PairMatch(iri_a, iri_b, ua, ub, sim))
    return matches


def find_duplicates(
    records: Sequence[DatasetRecord],
    threshold: float,
    block_by_host: bool = False,
) -> list[DuplicateCluster]:
    """Connected components of datasets linked by download-URL similarity."""
    matches = duplicate_pairs(records, threshold, block_by_host=block_by_host)

    parent: dict[Iri, Iri] = {}

    def find(x: Iri) -> Iri:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: Iri, b: Iri) -> None:
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb, key=lambda i: i.value)] = min(ra, rb, key=lambda i: i.value)

    evidence: dict[Iri, set[tuple[str, str, float]]] = {}
    for m in matches:
        union(m.dataset_a, m.dataset_b)
    groups: dict[Iri, set[Iri]] = {}
    for node in parent:
        groups.setdefault(find(node), set()).add(node)
    for m in matches:
        root = find(m.dataset_a)
        evidence.setdefault(root, set()).add((m.url_a, m.url_b, m.similarity))

    clusters = [
        DuplicateCluster(
            members=frozenset(members),
            evidence=tuple(sorted(evidence.get(root, ()))),
        )
        for root, members in groups.items()
        if len(members) >= 2
    ]
    clusters.sort(key=lambda c: c.sorted_members()[0].value)
    return clusters


def emit_links(clusters: Iterable[DuplicateCluster]) -> Graph:
    """One match triple per unordered member pair (skos:exactMatch)."""
    triples = set()
    for cluster in clusters:
        members = cluster.sorted_members()
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                triples.add(Triple(members[i], vocab.SKOS_EXACT_MATCH, members[j]))
    return Graph(triples)


def report_csv(matches: Iterable[PairMatch]) -> str:
    """CSV report of qualifying pairs: dataset_a,dataset_b,url_a,url_b,similarity."""
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["dataset_a", "dataset_b", "url_a", "url_b", "similarity"])
    for m in sorted(matches, key=lambda m: (m.dataset_a.value, m.dataset_b.value, m.url_a, m.url_b)):
        writer.writerow([m.dataset_a.value, m.dataset_b.value, m.url_a, m.url_b, f"{m.similarity:.6f}"])
    return buffer.getvalue()
