"""Indexed-search vs. linear-scan timing on a synthetic corpus.

The scan baseline re-tokenizes every document per query (that is the point
of comparison: no precomputed structures); both engines implement the same
scoring and filter semantics, so their results agree while their latencies
diverge with corpus size.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass
from typing import Sequence

from .rdf import Iri
from .search import (
    B,
    FACET_FIELDS,
    FIELD_BOOSTS,
    K1,
    DocEntry,
    InvertedIndex,
    SearchQuery,
    tokenize,
)

_NOUNS = [
    "haltestelle", "fahrplan", "stadtbahn", "buslinie", "radweg", "parkplatz",
    "luftqualität", "pegelstand", "baustelle", "ladesäule", "verkehr", "messung",
    "unfall", "bevölkerung", "haushalt", "lärm", "wetter", "niederschlag",
    "temperatur", "karte", "grenze", "gebiet", "schule", "spielplatz",
]
_MODIFIERS = [
    "aktuell", "historisch", "monatlich", "jährlich", "regional", "städtisch",
    "öffentlich", "barrierefrei", "digital", "amtlich",
]
_PUBLISHERS = [f"Amt {c}" for c in "ABCDEFGH"]
_CATEGORIES = [f"http://themes/{t}" for t in ("transport", "environment", "society", "economy")]
_LICENSES = [f"http://licenses/{l}" for l in ("cc0", "cc-by", "dl-de-by")]


def make_corpus(n_docs: int, seed: int = 7) -> list[DocEntry]:
    rng = random.Random(seed)
    docs = []
    for i in range(n_docs):
        title = f"{rng.choice(_MODIFIERS)} {rng.choice(_NOUNS)} {rng.choice(_NOUNS)}"
        description = " ".join(rng.choice(_NOUNS + _MODIFIERS) for _ in range(rng.randint(8, 20)))
        docs.append(
            DocEntry(
                dataset=Iri(f"http://bench.example.org/dataset/{i:06d}"),
                titles=(("de", title),),
                descriptions=(("de", description),),
                keywords=tuple(("de", rng.choice(_NOUNS)) for _ in range(rng.randint(0, 3))),
                categories=(Iri(rng.choice(_CATEGORIES)),),
                publisher=rng.choice(_PUBLISHERS),
                license=Iri(rng.choice(_LICENSES)),
                point=(rng.uniform(47.0, 55.0), rng.uniform(6.0, 15.0)),
            )
        )
    return docs


def scan_search(docs: Sequence[DocEntry], query: SearchQuery) -> list[tuple[str, float]]:
    """Linear-scan baseline: tokenizes the corpus per query, same semantics."""
    terms = tokenize(query.text)
    field_tokens = {f: [tokenize(d.field_text(f)) for d in docs] for f in FIELD_BOOSTS}
    avg = {
        f: (sum(len(t) for t in toks) / len(docs) if docs else 0.0)
        for f, toks in field_tokens.items()
    }
    n = len(docs)

    candidates = []
    for i, entry in enumerate(docs):
        ok = True
        for facet, values in query.facets.items():
            have = set(entry.facet_values(facet))
            mode = query.facet_mode.get(facet, "or")
            if mode == "or" and not (have & set(values)):
                ok = False
            if mode == "and" and not set(values) <= have:
                ok = False
        if ok:
            candidates.append(i)

    scores: dict[int, float] = {}
    if terms:
        df = {
            (t, f): sum(1 for toks in field_tokens[f] if t in toks)
            for t in set(terms)
            for f in FIELD_BOOSTS
        }
        for i in candidates:
            s = 0.0
            for f, boost in FIELD_BOOSTS.items():
                toks = field_tokens[f][i]
                if not toks:
                    continue
                for t in set(terms):
                    tf = toks.count(t)
                    if tf == 0:
                        continue
                    idf = math.log(1.0 + (n - df[(t, f)] + 0.5) / (df[(t, f)] + 0.5))
                    dl_ratio = len(toks) / avg[f] if avg[f] > 0 else 0.0
                    denom = tf + K1 * (1 - B + B * dl_ratio)
                    s += boost * idf * tf * (K1 + 1) / denom
            if s > 0:
                scores[i] = s
        candidates = [i for i in candidates if i in scores]

    ordered = sorted(candidates, key=lambda i: (-scores.get(i, 0.0), docs[i].dataset.value))
    top = ordered[: query.size]
    return [(docs[i].dataset.value, scores.get(i, 0.0)) for i in top]


@dataclass
class BenchRow:
    engine: str
    query_class: str
    median_ms: float
    queries: int

    def as_dict(self) -> dict:
        return {
            "engine": self.engine,
            "query_class": self.query_class,
            "median_ms": round(self.median_ms, 3),
            "queries": self.queries,
        }


def _simple_queries(rng: random.Random, n: int) -> list[SearchQuery]:
    return [
        SearchQuery(text=" ".join(rng.sample(_NOUNS, rng.randint(1, 2))), size=10)
        for _ in range(n)
    ]


def _faceted_queries(rng: random.Random, n: int) -> list[SearchQuery]:
    out = []
    for _ in range(n):
        out.append(
            SearchQuery(
                text=rng.choice(_NOUNS),
                facets={
                    "category": (rng.choice(_CATEGORIES),),
                    "publisher": (rng.choice(_PUBLISHERS),),
                },
                size=10,
            )
        )
    return out


def run_bench(n_docs: int = 50_000, n_queries: int = 20, seed: int = 7) -> dict:
    """Build corpus + index, time both engines, return rows and speedups."""
    rng = random.Random(seed + 1)
    docs = make_corpus(n_docs, seed=seed)

    t0 = time.perf_counter()
    index = InvertedIndex(docs)
    build_seconds = time.perf_counter() - t0

    classes = {
        "simple": _simple_queries(rng, n_queries),
        "faceted": _faceted_queries(rng, n_queries),
    }

    rows: list[BenchRow] = []
    medians: dict[tuple[str, str], float] = {}
    for class_name, queries in classes.items():
        for engine in ("indexed", "scan"):
            times = []
            for query in queries:
                start = time.perf_counter()
                if engine == "indexed":
                    index.search(query)
                else:
                    scan_search(docs, query)
                times.append((time.perf_counter() - start) * 1000.0)
            median = statistics.median(times)
            medians[(engine, class_name)] = median
            rows.append(BenchRow(engine, class_name, median, len(queries)))

    speedups = {
        class_name: (
            medians[("scan", class_name)] / medians[("indexed", class_name)]
            if medians[("indexed", class_name)] > 0
            else float("inf")
        )
        for class_name in classes
    }
    return {
        "docs": n_docs,
        "build_seconds": round(build_seconds, 3),
        "rows": [r.as_dict() for r in rows],
        "speedups": {k: round(v, 2) for k, v in speedups.items()},
    }


def write_bench_csv(result: dict, path) -> None:
    import csv
    from pathlib import Path

    with open(Path(path), "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["engine", "query_class", "median_ms", "queries"])
        for row in result["rows"]:
            writer.writerow([row["engine"], row["query_class"], row["median_ms"], row["queries"]])
