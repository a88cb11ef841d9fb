import random

import pytest

from dcatq import vocab
from dcatq.dcat import DatasetRecord, Distribution
from dcatq.dedup import (
    DuplicateCluster,
    duplicate_pairs,
    emit_links,
    find_duplicates,
    normalize_url,
    report_csv,
    trigram_similarity,
)
from dcatq.rdf import Graph, Iri

from .conftest import iri


def record_with_urls(name: str, urls: list[str]) -> DatasetRecord:
    dists = tuple(
        Distribution(iri=iri(f"{name}/dist{k}"), download_url=Iri(u))
        for k, u in enumerate(urls)
    )
    return DatasetRecord(iri=iri(name), distributions=dists)


# --- normalize_url ---------------------------------------------------------------


def test_normalize_lowercases_and_strips_trailing_slash():
    assert normalize_url("HTTP://Example.org/data/") == "http://example.org/data"


def test_normalize_drops_default_port():
    assert normalize_url("http://example.org:80/a") == "http://example.org/a"
    assert normalize_url("https://example.org:443/a") == "https://example.org/a"
    assert normalize_url("http://example.org:8080/a") == "http://example.org:8080/a"


def test_normalize_is_idempotent_on_normal_form():
    assert normalize_url("http://example.org/a") == "http://example.org/a"


def test_normalize_decodes_unreserved_only():
    assert normalize_url("http://example.org/%61b%20c") == "http://example.org/ab%20c"


def test_normalize_root_slash_kept():
    assert normalize_url("http://example.org/") == "http://example.org/"


def test_normalize_unparseable_returns_trimmed():
    assert normalize_url("  not a url  ") == "not a url"


def test_normalize_idempotent_fuzz():
    cases = [
        "HTTP://Example.org:80/Data/%41/",
        "https://EX.org:443/x%2Fy?q=%7E1",
        "ftp://files.example.org/pub/",
        "broken",
        "http://example.org/a//b/",
    ]
    for url in cases:
        once = normalize_url(url)
        assert normalize_url(once) == once


# --- trigram similarity -----------------------------------------------------------


def test_identical_strings_similarity_one():
    assert trigram_similarity("http://example.org/x.csv", "http://example.org/x.csv") == 1.0


def test_disjoint_strings_similarity_zero():
    assert trigram_similarity("aaaa", "bbbb") == 0.0


def test_hand_computed_jaccard():
    # abcd -> {abc, bcd}; abce -> {abc, bce}; intersection {abc}, union 3
    assert trigram_similarity("abcd", "abce") == pytest.approx(1 / 3)


def test_short_strings_compare_exact():
    assert trigram_similarity("ab", "ab") == 1.0
    assert trigram_similarity("ab", "ba") == 0.0


def test_similarity_symmetric_fuzz():
    rng = random.Random(1)
    alphabet = "abcdef/"
    for _ in range(200):
        a = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 10)))
        b = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 10)))
        assert trigram_similarity(a, b) == trigram_similarity(b, a)
        assert 0.0 <= trigram_similarity(a, b) <= 1.0


# --- find_duplicates ----------------------------------------------------------------


def test_shared_exact_url_clusters_at_threshold_one():
    records = [
        record_with_urls("a", ["http://portal.one/files/data.csv"]),
        record_with_urls("b", ["http://portal.one/files/data.csv"]),
        record_with_urls("c", ["http://portal.one/files/other.csv"]),
    ]
    clusters = find_duplicates(records, threshold=1.0)
    assert len(clusters) == 1
    assert clusters[0].members == frozenset({iri("a"), iri("b")})


def test_trailing_slash_difference_still_clusters():
    records = [
        record_with_urls("a", ["http://portal.one/files/data/"]),
        record_with_urls("b", ["HTTP://portal.one/files/data"]),
    ]
    clusters = find_duplicates(records, threshold=1.0)
    assert len(clusters) == 1


def test_records_without_download_urls_never_match():
    records = [
        DatasetRecord(iri=iri("a")),
        DatasetRecord(iri=iri("b")),
        record_with_urls("c", ["http://x.org/1.csv"]),
    ]
    assert find_duplicates(records, threshold=0.5) == []


def test_access_urls_do_not_count():
    records = [
        DatasetRecord(
            iri=iri("a"),
            distributions=(Distribution(iri=iri("a/d"), access_url=Iri("http://x.org/same")),),
        ),
        DatasetRecord(
            iri=iri("b"),
            distributions=(Distribution(iri=iri("b/d"), access_url=Iri("http://x.org/same")),),
        ),
    ]
    assert find_duplicates(records, threshold=1.0) == []


def test_cluster_ordering_and_evidence():
    records = [
        record_with_urls("z2", ["http://p.org/a.csv"]),
        record_with_urls("z1", ["http://p.org/a.csv"]),
        record_with_urls("a2", ["http://q.org/b.csv"]),
        record_with_urls("a1", ["http://q.org/b.csv"]),
    ]
    clusters = find_duplicates(records, threshold=1.0)
    assert [c.sorted_members()[0] for c in clusters] == [iri("a1"), iri("z1")]
    assert all(sim >= 1.0 for _, _, sim in clusters[0].evidence)


def test_emit_links_pair_counts():
    c2 = DuplicateCluster(members=frozenset({iri("a"), iri("b")}), evidence=())
    c3 = DuplicateCluster(members=frozenset({iri("x"), iri("y"), iri("z")}), evidence=())
    assert len(emit_links([c2])) == 1
    assert len(emit_links([c3])) == 3
    assert emit_links([]) == Graph()
    g = emit_links([c2])
    assert all(t.predicate == vocab.SKOS_EXACT_MATCH for t in g)


def test_report_csv_shape():
    records = [
        record_with_urls("a", ["http://p.org/a.csv"]),
        record_with_urls("b", ["http://p.org/a.csv"]),
    ]
    text = report_csv(duplicate_pairs(records, 1.0))
    lines = text.strip().splitlines()
    assert lines[0] == "dataset_a,dataset_b,url_a,url_b,similarity"
    assert len(lines) == 2
    assert "http://p.org/a.csv" in lines[1]


# --- oracle equivalence ---------------------------------------------------------------


def oracle_trigram_jaccard(a: str, b: str) -> float:
    if len(a) < 3 or len(b) < 3:
        return 1.0 if a == b else 0.0
    ta = {a[i : i + 3] for i in range(len(a) - 2)}
    tb = {b[i : i + 3] for i in range(len(b) - 2)}
    return len(ta & tb) / len(ta | tb) if (ta | tb) else (1.0 if a == b else 0.0)


def oracle_clusters(records, threshold):
    """Brute-force all-pairs linking + BFS components."""
    urls = {}
    for r in records:
        urls[r.iri] = sorted(
            {normalize_url(d.download_url.value) for d in r.distributions if d.download_url}
        )
    nodes = sorted(urls, key=lambda i: i.value)
    adjacency = {n: set() for n in nodes}
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            if any(
                oracle_trigram_jaccard(ua, ub) >= threshold
                for ua in urls[a]
                for ub in urls[b]
            ):
                adjacency[a].add(b)
                adjacency[b].add(a)
    seen = set()
    out = []
    for n in nodes:
        if n in seen or not adjacency[n]:
            continue
        comp = set()
        stack = [n]
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            stack.extend(adjacency[x] - comp)
        seen |= comp
        out.append(frozenset(comp))
    return sorted(out, key=lambda c: min(i.value for i in c))


def synthetic_corpus(rng: random.Random, n_records: int, n_clusters: int):
    """Corpus with planted shared-URL clusters plus noise records."""
    records = []
    planted = []
    idx = 0
    for c in range(n_clusters):
        size = rng.randint(2, 4)
        url = f"http://portal-{c}.example.org/files/shared-{c}.csv"
        members = []
        for _ in range(size):
            name = f"rec{idx:03d}"
            idx += 1
            extra = [f"http://noise.example.org/{name}/unique-{rng.randint(0, 10 ** 6)}.csv"]
            records.append(record_with_urls(name, [url] + extra))
            members.append(iri(name))
        planted.append(frozenset(members))
    while idx < n_records:
        name = f"rec{idx:03d}"
        idx += 1
        records.append(
            record_with_urls(name, [f"http://noise.example.org/{name}/only-{rng.randint(0, 10 ** 6)}.csv"])
        )
    rng.shuffle(records)
    return records, planted


def test_planted_clusters_recovered_exactly():
    rng = random.Random(2024)
    records, planted = synthetic_corpus(rng, n_records=60, n_clusters=6)
    clusters = find_duplicates(records, threshold=1.0)
    got = sorted((c.members for c in clusters), key=lambda m: min(i.value for i in m))
    want = sorted(planted, key=lambda m: min(i.value for i in m))
    assert got == want


def test_matches_bruteforce_at_multiple_thresholds():
    rng = random.Random(7)
    records, _ = synthetic_corpus(rng, n_records=40, n_clusters=4)
    for threshold in (0.5, 0.8, 0.9, 1.0):
        got = [c.members for c in find_duplicates(records, threshold)]
        want = oracle_clusters(records, threshold)
        assert got == want, f"threshold {threshold}"


def test_raising_threshold_never_enlarges_clusters():
    rng = random.Random(11)
    records, _ = synthetic_corpus(rng, n_records=30, n_clusters=3)
    low = find_duplicates(records, 0.5)
    high = find_duplicates(records, 0.9)
    # every high-threshold cluster is contained in some low-threshold cluster
    for hc in high:
        assert any(hc.members <= lc.members for lc in low)


def test_threshold_validation():
    with pytest.raises(ValueError):
        find_duplicates([], threshold=0.0)
    with pytest.raises(ValueError):
        find_duplicates([], threshold=1.5)
