"""Metric evaluation over dataset records and their slices.

Evaluation never throws: metric failures become ``NotComputed`` results
with a reason, long-running probes are skipped unless enabled, and metrics
backed by optional local stores are skipped when the store is absent.
Given a fixed evaluation time, results are a pure function of the inputs.
"""

from __future__ import annotations

import math
import re
import threading
import urllib.request
from dataclasses import dataclass, field
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Callable, Mapping, Optional

from .. import vocab
from ..dcat import DatasetRecord, is_iso_timestamp
from ..licenses import LicenseDb, LicenseSpec, load_license_db
from ..rdf import Graph, Iri, Literal, Triple
from .registry import EXTERNAL_STORE, LONG_RUNNING, MetricDescriptor, descriptor, registry
from .text import NotApplicable, flesch_reading_ease, known_token_ratio

SKIPPED_LONG_RUNNING = "skipped_long_running"
STORE_UNAVAILABLE = "store_unavailable"
EVALUATION_ERROR = "evaluation_error"
NOT_APPLICABLE = "not_applicable"

_REASONS = {SKIPPED_LONG_RUNNING, STORE_UNAVAILABLE, EVALUATION_ERROR, NOT_APPLICABLE}


@dataclass(frozen=True, slots=True)
class MetricResult:
    metric: str
    score: Optional[int] = None
    reason: Optional[str] = None

    def __post_init__(self):
        if (self.score is None) == (self.reason is None):
            raise ValueError("exactly one of score/reason must be set")
        if self.score is not None and not (0 <= self.score <= 5):
            raise ValueError(f"score out of range: {self.score}")
        if self.reason is not None and self.reason not in _REASONS:
            raise ValueError(f"unknown reason: {self.reason}")

    @property
    def computed(self) -> bool:
        return self.score is not None


def map_score(raw, kind: str, bands: Optional[tuple[int, ...]] = None) -> int:
    """Map a raw measure onto the 0..5 scale.

    boolean -> {0, 5}; ratio r in [0,1] -> floor(5r + 0.5); count -> number
    of band thresholds reached (bands must be 5 nondecreasing integers).
    """
    if kind == "boolean":
        return 5 if raw else 0
    if kind == "ratio":
        if not 0.0 <= raw <= 1.0:
            raise ValueError(f"ratio out of range: {raw}")
        return min(5, int(math.floor(5.0 * raw + 0.5)))
    if kind == "count":
        if bands is None or len(bands) != 5 or list(bands) != sorted(bands):
            raise ValueError("count mapping needs 5 nondecreasing band thresholds")
        if raw < 0:
            raise ValueError(f"count must be non-negative: {raw}")
        return sum(1 for b in bands if raw >= b)
    raise ValueError(f"unknown score kind: {kind}")


@dataclass(frozen=True, slots=True)
class CommunitySignals:
    discussion_channels: int = 0
    trust_rating: Optional[float] = None
    correctness_rating: Optional[float] = None


@dataclass
class ExternalStores:
    """Optional local stores backing the trust/community metrics.

    The license database defaults to the bundled table; the other stores
    default to absent, which turns their metrics into NotComputed results.
    """

    license_db: Optional[LicenseDb] = field(default_factory=load_license_db)
    provider_db: Optional[Mapping[str, float]] = None
    community_db: Optional[Mapping[str, CommunitySignals]] = None
    url_prober: Optional[Callable[[str], bool]] = None
    duplicate_clusters: Optional[Mapping[str, frozenset[str]]] = None


@dataclass(frozen=True)
class QualityConfig:
    include_long_running: bool = False
    log_if_not_computed: bool = True
    remove_measurements: bool = True
    evaluation_time: datetime = field(
        default_factory=lambda: datetime.now(timezone.utc)
    )
    weights: Optional[Mapping[str, float]] = None
    description_min_words: int = 10
    probe_timeout: float = 10.0

    def __post_init__(self):
        if self.weights is not None:
            if any(w < 0 for w in self.weights.values()):
                raise ValueError("weights must be non-negative")
            if not any(w > 0 for w in self.weights.values()):
                raise ValueError("weights must not all be zero")
        if self.evaluation_time.tzinfo is None:
            object.__setattr__(
                self, "evaluation_time", self.evaluation_time.replace(tzinfo=timezone.utc)
            )


class NotComputedLog:
    """Thread-safe collector for not-computed entries.

    One line per entry: ``dataset-iri<TAB>metric-key<TAB>reason``.
    """

    def __init__(self):
        self._lines: list[str] = []
        self._lock = threading.Lock()

    def append(self, dataset: Iri, metric_key: str, reason: str) -> None:
        with self._lock:
            self._lines.append(f"{dataset.value}\t{metric_key}\t{reason}")

    def lines(self) -> list[str]:
        with self._lock:
            return list(self._lines)

    def write(self, path) -> None:
        Path(path).write_text(
            "".join(line + "\n" for line in self.lines()), encoding="utf-8"
        )


# --- shared raw measures ------------------------------------------------------------

#: Metadata fields counted by the extent metrics.
TRACKED_FIELDS = (
    "titles",
    "descriptions",
    "keywords",
    "themes",
    "publisher",
    "issued",
    "modified",
    "accrual_periodicity",
    "spatial",
    "temporal",
    "landing_page",
    "contact_point",
    "identifier",
    "distributions",
)


def _filled(record: DatasetRecord, field_name: str) -> bool:
    value = getattr(record, field_name)
    if isinstance(value, tuple):
        return len(value) > 0
    return value is not None


def extent_ratio(record: DatasetRecord) -> float:
    return sum(1 for f in TRACKED_FIELDS if _filled(record, f)) / len(TRACKED_FIELDS)


def weighted_extent_ratio(record: DatasetRecord, weights: Optional[Mapping[str, float]]) -> float:
    if not weights:
        return extent_ratio(record)
    total = sum(weights.get(f, 0.0) for f in TRACKED_FIELDS)
    if total == 0.0:
        return extent_ratio(record)
    got = sum(weights.get(f, 0.0) for f in TRACKED_FIELDS if _filled(record, f))
    return got / total


OPEN_MEDIA_TYPES = frozenset(
    {
        "text/csv",
        "text/tab-separated-values",
        "application/json",
        "application/geo+json",
        "application/ld+json",
        "application/xml",
        "application/rdf+xml",
        "text/turtle",
        "application/n-triples",
        "text/plain",
        "text/html",
        "application/gml+xml",
        "application/vnd.google-earth.kml+xml",
        "application/gpx+xml",
        "application/yaml",
        "application/vnd.oasis.opendocument.spreadsheet",
        "image/png",
        "image/svg+xml",
    }
)

MACHINE_MEDIA_TYPES = frozenset(
    {
        "text/csv",
        "text/tab-separated-values",
        "application/json",
        "application/geo+json",
        "application/ld+json",
        "application/xml",
        "application/rdf+xml",
        "text/turtle",
        "application/n-triples",
        "application/gml+xml",
        "application/vnd.google-earth.kml+xml",
        "application/gpx+xml",
        "application/yaml",
        "application/vnd.apache.parquet",
        "application/sparql-results+json",
        "application/vnd.ms-excel",
        "application/vnd.openxmlformats-officedocument.spreadsheetml.sheet",
        "application/vnd.oasis.opendocument.spreadsheet",
    }
)


class _Ctx:
    def __init__(self, record: DatasetRecord, slice_graph: Graph, config: QualityConfig, stores: ExternalStores):
        self.record = record
        self.slice = slice_graph
        self.config = config
        self.stores = stores

    # -- slice helpers --

    def predicates(self) -> list[Iri]:
        return [t.predicate for t in self.slice]

    def objects_of(self, predicate: Iri) -> list:
        return [t.object for t in self.slice if t.predicate == predicate]

    # -- record helpers --

    def texts(self) -> list[str]:
        return [text for _, text in self.record.text_values()]

    def normalized_formats(self) -> list[Optional[str]]:
        """Per distribution: normalized media type/format value, or None."""
        from ..cleaning import normalize_media_type

        out = []
        for dist in self.record.distributions:
            value = dist.media_type or dist.format
            if value is None:
                out.append(None)
            else:
                normalized, _ = normalize_media_type(value)
                out.append(normalized or None)
        return out

    def known_licenses(self) -> list[LicenseSpec]:
        db = self.stores.license_db
        if db is None:
            return []
        found = []
        for dist in self.record.distributions:
            if dist.license is not None:
                spec = db.get(dist.license)
                if spec is not None:
                    found.append(spec)
        return found

    def parse_time(self, value: str) -> Optional[datetime]:
        v = value.strip()
        try:
            dt = datetime.fromisoformat(v.replace("Z", "+00:00"))
        except ValueError:
            try:
                dt = datetime.combine(date.fromisoformat(v), datetime.min.time())
            except ValueError:
                return None
        if dt.tzinfo is None:
            dt = dt.replace(tzinfo=timezone.utc)
        return dt

    def cluster_members(self) -> Optional[frozenset[str]]:
        clusters = self.stores.duplicate_clusters
        if clusters is None:
            return None
        return clusters.get(self.record.iri.value, frozenset())


_URL_IN_TEXT = re.compile(r"https?://\S+")
_VERSION_IN_TEXT = re.compile(r"\bv(?:ersion)?\s*\.?\s*\d+(?:\.\d+)*\b", re.IGNORECASE)
_YEAR_RANGE = re.compile(r"\b(?:19|20)\d{2}\s*[-–/]\s*(?:19|20)\d{2}\b")
_EMAIL_OK = re.compile(r"^[^@\s]+@[^@\s.]+(?:\.[^@\s.]+)+$")

_DATE_PREDICATES = (
    vocab.DCT_ISSUED,
    vocab.DCT_MODIFIED,
    vocab.DCAT_START_DATE,
    vocab.DCAT_END_DATE,
)


def _is_standard(predicate: Iri) -> bool:
    return any(predicate.value.startswith(ns) for ns in vocab.STANDARD_NAMESPACES)


# --- the 48 evaluators: each returns an integer 0..5 or raises NotApplicable -----


def _m1(ctx: _Ctx) -> int:
    return map_score(extent_ratio(ctx.record), "ratio")


def _m2(ctx: _Ctx) -> int:
    return map_score(weighted_extent_ratio(ctx.record, ctx.config.weights), "ratio")


def _m3(ctx: _Ctx) -> int:
    count = len(ctx.record.keywords) + len(ctx.record.themes)
    return map_score(count, "count", bands=(1, 2, 3, 5, 8))


def _m4(ctx: _Ctx) -> int:
    descriptions = [text for _, text in ctx.record.descriptions if text.strip()]
    if not descriptions:
        return map_score(0.0, "ratio")
    best = max(descriptions, key=len)
    titles = {t.strip().casefold() for _, t in ctx.record.titles}
    if best.strip().casefold() in titles:
        return map_score(0.0, "ratio")
    words = len(re.findall(r"[^\W\d_]+", best, re.UNICODE))
    minimum = ctx.config.description_min_words
    if words >= minimum:
        return map_score(1.0, "ratio")
    if words >= minimum / 2:
        return map_score(0.6, "ratio")
    return map_score(0.2, "ratio")


def _m5(ctx: _Ctx) -> int:
    stamps = [s for s in (ctx.record.modified, ctx.record.issued) if s is not None]
    times = [t for t in (ctx.parse_time(s) for s in stamps) if t is not None]
    if not times:
        return 0
    age_days = max((ctx.config.evaluation_time - max(times)).days, 0)
    points = sum(1 for limit in (1825, 730, 365, 90, 30) if age_days < limit)
    return map_score(points, "count", bands=(1, 2, 3, 4, 5))


def _m6(ctx: _Ctx) -> int:
    events = sum(1 for s in (ctx.record.modified,) if s is not None)
    events += sum(1 for d in ctx.record.distributions if d.modified is not None)
    if ctx.record.accrual_periodicity is not None:
        events += 1
    return map_score(events, "count", bands=(1, 2, 3, 4, 5))


def _m7(ctx: _Ctx) -> int:
    by_lang = {lang: text for lang, text in ctx.record.descriptions}
    if "de" in by_lang:
        lang, text = "de", by_lang["de"]
    elif "en" in by_lang:
        lang, text = "en", by_lang["en"]
    elif None in by_lang:
        lang, text = "de", by_lang[None]  # untagged corpora here are mostly German
    else:
        raise NotApplicable("no description in a supported language")
    ease = flesch_reading_ease(text, lang)
    clamped = min(max(ease, 0.0), 100.0)
    return map_score(clamped / 100.0, "ratio")


def _m8(ctx: _Ctx) -> int:
    ratios = []
    for lang, text in list(ctx.record.titles) + list(ctx.record.descriptions):
        if lang in ("de", "en"):
            try:
                ratios.append(known_token_ratio(text, lang))
            except NotApplicable:
                continue
    if not ratios:
        raise NotApplicable("no tagged de/en text to check")
    return map_score(sum(ratios) / len(ratios), "ratio")


def _m9(ctx: _Ctx) -> int:
    linked = any(_URL_IN_TEXT.search(text) for _, text in ctx.record.descriptions)
    return map_score(linked, "boolean")


def _m10(ctx: _Ctx) -> int:
    return map_score(any(d.license is not None for d in ctx.record.distributions), "boolean")


def _m11(ctx: _Ctx) -> int:
    license_objects = ctx.objects_of(vocab.DCT_LICENSE)
    titled = any(isinstance(o, Literal) and o.lexical.strip() for o in license_objects)
    if not titled:
        nodes = [o for o in license_objects if not isinstance(o, Literal)]
        for t in ctx.slice:
            if t.subject in nodes and t.predicate in (vocab.DCT_TITLE, vocab.RDFS_LABEL):
                if isinstance(t.object, Literal) and t.object.lexical.strip():
                    titled = True
                    break
    return map_score(titled, "boolean")


def _require_license_db(ctx: _Ctx) -> None:
    if ctx.stores.license_db is None:
        raise _StoreMissing("license_db")


def _m12(ctx: _Ctx) -> int:
    _require_license_db(ctx)
    return map_score(bool(ctx.known_licenses()), "boolean")


def _m13(ctx: _Ctx) -> int:
    _require_license_db(ctx)
    return map_score(any(spec.open for spec in ctx.known_licenses()), "boolean")


def _m14(ctx: _Ctx) -> int:
    _require_license_db(ctx)
    return map_score(
        any("commercial_use" in spec.permissions for spec in ctx.known_licenses()), "boolean"
    )


def _m15(ctx: _Ctx) -> int:
    _require_license_db(ctx)

    def has_attrs(spec: LicenseSpec) -> bool:
        public_domain = not spec.duties and not spec.prohibitions and spec.permissions
        return "attribution" in spec.duties or "share_alike" in spec.duties or bool(public_domain)

    return map_score(any(has_attrs(s) for s in ctx.known_licenses()), "boolean")


def _m16(ctx: _Ctx) -> int:
    db = ctx.stores.provider_db
    assert db is not None  # tier gating
    agent = ctx.record.publisher
    if agent is None:
        return 0
    keys = [k for k in (agent.iri.value if agent.iri else None, agent.name,
                        agent.homepage.value if agent.homepage else None) if k]
    return map_score(any(k in db for k in keys), "boolean")


def _m17(ctx: _Ctx) -> int:
    db = ctx.stores.provider_db
    assert db is not None
    agent = ctx.record.publisher
    if agent is None:
        return 0
    for key in (agent.iri.value if agent.iri else None, agent.name,
                agent.homepage.value if agent.homepage else None):
        if key and key in db:
            rating = min(max(float(db[key]), 0.0), 5.0)
            return map_score(rating / 5.0, "ratio")
    return 0


def _m18(ctx: _Ctx) -> int:
    members = ctx.cluster_members()
    if members is None:
        raise NotApplicable("duplicate clusters not computed")
    others = members - {ctx.record.iri.value}
    if not others:
        return 0

    def host(iri: str) -> str:
        from urllib.parse import urlsplit

        try:
            return urlsplit(iri).hostname or iri
        except ValueError:
            return iri

    hosts = {host(m) for m in members}
    return map_score(len(hosts) >= 2, "boolean")


def _m19(ctx: _Ctx) -> int:
    return map_score(any(t.predicate == vocab.SPDX_CHECKSUM for t in ctx.slice), "boolean")


def _community(ctx: _Ctx) -> Optional[CommunitySignals]:
    db = ctx.stores.community_db
    assert db is not None
    return db.get(ctx.record.iri.value)


def _m20(ctx: _Ctx) -> int:
    signals = _community(ctx)
    count = signals.discussion_channels if signals else 0
    return map_score(count, "count", bands=(1, 2, 3, 4, 5))


def _m21(ctx: _Ctx) -> int:
    signals = _community(ctx)
    if signals is None or signals.trust_rating is None:
        return 0
    return map_score(min(max(signals.trust_rating, 0.0), 5.0) / 5.0, "ratio")


def _m22(ctx: _Ctx) -> int:
    signals = _community(ctx)
    if signals is None or signals.correctness_rating is None:
        return 0
    return map_score(min(max(signals.correctness_rating, 0.0), 5.0) / 5.0, "ratio")


def _m23(ctx: _Ctx) -> int:
    members = ctx.cluster_members()
    if members is None:
        raise NotApplicable("duplicate clusters not computed")
    confirmations = max(len(members) - 1, 0) if members else 0
    return map_score(confirmations, "count", bands=(1, 2, 3, 4, 5))


def _m24(ctx: _Ctx) -> int:
    return map_score(len(ctx.record.distributions), "count", bands=(2, 3, 4, 5, 6))


def _m25(ctx: _Ctx) -> int:
    langs = {lang for lang, _ in ctx.record.text_values() if lang}
    langs |= {l.value for l in ctx.record.languages}
    return map_score(len(langs), "count", bands=(2, 2, 3, 4, 5))


def _m26(ctx: _Ctx) -> int:
    schemes = set()
    for dist in ctx.record.distributions:
        for url in (dist.access_url, dist.download_url):
            if url is None:
                continue
            scheme = url.value.split(":", 1)[0].lower()
            schemes.add("web" if scheme in ("http", "https") else scheme)
    return map_score(len(schemes), "count", bands=(1, 2, 2, 3, 3))


def _m27(ctx: _Ctx) -> int:
    used = any(_is_standard(p) and p != vocab.RDF_TYPE for p in ctx.predicates())
    return map_score(used, "boolean")


def _m28(ctx: _Ctx) -> int:
    non_type = [p for p in ctx.predicates() if p != vocab.RDF_TYPE]
    if not non_type:
        return map_score(0.0, "ratio")
    share = sum(1 for p in non_type if _is_standard(p)) / len(non_type)
    return map_score(share, "ratio")


def _m29(ctx: _Ctx) -> int:
    checks: list[bool] = []
    for t in ctx.slice:
        if t.predicate in (vocab.DCT_ISSUED, vocab.DCT_MODIFIED):
            checks.append(isinstance(t.object, Literal) and is_iso_timestamp(t.object.lexical))
        elif t.predicate in (vocab.DCAT_ACCESS_URL, vocab.DCAT_DOWNLOAD_URL, vocab.DCAT_LANDING_PAGE):
            checks.append(isinstance(t.object, Iri))
        elif t.predicate == vocab.DCT_LICENSE:
            checks.append(isinstance(t.object, Iri))
        elif t.predicate == vocab.DCAT_BYTE_SIZE:
            checks.append(isinstance(t.object, Literal) and t.object.lexical.strip().isdigit())
    if not checks:
        return map_score(0.0, "ratio")
    return map_score(sum(checks) / len(checks), "ratio")


def _m30(ctx: _Ctx) -> int:
    typed_elsewhere = any(
        t.predicate == vocab.RDF_TYPE and t.subject != ctx.record.iri for t in ctx.slice
    )
    return map_score(typed_elsewhere, "boolean")


def _m31(ctx: _Ctx) -> int:
    literals = [
        t.object
        for t in ctx.slice
        if t.predicate in _DATE_PREDICATES and isinstance(t.object, Literal)
    ]
    if not literals:
        return map_score(0.0, "ratio")
    ok = sum(1 for lit in literals if is_iso_timestamp(lit.lexical))
    return map_score(ok / len(literals), "ratio")


def _m32(ctx: _Ctx) -> int:
    present = ctx.record.identifier is not None or bool(ctx.objects_of(vocab.DCT_IDENTIFIER))
    return map_score(present, "boolean")


def _m33(ctx: _Ctx) -> int:
    present = bool(ctx.record.spatial) or bool(ctx.objects_of(vocab.DCT_SPATIAL))
    return map_score(present, "boolean")


def _m34(ctx: _Ctx) -> int:
    label_preds = (vocab.DCT_TITLE, vocab.DCT_DESCRIPTION, vocab.DCAT_KEYWORD, vocab.RDFS_LABEL)
    labeled = any(
        t.predicate in label_preds and isinstance(t.object, Literal) for t in ctx.slice
    )
    return map_score(labeled, "boolean")


def _m35(ctx: _Ctx) -> int:
    linked = any(
        isinstance(t.object, Iri) and t.predicate != vocab.RDF_TYPE for t in ctx.slice
    )
    return map_score(linked, "boolean")


def _m36(ctx: _Ctx) -> int:
    namespaces = set()
    for p in ctx.predicates():
        for ns in vocab.STANDARD_NAMESPACES:
            if p.value.startswith(ns):
                namespaces.add(ns)
                break
    return map_score(len(namespaces) >= 2, "boolean")


def _m37(ctx: _Ctx) -> int:
    contact = ctx.record.contact_point
    has_url = bool(contact and contact.url)
    has_homepage = bool(ctx.record.publisher and ctx.record.publisher.homepage)
    return map_score(has_url or has_homepage, "boolean")


def _m38(ctx: _Ctx) -> int:
    emails = []
    if ctx.record.contact_point and ctx.record.contact_point.email:
        emails.append(ctx.record.contact_point.email)
    if ctx.record.publisher and ctx.record.publisher.email:
        emails.append(ctx.record.publisher.email)
    if not emails:
        return map_score(0.0, "ratio")
    if any(_EMAIL_OK.match(e) for e in emails):
        return map_score(1.0, "ratio")
    return map_score(0.4, "ratio")


def _m39(ctx: _Ctx) -> int:
    contact = ctx.record.contact_point
    if contact is None:
        return map_score(0, "count", bands=(1, 1, 2, 2, 3))
    count = sum(1 for v in (contact.name, contact.phone, contact.address) if v)
    return map_score(count, "count", bands=(1, 1, 2, 2, 3))


def _m40(ctx: _Ctx) -> int:
    reachable = ctx.record.landing_page is not None or any(
        d.access_url or d.download_url for d in ctx.record.distributions
    )
    return map_score(reachable, "boolean")


def _probe_urls(ctx: _Ctx) -> list[str]:
    urls = set()
    if ctx.record.landing_page is not None:
        urls.add(ctx.record.landing_page.value)
    for dist in ctx.record.distributions:
        for u in (dist.access_url, dist.download_url):
            if u is not None:
                urls.add(u.value)
    return sorted(u for u in urls if u.lower().startswith(("http://", "https://")))[:5]


def default_url_prober(timeout: float = 10.0) -> Callable[[str], bool]:
    """HTTP(S) HEAD probe; 2xx after redirects counts as success."""

    def probe(url: str) -> bool:
        request = urllib.request.Request(url, method="HEAD")
        try:
            with urllib.request.urlopen(request, timeout=timeout) as response:
                return 200 <= response.status < 300
        except Exception:
            return False

    return probe


def _m41(ctx: _Ctx) -> int:
    urls = _probe_urls(ctx)
    if not urls:
        return map_score(0.0, "ratio")
    probe = ctx.stores.url_prober or default_url_prober(ctx.config.probe_timeout)
    successes = sum(1 for u in urls if probe(u))
    return map_score(successes / len(urls), "ratio")


def _m42(ctx: _Ctx) -> int:
    if ctx.record.version is not None:
        return map_score(1.0, "ratio")
    if any(_VERSION_IN_TEXT.search(text) for _, text in
           list(ctx.record.descriptions) + list(ctx.record.titles)):
        return map_score(0.6, "ratio")
    return map_score(0.0, "ratio")


def _m43(ctx: _Ctx) -> int:
    if ctx.record.temporal is not None:
        return map_score(1.0, "ratio")
    if any(_YEAR_RANGE.search(text) for _, text in
           list(ctx.record.descriptions) + list(ctx.record.titles)):
        return map_score(0.6, "ratio")
    return map_score(0.0, "ratio")


def _format_share(ctx: _Ctx, allowed: frozenset[str]) -> int:
    formats = [f for f in ctx.normalized_formats() if f is not None]
    if not formats:
        return map_score(0.0, "ratio")
    return map_score(sum(1 for f in formats if f in allowed) / len(formats), "ratio")


def _m44(ctx: _Ctx) -> int:
    return _format_share(ctx, OPEN_MEDIA_TYPES)


def _m45(ctx: _Ctx) -> int:
    from ..cleaning import normalize_media_type

    formats = [f for f in ctx.normalized_formats() if f is not None]
    if not formats:
        return map_score(0.0, "ratio")
    known = sum(1 for f in formats if normalize_media_type(f)[1])
    return map_score(known / len(formats), "ratio")


def _m46(ctx: _Ctx) -> int:
    return _format_share(ctx, MACHINE_MEDIA_TYPES)


def _m47(ctx: _Ctx) -> int:
    if not ctx.record.distributions:
        return map_score(0.0, "ratio")
    with_id = sum(1 for d in ctx.record.distributions if d.download_url is not None)
    return map_score(with_id / len(ctx.record.distributions), "ratio")


def _m48(ctx: _Ctx) -> int:
    distinct = {f for f in ctx.normalized_formats() if f is not None}
    return map_score(len(distinct), "count", bands=(2, 2, 3, 4, 5))


_EVALUATORS: dict[int, Callable[[_Ctx], int]] = {
    1: _m1, 2: _m2, 3: _m3, 4: _m4, 5: _m5, 6: _m6, 7: _m7, 8: _m8, 9: _m9,
    10: _m10, 11: _m11, 12: _m12, 13: _m13, 14: _m14, 15: _m15, 16: _m16,
    17: _m17, 18: _m18, 19: _m19, 20: _m20, 21: _m21, 22: _m22, 23: _m23,
    24: _m24, 25: _m25, 26: _m26, 27: _m27, 28: _m28, 29: _m29, 30: _m30,
    31: _m31, 32: _m32, 33: _m33, 34: _m34, 35: _m35, 36: _m36, 37: _m37,
    38: _m38, 39: _m39, 40: _m40, 41: _m41, 42: _m42, 43: _m43, 44: _m44,
    45: _m45, 46: _m46, 47: _m47, 48: _m48,
}

#: Store attribute a metric's evaluator requires (gated before evaluation).
_REQUIRED_STORE = {
    12: "license_db",
    13: "license_db",
    14: "license_db",
    15: "license_db",
    16: "provider_db",
    17: "provider_db",
    18: "duplicate_clusters",
    19: "provider_db",
    20: "community_db",
    21: "community_db",
    22: "community_db",
    23: "duplicate_clusters",
}


class _StoreMissing(Exception):
    def __init__(self, store: str):
        super().__init__(store)
        self.store = store


def evaluate_metric(
    metric_id: int,
    record: DatasetRecord,
    slice_graph: Graph,
    config: QualityConfig,
    stores: ExternalStores,
) -> MetricResult:
    desc = descriptor(metric_id)
    if desc.tier == LONG_RUNNING and not config.include_long_running:
        return MetricResult(metric=desc.key, reason=SKIPPED_LONG_RUNNING)
    if desc.tier == EXTERNAL_STORE:
        store_name = _REQUIRED_STORE[metric_id]
        if getattr(stores, store_name) is None:
            # dedup clusters come from a pipeline stage, not a store
            reason = NOT_APPLICABLE if store_name == "duplicate_clusters" else STORE_UNAVAILABLE
            return MetricResult(metric=desc.key, reason=reason)
    ctx = _Ctx(record, slice_graph, config, stores)
    try:
        score = _EVALUATORS[metric_id](ctx)
    except NotApplicable:
        return MetricResult(metric=desc.key, reason=NOT_APPLICABLE)
    except _StoreMissing:
        return MetricResult(metric=desc.key, reason=STORE_UNAVAILABLE)
    except Exception:
        return MetricResult(metric=desc.key, reason=EVALUATION_ERROR)
    return MetricResult(metric=desc.key, score=score)


def evaluate_all(
    record: DatasetRecord,
    slice_graph: Graph,
    config: QualityConfig,
    stores: ExternalStores,
    log: Optional[NotComputedLog] = None,
) -> list[MetricResult]:
    """All 48 metric results, ordered by id; NotComputed entries are logged."""
    results = []
    for desc in registry():
        result = evaluate_metric(desc.id, record, slice_graph, config, stores)
        if not result.computed and config.log_if_not_computed and log is not None:
            log.append(record.iri, result.metric, result.reason)
        results.append(result)
    return results


def aggregate_score(results: list[MetricResult]) -> Optional[float]:
    """Mean of the computed scores (used for display/search), or None."""
    computed = [r.score for r in results if r.score is not None]
    if not computed:
        return None
    return sum(computed) / len(computed)
