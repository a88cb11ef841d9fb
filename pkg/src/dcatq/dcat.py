"""Typed view of one dataset slice, and the reverse mapping back to triples.

The mapping is deliberately lenient: unknown predicates are kept in a side
bag (``extra``) so cleaning and re-serialization never silently drop data,
and malformed values are reported as warnings on the record instead of
failing the import.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field, replace
from datetime import date, datetime
from enum import Enum
from typing import Optional

from . import vocab
from .rdf import BlankNode, Graph, Iri, Literal, Node, NotFoundError, Term, Triple, term_key


class GeoLevel(Enum):
    NUTS0 = "NUTS0"
    NUTS1 = "NUTS1"
    NUTS2 = "NUTS2"
    NUTS3 = "NUTS3"
    LAU = "LAU"
    POINT = "POINT"


@dataclass(frozen=True, slots=True)
class AgentRef:
    iri: Optional[Iri] = None
    name: Optional[str] = None
    homepage: Optional[Iri] = None
    email: Optional[str] = None

    def __post_init__(self):
        if self.iri is None and self.name is None and self.homepage is None and self.email is None:
            raise ValueError("AgentRef needs at least one field")


@dataclass(frozen=True, slots=True)
class ContactInfo:
    name: Optional[str] = None
    email: Optional[str] = None
    url: Optional[str] = None
    phone: Optional[str] = None
    address: Optional[str] = None

    def __post_init__(self):
        for f in ("name", "email", "url", "phone", "address"):
            v = getattr(self, f)
            if v is not None:
                object.__setattr__(self, f, v.strip())

    def is_empty(self) -> bool:
        return all(getattr(self, f) is None for f in ("name", "email", "url", "phone", "address"))


@dataclass(frozen=True, slots=True)
class GeoAnnotation:
    place_name: str
    level: GeoLevel
    centroid: tuple[float, float]  # (lat, lon), WGS84 degrees
    place_iri: Optional[Iri] = None

    def __post_init__(self):
        lat, lon = self.centroid
        if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
            raise ValueError(f"centroid out of range: {self.centroid}")


@dataclass(frozen=True, slots=True)
class Distribution:
    iri: Iri
    access_url: Optional[Iri] = None
    download_url: Optional[Iri] = None
    media_type: Optional[str] = None
    format: Optional[str] = None
    license: Optional[Iri] = None
    byte_size: Optional[int] = None
    issued: Optional[str] = None
    modified: Optional[str] = None

    def __post_init__(self):
        if self.byte_size is not None and self.byte_size < 0:
            raise ValueError("byte_size must be non-negative")


@dataclass(frozen=True, slots=True)
class DatasetRecord:
    iri: Iri
    titles: tuple[tuple[Optional[str], str], ...] = ()
    descriptions: tuple[tuple[Optional[str], str], ...] = ()
    keywords: tuple[tuple[Optional[str], str], ...] = ()
    themes: tuple[Iri, ...] = ()
    publisher: Optional[AgentRef] = None
    catalog: Optional[Iri] = None
    issued: Optional[str] = None
    modified: Optional[str] = None
    accrual_periodicity: Optional[Iri] = None
    spatial: tuple[GeoAnnotation, ...] = ()
    temporal: Optional[tuple[Optional[str], Optional[str]]] = None
    landing_page: Optional[Iri] = None
    contact_point: Optional[ContactInfo] = None
    identifier: Optional[str] = None
    version: Optional[str] = None
    languages: tuple[Iri, ...] = ()
    distributions: tuple[Distribution, ...] = ()
    warnings: tuple[str, ...] = ()
    extra: Graph = field(default_factory=Graph)

    def text_values(self) -> list[tuple[Optional[str], str]]:
        """All (lang, text) pairs of titles, descriptions and keywords."""
        return list(self.titles) + list(self.descriptions) + list(self.keywords)


def _lang_text_key(pair: tuple[Optional[str], str]) -> tuple[str, str]:
    lang, text = pair
    return (lang or "", text)


def _geo_key(a: GeoAnnotation):
    return (a.place_name, a.level.value, a.centroid, a.place_iri.value if a.place_iri else "")


_TIMESTAMP_OK = None  # sentinel for doc purposes


def is_iso_timestamp(value: str) -> bool:
    """Accept ISO-8601 dates and datetimes (with optional Z / offset)."""
    v = value.strip()
    if not v:
        return False
    try:
        date.fromisoformat(v)
        return True
    except ValueError:
        pass
    try:
        datetime.fromisoformat(v.replace("Z", "+00:00"))
        return True
    except ValueError:
        return False


class _SliceReader:
    def __init__(self, slice_graph: Graph):
        self.graph = slice_graph
        self.out: dict[Node, list[Triple]] = {}
        for t in slice_graph:
            self.out.setdefault(t.subject, []).append(t)
        self.consumed: set[Triple] = set()
        self.warnings: list[str] = []

    def warn(self, message: str):
        self.warnings.append(message)

    def triples(self, subject: Node, predicate: Iri) -> list[Triple]:
        found = [t for t in self.out.get(subject, []) if t.predicate == predicate]
        return sorted(found, key=lambda t: term_key(t.object))

    def take(self, triple: Triple):
        self.consumed.add(triple)

    def literals(self, subject: Node, predicate: Iri) -> list[tuple[Triple, Literal]]:
        out = []
        for t in self.triples(subject, predicate):
            if isinstance(t.object, Literal):
                out.append((t, t.object))
        return out

    def nodes(self, subject: Node, predicate: Iri) -> list[tuple[Triple, Node]]:
        out = []
        for t in self.triples(subject, predicate):
            if isinstance(t.object, (Iri, BlankNode)):
                out.append((t, t.object))
        return out

    def first_iri(self, subject: Node, predicate: Iri, what: str) -> Optional[Iri]:
        found = [(t, o) for t, o in self.nodes(subject, predicate) if isinstance(o, Iri)]
        if not found:
            return None
        if len(found) > 1:
            self.warn(f"multiple {what} values, keeping {found[0][1].value}")
        self.take(found[0][0])
        return found[0][1]

    def first_literal(self, subject: Node, predicate: Iri, what: str) -> Optional[str]:
        found = self.literals(subject, predicate)
        if not found:
            return None
        if len(found) > 1:
            self.warn(f"multiple {what} values, keeping first")
        self.take(found[0][0])
        return found[0][1].lexical

    def timestamp(self, subject: Node, predicate: Iri, what: str) -> Optional[str]:
        found = self.literals(subject, predicate)
        if not found:
            return None
        t, lit = found[0]
        if not is_iso_timestamp(lit.lexical):
            self.warn(f"{what} is not ISO-8601: {lit.lexical!r}")
            return None
        self.take(t)
        return lit.lexical


def _strip_mailto(value: str) -> str:
    return value[7:] if value.startswith("mailto:") else value


def _read_agent(reader: _SliceReader, node: Node) -> Optional[AgentRef]:
    iri = node if isinstance(node, Iri) else None
    name = reader.first_literal(node, vocab.FOAF_NAME, "agent name")
    homepage = reader.first_iri(node, vocab.FOAF_HOMEPAGE, "agent homepage")
    email = None
    mboxes = reader.nodes(node, vocab.FOAF_MBOX)
    if mboxes:
        reader.take(mboxes[0][0])
        if isinstance(mboxes[0][1], Iri):
            email = _strip_mailto(mboxes[0][1].value)
    for t in reader.triples(node, vocab.RDF_TYPE):
        if t.object == vocab.FOAF_AGENT:
            reader.take(t)
    if iri is None and name is None and homepage is None and email is None:
        return None
    return AgentRef(iri=iri, name=name, homepage=homepage, email=email)


def _read_contact(reader: _SliceReader, node: Node) -> Optional[ContactInfo]:
    email = reader.nodes(node, vocab.VCARD_HAS_EMAIL)
    email_value = None
    if email:
        reader.take(email[0][0])
        if isinstance(email[0][1], Iri):
            email_value = _strip_mailto(email[0][1].value)
    else:
        email_value = reader.first_literal(node, vocab.VCARD_HAS_EMAIL, "contact email")
    url = reader.first_iri(node, vocab.VCARD_HAS_URL, "contact url")
    url_value = url.value if url else reader.first_literal(node, vocab.VCARD_HAS_URL, "contact url")
    info = ContactInfo(
        name=reader.first_literal(node, vocab.VCARD_FN, "contact name"),
        email=email_value,
        url=url_value,
        phone=reader.first_literal(node, vocab.VCARD_HAS_TELEPHONE, "contact phone"),
        address=reader.first_literal(node, vocab.VCARD_STREET_ADDRESS, "contact address"),
    )
    return None if info.is_empty() else info


def _read_geo(reader: _SliceReader, triple: Triple, node: Node) -> Optional[GeoAnnotation]:
    lat_lits = reader.literals(node, vocab.WGS_LAT)
    lon_lits = reader.literals(node, vocab.WGS_LONG)
    name_lits = reader.literals(node, vocab.RDFS_LABEL)
    level_lits = reader.literals(node, vocab.DCATQ_GEO_LEVEL)
    if not lat_lits or not lon_lits or not name_lits:
        reader.warn(f"spatial value without label/coordinates: {term_key(node)}")
        return None
    try:
        centroid = (float(lat_lits[0][1].lexical), float(lon_lits[0][1].lexical))
        level = GeoLevel(level_lits[0][1].lexical) if level_lits else GeoLevel.POINT
        annotation = GeoAnnotation(
            place_name=name_lits[0][1].lexical,
            level=level,
            centroid=centroid,
            place_iri=node if isinstance(node, Iri) else None,
        )
    except ValueError as exc:
        reader.warn(f"bad spatial value at {term_key(node)}: {exc}")
        return None
    for found in (lat_lits, lon_lits, name_lits, level_lits):
        if found:
            reader.take(found[0][0])
    reader.take(triple)
    return annotation


def _read_distribution(reader: _SliceReader, triple: Triple, node: Node) -> Optional[Distribution]:
    if not isinstance(node, Iri):
        reader.warn(f"distribution without IRI skipped: {term_key(node)}")
        return None
    reader.take(triple)
    for t in reader.triples(node, vocab.RDF_TYPE):
        if t.object == vocab.DCAT_DISTRIBUTION_CLASS:
            reader.take(t)
    media = None
    media_nodes = reader.nodes(node, vocab.DCAT_MEDIA_TYPE)
    if media_nodes:
        reader.take(media_nodes[0][0])
        media = media_nodes[0][1].value if isinstance(media_nodes[0][1], Iri) else None
    else:
        media = reader.first_literal(node, vocab.DCAT_MEDIA_TYPE, "media type")
    byte_size = None
    size_s = reader.literals(node, vocab.DCAT_BYTE_SIZE)
    if size_s:
        try:
            byte_size = int(size_s[0][1].lexical)
            if byte_size < 0:
                raise ValueError("negative")
            reader.take(size_s[0][0])
        except ValueError:
            byte_size = None
            reader.warn(f"bad byte size on {node.value}: {size_s[0][1].lexical!r}")
    return Distribution(
        iri=node,
        access_url=reader.first_iri(node, vocab.DCAT_ACCESS_URL, "access URL"),
        download_url=reader.first_iri(node, vocab.DCAT_DOWNLOAD_URL, "download URL"),
        media_type=media,
        format=reader.first_literal(node, vocab.DCT_FORMAT, "format"),
        license=reader.first_iri(node, vocab.DCT_LICENSE, "license"),
        byte_size=byte_size,
        issued=reader.timestamp(node, vocab.DCT_ISSUED, "distribution issued"),
        modified=reader.timestamp(node, vocab.DCT_MODIFIED, "distribution modified"),
    )


def from_graph(slice_graph: Graph, dataset: Iri) -> DatasetRecord:
    """Map a dataset slice onto a :class:`DatasetRecord` (lenient, total)."""
    reader = _SliceReader(slice_graph)
    if dataset not in reader.out:
        raise NotFoundError(f"dataset not in slice: {dataset.value}")

    for t in reader.triples(dataset, vocab.RDF_TYPE):
        if t.object == vocab.DCAT_DATASET:
            reader.take(t)

    def lang_texts(predicate: Iri, what: str) -> tuple[tuple[Optional[str], str], ...]:
        pairs = set()
        for t, lit in reader.literals(dataset, predicate):
            pairs.add((lit.language, lit.lexical))
            reader.take(t)
        return tuple(sorted(pairs, key=_lang_text_key))

    titles = lang_texts(vocab.DCT_TITLE, "title")
    descriptions = lang_texts(vocab.DCT_DESCRIPTION, "description")
    keywords = lang_texts(vocab.DCAT_KEYWORD, "keyword")

    themes = []
    for t, node in reader.nodes(dataset, vocab.DCAT_THEME):
        if isinstance(node, Iri):
            themes.append(node)
            reader.take(t)

    publisher = None
    for t, node in reader.nodes(dataset, vocab.DCT_PUBLISHER):
        agent = _read_agent(reader, node)
        if agent is not None and publisher is None:
            publisher = agent
            reader.take(t)
        elif publisher is not None:
            reader.warn("multiple publishers, keeping first")
    pub_literals = reader.literals(dataset, vocab.DCT_PUBLISHER)
    if publisher is None and pub_literals:
        t, lit = pub_literals[0]
        publisher = AgentRef(name=lit.lexical)
        reader.take(t)

    spatial = []
    for t, node in reader.nodes(dataset, vocab.DCT_SPATIAL):
        annotation = _read_geo(reader, t, node)
        if annotation is not None:
            spatial.append(annotation)

    temporal = None
    for t, node in reader.nodes(dataset, vocab.DCT_TEMPORAL):
        start = reader.timestamp(node, vocab.DCAT_START_DATE, "temporal start")
        end = reader.timestamp(node, vocab.DCAT_END_DATE, "temporal end")
        for tt in reader.triples(node, vocab.RDF_TYPE):
            if tt.object == vocab.DCT_PERIOD_OF_TIME:
                reader.take(tt)
        if start is None and end is None:
            reader.warn(f"temporal node without start/end: {term_key(node)}")
            continue
        if temporal is None:
            temporal = (start, end)
            reader.take(t)

    contact = None
    for t, node in reader.nodes(dataset, vocab.DCAT_CONTACT_POINT):
        info = _read_contact(reader, node)
        if info is not None and contact is None:
            contact = info
            reader.take(t)

    distributions = []
    for t, node in reader.nodes(dataset, vocab.DCAT_DISTRIBUTION):
        dist = _read_distribution(reader, t, node)
        if dist is not None:
            distributions.append(dist)
    distributions.sort(key=lambda d: d.iri.value)

    languages = []
    for t, node in reader.nodes(dataset, vocab.DCT_LANGUAGE):
        if isinstance(node, Iri):
            languages.append(node)
            reader.take(t)

    record = DatasetRecord(
        iri=dataset,
        titles=titles,
        descriptions=descriptions,
        keywords=keywords,
        themes=tuple(sorted(set(themes), key=lambda i: i.value)),
        publisher=publisher,
        catalog=reader.first_iri(dataset, vocab.DCT_IS_PART_OF, "catalog"),
        issued=reader.timestamp(dataset, vocab.DCT_ISSUED, "issued"),
        modified=reader.timestamp(dataset, vocab.DCT_MODIFIED, "modified"),
        accrual_periodicity=reader.first_iri(dataset, vocab.DCT_ACCRUAL_PERIODICITY, "accrual periodicity"),
        spatial=tuple(sorted(set(spatial), key=_geo_key)),
        temporal=temporal,
        landing_page=reader.first_iri(dataset, vocab.DCAT_LANDING_PAGE, "landing page"),
        contact_point=contact,
        identifier=reader.first_literal(dataset, vocab.DCT_IDENTIFIER, "identifier"),
        version=reader.first_literal(dataset, vocab.OWL_VERSION_INFO, "version"),
        languages=tuple(sorted(set(languages), key=lambda i: i.value)),
        distributions=tuple(distributions),
        warnings=tuple(reader.warnings),
        extra=Graph(set(slice_graph) - reader.consumed),
    )
    return record


# --- record → graph -----------------------------------------------------------


def _timestamp_literal(value: str) -> Literal:
    dt = vocab.XSD_DATETIME if "T" in value else vocab.XSD_DATE
    return Literal(value, datatype=dt)


def _node_hash(iri: Iri) -> str:
    return hashlib.sha1(iri.value.encode("utf-8")).hexdigest()[:10]


def to_graph(record: DatasetRecord) -> Graph:
    """Serialize the modeled fields (plus the side bag) back to triples."""
    d = record.iri
    h = _node_hash(d)
    triples: set[Triple] = {Triple(d, vocab.RDF_TYPE, vocab.DCAT_DATASET)}

    def add(s, p, o):
        triples.add(Triple(s, p, o))

    for lang, text in record.titles:
        add(d, vocab.DCT_TITLE, Literal(text, language=lang))
    for lang, text in record.descriptions:
        add(d, vocab.DCT_DESCRIPTION, Literal(text, language=lang))
    for lang, text in record.keywords:
        add(d, vocab.DCAT_KEYWORD, Literal(text, language=lang))
    for theme in record.themes:
        add(d, vocab.DCAT_THEME, theme)

    if record.publisher is not None:
        agent = record.publisher
        node: Node = agent.iri if agent.iri is not None else BlankNode(f"agent-{h}")
        add(d, vocab.DCT_PUBLISHER, node)
        if agent.name is not None:
            add(node, vocab.FOAF_NAME, Literal(agent.name))
        if agent.homepage is not None:
            add(node, vocab.FOAF_HOMEPAGE, agent.homepage)
        if agent.email is not None:
            add(node, vocab.FOAF_MBOX, Iri("mailto:" + agent.email))

    if record.catalog is not None:
        add(d, vocab.DCT_IS_PART_OF, record.catalog)
    if record.issued is not None:
        add(d, vocab.DCT_ISSUED, _timestamp_literal(record.issued))
    if record.modified is not None:
        add(d, vocab.DCT_MODIFIED, _timestamp_literal(record.modified))
    if record.accrual_periodicity is not None:
        add(d, vocab.DCT_ACCRUAL_PERIODICITY, record.accrual_periodicity)

    for k, annotation in enumerate(sorted(record.spatial, key=_geo_key)):
        node = annotation.place_iri if annotation.place_iri is not None else BlankNode(f"geo-{h}-{k}")
        add(d, vocab.DCT_SPATIAL, node)
        add(node, vocab.RDFS_LABEL, Literal(annotation.place_name))
        add(node, vocab.WGS_LAT, Literal(repr(annotation.centroid[0]), datatype=vocab.XSD_DECIMAL))
        add(node, vocab.WGS_LONG, Literal(repr(annotation.centroid[1]), datatype=vocab.XSD_DECIMAL))
        add(node, vocab.DCATQ_GEO_LEVEL, Literal(annotation.level.value))

    if record.temporal is not None:
        node = BlankNode(f"period-{h}")
        add(d, vocab.DCT_TEMPORAL, node)
        add(node, vocab.RDF_TYPE, vocab.DCT_PERIOD_OF_TIME)
        start, end = record.temporal
        if start is not None:
            add(node, vocab.DCAT_START_DATE, _timestamp_literal(start))
        if end is not None:
            add(node, vocab.DCAT_END_DATE, _timestamp_literal(end))

    if record.landing_page is not None:
        add(d, vocab.DCAT_LANDING_PAGE, record.landing_page)

    if record.contact_point is not None and not record.contact_point.is_empty():
        node = BlankNode(f"contact-{h}")
        c = record.contact_point
        add(d, vocab.DCAT_CONTACT_POINT, node)
        if c.name is not None:
            add(node, vocab.VCARD_FN, Literal(c.name))
        if c.email is not None:
            add(node, vocab.VCARD_HAS_EMAIL, Iri("mailto:" + c.email))
        if c.url is not None:
            url_term: Term = Iri(c.url) if ":" in c.url else Literal(c.url)
            add(node, vocab.VCARD_HAS_URL, url_term)
        if c.phone is not None:
            add(node, vocab.VCARD_HAS_TELEPHONE, Literal(c.phone))
        if c.address is not None:
            add(node, vocab.VCARD_STREET_ADDRESS, Literal(c.address))

    if record.identifier is not None:
        add(d, vocab.DCT_IDENTIFIER, Literal(record.identifier))
    if record.version is not None:
        add(d, vocab.OWL_VERSION_INFO, Literal(record.version))
    for lang in record.languages:
        add(d, vocab.DCT_LANGUAGE, lang)

    for dist in record.distributions:
        node = dist.iri
        add(d, vocab.DCAT_DISTRIBUTION, node)
        add(node, vocab.RDF_TYPE, vocab.DCAT_DISTRIBUTION_CLASS)
        if dist.access_url is not None:
            add(node, vocab.DCAT_ACCESS_URL, dist.access_url)
        if dist.download_url is not None:
            add(node, vocab.DCAT_DOWNLOAD_URL, dist.download_url)
        if dist.media_type is not None:
            add(node, vocab.DCAT_MEDIA_TYPE, Literal(dist.media_type))
        if dist.format is not None:
            add(node, vocab.DCT_FORMAT, Literal(dist.format))
        if dist.license is not None:
            add(node, vocab.DCT_LICENSE, dist.license)
        if dist.byte_size is not None:
            add(node, vocab.DCAT_BYTE_SIZE, Literal(str(dist.byte_size), datatype=vocab.XSD_INTEGER))
        if dist.issued is not None:
            add(node, vocab.DCT_ISSUED, _timestamp_literal(dist.issued))
        if dist.modified is not None:
            add(node, vocab.DCT_MODIFIED, _timestamp_literal(dist.modified))

    return Graph(triples).union(record.extra)


def strip_transients(record: DatasetRecord) -> DatasetRecord:
    """Copy of the record without warnings (for equality-based round-trip checks)."""
    return replace(record, warnings=())
