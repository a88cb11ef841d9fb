"""The quality catalog: 13 dimensions, 48 criteria.

Each descriptor documents what is measured and how the raw measure is
mapped onto the 0..5 scale (the mapping bands are this implementation's
choice). Tier controls evaluation: ``long_running`` metrics only run when
explicitly enabled, ``external_store`` metrics need an optional local
store and are skipped without one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import vocab
from ..rdf import Iri

METADATA_ONLY = "metadata_only"
LONG_RUNNING = "long_running"
EXTERNAL_STORE = "external_store"

#: Dimension name per inclusive id range.
_DIMENSIONS = (
    (1, 4, "Ausdruckskraft"),
    (5, 6, "Zeitlich"),
    (7, 9, "Verständlichkeit"),
    (10, 15, "Rechte"),
    (16, 19, "Vertrauen"),
    (20, 23, "Community"),
    (24, 26, "Vielseitigkeit"),
    (27, 33, "Repräsentation"),
    (34, 36, "Verknüpfung"),
    (37, 39, "Erreichbarkeit"),
    (40, 41, "Zugriff"),
    (42, 43, "Versionierung"),
    (44, 48, "Daten"),
)


@dataclass(frozen=True, slots=True)
class MetricDescriptor:
    id: int
    key: str
    dimension: str
    tier: str
    metric_iri: Iri
    doc: str


def _dimension(metric_id: int) -> str:
    for lo, hi, name in _DIMENSIONS:
        if lo <= metric_id <= hi:
            return name
    raise ValueError(f"metric id out of range: {metric_id}")


_SPECS: list[tuple[int, str, str, str]] = [
    (1, "expressiveness.extent", METADATA_ONLY,
     "Filled share of the 14 tracked metadata fields; ratio -> 0..5."),
    (2, "expressiveness.weighted_extent", METADATA_ONLY,
     "Weighted filled share of tracked fields (uniform weights unless configured); ratio -> 0..5."),
    (3, "expressiveness.categorization", METADATA_ONLY,
     "Number of keywords plus categories; count bands 1/2/3/5/8."),
    (4, "expressiveness.description_quality", METADATA_ONLY,
     "Description present, not a copy of the title, long enough: "
     "0 when missing or title-equal, else stepped by word count against the configured minimum."),
    (5, "timeliness.currency", METADATA_ONLY,
     "Age of the newest issued/modified stamp vs. evaluation time; "
     "<30d=5, <90d=4, <365d=3, <730d=2, <1825d=1, else 0."),
    (6, "timeliness.update_rate", METADATA_ONLY,
     "Update events: modified stamps on dataset and distributions plus a declared "
     "accrual periodicity; count bands 1/2/3/4/5."),
    (7, "comprehensibility.readability", METADATA_ONLY,
     "Flesch reading ease of the description (Amstad formula for German), clamped to 0..100; ratio -> 0..5."),
    (8, "comprehensibility.language_correctness", METADATA_ONLY,
     "Share of title/description tokens found in the bundled word list of the tagged language; ratio -> 0..5."),
    (9, "comprehensibility.example_links", METADATA_ONLY,
     "Boolean: description texts link to example material (http/https URL present)."),
    (10, "rights.machine_readable_license", METADATA_ONLY,
     "Boolean: at least one distribution carries a license IRI."),
    (11, "rights.human_readable_license", METADATA_ONLY,
     "Boolean: the slice names a license title (license literal, or title/label on the license node)."),
    (12, "rights.known_license", METADATA_ONLY,
     "Boolean: at least one license IRI is listed in the license database."),
    (13, "rights.open_license", METADATA_ONLY,
     "Boolean: at least one known license is described as open."),
    (14, "rights.commercial_use", METADATA_ONLY,
     "Boolean: at least one known license permits commercial use."),
    (15, "rights.permission_attributes", METADATA_ONLY,
     "Boolean: a known license carries attribution/share-alike duties or is public-domain-like."),
    (16, "trust.provider_identity", EXTERNAL_STORE,
     "Boolean: the publisher (IRI, name or homepage) is listed in the provider database."),
    (17, "trust.trusted_provider", EXTERNAL_STORE,
     "Provider rating from the provider database (0..5); ratio rating/5 -> 0..5."),
    (18, "trust.authenticity", EXTERNAL_STORE,
     "Boolean: the dataset sits in a duplicate cluster spanning at least two hosts."),
    (19, "trust.digital_signature", EXTERNAL_STORE,
     "Boolean: checksum/signature statements present in the slice (spdx:checksum); "
     "gated on the trust (provider) database like the rest of the dimension."),
    (20, "community.communication_channels", EXTERNAL_STORE,
     "Number of discussion channels recorded for the dataset; count bands 1/2/3/4/5."),
    (21, "community.trust_votes", EXTERNAL_STORE,
     "User-voted trust rating (0..5) from the community table; ratio rating/5 -> 0..5."),
    (22, "community.correctness_votes", EXTERNAL_STORE,
     "User-voted correctness rating (0..5) from the community table; ratio rating/5 -> 0..5."),
    (23, "community.cross_confirmation", EXTERNAL_STORE,
     "Confirming sources: duplicate-cluster co-members; count bands 1/2/3/4/5."),
    (24, "versatility.serializations", METADATA_ONLY,
     "Number of distributions (serializations of the entry); count bands 2/3/4/5/6."),
    (25, "versatility.languages", METADATA_ONLY,
     "Distinct language tags across texts plus declared languages; count bands 2/2/3/4/5."),
    (26, "versatility.access_methods", METADATA_ONLY,
     "Distinct access schemes over access/download URLs (http(s) folded); count bands 1/2/2/3/3."),
    (27, "representation.open_format", METADATA_ONLY,
     "Boolean: the metadata uses at least one standard-vocabulary property beyond rdf:type."),
    (28, "representation.registered_format", METADATA_ONLY,
     "Share of non-type predicates drawn from standard vocabularies; ratio -> 0..5."),
    (29, "representation.machine_processable", METADATA_ONLY,
     "Share of machine-checkable values (dates ISO, URLs/licenses as IRIs, byte sizes integral) "
     "that validate; ratio -> 0..5."),
    (30, "representation.vocabulary_declared", METADATA_ONLY,
     "Boolean: subsidiary nodes are typed (any rdf:type besides the dataset's)."),
    (31, "representation.date_format", METADATA_ONLY,
     "Share of date literals in the slice that parse as ISO-8601; ratio -> 0..5."),
    (32, "representation.unique_identifier", METADATA_ONLY,
     "Boolean: an explicit identifier is present."),
    (33, "representation.locality", METADATA_ONLY,
     "Boolean: spatial information present (field or detectable annotation)."),
    (34, "linkage.labeled_data", METADATA_ONLY,
     "Boolean: labeled literals present (title/description/keyword/label)."),
    (35, "linkage.linked_data", METADATA_ONLY,
     "Boolean: the entry links to other resources (IRI objects beyond rdf:type)."),
    (36, "linkage.cross_standard", METADATA_ONLY,
     "Boolean: predicates from at least two standard vocabularies."),
    (37, "reachability.contact_url", METADATA_ONLY,
     "Boolean: a contact or publisher web address is present."),
    (38, "reachability.contact_email", METADATA_ONLY,
     "Contact email: 0 none, 2 present but malformed, 5 valid (has @, domain with dot)."),
    (39, "reachability.classic_contact", METADATA_ONLY,
     "Classic contact fields (name, phone, address); count bands 1/1/2/2/3."),
    (40, "access.open_metadata", METADATA_ONLY,
     "Boolean: open access to the entry (landing page or an access/download URL)."),
    (41, "access.retrievability", LONG_RUNNING,
     "Share of probed URLs (landing page, access/download; max 5) answering successfully; "
     "HTTP(S) only, 10 s timeout, 2xx (after redirects) counts; ratio -> 0..5."),
    (42, "versioning.version_number", METADATA_ONLY,
     "Version info: 1.0 explicit field, 0.6 version pattern found in texts, 0 none; ratio -> 0..5."),
    (43, "versioning.time_span", METADATA_ONLY,
     "Covered time span: 1.0 explicit temporal field, 0.6 year range found in texts, 0 none; ratio -> 0..5."),
    (44, "data.open_format", METADATA_ONLY,
     "Share of format-bearing distributions whose media type is an open format; ratio -> 0..5."),
    (45, "data.registered_format", METADATA_ONLY,
     "Share of format-bearing distributions with an IANA-registered media type; ratio -> 0..5."),
    (46, "data.machine_processable", METADATA_ONLY,
     "Share of format-bearing distributions in machine-processable formats; ratio -> 0..5."),
    (47, "data.unique_identifier", METADATA_ONLY,
     "Share of distributions with a download URL as stable data identifier; ratio -> 0..5."),
    (48, "data.serializations", METADATA_ONLY,
     "Distinct media types across distributions; count bands 2/2/3/4/5."),
]


def registry() -> list[MetricDescriptor]:
    """All 48 metric descriptors, ordered by id."""
    out = []
    for metric_id, key, tier, doc in _SPECS:
        out.append(
            MetricDescriptor(
                id=metric_id,
                key=key,
                dimension=_dimension(metric_id),
                tier=tier,
                metric_iri=vocab.metric_iri(key),
                doc=doc,
            )
        )
    return out


_BY_ID = {d.id: d for d in registry()}
_BY_KEY = {d.key: d for d in registry()}


def descriptor(metric_id: int) -> MetricDescriptor:
    try:
        return _BY_ID[metric_id]
    except KeyError:
        raise ValueError(f"no metric with id {metric_id}")


def descriptor_by_key(key: str) -> MetricDescriptor:
    try:
        return _BY_KEY[key]
    except KeyError:
        raise ValueError(f"no metric with key {key}")
