"""Vocabulary constants used across the pipeline.

All class/property identifiers the toolkit reads or writes live in this
single table: DCAT 2 plus the vocabularies it recommends (Dublin Core,
FOAF, vCard), DQV for quality measurements, and a small project namespace
for identifiers that have no standard counterpart (metric IRIs, gazetteer
levels, lexicon predicates).
"""

from .rdf import Iri

# --- Standard namespaces -------------------------------------------------

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
DCAT_NS = "http://www.w3.org/ns/dcat#"
DCT_NS = "http://purl.org/dc/terms/"
FOAF_NS = "http://xmlns.com/foaf/0.1/"
VCARD_NS = "http://www.w3.org/2006/vcard/ns#"
DQV_NS = "http://www.w3.org/ns/dqv#"
SKOS_NS = "http://www.w3.org/2004/02/skos/core#"
OWL_NS = "http://www.w3.org/2002/07/owl#"
WGS_NS = "http://www.w3.org/2003/01/geo/wgs84_pos#"
SPDX_NS = "http://spdx.org/rdf/terms#"

# Project namespace for identifiers this toolkit has to mint itself.
DCATQ_NS = "https://w3id.org/dcatq#"
DCATQ_METRIC_NS = "https://w3id.org/dcatq/metric/"
DCATQ_PLACE_NS = "https://w3id.org/dcatq/place/"

RDF_TYPE = Iri(RDF_NS + "type")
RDFS_LABEL = Iri(RDFS_NS + "label")

XSD_STRING = Iri(XSD_NS + "string")
XSD_INTEGER = Iri(XSD_NS + "integer")
XSD_DECIMAL = Iri(XSD_NS + "decimal")
XSD_DOUBLE = Iri(XSD_NS + "double")
XSD_BOOLEAN = Iri(XSD_NS + "boolean")
XSD_DATE = Iri(XSD_NS + "date")
XSD_DATETIME = Iri(XSD_NS + "dateTime")

DCAT_DATASET = Iri(DCAT_NS + "Dataset")
DCAT_CATALOG = Iri(DCAT_NS + "Catalog")
DCAT_DISTRIBUTION_CLASS = Iri(DCAT_NS + "Distribution")
DCAT_DISTRIBUTION = Iri(DCAT_NS + "distribution")
DCAT_KEYWORD = Iri(DCAT_NS + "keyword")
DCAT_THEME = Iri(DCAT_NS + "theme")
DCAT_LANDING_PAGE = Iri(DCAT_NS + "landingPage")
DCAT_CONTACT_POINT = Iri(DCAT_NS + "contactPoint")
DCAT_ACCESS_URL = Iri(DCAT_NS + "accessURL")
DCAT_DOWNLOAD_URL = Iri(DCAT_NS + "downloadURL")
DCAT_MEDIA_TYPE = Iri(DCAT_NS + "mediaType")
DCAT_BYTE_SIZE = Iri(DCAT_NS + "byteSize")
DCAT_START_DATE = Iri(DCAT_NS + "startDate")
DCAT_END_DATE = Iri(DCAT_NS + "endDate")

DCT_TITLE = Iri(DCT_NS + "title")
DCT_DESCRIPTION = Iri(DCT_NS + "description")
DCT_PUBLISHER = Iri(DCT_NS + "publisher")
DCT_ISSUED = Iri(DCT_NS + "issued")
DCT_MODIFIED = Iri(DCT_NS + "modified")
DCT_ACCRUAL_PERIODICITY = Iri(DCT_NS + "accrualPeriodicity")
DCT_SPATIAL = Iri(DCT_NS + "spatial")
DCT_TEMPORAL = Iri(DCT_NS + "temporal")
DCT_LANGUAGE = Iri(DCT_NS + "language")
DCT_IDENTIFIER = Iri(DCT_NS + "identifier")
DCT_LICENSE = Iri(DCT_NS + "license")
DCT_FORMAT = Iri(DCT_NS + "format")
DCT_IS_PART_OF = Iri(DCT_NS + "isPartOf")
DCT_PERIOD_OF_TIME = Iri(DCT_NS + "PeriodOfTime")

FOAF_AGENT = Iri(FOAF_NS + "Agent")
FOAF_NAME = Iri(FOAF_NS + "name")
FOAF_HOMEPAGE = Iri(FOAF_NS + "homepage")
FOAF_MBOX = Iri(FOAF_NS + "mbox")

VCARD_FN = Iri(VCARD_NS + "fn")
VCARD_HAS_EMAIL = Iri(VCARD_NS + "hasEmail")
VCARD_HAS_URL = Iri(VCARD_NS + "hasURL")
VCARD_HAS_TELEPHONE = Iri(VCARD_NS + "hasTelephone")
VCARD_STREET_ADDRESS = Iri(VCARD_NS + "street-address")

DQV_QUALITY_MEASUREMENT = Iri(DQV_NS + "QualityMeasurement")
DQV_IS_MEASUREMENT_OF = Iri(DQV_NS + "isMeasurementOf")
DQV_COMPUTED_ON = Iri(DQV_NS + "computedOn")
DQV_VALUE = Iri(DQV_NS + "value")

OWL_VERSION_INFO = Iri(OWL_NS + "versionInfo")

WGS_LAT = Iri(WGS_NS + "lat")
WGS_LONG = Iri(WGS_NS + "long")

SPDX_CHECKSUM = Iri(SPDX_NS + "checksum")

# Predicate used for duplicate-dataset links.
SKOS_EXACT_MATCH = Iri(SKOS_NS + "exactMatch")

# Project terms.
DCATQ_GEO_LEVEL = Iri(DCATQ_NS + "geoLevel")

# Minimal lexicon schema for synonym extraction.
DCATQ_LEX_TERM = Iri(DCATQ_NS + "term")
DCATQ_LEX_LANGUAGE = Iri(DCATQ_NS + "language")
DCATQ_LEX_POS = Iri(DCATQ_NS + "partOfSpeech")
DCATQ_LEX_CANONICAL = Iri(DCATQ_NS + "canonicalForm")
DCATQ_LEX_SYNONYM = Iri(DCATQ_NS + "synonym")

#: Namespaces considered "standard vocabularies" by the representation and
#: linkage quality checks.
STANDARD_NAMESPACES = (
    RDF_NS,
    RDFS_NS,
    DCAT_NS,
    DCT_NS,
    FOAF_NS,
    VCARD_NS,
    DQV_NS,
    SKOS_NS,
    OWL_NS,
    WGS_NS,
    SPDX_NS,
)


def metric_iri(key: str) -> Iri:
    """IRI identifying one quality metric in DQV output."""
    return Iri(DCATQ_METRIC_NS + key)


def place_iri(place_id: str) -> Iri:
    """IRI minted for a gazetteer entry."""
    return Iri(DCATQ_PLACE_NS + place_id)
