from .dqv import measurement_iri, parse_measurements, to_dqv  # noqa: F401
from .evaluate import (  # noqa: F401
    EVALUATION_ERROR,
    NOT_APPLICABLE,
    SKIPPED_LONG_RUNNING,
    STORE_UNAVAILABLE,
    TRACKED_FIELDS,
    CommunitySignals,
    ExternalStores,
    MetricResult,
    NotComputedLog,
    QualityConfig,
    aggregate_score,
    default_url_prober,
    evaluate_all,
    evaluate_metric,
    extent_ratio,
    map_score,
    weighted_extent_ratio,
)
from .registry import (  # noqa: F401
    EXTERNAL_STORE,
    LONG_RUNNING,
    METADATA_ONLY,
    MetricDescriptor,
    descriptor,
    descriptor_by_key,
    registry,
)
from .text import NotApplicable, flesch_reading_ease, known_token_ratio  # noqa: F401
