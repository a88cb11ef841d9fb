"""The batch pipeline: read → split → clean → enrich → quality → dedup → write.

Per-dataset stages run in a thread pool; results are assembled in dataset
IRI order so output is byte-reproducible given the same inputs, config and
a pinned evaluation time. Corrupt dataset slices are skipped and counted,
never fatal.
"""

from __future__ import annotations

import hashlib
import logging
import pickle
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Optional

from . import vocab
from .cleaning import CleanConfig, CleanReport, clean
from .config import ConfigError, PipelineConfig
from .dcat import DatasetRecord, from_graph, to_graph
from .dedup import duplicate_pairs, emit_links, find_duplicates
from .enrich import Gazetteer, annotate_places, load_gazetteer, refine_language_tags
from .language import Detector, default_detector
from .quality import (
    ExternalStores,
    NotComputedLog,
    QualityConfig,
    aggregate_score,
    evaluate_all,
    to_dqv,
)
from .rdf import Graph, Iri, ParseError, parse_file, serialize_ntriples, split_dataset_graphs
from .search import InvertedIndex, entry_from_record

log = logging.getLogger(__name__)


class MissingInputError(FileNotFoundError):
    pass


@dataclass
class RunReport:
    input_files: int = 0
    triples_read: int = 0
    datasets: int = 0
    skipped: int = 0
    clean: CleanReport = field(default_factory=CleanReport)
    language_tags_added: int = 0
    places_annotated: int = 0
    metrics_computed: int = 0
    metrics_not_computed: int = 0
    clusters: int = 0
    links: int = 0
    output_dir: Optional[Path] = None

    def rows(self) -> list[tuple[str, str, int]]:
        return [
            ("read", "input_files", self.input_files),
            ("read", "triples", self.triples_read),
            ("split", "datasets", self.datasets),
            ("split", "skipped", self.skipped),
            ("clean", "empty_removed", self.clean.empty_removed),
            ("clean", "language_removed", self.clean.language_removed),
            ("clean", "structure_pruned", self.clean.structure_pruned),
            ("clean", "formats_normalized", self.clean.formats_normalized),
            ("clean", "catalog_added", self.clean.catalog_added),
            ("enrich", "language_tags_added", self.language_tags_added),
            ("enrich", "places_annotated", self.places_annotated),
            ("quality", "metrics_computed", self.metrics_computed),
            ("quality", "metrics_not_computed", self.metrics_not_computed),
            ("dedup", "clusters", self.clusters),
            ("dedup", "links", self.links),
        ]

    def to_tsv(self) -> str:
        return "".join(f"{s}\t{k}\t{v}\n" for s, k, v in self.rows())


def read_input_graph(input_path: Path) -> tuple[Graph, int]:
    """Parse one file or every .nt/.ttl file in a directory (merged)."""
    if not input_path.exists():
        raise MissingInputError(str(input_path))
    files: list[Path]
    if input_path.is_dir():
        files = sorted(
            p for p in input_path.iterdir() if p.suffix in (".nt", ".ttl") and p.is_file()
        )
        if not files:
            raise MissingInputError(f"no .nt/.ttl files in {input_path}")
    else:
        files = [input_path]
    merged: set = set()
    for p in files:
        try:
            merged |= set(parse_file(p))
        except ParseError as exc:
            raise ParseError(f"{p}: {exc}", exc.line) from exc
    return Graph(merged), len(files)


def dataset_file_name(dataset: Iri) -> str:
    return hashlib.sha1(dataset.value.encode("utf-8")).hexdigest()[:16] + ".nt"


@dataclass
class _SliceOutcome:
    dataset: Iri
    graph: Graph
    record: Optional[DatasetRecord]
    clean_report: Optional[CleanReport]
    results: list
    not_computed: list[str]
    tags_added: int
    places_added: int
    error: Optional[str] = None


def _merge_clean(total: CleanReport, part: CleanReport) -> None:
    total.empty_removed += part.empty_removed
    total.language_removed += part.language_removed
    total.structure_pruned += part.structure_pruned
    total.formats_normalized += part.formats_normalized
    total.catalog_added += part.catalog_added


def run_pipeline(
    config: PipelineConfig,
    evaluation_time: Optional[datetime] = None,
    stores: Optional[ExternalStores] = None,
) -> RunReport:
    report = RunReport()

    input_path = config.required_path("io.input")
    output_dir = config.required_path("io.output")
    index_output = config.path("index.output") or output_dir / "index.bin"

    graph, n_files = read_input_graph(input_path)
    report.input_files = n_files
    report.triples_read = len(graph)

    slices = split_dataset_graphs(graph)
    report.datasets = len(slices)

    clean_enabled = config.boolean("catfish.enabled", True)
    clean_config = CleanConfig(
        allowed_languages=config.languages("catfish.allowedLanguages"),
        remove_empty=config.boolean("catfish.removeEmpty", True),
        normalize_formats=config.boolean("catfish.normalizeFormats", True),
        catalog_id=config.iri("catfish.catalogId"),
    )

    refine_enabled = config.boolean("refine.enabled", True)
    detect_languages = config.boolean("refine.detectLanguages", True)
    annotate = config.boolean("refine.annotatePlaces", True)
    threshold = config.number("refine.languageThreshold", 0.75)
    gazetteer: Optional[Gazetteer] = None
    detector: Optional[Detector] = None
    if refine_enabled:
        if annotate:
            gazetteer = load_gazetteer(config.path("refine.gazetteer"))
        if detect_languages:
            detector = default_detector()

    civet_enabled = config.boolean("civet.enabled", True)
    if evaluation_time is None:
        configured = config.string("civet.evaluationTime")
        if configured is not None:
            try:
                evaluation_time = datetime.fromisoformat(configured.replace("Z", "+00:00"))
            except ValueError:
                raise ConfigError(f"civet.evaluationTime: not ISO-8601: {configured!r}")
        else:
            evaluation_time = datetime.now(timezone.utc)
    quality_config = QualityConfig(
        include_long_running=config.boolean("civet.includeLongRunning", False),
        log_if_not_computed=config.boolean("civet.logIfNotComputed", True),
        remove_measurements=config.boolean("civet.removeMeasurements", True),
        evaluation_time=evaluation_time,
        description_min_words=config.integer("civet.descriptionMinWords", 10),
    )
    quality_stores = stores if stores is not None else ExternalStores()

    dedup_enabled = config.boolean("dedup.enabled", True)
    dedup_threshold = config.number("dedup.threshold", 0.9)

    def process(item: tuple[Iri, Graph]) -> _SliceOutcome:
        dataset, slice_graph = item
        try:
            clean_report = None
            if clean_enabled:
                slice_graph, clean_report = clean(slice_graph, clean_config)
            record = from_graph(slice_graph, dataset)
            tags_added = places_added = 0
            if refine_enabled:
                if detect_languages:
                    before = sum(1 for lang, _ in record.titles + record.descriptions if lang)
                    record = refine_language_tags(record, threshold=threshold, detector=detector)
                    after = sum(1 for lang, _ in record.titles + record.descriptions if lang)
                    tags_added = after - before
                if annotate and gazetteer is not None:
                    before_places = len(record.spatial)
                    record = annotate_places(record, gazetteer)
                    places_added = len(record.spatial) - before_places
                slice_graph = to_graph(record)
            results = []
            not_computed: list[str] = []
            if civet_enabled:
                slice_log = NotComputedLog()
                results = evaluate_all(record, slice_graph, quality_config, quality_stores, log=slice_log)
                not_computed = slice_log.lines()
            return _SliceOutcome(
                dataset=dataset,
                graph=slice_graph,
                record=record,
                clean_report=clean_report,
                results=results,
                not_computed=not_computed,
                tags_added=tags_added,
                places_added=places_added,
            )
        except Exception as exc:  # corrupt slice: skip and count
            log.warning("skipping dataset %s: %s", dataset.value, exc)
            return _SliceOutcome(
                dataset=dataset,
                graph=Graph(),
                record=None,
                clean_report=None,
                results=[],
                not_computed=[],
                tags_added=0,
                places_added=0,
                error=str(exc),
            )

    workers = max(1, config.integer("pipeline.workers", 4))
    if workers == 1 or len(slices) <= 1:
        outcomes = [process(item) for item in slices]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(process, slices))
    outcomes.sort(key=lambda o: o.dataset.value)

    output_dir.mkdir(parents=True, exist_ok=True)
    datasets_dir = output_dir / "datasets"
    datasets_dir.mkdir(exist_ok=True)

    quality_path = output_dir / "quality.nt"
    prior = Graph()
    if quality_path.exists():
        prior = parse_file(quality_path, document_id="prior-quality")

    not_computed_lines: list[str] = []
    records: list[DatasetRecord] = []
    results_by_dataset = {}
    dqv_graph = prior
    for outcome in outcomes:
        if outcome.error is not None:
            report.skipped += 1
            continue
        (datasets_dir / dataset_file_name(outcome.dataset)).write_text(
            serialize_ntriples(outcome.graph), encoding="utf-8"
        )
        if outcome.clean_report is not None:
            _merge_clean(report.clean, outcome.clean_report)
        report.language_tags_added += outcome.tags_added
        report.places_annotated += outcome.places_added
        records.append(outcome.record)
        if civet_enabled:
            results_by_dataset[outcome.dataset.value] = outcome.results
            report.metrics_computed += sum(1 for r in outcome.results if r.computed)
            report.metrics_not_computed += sum(1 for r in outcome.results if not r.computed)
            not_computed_lines.extend(outcome.not_computed)
            dqv_graph = to_dqv(
                outcome.dataset,
                outcome.results,
                remove_existing=quality_config.remove_measurements,
                prior=dqv_graph,
            )

    quality_path.write_text(serialize_ntriples(dqv_graph), encoding="utf-8")
    (output_dir / "not-computed.log").write_text(
        "".join(line + "\n" for line in not_computed_lines), encoding="utf-8"
    )

    links_graph = Graph()
    if dedup_enabled:
        clusters = find_duplicates(records, threshold=dedup_threshold)
        report.clusters = len(clusters)
        links_graph = emit_links(clusters)
        report.links = len(links_graph)
    (output_dir / "links.nt").write_text(serialize_ntriples(links_graph), encoding="utf-8")

    entries = []
    for record in records:
        results = results_by_dataset.get(record.iri.value, [])
        entries.append(entry_from_record(record, quality=aggregate_score(results)))
    index = InvertedIndex(entries)
    index_output.parent.mkdir(parents=True, exist_ok=True)
    with open(index_output, "wb") as f:
        pickle.dump(index.to_state(), f, protocol=4)

    (output_dir / "report.tsv").write_text(report.to_tsv(), encoding="utf-8")
    if config.boolean("report.figures", True):
        from .report import render_run_figure

        render_run_figure(report, entries, output_dir / "report.png")

    report.output_dir = output_dir
    return report


def load_index(path) -> InvertedIndex:
    with open(path, "rb") as f:
        state = pickle.load(f)
    return InvertedIndex.from_state(state)
