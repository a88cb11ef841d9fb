"""Command line interface.

Subcommands: ``run`` (full pipeline), ``serve`` (HTTP API over a built
index), ``dedup``, ``quality``, ``synonyms extract`` and ``bench``.
Exit codes: 0 ok, 2 missing input, 3 parse error, 4 config error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

from .config import ConfigError, PipelineConfig
from .rdf import Iri, ParseError

EXIT_OK = 0
EXIT_MISSING_INPUT = 2
EXIT_PARSE_ERROR = 3
EXIT_CONFIG_ERROR = 4

log = logging.getLogger("dcatq")


def _parse_at(value: str) -> datetime:
    try:
        at = datetime.fromisoformat(value.replace("Z", "+00:00"))
    except ValueError:
        raise ConfigError(f"--at: not an ISO-8601 timestamp: {value!r}")
    if at.tzinfo is None:
        at = at.replace(tzinfo=timezone.utc)
    return at


def _cmd_run(args) -> int:
    from .pipeline import run_pipeline

    config = PipelineConfig.from_file(args.config)
    at = _parse_at(args.at) if args.at else None
    report = run_pipeline(config, evaluation_time=at)
    for stage, key, value in report.rows():
        print(f"{stage}\t{key}\t{value}")
    print(f"output\tdirectory\t{report.output_dir}")
    return EXIT_OK


def _cmd_serve(args) -> int:
    import uvicorn

    from .licenses import load_license_db
    from .pipeline import load_index
    from .rdf import parse_file
    from .search import SynonymTable, parse_synonym_table
    from .service import ServiceState, create_app

    port = args.port
    cors = args.cors_origin
    synonyms_path = args.synonyms
    if args.config:
        config = PipelineConfig.from_file(args.config)
        if port is None:
            port = config.integer("service.port", 8000)
        if cors is None:
            cors = config.string("service.cors_origin")
        if synonyms_path is None:
            p = config.path("service.synonyms")
            synonyms_path = str(p) if p else None
    if port is None:
        port = 8000

    index_path = Path(args.index)
    if not index_path.exists():
        print(f"index file not found: {index_path}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    index = load_index(index_path)

    synonyms = SynonymTable()
    if synonyms_path:
        synonyms = parse_synonym_table(Path(synonyms_path).read_text(encoding="utf-8"))

    from .rdf import Graph

    quality_graph = Graph()
    if args.quality:
        quality_graph = parse_file(args.quality)

    state = ServiceState(
        index=index,
        synonyms=synonyms,
        license_db=load_license_db(args.licenses) if args.licenses else load_license_db(),
        quality_graph=quality_graph,
    )
    app = create_app(state, cors_origin=cors)
    print(f"serving {len(index)} datasets on http://{args.host}:{port}")
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return EXIT_OK


def _cmd_dedup(args) -> int:
    from .dcat import from_graph
    from .dedup import duplicate_pairs, emit_links, find_duplicates, report_csv
    from .pipeline import read_input_graph
    from .rdf import serialize_ntriples, split_dataset_graphs

    config = PipelineConfig.from_file(args.config)
    threshold = args.threshold if args.threshold is not None else config.number("dedup.threshold", 0.9)
    input_path = config.required_path("io.input")
    output_dir = config.required_path("io.output")
    graph, _ = read_input_graph(input_path)
    records = [from_graph(s, d) for d, s in split_dataset_graphs(graph)]
    clusters = find_duplicates(records, threshold=threshold)
    output_dir.mkdir(parents=True, exist_ok=True)
    links = emit_links(clusters)
    (output_dir / "links.nt").write_text(serialize_ntriples(links), encoding="utf-8")
    if args.csv:
        Path(args.csv).write_text(report_csv(duplicate_pairs(records, threshold)), encoding="utf-8")
    print(f"datasets\t{len(records)}")
    print(f"clusters\t{len(clusters)}")
    print(f"links\t{len(links)}")
    return EXIT_OK


def _cmd_quality(args) -> int:
    from .dcat import from_graph
    from .pipeline import read_input_graph
    from .quality import ExternalStores, NotComputedLog, QualityConfig, evaluate_all, to_dqv
    from .rdf import Graph, serialize_ntriples, split_dataset_graphs
    from .report import render_quality_figure, write_quality_tsv

    config = PipelineConfig.from_file(args.config)
    input_path = config.required_path("io.input")
    output_dir = config.required_path("io.output")
    at = _parse_at(args.at) if args.at else datetime.now(timezone.utc)
    quality_config = QualityConfig(
        include_long_running=config.boolean("civet.includeLongRunning", False),
        log_if_not_computed=config.boolean("civet.logIfNotComputed", True),
        remove_measurements=config.boolean("civet.removeMeasurements", True),
        evaluation_time=at,
        description_min_words=config.integer("civet.descriptionMinWords", 10),
    )
    stores = ExternalStores()
    graph, _ = read_input_graph(input_path)
    output_dir.mkdir(parents=True, exist_ok=True)

    dqv = Graph()
    quality_path = output_dir / "quality.nt"
    if quality_path.exists():
        from .rdf import parse_file

        dqv = parse_file(quality_path, document_id="prior-quality")
    log_sink = NotComputedLog()
    score_rows = []
    for dataset, slice_graph in split_dataset_graphs(graph):
        record = from_graph(slice_graph, dataset)
        results = evaluate_all(record, slice_graph, quality_config, stores, log=log_sink)
        dqv = to_dqv(dataset, results, remove_existing=quality_config.remove_measurements, prior=dqv)
        for r in results:
            score_rows.append((dataset.value, r.metric, r.score))
    quality_path.write_text(serialize_ntriples(dqv), encoding="utf-8")
    log_sink.write(output_dir / "not-computed.log")
    write_quality_tsv(score_rows, output_dir / "quality_scores.tsv")
    if config.boolean("report.figures", True):
        render_quality_figure(score_rows, output_dir / "quality.png")
    computed = sum(1 for _, _, s in score_rows if s is not None)
    print(f"measurements\t{computed}")
    print(f"not_computed\t{len(score_rows) - computed}")
    return EXIT_OK


def _cmd_synonyms_extract(args) -> int:
    from .pipeline import read_input_graph
    from .rdf import parse_file
    from .search import extract_synonyms, tokenize, write_synonym_table

    lexicon_path = Path(args.lexicon)
    if not lexicon_path.exists():
        print(f"lexicon not found: {lexicon_path}", file=sys.stderr)
        return EXIT_MISSING_INPUT
    lexicon = parse_file(lexicon_path)

    corpus_terms = None
    if args.input:
        graph, _ = read_input_graph(Path(args.input))
        from .dcat import from_graph
        from .rdf import split_dataset_graphs

        corpus_terms = set()
        for dataset, slice_graph in split_dataset_graphs(graph):
            record = from_graph(slice_graph, dataset)
            for _, text in record.text_values():
                corpus_terms.update(tokenize(text))

    table = extract_synonyms(lexicon, corpus_terms=corpus_terms)
    write_synonym_table(table, args.output)
    print(f"nouns\t{len(table)}")
    return EXIT_OK


def _cmd_bench(args) -> int:
    import json

    from .bench import run_bench, write_bench_csv
    from .report import render_bench_figure

    result = run_bench(n_docs=args.docs, n_queries=args.queries, seed=args.seed)
    output_dir = Path(args.output)
    output_dir.mkdir(parents=True, exist_ok=True)
    write_bench_csv(result, output_dir / "bench.csv")
    render_bench_figure(result["rows"], output_dir / "bench.png")
    (output_dir / "bench.json").write_text(json.dumps(result, indent=2) + "\n", encoding="utf-8")
    for row in result["rows"]:
        print(f"{row['engine']}\t{row['query_class']}\t{row['median_ms']} ms")
    for query_class, speedup in result["speedups"].items():
        print(f"speedup\t{query_class}\t{speedup}x")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dcatq", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run the full pipeline from a config file")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--at", help="pin the evaluation time (ISO-8601) for reproducible output")
    p_run.set_defaults(func=_cmd_run)

    p_serve = sub.add_parser("serve", help="serve the HTTP API over a built index")
    p_serve.add_argument("--index", required=True)
    p_serve.add_argument("--quality", help="quality.nt file with DQV measurements")
    p_serve.add_argument("--synonyms", help="synonym table TSV")
    p_serve.add_argument("--licenses", help="license DB TSV (defaults to the bundled one)")
    p_serve.add_argument("--config", help="read service.* settings from this config")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int)
    p_serve.add_argument("--cors-origin")
    p_serve.set_defaults(func=_cmd_serve)

    p_dedup = sub.add_parser("dedup", help="detect duplicate datasets via download URLs")
    p_dedup.add_argument("--config", required=True)
    p_dedup.add_argument("--threshold", type=float)
    p_dedup.add_argument("--csv", help="write the pair report CSV here")
    p_dedup.set_defaults(func=_cmd_dedup)

    p_quality = sub.add_parser("quality", help="evaluate quality metrics only")
    p_quality.add_argument("--config", required=True)
    p_quality.add_argument("--at")
    p_quality.set_defaults(func=_cmd_quality)

    p_syn = sub.add_parser("synonyms", help="synonym table tooling")
    syn_sub = p_syn.add_subparsers(dest="syn_command", required=True)
    p_extract = syn_sub.add_parser("extract", help="extract a synonym table from a lexicon graph")
    p_extract.add_argument("--lexicon", required=True)
    p_extract.add_argument("--input", help="metadata graph; restricts nouns to its vocabulary")
    p_extract.add_argument("--output", required=True)
    p_extract.set_defaults(func=_cmd_synonyms_extract)

    p_bench = sub.add_parser("bench", help="indexed vs. linear-scan search timing")
    p_bench.add_argument("--docs", type=int, default=50_000)
    p_bench.add_argument("--queries", type=int, default=20)
    p_bench.add_argument("--seed", type=int, default=7)
    p_bench.add_argument("--output", default="bench-out")
    p_bench.set_defaults(func=_cmd_bench)

    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except FileNotFoundError as exc:
        print(f"missing input: {exc}", file=sys.stderr)
        return EXIT_MISSING_INPUT


if __name__ == "__main__":
    sys.exit(main())
