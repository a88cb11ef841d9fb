"""Report rendering: delimited summaries plus matplotlib figures.

Figures are written next to the delimited output with a fixed style so two
runs over the same data produce byte-identical files.
"""

from __future__ import annotations

from pathlib import Path
from typing import TYPE_CHECKING, Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

if TYPE_CHECKING:
    from .pipeline import RunReport
    from .search import DocEntry

BAR_COLOR = "#4878a8"
ACCENT_COLOR = "#b46a55"


def render_run_figure(report: "RunReport", entries: Sequence["DocEntry"], path: Path) -> None:
    """Two panels: per-stage counters and the quality score distribution."""
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4.2))

    rows = [(f"{stage}.{key}", value) for stage, key, value in report.rows()]
    labels = [r[0] for r in rows]
    values = [r[1] for r in rows]
    left.barh(range(len(rows)), values, color=BAR_COLOR)
    left.set_yticks(range(len(rows)))
    left.set_yticklabels(labels, fontsize=7)
    left.invert_yaxis()
    left.set_title("Pipeline counters")
    left.set_xlabel("count")

    scores = [e.quality for e in entries if e.quality is not None]
    bins = [0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4, 4.5, 5]
    right.hist(scores, bins=bins, color=ACCENT_COLOR, edgecolor="white")
    right.set_xlabel("aggregate quality score")
    right.set_ylabel("datasets")
    right.set_title(f"Quality distribution ({len(scores)} scored)")
    right.set_xlim(0, 5)

    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def write_quality_tsv(score_rows: Sequence[tuple[str, str, Optional[int]]], path: Path) -> None:
    """Rows of (dataset, metric-key, score); not-computed rows carry an empty score."""
    lines = [
        f"{dataset}\t{metric}\t{'' if score is None else score}"
        for dataset, metric, score in score_rows
    ]
    Path(path).write_text("".join(l + "\n" for l in lines), encoding="utf-8")


def render_quality_figure(score_rows: Sequence[tuple[str, str, Optional[int]]], path: Path) -> None:
    """Mean score per quality dimension over all datasets."""
    from .quality import descriptor_by_key, registry

    dimension_scores: dict[str, list[int]] = {}
    for _, metric, score in score_rows:
        if score is None:
            continue
        try:
            dim = descriptor_by_key(metric).dimension
        except ValueError:
            continue
        dimension_scores.setdefault(dim, []).append(score)

    dimensions = []
    seen = set()
    for desc in registry():
        if desc.dimension not in seen:
            seen.add(desc.dimension)
            dimensions.append(desc.dimension)
    means = [
        (sum(dimension_scores[d]) / len(dimension_scores[d])) if dimension_scores.get(d) else 0.0
        for d in dimensions
    ]

    fig, ax = plt.subplots(figsize=(8, 4.2))
    ax.bar(range(len(dimensions)), means, color=BAR_COLOR)
    ax.set_xticks(range(len(dimensions)))
    ax.set_xticklabels(dimensions, rotation=45, ha="right", fontsize=8)
    ax.set_ylim(0, 5)
    ax.set_ylabel("mean score")
    ax.set_title("Quality by dimension")
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)


def render_bench_figure(rows: Sequence[dict], path: Path) -> None:
    """Median latency per engine and query class."""
    classes = sorted({r["query_class"] for r in rows})
    engines = sorted({r["engine"] for r in rows})
    width = 0.35
    fig, ax = plt.subplots(figsize=(7, 4.2))
    for k, engine in enumerate(engines):
        xs = [i + (k - (len(engines) - 1) / 2) * width for i in range(len(classes))]
        ys = []
        for c in classes:
            median = [r["median_ms"] for r in rows if r["engine"] == engine and r["query_class"] == c]
            ys.append(median[0] if median else 0.0)
        ax.bar(xs, ys, width=width, label=engine, color=BAR_COLOR if k == 0 else ACCENT_COLOR)
    ax.set_xticks(range(len(classes)))
    ax.set_xticklabels(classes)
    ax.set_ylabel("median latency (ms)")
    ax.set_yscale("log")
    ax.set_title("Indexed search vs. linear scan")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
