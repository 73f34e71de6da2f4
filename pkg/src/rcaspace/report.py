"""Assembly of the analysis report: per-index RCA summaries, skewness
classes, cross-index Pearson correlations, and the diversity/ubiquity tables.

Reports are self-describing (tool version, configuration, input digests) and
contain no timestamps, so identical inputs and configuration always produce
byte-identical report files.
"""
from __future__ import annotations

import hashlib
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DataError
from .ingest import IndexKind, ProductionTable
from .rca import AdvantageMatrix, RcaMatrix, compute_rca, diversity, threshold_advantage, ubiquity
from .stats import DistributionSummary, classify_skew, pearson, summarize, summary_table_text


@dataclass(frozen=True, eq=False)
class IndexAnalysis:
    """Everything derived from one production table."""

    kind: IndexKind
    table: ProductionTable
    rca: RcaMatrix
    advantage: AdvantageMatrix
    diversity: np.ndarray
    ubiquity: np.ndarray
    summary: DistributionSummary
    skew_class: str


def analyze_index(table: ProductionTable, quartile_rule: str = "linear") -> IndexAnalysis:
    """Run the RCA pipeline for one table.

    The distribution summary covers every defined RCA cell, zeros included;
    undefined cells (zero country or field total) are excluded.
    """
    rca = compute_rca(table)
    adv = threshold_advantage(rca)
    summary = summarize(rca.defined_values(), quartile_rule)
    return IndexAnalysis(
        kind=table.index_kind,
        table=table,
        rca=rca,
        advantage=adv,
        diversity=diversity(adv),
        ubiquity=ubiquity(adv),
        summary=summary,
        skew_class=classify_skew(summary),
    )


def correlation_pairs(analyses: list[IndexAnalysis], joint_cells: bool = False) -> list[dict]:
    """Pearson r between the RCA distributions of every index pair.

    Tables must be cell-aligned.  By default the correlation runs over the
    full aligned grid with undefined cells as 0; with ``joint_cells`` the
    restriction to cells defined in both indexes is reported alongside.
    """
    by_order = sorted(analyses, key=lambda a: list(IndexKind).index(a.kind))
    out = []
    for a, b in itertools.combinations(by_order, 2):
        if a.rca.countries != b.rca.countries or a.rca.fields != b.rca.fields:
            raise DataError(
                "correlation requires cell-aligned tables; run validate_alignment first"
            )
        entry = {
            "a": a.kind.value,
            "b": b.kind.value,
            "r": pearson(a.rca.values.ravel(), b.rca.values.ravel()),
        }
        if joint_cells:
            both = a.rca.defined_mask & b.rca.defined_mask
            entry["r_joint"] = pearson(a.rca.values[both], b.rca.values[both])
        out.append(entry)
    return out


def sha256_file(path: str | Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


@dataclass(frozen=True)
class AnalysisReport:
    """The aggregated, serializable result of a full pipeline run."""

    dataset_name: str
    period: str
    config: dict
    inputs: list[dict]
    rca_stats: dict[str, dict]
    skewness: dict[str, str]
    correlations: list[dict]
    diversity_table: dict[str, dict[str, int]]
    ubiquity_table: dict[str, dict[str, int]]
    proximity_exports: list[str]
    undefined_cells: dict[str, int]
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "tool": {"name": "rcaspace", "version": __version__},
            "dataset": {"name": self.dataset_name, "period": self.period},
            "config": self.config,
            "inputs": self.inputs,
            "rca_stats": self.rca_stats,
            "skewness": self.skewness,
            "correlations": self.correlations,
            "diversity": self.diversity_table,
            "ubiquity": self.ubiquity_table,
            "proximity_exports": self.proximity_exports,
            "undefined_cells": self.undefined_cells,
            "warnings": self.warnings,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        summaries = {
            name: DistributionSummary(
                n=s["n"], minimum=s["min"], q1=s["q1"], median=s["median"],
                mean=s["mean"], q3=s["q3"], maximum=s["max"],
            )
            for name, s in self.rca_stats.items()
        }
        lines = [
            f"dataset: {self.dataset_name} ({self.period})",
            "",
            "RCA distribution summaries (defined cells)",
            summary_table_text(summaries).rstrip("\n"),
            "",
        ]
        for name, shape in self.skewness.items():
            lines.append(f"  {name}: {shape}")
        if self.correlations:
            lines.append("")
            lines.append("Pearson correlations between RCA distributions")
            for entry in self.correlations:
                extra = (
                    f"  (jointly defined cells: r = {entry['r_joint']:.3f})"
                    if "r_joint" in entry
                    else ""
                )
                lines.append(f"  {entry['a']} ~ {entry['b']}: r = {entry['r']:.3f}{extra}")
        lines.append("")
        lines.append(_count_table_text("Ubiquity per field", self.ubiquity_table))
        lines.append(_count_table_text("Diversity per country", self.diversity_table))
        if self.warnings:
            lines.append("warnings:")
            lines.extend(f"  - {w}" for w in self.warnings)
            lines.append("")
        return "\n".join(lines)


def _count_table_text(title: str, table: dict[str, dict[str, int]]) -> str:
    if not table:
        return f"{title}: (empty)\n"
    columns = list(next(iter(table.values())))
    name_width = max(len(name) for name in table)
    widths = [max(len(c), 6) for c in columns]
    lines = [title]
    header = " ".ljust(name_width) + "  " + "  ".join(
        c.rjust(w) for c, w in zip(columns, widths)
    )
    lines.append(header.rstrip())
    for name, counts in table.items():
        row = name.ljust(name_width) + "  " + "  ".join(
            str(counts[c]).rjust(w) for c, w in zip(columns, widths)
        )
        lines.append(row.rstrip())
    return "\n".join(lines) + "\n"


def build_report(
    dataset_name: str,
    period: str,
    analyses: list[IndexAnalysis],
    config: dict,
    inputs: list[dict],
    proximity_exports: list[str],
    warnings_seen: list[str],
    joint_cells: bool = False,
) -> AnalysisReport:
    """Aggregate per-index analyses into one AnalysisReport."""
    analyses = sorted(analyses, key=lambda a: list(IndexKind).index(a.kind))
    kinds = [a.kind.value for a in analyses]
    rca_stats = {}
    skewness = {}
    undefined = {}
    for a in analyses:
        stats = a.summary.as_dict()
        rca_stats[a.kind.value] = stats
        skewness[a.kind.value] = a.skew_class
        undefined[a.kind.value] = a.rca.n_undefined()

    first = analyses[0]
    ubiquity_table = {
        field_name: {kind: int(a.ubiquity[j]) for kind, a in zip(kinds, analyses)}
        for j, field_name in enumerate(first.advantage.fields)
    }
    diversity_table = {
        country: {kind: int(a.diversity[i]) for kind, a in zip(kinds, analyses)}
        for i, country in enumerate(first.advantage.countries)
    }
    return AnalysisReport(
        dataset_name=dataset_name,
        period=period,
        config=config,
        inputs=inputs,
        rca_stats=rca_stats,
        skewness=skewness,
        correlations=correlation_pairs(analyses, joint_cells),
        diversity_table=diversity_table,
        ubiquity_table=ubiquity_table,
        proximity_exports=proximity_exports,
        undefined_cells=undefined,
        warnings=warnings_seen,
    )
