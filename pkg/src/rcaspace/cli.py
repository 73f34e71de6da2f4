"""Command-line front end: ingest -> rca -> proximity -> stats -> export.

Subcommands map one-to-one onto the independently reproducible artifacts
(``rca``, ``proximity``, ``stats``, ``network``, ``report``) plus ``demo``,
which materializes a bundled synthetic dataset and analyzes it, so the tool
can be exercised with zero external data.

Exit codes: 0 success, 2 I/O failure, 3 data validation failure, 64 usage.
All outputs are written atomically (temp file + rename) and contain no
timestamps, so identical inputs and configuration produce byte-identical
output trees.
"""
from __future__ import annotations

import argparse
import os
import sys
import tempfile
import warnings as warnings_module
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .demo import write_demo_dataset
from .errors import DataError
from .ingest import (
    FIELD_LABELS,
    IndexKind,
    ProductionTable,
    load_manifest,
    matrix_csv_text,
    parse_production_csv,
    resolve_labels,
    validate_alignment,
)
from .netexport import DEFAULT_THRESHOLD, FORMATS, build_layout, emit
from .proximity import MODES, country_proximity, field_proximity, proximity_csv_text
from .report import AnalysisReport, IndexAnalysis, analyze_index, build_report, sha256_file
from .stats import QUARTILE_RULES

EXIT_OK = 0
EXIT_IO = 2
EXIT_DATA = 3
EXIT_USAGE = 64


@dataclass(frozen=True)
class RunConfig:
    """Resolved options for one pipeline invocation."""

    manifest: Path
    out: Path
    indexes: tuple[IndexKind, ...] | None = None  # None: every manifest entry
    threshold: float = DEFAULT_THRESHOLD
    quartile_rule: str = "linear"
    joint_cells: bool = False
    formats: tuple[str, ...] = ("json",)

    def as_dict(self) -> dict:
        return {
            "indexes": [k.value for k in self.indexes] if self.indexes else "all",
            "backbone_threshold": self.threshold,
            "quartile_rule": self.quartile_rule,
            "joint_cells": self.joint_cells,
            "formats": list(self.formats),
        }


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; the contract is 64."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _write_bytes(path: Path, data: bytes) -> None:
    """Atomic write: temp file in the target directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_text(path: Path, text: str) -> None:
    _write_bytes(path, text.encode("utf-8"))


@dataclass
class _LoadedDataset:
    dataset_name: str
    period: str
    inputs: list[dict]
    analyses: list[IndexAnalysis]
    warnings: list[str] = field(default_factory=list)


def _load_dataset(cfg: RunConfig) -> _LoadedDataset:
    manifest = load_manifest(cfg.manifest)
    entries = list(manifest.tables)
    if cfg.indexes is not None:
        available = {e.index: e for e in entries}
        missing = [k.value for k in cfg.indexes if k not in available]
        if missing:
            raise DataError(
                f"manifest has no table for index(es): {', '.join(missing)}"
            )
        entries = [available[k] for k in cfg.indexes]
    entries.sort(key=lambda e: list(IndexKind).index(e.index))

    collected: list[str] = []
    tables: list[ProductionTable] = []
    inputs: list[dict] = []
    for entry in entries:
        with warnings_module.catch_warnings(record=True) as caught:
            warnings_module.simplefilter("always")
            table = resolve_labels(
                parse_production_csv(entry.resolved, entry.index), FIELD_LABELS
            )
        collected.extend(f"{entry.index.value}: {w.message}" for w in caught)
        tables.append(table)
        inputs.append(
            {
                "index": entry.index.value,
                "path": entry.path,
                "sha256": sha256_file(entry.resolved),
            }
        )
    tables = validate_alignment(tables)

    analyses = []
    for table in tables:
        with warnings_module.catch_warnings(record=True) as caught:
            warnings_module.simplefilter("always")
            analyses.append(analyze_index(table, cfg.quartile_rule))
        collected.extend(f"{table.index_kind.value}: {w.message}" for w in caught)
    return _LoadedDataset(manifest.dataset_name, manifest.period, inputs, analyses, collected)


def _proximity_network(analysis: IndexAnalysis, mode: str):
    if mode == "fields":
        return field_proximity(analysis.advantage, analysis.table.field_totals())
    return country_proximity(analysis.advantage, analysis.table.country_totals())


def _write_rca_csvs(cfg: RunConfig, data: _LoadedDataset) -> list[str]:
    written = []
    for a in data.analyses:
        rca_name = f"rca_{a.kind.value}.csv"
        adv_name = f"advantage_{a.kind.value}.csv"
        _write_text(
            cfg.out / rca_name,
            matrix_csv_text(a.rca.countries, a.rca.fields, a.rca.values),
        )
        _write_text(
            cfg.out / adv_name,
            matrix_csv_text(
                a.advantage.countries, a.advantage.fields, a.advantage.m.astype(int)
            ),
        )
        written.extend([rca_name, adv_name])
    return written


def _write_networks(cfg: RunConfig, data: _LoadedDataset, mode: str,
                    include_matrix_csv: bool) -> list[str]:
    written = []
    for a in data.analyses:
        net = _proximity_network(a, mode)
        if include_matrix_csv:
            name = f"proximity_{mode}_{a.kind.value}.csv"
            _write_text(cfg.out / name, proximity_csv_text(net))
            written.append(name)
        layout = build_layout(net, cfg.threshold)
        for fmt in cfg.formats:
            name = f"network_{mode}_{a.kind.value}.{fmt}"
            _write_bytes(cfg.out / name, emit(layout, fmt))
            written.append(name)
    return written


def _full_report(cfg: RunConfig, data: _LoadedDataset, proximity_files: list[str]) -> AnalysisReport:
    return build_report(
        dataset_name=data.dataset_name,
        period=data.period,
        analyses=data.analyses,
        config=cfg.as_dict(),
        inputs=data.inputs,
        proximity_exports=proximity_files,
        warnings_seen=data.warnings,
        joint_cells=cfg.joint_cells,
    )


def cmd_rca(cfg: RunConfig) -> None:
    data = _load_dataset(cfg)
    written = _write_rca_csvs(cfg, data)
    report = _full_report(cfg, data, [])
    _write_text(cfg.out / "rca_summary.json", report.to_json())
    _echo_written(cfg.out, written + ["rca_summary.json"], data.warnings)


def cmd_proximity(cfg: RunConfig, mode: str) -> None:
    data = _load_dataset(cfg)
    written = _write_networks(cfg, data, mode, include_matrix_csv=True)
    report = _full_report(cfg, data, [n for n in written if n.startswith("proximity_")])
    _write_text(cfg.out / "proximity_summary.json", report.to_json())
    _echo_written(cfg.out, written + ["proximity_summary.json"], data.warnings)


def cmd_network(cfg: RunConfig, mode: str) -> None:
    data = _load_dataset(cfg)
    written = _write_networks(cfg, data, mode, include_matrix_csv=False)
    _echo_written(cfg.out, written, data.warnings)


def cmd_stats(cfg: RunConfig) -> None:
    data = _load_dataset(cfg)
    report = _full_report(cfg, data, [])
    _write_text(cfg.out / "stats.json", report.to_json())
    _write_text(cfg.out / "stats.txt", report.to_text())
    _echo_written(cfg.out, ["stats.json", "stats.txt"], data.warnings)


def cmd_report(cfg: RunConfig) -> None:
    data = _load_dataset(cfg)
    written = _write_rca_csvs(cfg, data)
    proximity_files: list[str] = []
    for mode in MODES:
        names = _write_networks(cfg, data, mode, include_matrix_csv=True)
        proximity_files.extend(n for n in names if n.startswith("proximity_"))
        written.extend(names)
    report = _full_report(cfg, data, proximity_files)
    _write_text(cfg.out / "report.json", report.to_json())
    _write_text(cfg.out / "report.txt", report.to_text())
    _echo_written(cfg.out, written + ["report.json", "report.txt"], data.warnings)


def cmd_demo(args: argparse.Namespace) -> None:
    out = Path(args.out)
    manifest_path = write_demo_dataset(out / "data")
    cfg = RunConfig(
        manifest=manifest_path,
        out=out / "analysis",
        threshold=args.threshold,
        quartile_rule=args.quartile_rule,
        joint_cells=args.joint_cells,
        formats=tuple(dict.fromkeys(args.format)) if args.format else ("json", "svg"),
    )
    cmd_report(cfg)
    print(f"demo dataset: {manifest_path}")
    print(f"analysis: {cfg.out}")


def _echo_written(out: Path, names: list[str], warnings_seen: list[str]) -> None:
    for message in warnings_seen:
        print(f"warning: {message}", file=sys.stderr)
    for name in names:
        print(out / name)


def _add_pipeline_options(p: argparse.ArgumentParser, with_manifest: bool = True) -> None:
    if with_manifest:
        p.add_argument("--manifest", required=True, help="dataset manifest (JSON)")
        p.add_argument(
            "--index",
            action="append",
            choices=[k.value for k in IndexKind],
            help="restrict to this index kind (repeatable; default: all in manifest)",
        )
    p.add_argument("--out", default="rcaspace-out", help="output directory")
    p.add_argument(
        "--threshold",
        type=float,
        default=DEFAULT_THRESHOLD,
        help="backbone weight threshold in [0, 1]",
    )
    p.add_argument(
        "--format",
        action="append",
        choices=list(FORMATS),
        help="network output format (repeatable; default: json)",
    )
    p.add_argument(
        "--quartile-rule",
        default="linear",
        choices=list(QUARTILE_RULES),
        help="quartile interpolation rule for summaries",
    )
    p.add_argument(
        "--joint-cells",
        action="store_true",
        help="also report correlations restricted to cells defined in both indexes",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="rcaspace",
        description="RCA analytics of country x field scientific production",
    )
    parser.add_argument(
        "--version", action="version", version=f"rcaspace {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p_rca = sub.add_parser("rca", help="write per-index RCA and advantage matrices")
    _add_pipeline_options(p_rca)

    p_prox = sub.add_parser("proximity", help="write proximity matrices and networks")
    p_prox.add_argument("mode", choices=list(MODES), help="node set of the network")
    _add_pipeline_options(p_prox)

    p_net = sub.add_parser("network", help="write backbone-filtered network files")
    p_net.add_argument("mode", choices=list(MODES), help="node set of the network")
    _add_pipeline_options(p_net)

    p_stats = sub.add_parser("stats", help="write distribution and correlation stats")
    _add_pipeline_options(p_stats)

    p_report = sub.add_parser("report", help="run the full pipeline into one report")
    _add_pipeline_options(p_report)

    p_demo = sub.add_parser("demo", help="materialize the bundled dataset and analyze it")
    _add_pipeline_options(p_demo, with_manifest=False)
    p_demo.set_defaults(out="rcaspace-demo")

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    if not 0.0 <= args.threshold <= 1.0:
        raise DataError(f"--threshold must be in [0, 1], got {args.threshold}")
    indexes = None
    if getattr(args, "index", None):
        indexes = tuple(dict.fromkeys(IndexKind.parse(k) for k in args.index))
    formats = tuple(dict.fromkeys(args.format)) if args.format else ("json",)
    return RunConfig(
        manifest=Path(args.manifest),
        out=Path(args.out),
        indexes=indexes,
        threshold=args.threshold,
        quartile_rule=args.quartile_rule,
        joint_cells=args.joint_cells,
        formats=formats,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "demo":
            if not 0.0 <= args.threshold <= 1.0:
                raise DataError(f"--threshold must be in [0, 1], got {args.threshold}")
            cmd_demo(args)
        else:
            cfg = _config_from_args(args)
            if args.command == "rca":
                cmd_rca(cfg)
            elif args.command == "proximity":
                cmd_proximity(cfg, args.mode)
            elif args.command == "network":
                cmd_network(cfg, args.mode)
            elif args.command == "stats":
                cmd_stats(cfg)
            elif args.command == "report":
                cmd_report(cfg)
        return EXIT_OK
    except DataError as exc:
        print(f"rcaspace: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"rcaspace: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
