"""Parsing, validation and normalization of country x field production tables.

The canonical input is a long-form CSV with a mandatory ``country,field,value``
header (UTF-8, comma separated, double-quoted fields allowed), one file per
production index.  A wide-matrix reader is provided as a convenience and is
converted to the same internal representation.  Name matching is exact after
Unicode NFC normalization and surrounding-whitespace trim; there is no fuzzy
matching, silent merges being worse than warnings.

Absent (country, field) cells are materialized as zeros so that downstream
world-share denominators are complete sums.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import unicodedata
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Sequence, Union

import numpy as np

from .errors import DataError, UnknownFieldWarning

Source = Union[str, Path, IO[bytes], IO[str]]


class IndexKind(enum.Enum):
    """The five production indexes a table can hold."""

    DOCUMENTS = "documents"
    CITATIONS = "citations"
    SELF_CITATIONS = "self_citations"
    CITATIONS_PER_DOCUMENT = "citations_per_document"
    H_INDEX = "h_index"

    @classmethod
    def parse(cls, text: str) -> "IndexKind":
        try:
            return cls(text)
        except ValueError:
            valid = ", ".join(kind.value for kind in cls)
            raise DataError(
                f"unknown index kind {text!r} (expected one of: {valid})"
            ) from None

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


def normalize_name(name: str) -> str:
    """NFC-normalize and trim a country or field name."""
    return unicodedata.normalize("NFC", name).strip()


@dataclass(frozen=True)
class LabelRegistry:
    """Bidirectional mapping between field full names and short labels."""

    entries: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        names = [name for name, _ in self.entries]
        labels = [label for _, label in self.entries]
        if len(set(names)) != len(names):
            raise DataError("label registry: duplicate full names")
        if len(set(labels)) != len(labels):
            raise DataError("label registry: duplicate labels")

    def label_for(self, full_name: str) -> str | None:
        for name, label in self.entries:
            if name == full_name:
                return label
        return None

    def is_label(self, text: str) -> bool:
        return any(label == text for _, label in self.entries)


#: The 27 canonical fields of knowledge of the SCImago country/journal rank
#: classification and the short labels used in exports and visualizations.
FIELD_LABELS = LabelRegistry(
    (
        ("Mathematics", "Mth"),
        ("Physics and Astronomy", "Phy-Ast"),
        ("Chemistry", "Chm"),
        ("Chemical Engineering", "ChmEng"),
        ("Multidisciplinary", "Mlt"),
        ("Agricultural and Biological Sciences", "Agr-BlgScn"),
        ("Earth and Planetary Sciences", "Ert-PlnScn"),
        ("Veterinary", "Vtr"),
        ("Energy", "Enr"),
        ("Environmental Science", "EnvScn"),
        ("Materials Science", "MtrScn"),
        ("Engineering", "Eng"),
        ("Economics, Econometrics and Finance", "Ecn-Ecnm-Fnn"),
        ("Business, Management and Accounting", "Bsn-Mng-Acc"),
        ("Social Sciences", "SclScn"),
        ("Arts and Humanities", "Art-Hmn"),
        ("Psychology", "Psy"),
        ("Decision Sciences", "DcsSci"),
        ("Computer Science", "CmpScn"),
        ("Neuroscience", "Nrsc"),
        ("Biochemistry, Genetics and Molecular Biology", "Bch-Gnt-MlcBlg"),
        ("Health Professions", "HltPrf"),
        ("Immunology and Microbiology", "Inm-Mcr"),
        ("Pharmacology, Toxicology and Pharmaceutics", "Phr-Txc-Phr"),
        ("Nursing", "Nrs"),
        ("Dentistry", "Dnt"),
        ("Medicine", "Mdc"),
    )
)


@dataclass(frozen=True, eq=False)
class ProductionTable:
    """A dense non-negative country x field matrix for one production index."""

    index_kind: IndexKind
    countries: tuple[str, ...]
    fields: tuple[str, ...]
    values: np.ndarray  # shape (len(countries), len(fields)), float64

    def __post_init__(self) -> None:
        countries = tuple(self.countries)
        fields = tuple(self.fields)
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.shape != (len(countries), len(fields)):
            raise DataError(
                f"value matrix shape {values.shape} does not match "
                f"{len(countries)} countries x {len(fields)} fields"
            )
        if not np.all(np.isfinite(values)):
            raise DataError("production table contains a non-finite value")
        if values.size and values.min() < 0:
            raise DataError("production table contains a negative value")
        if len(set(countries)) != len(countries):
            raise DataError("duplicate country names")
        if len(set(fields)) != len(fields):
            raise DataError("duplicate field names")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "countries", countries)
        object.__setattr__(self, "fields", fields)
        object.__setattr__(self, "values", values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProductionTable):
            return NotImplemented
        return (
            self.index_kind == other.index_kind
            and self.countries == other.countries
            and self.fields == other.fields
            and np.array_equal(self.values, other.values)
        )

    def country_totals(self) -> np.ndarray:
        return self.values.sum(axis=1)

    def field_totals(self) -> np.ndarray:
        return self.values.sum(axis=0)

    def grand_total(self) -> float:
        return float(self.values.sum())


def _as_text_stream(source: Source) -> tuple[IO[str], bool]:
    """Text stream plus whether the caller owns (and must close) it."""
    if isinstance(source, (str, Path)):
        return open(source, "r", encoding="utf-8", newline=""), True
    if isinstance(source, io.TextIOBase):
        return source, False
    data = source.read()
    if isinstance(data, bytes):
        try:
            return io.StringIO(data.decode("utf-8")), False
        except UnicodeDecodeError as exc:
            raise DataError(f"input is not valid UTF-8: {exc}") from None
    return io.StringIO(data), False


def _parse_value(text: str, line: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DataError(f"non-numeric value {text!r} at line {line}") from None
    if not np.isfinite(value):
        raise DataError(f"non-finite value {text!r} at line {line}")
    if value < 0:
        raise DataError(f"negative value at line {line}")
    return value


def parse_production_csv(source: Source, index_kind: IndexKind) -> ProductionTable:
    """Parse a long-form ``country,field,value`` CSV into a ProductionTable.

    Row and column orders follow first appearance in the file.  Duplicate
    (country, field) rows are an error; pairs absent from the file become
    zero cells.  Every error message carries the offending line number.
    """
    stream, owned = _as_text_stream(source)
    try:
        return _parse_long_rows(stream, index_kind)
    finally:
        if owned:
            stream.close()


def _parse_long_rows(stream: IO[str], index_kind: IndexKind) -> ProductionTable:
    reader = csv.reader(stream)
    try:
        header = next(reader, None)
    except csv.Error as exc:
        raise DataError(f"malformed CSV at line 1: {exc}") from None
    if header is None:
        raise DataError("empty file: missing country,field,value header")
    if [h.strip().lower() for h in header] != ["country", "field", "value"]:
        raise DataError(
            f"invalid header {header!r}: expected country,field,value"
        )

    countries: dict[str, int] = {}
    fields: dict[str, int] = {}
    cells: dict[tuple[int, int], float] = {}
    seen_line: dict[tuple[int, int], int] = {}
    while True:
        try:
            row = next(reader, None)
        except csv.Error as exc:
            raise DataError(f"malformed CSV at line {reader.line_num}: {exc}") from None
        if row is None:
            break
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue  # skip blank lines
        if len(row) != 3:
            raise DataError(f"expected 3 columns, got {len(row)} at line {line}")
        country = normalize_name(row[0])
        field = normalize_name(row[1])
        if not country:
            raise DataError(f"empty country name at line {line}")
        if not field:
            raise DataError(f"empty field name at line {line}")
        value = _parse_value(row[2].strip(), line)
        ci = countries.setdefault(country, len(countries))
        fi = fields.setdefault(field, len(fields))
        key = (ci, fi)
        if key in cells:
            raise DataError(
                f"duplicate cell ({country}, {field}) at line {line} "
                f"(first at line {seen_line[key]})"
            )
        cells[key] = value
        seen_line[key] = line

    if not cells:
        raise DataError("no data rows")
    values = np.zeros((len(countries), len(fields)))
    for (ci, fi), value in cells.items():
        values[ci, fi] = value
    return ProductionTable(index_kind, tuple(countries), tuple(fields), values)


def parse_production_wide_csv(source: Source, index_kind: IndexKind) -> ProductionTable:
    """Parse a wide matrix CSV (header: country,<field>,...; one row per country).

    Blank cells become zeros.  Converted to the long representation internally
    so the validation rules match :func:`parse_production_csv`.
    """
    stream, owned = _as_text_stream(source)
    try:
        return _parse_wide_rows(stream, index_kind)
    finally:
        if owned:
            stream.close()


def _parse_wide_rows(stream: IO[str], index_kind: IndexKind) -> ProductionTable:
    reader = csv.reader(stream)
    header = next(reader, None)
    if header is None or len(header) < 2:
        raise DataError("invalid wide header: expected country,<field>,...")
    long_rows = ["country,field,value"]
    field_names = [normalize_name(h) for h in header[1:]]
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise DataError(
                f"expected {len(header)} columns, got {len(row)} at line {line}"
            )
        country = normalize_name(row[0])
        for field, cell in zip(field_names, row[1:]):
            text = cell.strip() or "0"
            long_rows.append(
                ",".join((_csv_quote(country), _csv_quote(field), text))
            )
    return parse_production_csv(io.StringIO("\n".join(long_rows) + "\n"), index_kind)


def resolve_labels(table: ProductionTable, registry: LabelRegistry = FIELD_LABELS) -> ProductionTable:
    """Replace field full names by their registry labels.

    Names already equal to a label pass through silently; names matching
    neither side pass through unchanged with an UnknownFieldWarning.
    """
    resolved = []
    for name in table.fields:
        label = registry.label_for(name)
        if label is not None:
            resolved.append(label)
        else:
            if not registry.is_label(name):
                warnings.warn(
                    f"field name {name!r} is not in the label registry; kept as-is",
                    UnknownFieldWarning,
                    stacklevel=2,
                )
            resolved.append(name)
    return ProductionTable(table.index_kind, table.countries, tuple(resolved), table.values)


def validate_alignment(tables: Sequence[ProductionTable]) -> list[ProductionTable]:
    """Align tables onto the union of their countries and fields.

    The output tables share one canonical (lexicographic) row and column
    order, zero-filled where a table had no cell, so cross-index operations
    are cell-aligned.  Idempotent.
    """
    if not tables:
        raise DataError("validate_alignment requires at least one table")
    all_countries = sorted(set().union(*(t.countries for t in tables)))
    all_fields = sorted(set().union(*(t.fields for t in tables)))
    country_pos = {name: i for i, name in enumerate(all_countries)}
    field_pos = {name: j for j, name in enumerate(all_fields)}
    aligned = []
    for table in tables:
        values = np.zeros((len(all_countries), len(all_fields)))
        rows = [country_pos[c] for c in table.countries]
        cols = [field_pos[f] for f in table.fields]
        values[np.ix_(rows, cols)] = table.values
        aligned.append(
            ProductionTable(table.index_kind, tuple(all_countries), tuple(all_fields), values)
        )
    return aligned


def _csv_quote(text: str) -> str:
    if any(ch in text for ch in ',"\n\r'):
        return '"' + text.replace('"', '""') + '"'
    return text


def _format_cell(value) -> str:
    if float(value).is_integer():
        return str(int(value))
    return repr(float(value))


def matrix_csv_text(countries: Iterable[str], fields: Iterable[str], values: np.ndarray) -> str:
    """Serialize any country x field matrix to the long CSV form.

    All cells are written (zeros included) so that parsing the output
    reconstructs the exact same matrix; float cells use repr and therefore
    round-trip bit-exactly.
    """
    fields = tuple(fields)
    lines = ["country,field,value"]
    for i, country in enumerate(countries):
        for j, field in enumerate(fields):
            lines.append(
                ",".join((_csv_quote(country), _csv_quote(field), _format_cell(values[i, j])))
            )
    return "\n".join(lines) + "\n"


def production_csv_text(table: ProductionTable) -> str:
    """Serialize a ProductionTable to its canonical long CSV form."""
    return matrix_csv_text(table.countries, table.fields, table.values)


@dataclass(frozen=True)
class ManifestEntry:
    index: IndexKind
    path: str  # as written in the manifest, relative to the manifest file
    resolved: Path


@dataclass(frozen=True)
class Manifest:
    dataset_name: str
    period: str
    tables: tuple[ManifestEntry, ...]


def load_manifest(path: str | Path) -> Manifest:
    """Load and validate a dataset manifest (JSON).

    Schema: ``{"dataset_name": text, "period": text,
    "tables": [{"index": kind, "path": relative path}]}``.
    """
    path = Path(path)
    with open(path, "r", encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DataError(f"manifest {path}: invalid JSON ({exc})") from None
    if not isinstance(raw, dict):
        raise DataError(f"manifest {path}: expected a JSON object")
    try:
        dataset_name = raw["dataset_name"]
        period = raw["period"]
        raw_tables = raw["tables"]
    except KeyError as exc:
        raise DataError(f"manifest {path}: missing key {exc}") from None
    if not isinstance(raw_tables, list) or not raw_tables:
        raise DataError(f"manifest {path}: 'tables' must be a non-empty list")
    entries = []
    seen: set[IndexKind] = set()
    for item in raw_tables:
        if not isinstance(item, dict) or "index" not in item or "path" not in item:
            raise DataError(f"manifest {path}: each table needs 'index' and 'path'")
        kind = IndexKind.parse(str(item["index"]))
        if kind in seen:
            raise DataError(f"manifest {path}: duplicate index kind {kind.value!r}")
        seen.add(kind)
        rel = str(item["path"])
        entries.append(ManifestEntry(kind, rel, (path.parent / rel).resolve()))
    return Manifest(str(dataset_name), str(period), tuple(entries))
