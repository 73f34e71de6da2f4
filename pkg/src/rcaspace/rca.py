"""Revealed comparative advantage and the binary knowledge space.

For a production matrix X the RCA of country c in field f is the country's
internal share of f divided by f's share of world production:

    rca[c, f] = (X[c, f] / X[c, :].sum()) / (X[:, f].sum() / X.sum())

A country has a comparative advantage where rca >= 1 (the closed bound:
equality counts).  Cells whose country total or field world total is zero
have no defined RCA; they are recorded as 0 with a cleared ``defined_mask``
bit rather than crashing on sparse data, and a per-run warning reports how
many cells were affected.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DataError, UndefinedCellWarning
from .ingest import IndexKind, ProductionTable

#: Comparative-advantage cutoff applied to RCA values (closed bound).
ADVANTAGE_THRESHOLD = 1.0


@dataclass(frozen=True, eq=False)
class RcaMatrix:
    """Country x field RCA values plus the mask of well-defined cells."""

    index_kind: IndexKind
    countries: tuple[str, ...]
    fields: tuple[str, ...]
    values: np.ndarray  # float64, >= 0 where defined, 0 elsewhere
    defined_mask: np.ndarray  # bool, True where RCA is well-defined

    def __post_init__(self) -> None:
        for name in ("values", "defined_mask"):
            arr = getattr(self, name)
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def n_undefined(self) -> int:
        return int((~self.defined_mask).sum())

    def defined_values(self) -> np.ndarray:
        """The RCA values of all defined cells (zeros included), flattened."""
        return self.values[self.defined_mask]


@dataclass(frozen=True, eq=False)
class AdvantageMatrix:
    """Binary country x field matrix: 1 where RCA >= 1 and defined."""

    countries: tuple[str, ...]
    fields: tuple[str, ...]
    m: np.ndarray  # bool

    def __post_init__(self) -> None:
        m = np.ascontiguousarray(self.m, dtype=bool)
        if m.shape != (len(self.countries), len(self.fields)):
            raise DataError(
                f"advantage matrix shape {m.shape} does not match "
                f"{len(self.countries)} countries x {len(self.fields)} fields"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "countries", tuple(self.countries))
        object.__setattr__(self, "fields", tuple(self.fields))


def compute_rca(table: ProductionTable) -> RcaMatrix:
    """Compute the RCA matrix of a production table.

    Raises DataError("empty production") when the grand total is zero.
    Sums are accumulated with numpy's pairwise reduction, keeping the error
    bounded on large tables; results are deterministic.
    """
    x = table.values
    country_totals = x.sum(axis=1)
    field_totals = x.sum(axis=0)
    grand_total = country_totals.sum()
    if grand_total == 0.0:
        raise DataError("empty production")

    defined = (country_totals[:, None] > 0) & (field_totals[None, :] > 0)
    internal_share = np.divide(
        x,
        country_totals[:, None],
        out=np.zeros_like(x),
        where=country_totals[:, None] > 0,
    )
    world_share = field_totals / grand_total
    values = np.divide(
        internal_share,
        world_share[None, :],
        out=np.zeros_like(x),
        where=world_share[None, :] > 0,
    )
    values[~defined] = 0.0

    n_undefined = int((~defined).sum())
    if n_undefined:
        warnings.warn(
            f"{n_undefined} RCA cell(s) undefined (zero country or field total); "
            "recorded as 0 and masked",
            UndefinedCellWarning,
            stacklevel=2,
        )
    return RcaMatrix(table.index_kind, table.countries, table.fields, values, defined)


def threshold_advantage(rca: RcaMatrix) -> AdvantageMatrix:
    """Binary knowledge-space matrix: 1 exactly where defined and RCA >= 1."""
    m = rca.defined_mask & (rca.values >= ADVANTAGE_THRESHOLD)
    return AdvantageMatrix(rca.countries, rca.fields, m)


def diversity(adv: AdvantageMatrix) -> np.ndarray:
    """Per-country count of fields with a comparative advantage (row sums)."""
    return adv.m.sum(axis=1).astype(np.int64)


def ubiquity(adv: AdvantageMatrix) -> np.ndarray:
    """Per-field count of countries with a comparative advantage (column sums)."""
    return adv.m.sum(axis=0).astype(np.int64)
