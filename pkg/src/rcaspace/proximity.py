"""Min-conditional proximity networks over fields or over countries.

The proximity between two fields is their co-occurrence count (number of
countries with an advantage in both) divided by the larger of the two
ubiquities; between two countries, the number of shared advantage fields
divided by the larger diversity.  Dividing by the max is identical to taking
the minimum of the two conditional co-specialization probabilities, which
keeps the relation symmetric and conservative.

Pairs whose max ubiquity/diversity is zero get weight 0, not NaN: an
unproduced field is maximally non-proximate to everything, and a total
weight matrix stays export-safe.  Self-proximity is 1 for active nodes but
self-loops are excluded from node strength and from exports.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .rca import AdvantageMatrix, diversity, ubiquity

MODES = ("fields", "countries")


@dataclass(frozen=True, eq=False)
class ProximityNetwork:
    """Symmetric weighted graph over fields or countries, weights in [0, 1]."""

    mode: str
    nodes: tuple[str, ...]
    weights: np.ndarray  # (n, n) symmetric, diagonal 1 for active nodes
    node_strength: np.ndarray  # sum of incident off-diagonal weights
    node_volume: np.ndarray  # raw production totals, used for node sizing

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise DataError(f"unknown proximity mode {self.mode!r}")
        for name in ("weights", "node_strength", "node_volume"):
            arr = np.asarray(getattr(self, name), dtype=np.float64).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "nodes", tuple(self.nodes))

    def n_nodes(self) -> int:
        return len(self.nodes)


def co_occurrence(adv: AdvantageMatrix, mode: str = "fields") -> np.ndarray:
    """Symmetric integer co-advantage counts; the diagonal equals Ubi or Div."""
    if mode not in MODES:
        raise DataError(f"unknown proximity mode {mode!r}")
    m = adv.m.astype(np.int64)
    if mode == "fields":
        return m.T @ m
    return m @ m.T


def _min_conditional_weights(co: np.ndarray) -> np.ndarray:
    totals = np.diag(co)
    larger = np.maximum.outer(totals, totals)
    return np.divide(
        co, larger, out=np.zeros(co.shape, dtype=np.float64), where=larger > 0
    )


def _network(mode: str, nodes: tuple[str, ...], co: np.ndarray, volumes) -> ProximityNetwork:
    weights = _min_conditional_weights(co)
    strength = weights.sum(axis=1) - np.diag(weights)
    if volumes is None:
        volumes = np.zeros(len(nodes))
    else:
        volumes = np.asarray(volumes, dtype=np.float64)
        if volumes.shape != (len(nodes),):
            raise DataError(
                f"node volumes shape {volumes.shape} does not match {len(nodes)} nodes"
            )
    return ProximityNetwork(mode, nodes, weights, strength, volumes)


def field_proximity(adv: AdvantageMatrix, volumes=None) -> ProximityNetwork:
    """Proximity network between fields.

    ``volumes`` are the raw per-field production totals (for node sizing in
    exports); when omitted all volumes are zero and nodes render at the
    minimum radius.
    """
    return _network("fields", adv.fields, co_occurrence(adv, "fields"), volumes)


def country_proximity(adv: AdvantageMatrix, volumes=None) -> ProximityNetwork:
    """Proximity network between countries (transpose-dual of field_proximity)."""
    return _network("countries", adv.countries, co_occurrence(adv, "countries"), volumes)


def proximity_csv_text(net: ProximityNetwork) -> str:
    """Serialize the weight matrix as ``node_a,node_b,weight`` long CSV.

    Every unordered pair appears once with a < b lexicographically, zero
    weights included, so the matrix can be reconstructed from the file.
    """
    from .ingest import _csv_quote  # local import to avoid cycle at module load

    order = sorted(range(len(net.nodes)), key=lambda i: net.nodes[i])
    lines = ["node_a,node_b,weight"]
    for pos_a, i in enumerate(order):
        for j in order[pos_a + 1:]:
            weight = float(net.weights[i, j])
            lines.append(
                ",".join(
                    (_csv_quote(net.nodes[i]), _csv_quote(net.nodes[j]), repr(weight))
                )
            )
    return "\n".join(lines) + "\n"
