"""Renderable network artifacts from proximity matrices.

Backbone filtering keeps a maximum-weight spanning forest (so a connected
network stays connected) plus every edge at or above a weight threshold.
Nodes are ordered counterclockwise by ascending strength (sum of incident
weights, computed before any filtering), sized so that node area is
proportional to raw production volume, and placed on a double circular
layout: the lower-strength half of the nodes on the inner ring, the rest on
the outer ring, each ring independently ordered counterclockwise starting at
angle 0 with its minimum-strength node.

All emitters are deterministic: identical inputs produce byte-identical
DOT, GraphML, JSON, CSV and SVG output.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable
from xml.sax.saxutils import escape, quoteattr

import numpy as np

from .errors import DataError
from .proximity import ProximityNetwork

FORMATS = ("dot", "graphml", "json", "csv", "svg")

#: Default backbone weight threshold (CLI-overridable).
DEFAULT_THRESHOLD = 0.4
#: Default node radius range in display units.
DEFAULT_MIN_RADIUS = 8.0
DEFAULT_MAX_RADIUS = 40.0

#: SVG geometry: fixed viewport and the two concentric ring radii.
SVG_SIZE = 1000
SVG_INNER_RADIUS = 300.0
SVG_OUTER_RADIUS = 450.0

Edge = tuple[str, str, float]


@dataclass(frozen=True, eq=False)
class NetworkLayout:
    """A laid-out network: ring/angle/radius per node plus retained edges.

    Node arrays are aligned with ``nodes``, which is ordered by ascending
    strength (ties broken lexicographically).  ``ring`` holds "inner" or
    "outer"; ``angle`` is in radians, counterclockwise from angle 0.
    """

    mode: str
    nodes: tuple[str, ...]
    strength: np.ndarray
    volume: np.ndarray
    ring: tuple[str, ...]
    angle: np.ndarray
    radius: np.ndarray
    edges: tuple[Edge, ...]  # (a, b, weight), a < b, sorted lexicographically


def _positive_edges(net: ProximityNetwork) -> list[Edge]:
    """Off-diagonal positive-weight pairs, named (a, b) with a < b."""
    edges = []
    n = len(net.nodes)
    for i in range(n):
        for j in range(i + 1, n):
            w = float(net.weights[i, j])
            if w > 0.0:
                a, b = sorted((net.nodes[i], net.nodes[j]))
                edges.append((a, b, w))
    return edges


class _UnionFind:
    def __init__(self, items: Iterable[str]) -> None:
        self.parent = {item: item for item in items}

    def find(self, item: str) -> str:
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[item] != root:  # path compression
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a: str, b: str) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def backbone(net: ProximityNetwork, threshold: float = DEFAULT_THRESHOLD) -> list[Edge]:
    """Retained edge list: max-weight spanning forest plus edges >= threshold.

    Kruskal with deterministic tie-breaking (higher weight first, then
    lexicographic node pair).  Edges of the network are the positive-weight
    pairs; at threshold 0 all of them are retained.
    """
    if not 0.0 <= threshold <= 1.0:
        raise DataError(f"backbone threshold must be in [0, 1], got {threshold}")
    edges = _positive_edges(net)
    forest = _UnionFind(net.nodes)
    retained = set()
    for a, b, w in sorted(edges, key=lambda e: (-e[2], e[0], e[1])):
        if forest.union(a, b):
            retained.add((a, b))
    for a, b, w in edges:
        if w >= threshold:
            retained.add((a, b))
    return sorted((a, b, w) for a, b, w in edges if (a, b) in retained)


def order_nodes(net: ProximityNetwork) -> tuple[str, ...]:
    """Node names by ascending strength, ties broken lexicographically."""
    strength = {name: float(net.node_strength[i]) for i, name in enumerate(net.nodes)}
    return tuple(sorted(net.nodes, key=lambda name: (strength[name], name)))


def size_nodes(net: ProximityNetwork,
               min_radius: float = DEFAULT_MIN_RADIUS,
               max_radius: float = DEFAULT_MAX_RADIUS) -> np.ndarray:
    """Display radii aligned with net.nodes; node area tracks volume.

    radius = min + (max - min) * sqrt(volume / max_volume), the sqrt making
    the drawn area proportional to the volume.  All-zero volumes collapse
    every node to the minimum radius.
    """
    if not min_radius < max_radius:
        raise DataError("size_nodes requires min_radius < max_radius")
    volumes = np.asarray(net.node_volume, dtype=np.float64)
    if volumes.size and volumes.min() < 0:
        raise DataError("node volumes must be non-negative")
    top = volumes.max() if volumes.size else 0.0
    if top == 0.0:
        return np.full(volumes.shape, float(min_radius))
    return min_radius + (max_radius - min_radius) * np.sqrt(volumes / top)


def build_layout(net: ProximityNetwork,
                 threshold: float = DEFAULT_THRESHOLD,
                 min_radius: float = DEFAULT_MIN_RADIUS,
                 max_radius: float = DEFAULT_MAX_RADIUS) -> NetworkLayout:
    """Order, ring-assign, place and size the nodes; filter the edges."""
    index = {name: i for i, name in enumerate(net.nodes)}
    ordered = order_nodes(net)
    radii_by_node = size_nodes(net, min_radius, max_radius)

    n = len(ordered)
    n_inner = (n + 1) // 2  # lower-strength half, odd counts lean inner
    ring = tuple("inner" if k < n_inner else "outer" for k in range(n))
    angle = np.zeros(n)
    for ring_start, ring_size in ((0, n_inner), (n_inner, n - n_inner)):
        for k in range(ring_size):
            angle[ring_start + k] = 2.0 * math.pi * k / ring_size

    strength = np.array([net.node_strength[index[name]] for name in ordered])
    volume = np.array([net.node_volume[index[name]] for name in ordered])
    radius = np.array([radii_by_node[index[name]] for name in ordered])
    return NetworkLayout(
        mode=net.mode,
        nodes=ordered,
        strength=strength,
        volume=volume,
        ring=ring,
        angle=angle,
        radius=radius,
        edges=tuple(backbone(net, threshold)),
    )


def emit(layout: NetworkLayout, format: str) -> bytes:
    """Serialize a layout to one of: dot, graphml, json, csv, svg."""
    try:
        writer = _EMITTERS[format]
    except KeyError:
        raise DataError(
            f"unknown format {format!r} (expected one of: {', '.join(FORMATS)})"
        ) from None
    return writer(layout).encode("utf-8")


def _emit_json(layout: NetworkLayout) -> str:
    doc = {
        "nodes": [
            {
                "id": name,
                "strength": float(layout.strength[i]),
                "volume": float(layout.volume[i]),
                "ring": layout.ring[i],
                "angle": float(layout.angle[i]),
                "radius": float(layout.radius[i]),
            }
            for i, name in enumerate(layout.nodes)
        ],
        "edges": [{"a": a, "b": b, "weight": w} for a, b, w in layout.edges],
    }
    return json.dumps(doc, separators=(",", ":"))


def layout_from_json(data: bytes | str) -> NetworkLayout:
    """Rebuild a NetworkLayout from the JSON emitted by :func:`emit`."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    doc = json.loads(data)
    nodes = [item["id"] for item in doc["nodes"]]
    return NetworkLayout(
        mode="fields",
        nodes=tuple(nodes),
        strength=np.array([item["strength"] for item in doc["nodes"]]),
        volume=np.array([item["volume"] for item in doc["nodes"]]),
        ring=tuple(item["ring"] for item in doc["nodes"]),
        angle=np.array([item["angle"] for item in doc["nodes"]]),
        radius=np.array([item["radius"] for item in doc["nodes"]]),
        edges=tuple((e["a"], e["b"], float(e["weight"])) for e in doc["edges"]),
    )


def _emit_csv(layout: NetworkLayout) -> str:
    from .ingest import _csv_quote

    lines = ["node_a,node_b,weight"]
    for a, b, w in layout.edges:
        lines.append(",".join((_csv_quote(a), _csv_quote(b), repr(float(w)))))
    return "\n".join(lines) + "\n"


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _emit_dot(layout: NetworkLayout) -> str:
    lines = ["graph proximity {"]
    for i, name in enumerate(layout.nodes):
        lines.append(
            f"  {_dot_quote(name)} [strength={float(layout.strength[i])!r}, "
            f"volume={float(layout.volume[i])!r}, ring=\"{layout.ring[i]}\", "
            f"angle={float(layout.angle[i])!r}, radius={float(layout.radius[i])!r}];"
        )
    for a, b, w in layout.edges:
        lines.append(f"  {_dot_quote(a)} -- {_dot_quote(b)} [weight={float(w)!r}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_GRAPHML_KEYS = (
    ("d_strength", "node", "strength", "double"),
    ("d_volume", "node", "volume", "double"),
    ("d_ring", "node", "ring", "string"),
    ("d_angle", "node", "angle", "double"),
    ("d_radius", "node", "radius", "double"),
    ("d_weight", "edge", "weight", "double"),
)


def _emit_graphml(layout: NetworkLayout) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
    ]
    for key_id, domain, attr, attr_type in _GRAPHML_KEYS:
        lines.append(
            f'  <key id="{key_id}" for="{domain}" '
            f'attr.name="{attr}" attr.type="{attr_type}"/>'
        )
    lines.append('  <graph id="proximity" edgedefault="undirected">')
    for i, name in enumerate(layout.nodes):
        lines.append(f"    <node id={quoteattr(name)}>")
        lines.append(f'      <data key="d_strength">{float(layout.strength[i])!r}</data>')
        lines.append(f'      <data key="d_volume">{float(layout.volume[i])!r}</data>')
        lines.append(f'      <data key="d_ring">{escape(layout.ring[i])}</data>')
        lines.append(f'      <data key="d_angle">{float(layout.angle[i])!r}</data>')
        lines.append(f'      <data key="d_radius">{float(layout.radius[i])!r}</data>')
        lines.append("    </node>")
    for a, b, w in layout.edges:
        lines.append(f"    <edge source={quoteattr(a)} target={quoteattr(b)}>")
        lines.append(f'      <data key="d_weight">{float(w)!r}</data>')
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    return "\n".join(lines) + "\n"


def _svg_positions(layout: NetworkLayout) -> dict[str, tuple[float, float]]:
    center = SVG_SIZE / 2.0
    positions = {}
    for i, name in enumerate(layout.nodes):
        ring_radius = SVG_INNER_RADIUS if layout.ring[i] == "inner" else SVG_OUTER_RADIUS
        theta = float(layout.angle[i])
        # y is flipped so increasing angle reads counterclockwise on screen
        positions[name] = (
            center + ring_radius * math.cos(theta),
            center - ring_radius * math.sin(theta),
        )
    return positions


def _emit_svg(layout: NetworkLayout) -> str:
    center = SVG_SIZE / 2.0
    pos = _svg_positions(layout)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" '
        f'height="{SVG_SIZE}" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'  <rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    for guide in (SVG_INNER_RADIUS, SVG_OUTER_RADIUS):
        lines.append(
            f'  <circle cx="{center:.1f}" cy="{center:.1f}" r="{guide:.1f}" '
            'fill="none" stroke="#eeeeee" stroke-width="1"/>'
        )
    for a, b, w in layout.edges:
        (x1, y1), (x2, y2) = pos[a], pos[b]
        lines.append(
            f'  <line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="#607090" stroke-width="{6.0 * float(w):.3f}" stroke-opacity="0.6"/>'
        )
    for i, name in enumerate(layout.nodes):
        x, y = pos[name]
        lines.append(
            f'  <circle cx="{x:.2f}" cy="{y:.2f}" r="{float(layout.radius[i]):.2f}" '
            'fill="#4878b0" stroke="#16324f" stroke-width="1.5"/>'
        )
        # label just outside the node, pushed away from the ring center
        dx = x - center
        dy = y - center
        norm = math.hypot(dx, dy) or 1.0
        lx = x + (dx / norm) * (float(layout.radius[i]) + 6.0)
        ly = y + (dy / norm) * (float(layout.radius[i]) + 6.0)
        anchor = "start" if dx >= 0 else "end"
        lines.append(
            f'  <text x="{lx:.2f}" y="{ly:.2f}" font-family="Helvetica,sans-serif" '
            f'font-size="14" text-anchor="{anchor}">{escape(name)}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


_EMITTERS = {
    "json": _emit_json,
    "csv": _emit_csv,
    "dot": _emit_dot,
    "graphml": _emit_graphml,
    "svg": _emit_svg,
}
