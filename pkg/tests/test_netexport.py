import json
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rcaspace import (
    DataError,
    ProximityNetwork,
    backbone,
    build_layout,
    emit,
    order_nodes,
    size_nodes,
)
from rcaspace.netexport import layout_from_json


def net_from(weights, nodes=None, volumes=None, mode="fields"):
    w = np.asarray(weights, dtype=float)
    n = w.shape[0]
    nodes = tuple(nodes) if nodes else tuple(f"N{i}" for i in range(n))
    strength = w.sum(axis=1) - np.diag(w)
    volumes = np.zeros(n) if volumes is None else np.asarray(volumes, dtype=float)
    return ProximityNetwork(mode, nodes, w, strength, volumes)


def triangle(w_ab=0.9, w_bc=0.8, w_ac=0.1):
    return net_from(
        [[1.0, w_ab, w_ac], [w_ab, 1.0, w_bc], [w_ac, w_bc, 1.0]],
        nodes=("A", "B", "C"),
    )


def components(nodes, edges):
    neighbors = {n: set() for n in nodes}
    for a, b, _ in edges:
        neighbors[a].add(b)
        neighbors[b].add(a)
    seen, comps = set(), []
    for start in nodes:
        if start in seen:
            continue
        stack, comp = [start], set()
        while stack:
            node = stack.pop()
            if node in comp:
                continue
            comp.add(node)
            stack.extend(neighbors[node] - comp)
        seen |= comp
        comps.append(frozenset(comp))
    return set(comps)


sym_weights = st.integers(2, 7).flatmap(
    lambda n: st.lists(
        st.lists(st.integers(0, 100), min_size=n, max_size=n),
        min_size=n,
        max_size=n,
    ).map(
        lambda rows: (np.array(rows, dtype=float) + np.array(rows, dtype=float).T)
        / 200.0
    )
)


class TestBackbone:
    def test_forest_plus_threshold(self):
        kept = backbone(triangle(), threshold=0.5)
        assert kept == [("A", "B", 0.9), ("B", "C", 0.8)]

    def test_threshold_zero_keeps_all_positive(self):
        kept = backbone(triangle(), threshold=0.0)
        assert kept == [("A", "B", 0.9), ("A", "C", 0.1), ("B", "C", 0.8)]

    def test_threshold_one_keeps_only_forest_and_full_weights(self):
        kept = backbone(triangle(w_ac=1.0), threshold=1.0)
        # the weight-1 edge wins the first forest slot; 0.8 closes a cycle
        # and falls below the threshold, so it is dropped
        assert kept == [("A", "B", 0.9), ("A", "C", 1.0)]

    def test_threshold_validated(self):
        with pytest.raises(DataError, match="threshold"):
            backbone(triangle(), threshold=1.5)
        with pytest.raises(DataError, match="threshold"):
            backbone(triangle(), threshold=-0.1)

    def test_zero_weight_pairs_are_not_edges(self):
        net = net_from([[1.0, 0.0], [0.0, 1.0]], nodes=("A", "B"))
        assert backbone(net, threshold=0.0) == []

    def test_equal_weight_ties_break_lexicographically(self):
        net = net_from(
            [[1.0, 0.5, 0.5], [0.5, 1.0, 0.5], [0.5, 0.5, 1.0]],
            nodes=("A", "B", "C"),
        )
        kept = backbone(net, threshold=0.6)
        assert kept == [("A", "B", 0.5), ("A", "C", 0.5)]

    def test_monotone_in_threshold(self):
        rng = np.random.default_rng(41)
        raw = rng.random((8, 8))
        weights = (raw + raw.T) / 2.0
        np.fill_diagonal(weights, 1.0)
        net = net_from(weights)
        previous = None
        for threshold in (0.0, 0.3, 0.6, 0.9, 1.0):
            kept = set(backbone(net, threshold))
            if previous is not None:
                assert kept <= previous
            previous = kept

    @settings(max_examples=50)
    @given(sym_weights, st.floats(min_value=0.0, max_value=1.0))
    def test_connectivity_preserved(self, weights, threshold):
        np.fill_diagonal(weights, 1.0)
        net = net_from(weights)
        from rcaspace.netexport import _positive_edges

        full = _positive_edges(net)
        kept = backbone(net, threshold)
        assert components(net.nodes, kept) == components(net.nodes, full)
        kept_pairs = {(a, b) for a, b, _ in kept}
        assert kept_pairs <= {(a, b) for a, b, _ in full}
        assert kept == sorted(kept)

    @settings(max_examples=30)
    @given(sym_weights)
    def test_deterministic(self, weights):
        np.fill_diagonal(weights, 1.0)
        net = net_from(weights)
        assert backbone(net, 0.4) == backbone(net, 0.4)


class TestOrderAndSize:
    def test_ascending_strength(self):
        net = net_from(
            [[0.0, 0.9, 0.9], [0.9, 0.0, 0.1], [0.9, 0.1, 0.0]],
            nodes=("A", "B", "C"),
        )
        # strengths: A=1.8, B=1.0, C=1.0; tie between B and C is alphabetic
        assert order_nodes(net) == ("B", "C", "A")

    def test_equal_strengths_alphabetical(self):
        net = net_from(np.zeros((3, 3)), nodes=("zeta", "alpha", "mid"))
        assert order_nodes(net) == ("alpha", "mid", "zeta")

    def test_radius_endpoints(self):
        net = net_from(np.zeros((2, 2)), volumes=[0.0, 100.0])
        radii = size_nodes(net, min_radius=8.0, max_radius=40.0)
        assert radii.tolist() == [8.0, 40.0]

    def test_area_proportional_to_volume(self):
        net = net_from(np.zeros((2, 2)), volumes=[25.0, 100.0])
        radii = size_nodes(net, min_radius=8.0, max_radius=40.0)
        # quarter volume -> half the radius span above the minimum
        assert radii[0] == 8.0 + 32.0 * 0.5
        assert radii[1] == 40.0

    def test_equal_volumes_equal_radii(self):
        net = net_from(np.zeros((3, 3)), volumes=[7.0, 7.0, 7.0])
        assert set(size_nodes(net).tolist()) == {40.0}

    def test_all_zero_volumes_min_radius(self):
        net = net_from(np.zeros((3, 3)))
        assert set(size_nodes(net).tolist()) == {8.0}

    def test_bad_radius_range(self):
        with pytest.raises(DataError, match="min_radius"):
            size_nodes(net_from(np.zeros((1, 1))), min_radius=5.0, max_radius=5.0)


class TestBuildLayout:
    def test_ring_split_odd(self):
        net = net_from(np.diag([1.0] * 5))
        layout = build_layout(net)
        assert layout.ring == ("inner", "inner", "inner", "outer", "outer")

    def test_ring_split_even(self):
        net = net_from(np.diag([1.0] * 4))
        layout = build_layout(net)
        assert layout.ring == ("inner", "inner", "outer", "outer")

    def test_angles_evenly_spaced_per_ring(self):
        net = net_from(np.diag([1.0] * 5))
        layout = build_layout(net)
        inner = [float(layout.angle[i]) for i in range(3)]
        outer = [float(layout.angle[i]) for i in range(3, 5)]
        assert inner == [0.0, 2 * math.pi / 3, 4 * math.pi / 3]
        assert outer == [0.0, math.pi]

    def test_nodes_ascend_by_strength(self):
        net = net_from(
            [[0.0, 0.9, 0.9], [0.9, 0.0, 0.1], [0.9, 0.1, 0.0]],
            nodes=("A", "B", "C"),
        )
        layout = build_layout(net)
        assert layout.nodes == order_nodes(net)
        assert list(layout.strength) == sorted(layout.strength)

    def test_arrays_follow_node_order(self):
        net = net_from(
            [[0.0, 0.9, 0.9], [0.9, 0.0, 0.1], [0.9, 0.1, 0.0]],
            nodes=("A", "B", "C"),
            volumes=[10.0, 20.0, 30.0],
        )
        layout = build_layout(net)
        by_name = dict(zip(layout.nodes, layout.volume))
        assert by_name == {"A": 10.0, "B": 20.0, "C": 30.0}

    def test_edges_come_from_backbone(self):
        net = triangle()
        layout = build_layout(net, threshold=0.5)
        assert layout.edges == tuple(backbone(net, 0.5))


class TestEmit:
    def empty_layout(self):
        return build_layout(net_from(np.zeros((0, 0))))

    def test_empty_json_is_exact(self):
        assert emit(self.empty_layout(), "json") == b'{"nodes":[],"edges":[]}'

    def test_unknown_format(self):
        with pytest.raises(DataError, match="unknown format"):
            emit(self.empty_layout(), "pdf")

    def test_csv_rows(self):
        layout = build_layout(triangle(), threshold=0.5)
        text = emit(layout, "csv").decode()
        lines = text.splitlines()
        assert lines[0] == "node_a,node_b,weight"
        assert lines[1] == "A,B,0.9"
        assert lines[2] == "B,C,0.8"

    def test_json_round_trip(self):
        layout = build_layout(triangle(w_ab=1 / 3, w_bc=2 / 7), threshold=0.0)
        rebuilt = layout_from_json(emit(layout, "json"))
        assert rebuilt.nodes == layout.nodes
        assert rebuilt.ring == layout.ring
        assert rebuilt.edges == layout.edges  # repr round-trips floats exactly
        assert np.array_equal(rebuilt.strength, layout.strength)
        assert np.array_equal(rebuilt.angle, layout.angle)
        assert np.array_equal(rebuilt.radius, layout.radius)

    def test_json_schema(self):
        doc = json.loads(emit(build_layout(triangle()), "json"))
        assert set(doc) == {"nodes", "edges"}
        assert set(doc["nodes"][0]) == {
            "id",
            "strength",
            "volume",
            "ring",
            "angle",
            "radius",
        }
        assert set(doc["edges"][0]) == {"a", "b", "weight"}

    def test_dot_structure(self):
        text = emit(build_layout(triangle(), threshold=0.5), "dot").decode()
        assert text.startswith("graph proximity {\n")
        assert text.rstrip().endswith("}")
        assert '"A" -- "B" [weight=0.9];' in text
        assert "np.float64" not in text

    def test_dot_quoting(self):
        net = net_from(
            [[0.0, 0.5], [0.5, 0.0]], nodes=('Na"me', "Other")
        )
        text = emit(build_layout(net, threshold=0.0), "dot").decode()
        assert '"Na\\"me"' in text

    def test_graphml_parses_and_types(self):
        layout = build_layout(triangle(), threshold=0.5)
        root = ET.fromstring(emit(layout, "graphml"))
        ns = "{http://graphml.graphdrawing.org/xmlns}"
        keys = {k.get("id"): k.get("attr.type") for k in root.iter(f"{ns}key")}
        assert keys["d_weight"] == "double"
        assert keys["d_ring"] == "string"
        nodes = list(root.iter(f"{ns}node"))
        edges = list(root.iter(f"{ns}edge"))
        assert len(nodes) == 3 and len(edges) == 2
        assert "np.float64" not in ET.tostring(root, encoding="unicode")

    def test_svg_parses_with_expected_shapes(self):
        layout = build_layout(triangle(), threshold=0.5)
        raw = emit(layout, "svg").decode()
        root = ET.fromstring(raw)
        ns = "{http://www.w3.org/2000/svg}"
        circles = list(root.iter(f"{ns}circle"))
        lines = list(root.iter(f"{ns}line"))
        texts = list(root.iter(f"{ns}text"))
        assert len(circles) == 2 + 3  # two ring guides plus one disc per node
        assert len(lines) == 2
        assert len(texts) == 3
        assert root.get("width") == "1000"

    def test_svg_single_node_position(self):
        net = net_from(np.zeros((1, 1)), nodes=("Solo",))
        raw = emit(build_layout(net), "svg").decode()
        # only node sits on the inner ring at angle 0: (500 + 300, 500)
        assert 'cx="800.00" cy="500.00"' in raw

    def test_byte_determinism_all_formats(self):
        rng = np.random.default_rng(59)
        raw = rng.random((6, 6))
        weights = (raw + raw.T) / 2.0
        np.fill_diagonal(weights, 1.0)
        volumes = rng.integers(1, 1000, size=6).astype(float)
        for fmt in ("dot", "graphml", "json", "csv", "svg"):
            first = emit(build_layout(net_from(weights, volumes=volumes)), fmt)
            second = emit(build_layout(net_from(weights, volumes=volumes)), fmt)
            assert first == second
