"""Graph model: construction rules, freezing, adjacency order, validation."""

from __future__ import annotations

import random

import pytest

from conicroute.errors import (
    CycleCreated,
    DuplicateLabel,
    DuplicateOffset,
    EqualAdjacentWeight,
    GraphFrozen,
    GraphNotFrozen,
    NonPositiveWeight,
    UnknownNode,
)
from conicroute.graph import ConicGraph, Edge, NodeKind, Provenance, validate

from conftest import graph_from_edges, label_id, random_conic


def test_add_node_ids_are_sequential():
    g = ConicGraph()
    assert g.add_node("Rumuomasi", NodeKind.SOURCE, 0) == 0
    assert g.add_node("CMC", NodeKind.DESTINATION, 1) == 1
    assert g.node_count == 2


def test_add_node_duplicate_label_rejected():
    g = ConicGraph()
    g.add_node("CMC", NodeKind.DESTINATION, 1)
    with pytest.raises(DuplicateLabel):
        g.add_node("CMC", NodeKind.DESTINATION, 9)


def test_add_node_duplicate_offset_within_kind_rejected():
    g = ConicGraph()
    g.add_node("a", NodeKind.SOURCE, 0)
    with pytest.raises(DuplicateOffset):
        g.add_node("b", NodeKind.SOURCE, 0)
    # the same offset is fine for the other kind
    g.add_node("c", NodeKind.DESTINATION, 0)


def test_add_edge_original_provenance():
    g = ConicGraph()
    s = g.add_node("s", NodeKind.SOURCE, 0)
    d = g.add_node("d", NodeKind.DESTINATION, 1)
    edge_id = g.add_edge(s, d, 312)
    assert g.edges[edge_id] == Edge(s, d, 312, Provenance.ORIGINAL)


def test_add_edge_zero_weight_rejected():
    g = ConicGraph()
    s = g.add_node("Rumuomasi", NodeKind.SOURCE, 0)
    d = g.add_node("CMC", NodeKind.DESTINATION, 1)
    with pytest.raises(NonPositiveWeight):
        g.add_edge(s, d, 0)
    with pytest.raises(NonPositiveWeight):
        g.add_edge(s, d, -5)


def test_add_edge_equal_weight_same_source_rejected():
    g = ConicGraph()
    s = g.add_node("Rumuomasi", NodeKind.SOURCE, 0)
    d1 = g.add_node("CMC", NodeKind.DESTINATION, 1)
    d2 = g.add_node("MC", NodeKind.DESTINATION, 2)
    g.add_edge(s, d1, 312)
    with pytest.raises(EqualAdjacentWeight):
        g.add_edge(s, d2, 312)


def test_distinct_sources_may_reuse_weights():
    g = ConicGraph()
    s1 = g.add_node("s1", NodeKind.SOURCE, 0)
    s2 = g.add_node("s2", NodeKind.SOURCE, 1)
    d = g.add_node("d", NodeKind.DESTINATION, 1)
    g.add_edge(s1, d, 100)
    g.add_edge(s2, d, 100)  # no complaint


def test_add_edge_unknown_node():
    g = ConicGraph()
    s = g.add_node("s", NodeKind.SOURCE, 0)
    with pytest.raises(UnknownNode):
        g.add_edge(s, 99, 10)
    with pytest.raises(UnknownNode):
        g.add_edge(99, s, 10)


def test_add_edge_cycle_rejected():
    g = ConicGraph()
    a = g.add_node("a", NodeKind.SOURCE, 0)
    b = g.add_node("b", NodeKind.SOURCE, 1)
    c = g.add_node("c", NodeKind.SOURCE, 2)
    g.add_edge(a, b, 1)
    g.add_edge(b, c, 2)
    with pytest.raises(CycleCreated):
        g.add_edge(c, a, 3)
    with pytest.raises(CycleCreated):
        g.add_edge(a, a, 3)


def test_freeze_blocks_mutation_and_queries_still_work():
    g = ConicGraph()
    s = g.add_node("s", NodeKind.SOURCE, 0)
    d = g.add_node("d", NodeKind.DESTINATION, 1)
    g.add_edge(s, d, 7)
    g.freeze()
    assert g.frozen
    with pytest.raises(GraphFrozen):
        g.add_node("x", NodeKind.SOURCE, 5)
    with pytest.raises(GraphFrozen):
        g.add_edge(s, d, 9)
    assert g.neighbors_ascending(s) == [(d, 7)]
    g.freeze()  # idempotent


def test_neighbors_ascending_hospital_rows(hospital_graph):
    g = hospital_graph
    rum = label_id(g, "Rumuomasi")
    assert [(g.node(n).label, w) for n, w in g.neighbors_ascending(rum)] == [
        ("CMC", 312), ("MC", 771),
    ]
    woji = label_id(g, "Woji")
    assert [(g.node(n).label, w) for n, w in g.neighbors_ascending(woji)] == [
        ("PI", 966), ("CU", 472),
    ]
    assert g.neighbors_ascending(label_id(g, "CMC")) == []
    with pytest.raises(UnknownNode):
        g.neighbors_ascending(999)


def test_neighbors_sorted_by_offset_property():
    rng = random.Random(20240817)
    for _ in range(50):
        g = random_conic(rng)
        for node in g.nodes:
            offsets = [g.node(t).offset for t, _ in g.neighbors_ascending(node.id)]
            assert offsets == sorted(offsets)
            assert len(set(offsets)) == len(offsets)


def test_randomly_built_graphs_validate_clean():
    rng = random.Random(99)
    for _ in range(50):
        g = random_conic(rng)
        assert validate(g) == []


def test_validate_hospital_graph_empty(hospital_graph):
    assert validate(hospital_graph) == []


def test_validate_reports_injected_zero_weight(hospital_graph):
    g = hospital_graph
    bad = ConicGraph()
    s = bad.add_node("s", NodeKind.SOURCE, 0)
    d = bad.add_node("d", NodeKind.DESTINATION, 1)
    bad._inject_edge_unchecked(s, d, 0)
    codes = [v.code for v in validate(bad)]
    assert codes == ["NonPositiveWeight"]
    assert validate(g) == []  # the fixture graph is untouched


def test_validate_reports_injected_equal_weights():
    g = ConicGraph()
    s = g.add_node("s", NodeKind.SOURCE, 0)
    d1 = g.add_node("d1", NodeKind.DESTINATION, 1)
    d2 = g.add_node("d2", NodeKind.DESTINATION, 2)
    g.add_edge(s, d1, 44)
    g._inject_edge_unchecked(s, d2, 44)
    codes = [v.code for v in validate(g)]
    assert codes == ["EqualAdjacentWeight"]


def test_validate_reports_injected_cycle():
    g = graph_from_edges(2, [(0, 1, 3)])
    g._inject_edge_unchecked(1, 0, 4)
    assert "CycleCreated" in [v.code for v in validate(g)]


def test_extend_returns_new_frozen_graph(hospital_graph):
    g = hospital_graph
    cmc, mc = label_id(g, "CMC"), label_id(g, "MC")
    extended = g.extend([Edge(cmc, mc, 459, Provenance.INVENTED)])
    assert extended.frozen
    assert extended.edge_count == g.edge_count + 1
    assert g.edge_count == 8  # base untouched
    assert (mc, 459) in extended.neighbors_ascending(cmc)


def test_extend_rejects_cycles(hospital_graph):
    g = hospital_graph
    cmc, mc = label_id(g, "CMC"), label_id(g, "MC")
    with pytest.raises(CycleCreated):
        g.extend([
            Edge(cmc, mc, 10, Provenance.INVENTED),
            Edge(mc, cmc, 20, Provenance.INVENTED),
        ])


def test_extend_rejects_original_provenance(hospital_graph):
    g = hospital_graph
    with pytest.raises(ValueError):
        g.extend([Edge(0, 5, 10, Provenance.ORIGINAL)])


def test_extend_requires_frozen():
    g = ConicGraph()
    g.add_node("s", NodeKind.SOURCE, 0)
    with pytest.raises(GraphNotFrozen):
        g.extend([])
