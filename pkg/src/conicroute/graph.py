"""Data model for conic multi-source multi-destination acyclic di-graphs.

Nodes are partitioned into sources and destinations and carry an offset,
the row/column position they occupy in the transition matrix the graph was
built from. Adjacency is kept sorted by target offset so that "the next
destination" of a source is always its offset successor.

A graph is mutable while it is being assembled and immutable after
freeze(); derived edges (shortcuts from contraction, invented edges) never
mutate a frozen graph in place — extend() returns a new frozen graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import (
    CycleCreated,
    DuplicateLabel,
    DuplicateOffset,
    EqualAdjacentWeight,
    GraphFrozen,
    GraphNotFrozen,
    NonPositiveWeight,
    UnknownNode,
)

NodeId = int
EdgeId = int


class NodeKind(enum.Enum):
    SOURCE = "source"
    DESTINATION = "destination"


class Provenance(enum.Enum):
    ORIGINAL = "original"
    SHORTCUT = "shortcut"
    INVENTED = "invented"


@dataclass(frozen=True, slots=True)
class Node:
    id: NodeId
    label: str
    kind: NodeKind
    offset: int


@dataclass(frozen=True, slots=True)
class Edge:
    src: NodeId
    dst: NodeId
    weight: int
    provenance: Provenance = Provenance.ORIGINAL


@dataclass(frozen=True, slots=True)
class Violation:
    """One structural defect found by validate(); violations are data."""

    code: str
    detail: str


class ConicGraph:
    """Weighted directed acyclic graph with source/destination node kinds."""

    def __init__(self) -> None:
        self._nodes: list[Node] = []
        self._edges: list[Edge] = []
        self._out: dict[NodeId, list[EdgeId]] = {}
        self._by_label: dict[str, NodeId] = {}
        self._by_offset: dict[tuple[NodeKind, int], NodeId] = {}
        self._out_weights: dict[NodeId, set[int]] = {}
        self._view_cache: dict[NodeId, tuple[Edge, ...]] = {}
        self._frozen = False

    # --- construction -----------------------------------------------------

    def add_node(self, label: str, kind: NodeKind, offset: int) -> NodeId:
        """Append a node; the returned id equals the previous node count."""
        self._require_mutable()
        if not label:
            raise ValueError("node label must be non-empty")
        if offset < 0:
            raise ValueError(f"offset must be non-negative, got {offset}")
        if label in self._by_label:
            raise DuplicateLabel(f"label {label!r} already in use")
        if (kind, offset) in self._by_offset:
            raise DuplicateOffset(f"offset {offset} already used for a {kind.value}")
        node_id = len(self._nodes)
        node = Node(node_id, label, kind, offset)
        self._nodes.append(node)
        self._out[node_id] = []
        self._out_weights[node_id] = set()
        self._by_label[label] = node_id
        self._by_offset[(kind, offset)] = node_id
        return node_id

    def add_edge(self, src: NodeId, dst: NodeId, weight: int) -> EdgeId:
        """Record an original edge; adjacency stays sorted by target offset."""
        self._require_mutable()
        self._check_node(src)
        self._check_node(dst)
        if weight <= 0:
            raise NonPositiveWeight(f"edge weight must be > 0, got {weight}")
        if src == dst:
            raise CycleCreated(f"self loop on node {src}")
        if weight in self._out_weights[src]:
            raise EqualAdjacentWeight(
                f"source {self._nodes[src].label!r} already has an edge of weight {weight}"
            )
        if self._reaches(dst, src):
            raise CycleCreated(f"edge {src}->{dst} would close a cycle")
        edge_id = len(self._edges)
        self._edges.append(Edge(src, dst, int(weight), Provenance.ORIGINAL))
        self._out[src].append(edge_id)
        self._out_weights[src].add(weight)
        return edge_id

    def freeze(self) -> "ConicGraph":
        """Sort adjacency by target offset and seal the graph. Idempotent."""
        for edge_ids in self._out.values():
            edge_ids.sort(key=self._offset_key)
        self._view_cache = {}
        self._frozen = True
        return self

    def extend(self, derived: "list[Edge] | tuple[Edge, ...]") -> "ConicGraph":
        """Return a new frozen graph with derived (shortcut/invented) edges added.

        The base graph is left untouched. The combined edge set must stay
        acyclic; derived edges may not reuse the ORIGINAL provenance.
        """
        self._require_frozen()
        g = ConicGraph()
        g._nodes = list(self._nodes)
        g._edges = list(self._edges)
        g._out = {n: list(ids) for n, ids in self._out.items()}
        g._by_label = dict(self._by_label)
        g._by_offset = dict(self._by_offset)
        g._out_weights = {n: set(w) for n, w in self._out_weights.items()}
        for edge in derived:
            if edge.provenance is Provenance.ORIGINAL:
                raise ValueError("extend() accepts derived edges only")
            g._check_node(edge.src)
            g._check_node(edge.dst)
            if edge.weight <= 0:
                raise NonPositiveWeight(f"derived edge weight must be > 0, got {edge.weight}")
            if edge.src == edge.dst:
                raise CycleCreated(f"self loop on node {edge.src}")
            edge_id = len(g._edges)
            g._edges.append(edge)
            g._out[edge.src].append(edge_id)
        if g._topological_order() is None:
            raise CycleCreated("derived edges close a cycle")
        return g.freeze()

    # --- queries ------------------------------------------------------------

    @property
    def frozen(self) -> bool:
        return self._frozen

    @property
    def node_count(self) -> int:
        return len(self._nodes)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def nodes(self) -> tuple[Node, ...]:
        return tuple(self._nodes)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges)

    def node(self, node_id: NodeId) -> Node:
        self._check_node(node_id)
        return self._nodes[node_id]

    def node_by_label(self, label: str) -> Node:
        try:
            return self._nodes[self._by_label[label]]
        except KeyError:
            raise UnknownNode(f"no node labelled {label!r}") from None

    def sources(self) -> list[Node]:
        return [n for n in self._nodes if n.kind is NodeKind.SOURCE]

    def destinations(self) -> list[Node]:
        return [n for n in self._nodes if n.kind is NodeKind.DESTINATION]

    def out_edges(self, node_id: NodeId) -> tuple[Edge, ...]:
        """All outgoing edges, sorted ascending by target offset.

        Frozen graphs cache the view per node, so repeat queries cost one
        dict lookup.
        """
        self._check_node(node_id)
        if self._frozen:
            view = self._view_cache.get(node_id)
            if view is None:
                view = tuple(self._edges[i] for i in self._out[node_id])
                self._view_cache[node_id] = view
            return view
        edge_ids = sorted(self._out[node_id], key=self._offset_key)
        return tuple(self._edges[i] for i in edge_ids)

    def neighbors_ascending(self, node_id: NodeId) -> list[tuple[NodeId, int]]:
        """(target, weight) pairs in ascending target-offset order."""
        return [(e.dst, e.weight) for e in self.out_edges(node_id)]

    def original_neighbors_ascending(self, node_id: NodeId) -> list[tuple[NodeId, int]]:
        """Like neighbors_ascending but restricted to original edges."""
        return [
            (e.dst, e.weight)
            for e in self.out_edges(node_id)
            if e.provenance is Provenance.ORIGINAL
        ]

    # --- internals ----------------------------------------------------------

    def _offset_key(self, edge_id: EdgeId) -> tuple[int, int]:
        dst = self._edges[edge_id].dst
        return (self._nodes[dst].offset, dst)

    def _check_node(self, node_id: NodeId) -> None:
        if not 0 <= node_id < len(self._nodes):
            raise UnknownNode(f"no node with id {node_id}")

    def _require_mutable(self) -> None:
        if self._frozen:
            raise GraphFrozen("graph is frozen")

    def _require_frozen(self) -> None:
        if not self._frozen:
            raise GraphNotFrozen("operation requires a frozen graph")

    def _reaches(self, start: NodeId, goal: NodeId) -> bool:
        """Depth-first reachability over current edges (cycle guard)."""
        stack = [start]
        seen = {start}
        while stack:
            node = stack.pop()
            if node == goal:
                return True
            for edge_id in self._out[node]:
                nxt = self._edges[edge_id].dst
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return False

    def _topological_order(self) -> list[NodeId] | None:
        """Kahn's algorithm; None when the edge set contains a cycle."""
        indegree = {n.id: 0 for n in self._nodes}
        for edge in self._edges:
            indegree[edge.dst] += 1
        ready = sorted(n for n, d in indegree.items() if d == 0)
        order: list[NodeId] = []
        while ready:
            node = ready.pop()
            order.append(node)
            for edge_id in self._out[node]:
                dst = self._edges[edge_id].dst
                indegree[dst] -= 1
                if indegree[dst] == 0:
                    ready.append(dst)
        if len(order) != len(self._nodes):
            return None
        return order

    def _inject_edge_unchecked(self, src: NodeId, dst: NodeId, weight: int,
                               provenance: Provenance = Provenance.ORIGINAL) -> None:
        # Test/ingestion hook: bypasses every construction check so that
        # validate() can be exercised against defective data.
        edge_id = len(self._edges)
        self._edges.append(Edge(src, dst, weight, provenance))
        self._out[src].append(edge_id)
        self._view_cache.pop(src, None)


def validate(graph: ConicGraph) -> list[Violation]:
    """Structural audit: acyclicity, positivity, offsets, labels, and the
    distinct-weight rule for each source's outgoing edges.

    Violations are returned as data; an empty report means the graph is
    valid. Nothing is raised.
    """
    report: list[Violation] = []
    nodes = graph.nodes
    edges = graph.edges

    for edge in edges:
        if edge.weight <= 0:
            report.append(Violation(
                "NonPositiveWeight",
                f"edge {nodes[edge.src].label}->{nodes[edge.dst].label} "
                f"has weight {edge.weight}",
            ))

    if graph._topological_order() is None:
        report.append(Violation("CycleCreated", "edge set contains a directed cycle"))

    seen_labels: dict[str, NodeId] = {}
    for node in nodes:
        if node.label in seen_labels:
            report.append(Violation(
                "DuplicateLabel", f"label {node.label!r} used by more than one node"
            ))
        seen_labels[node.label] = node.id

    seen_offsets: dict[tuple[NodeKind, int], NodeId] = {}
    for node in nodes:
        key = (node.kind, node.offset)
        if key in seen_offsets:
            report.append(Violation(
                "DuplicateOffset",
                f"offset {node.offset} used twice among {node.kind.value} nodes",
            ))
        seen_offsets[key] = node.id

    # Axiom of distinct paths: a source never carries two equal-weight
    # original edges.
    for node in nodes:
        weights: set[int] = set()
        for edge in graph.out_edges(node.id):
            if edge.provenance is not Provenance.ORIGINAL:
                continue
            if edge.weight in weights:
                report.append(Violation(
                    "EqualAdjacentWeight",
                    f"source {node.label!r} has two edges of weight {edge.weight}",
                ))
            weights.add(edge.weight)

    return report
