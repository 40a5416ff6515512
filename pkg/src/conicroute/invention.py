"""Invention of destination-to-destination edges by absolute edge difference.

For one source, its destinations are walked in ascending offset order as
consecutive pairs. Within a pair the smaller source edge is the found
short path; a new edge is invented from that destination to its neighbour,
weighing the absolute difference of the two source edges. Inventions of
weight zero are skipped, and an optional policy threshold suppresses any
invention heavier than the allowable cap.

Invented weights sit exactly on the lower triangle-inequality bound of the
pair, so min + invented = max always holds. A known hidden path between
the same two destinations can grade an invention via fitness(), which
scores relative error against a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import pairwise

from .errors import EndpointMismatch, NonPositiveWeight, NotASource
from .graph import ConicGraph, Edge, NodeId, NodeKind, Provenance

DEFAULT_TOLERANCE = Fraction(1, 10)


@dataclass(frozen=True, slots=True)
class InventedEdge:
    """Hypothesised edge between two adjacent destinations of one source."""

    origin: NodeId                 # the source whose edge pair produced it
    src: NodeId                    # destination with the smaller source edge
    dst: NodeId                    # its offset neighbour
    weight: int                    # absolute difference of the pair
    pair_weights: tuple[int, int]  # (smaller, larger) source-edge weights

    def __post_init__(self) -> None:
        lo, hi = self.pair_weights
        if not (0 < lo < hi):
            raise ValueError(f"pair weights must be positive and distinct: {self.pair_weights}")
        if self.weight != hi - lo:
            raise ValueError(f"weight {self.weight} is not the difference of {self.pair_weights}")

    def as_edge(self) -> Edge:
        return Edge(self.src, self.dst, self.weight, Provenance.INVENTED)


@dataclass(frozen=True, slots=True)
class HiddenPath:
    """A real but unmapped path between two destinations."""

    src: NodeId
    dst: NodeId
    true_weight: int


@dataclass(frozen=True, slots=True)
class FitnessReport:
    invented_weight: int
    hidden_weight: int
    absolute_error: int
    relative_error: Fraction
    fit: bool


@dataclass(frozen=True, slots=True)
class PolicyThreshold:
    """Cap on how heavy an invention may be before it is suppressed."""

    allowable: int

    def __post_init__(self) -> None:
        if self.allowable <= 0:
            raise ValueError(f"allowable must be positive, got {self.allowable}")

    def admits(self, weight: int) -> bool:
        return weight <= self.allowable


def absolute_edge_difference(w1: int, w2: int) -> int:
    """|w1 - w2| for two positive edge weights; symmetric."""
    if w1 <= 0 or w2 <= 0:
        raise NonPositiveWeight(f"weights must be > 0, got ({w1}, {w2})")
    return abs(w1 - w2)


def triangle_bounds(z1: int, z2: int) -> tuple[int, int]:
    """(upper, lower) triangle-inequality bounds for an edge pair.

    upper = z1 + z2, lower = |z1 - z2|. Every invention weighs exactly the
    lower bound.
    """
    if z1 <= 0 or z2 <= 0:
        raise NonPositiveWeight(f"weights must be > 0, got ({z1}, {z2})")
    return z1 + z2, abs(z1 - z2)


def invent_for_source(graph: ConicGraph, source: NodeId,
                      policy: PolicyThreshold | None = None) -> list[InventedEdge]:
    """Invent edges between consecutive destination pairs of one source.

    Runs in one pass over the source's offset-sorted destinations: exactly
    one pair evaluation per consecutive pair.
    """
    graph._require_frozen()
    node = graph.node(source)
    if node.kind is not NodeKind.SOURCE:
        raise NotASource(f"node {node.label!r} is a {node.kind.value}")
    invented: list[InventedEdge] = []
    originals = [e for e in graph.out_edges(source)
                 if e.provenance is Provenance.ORIGINAL]
    for first, second in pairwise(originals):
        weight = absolute_edge_difference(first.weight, second.weight)
        if weight == 0:
            continue  # empty invention, ignored
        if policy is not None and not policy.admits(weight):
            continue
        if first.weight < second.weight:
            near, far, pair = first.dst, second.dst, (first.weight, second.weight)
        else:
            near, far, pair = second.dst, first.dst, (second.weight, first.weight)
        invented.append(InventedEdge(origin=source, src=near, dst=far,
                                     weight=weight, pair_weights=pair))
    return invented


def invent_all(graph: ConicGraph,
               policy: PolicyThreshold | None = None) -> dict[NodeId, list[InventedEdge]]:
    """invent_for_source over every source, ascending node id."""
    graph._require_frozen()
    return {
        node.id: invent_for_source(graph, node.id, policy)
        for node in graph.sources()
    }


def fitness(invented: InventedEdge, hidden: HiddenPath,
            tolerance: "Fraction | float | int | str" = DEFAULT_TOLERANCE) -> FitnessReport:
    """Grade an invention against the true weight of its hidden path.

    The hidden path must join the same two destinations (either
    orientation). Relative error is exact rational arithmetic; fit holds
    when it does not exceed the tolerance.
    """
    if {invented.src, invented.dst} != {hidden.src, hidden.dst}:
        raise EndpointMismatch(
            f"hidden path {hidden.src}->{hidden.dst} does not join "
            f"invented pair {invented.src}->{invented.dst}"
        )
    absolute_error = abs(invented.weight - hidden.true_weight)
    relative_error = Fraction(absolute_error, hidden.true_weight)
    return FitnessReport(
        invented_weight=invented.weight,
        hidden_weight=hidden.true_weight,
        absolute_error=absolute_error,
        relative_error=relative_error,
        fit=relative_error <= _as_fraction(tolerance),
    )


def _as_fraction(tolerance: "Fraction | float | int | str") -> Fraction:
    # Floats go through their decimal repr so that 0.1 means exactly 1/10.
    if isinstance(tolerance, float):
        return Fraction(str(tolerance))
    return Fraction(tolerance)
