"""Transition-matrix CSV ingestion, graph building, and re-emission.

File layout (UTF-8, comma-separated, LF):

    destinations,<label_1>,...,<label_m>
    offsets,<o_1>,...,<o_m>
    <source_label>,<source_offset>,<cell_1>,...,<cell_m>
    ...

Destination offsets are positive and strictly increasing; an empty cell
means "no edge". Hidden paths travel in their own CSV with the header
``from,to,true_weight``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from . import graph as graph_mod
from .errors import (
    ConicRouteError,
    DuplicateOffsetInFile,
    MalformedHeader,
    NonIntegerCell,
    ParseError,
    RaggedRow,
    UnknownNode,
    ValidationFailed,
)
from .graph import ConicGraph, NodeKind, Violation
from .invention import HiddenPath


@dataclass(frozen=True)
class MatrixRow:
    source_label: str
    source_offset: int
    cells: tuple[int | None, ...]


@dataclass(frozen=True)
class BuildMatrix:
    destination_labels: tuple[str, ...]
    destination_offsets: tuple[int, ...]
    rows: tuple[MatrixRow, ...]

    @property
    def populated_cells(self) -> int:
        return sum(1 for row in self.rows for c in row.cells if c is not None)


def _int_cell(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise NonIntegerCell(line, f"{what} {token!r} is not an integer") from None


def parse_build_matrix(text: str) -> BuildMatrix:
    """Parse transition-matrix CSV text into a BuildMatrix.

    Every parse failure carries the 1-based line it was found on.
    """
    records = list(csv.reader(io.StringIO(text)))
    while records and not records[-1]:
        records.pop()  # trailing blank lines are harmless
    if not records or not records[0] or records[0][0] != "destinations":
        raise MalformedHeader(1, "expected a 'destinations,<labels...>' line")
    labels = tuple(records[0][1:])
    if any(not label for label in labels):
        raise MalformedHeader(1, "destination labels must be non-empty")
    if len(records) < 2 or not records[1] or records[1][0] != "offsets":
        raise MalformedHeader(2, "expected an 'offsets,<integers...>' line")
    if len(records[1]) - 1 != len(labels):
        raise MalformedHeader(2, f"{len(records[1]) - 1} offsets for {len(labels)} destinations")
    offsets = tuple(_int_cell(tok, 2, "offset") for tok in records[1][1:])
    for prev, cur in zip(offsets, offsets[1:]):
        if cur == prev:
            raise DuplicateOffsetInFile(2, f"destination offset {cur} repeated")
        if cur < prev:
            raise DuplicateOffsetInFile(2, f"destination offsets must increase, {cur} after {prev}")
    if offsets and offsets[0] <= 0:
        raise MalformedHeader(2, "destination offsets must be positive")

    rows: list[MatrixRow] = []
    last_offset: int | None = None
    for line, record in enumerate(records[2:], start=3):
        if not record:
            raise RaggedRow(line, "blank row inside the matrix body")
        if len(record) != 2 + len(labels):
            raise RaggedRow(
                line, f"{len(record) - 2} cells for {len(labels)} destinations"
            )
        offset = _int_cell(record[1], line, "source offset")
        if last_offset is not None:
            if offset == last_offset:
                raise DuplicateOffsetInFile(line, f"source offset {offset} repeated")
            if offset < last_offset:
                raise DuplicateOffsetInFile(
                    line, f"source offsets must increase, {offset} after {last_offset}"
                )
        last_offset = offset
        cells = tuple(
            None if tok == "" else _int_cell(tok, line, "cell")
            for tok in record[2:]
        )
        rows.append(MatrixRow(record[0], offset, cells))
    return BuildMatrix(labels, offsets, tuple(rows))


def emit_build_matrix(matrix: BuildMatrix) -> str:
    """Canonical CSV text for a BuildMatrix (LF lines, minimal quoting)."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["destinations", *matrix.destination_labels])
    writer.writerow(["offsets", *matrix.destination_offsets])
    for row in matrix.rows:
        cells = ["" if c is None else c for c in row.cells]
        writer.writerow([row.source_label, row.source_offset, *cells])
    return out.getvalue()


def build_graph(matrix: BuildMatrix) -> tuple[ConicGraph, list[Violation]]:
    """Lenient graph construction: offending nodes/edges become violations.

    Rows become source nodes, columns destination nodes, populated cells
    original edges. Anything the graph rejects is skipped and recorded, so
    the returned graph is always frozen and internally consistent.
    """
    g = ConicGraph()
    violations: list[Violation] = []
    source_ids: dict[int, int] = {}
    dest_ids: dict[int, int] = {}
    for index, row in enumerate(matrix.rows):
        try:
            source_ids[index] = g.add_node(row.source_label, NodeKind.SOURCE, row.source_offset)
        except ConicRouteError as exc:
            violations.append(Violation(type(exc).__name__, str(exc)))
        except ValueError as exc:
            violations.append(Violation("InvalidNode", str(exc)))
    for index, (label, offset) in enumerate(
        zip(matrix.destination_labels, matrix.destination_offsets)
    ):
        try:
            dest_ids[index] = g.add_node(label, NodeKind.DESTINATION, offset)
        except ConicRouteError as exc:
            violations.append(Violation(type(exc).__name__, str(exc)))
        except ValueError as exc:
            violations.append(Violation("InvalidNode", str(exc)))
    for row_index, row in enumerate(matrix.rows):
        if row_index not in source_ids:
            continue
        for col_index, cell in enumerate(row.cells):
            if cell is None or col_index not in dest_ids:
                continue
            try:
                g.add_edge(source_ids[row_index], dest_ids[col_index], cell)
            except ConicRouteError as exc:
                violations.append(Violation(type(exc).__name__, str(exc)))
    g.freeze()
    violations.extend(graph_mod.validate(g))
    return g, violations


def to_graph(matrix: BuildMatrix) -> ConicGraph:
    """Strict graph construction; raises ValidationFailed on any violation."""
    g, violations = build_graph(matrix)
    if violations:
        raise ValidationFailed(violations)
    return g


def from_graph(g: ConicGraph) -> BuildMatrix:
    """Re-emit a graph in build-matrix form (original edges only)."""
    dests = sorted(g.destinations(), key=lambda n: n.offset)
    column = {node.id: i for i, node in enumerate(dests)}
    rows = []
    for source in sorted(g.sources(), key=lambda n: n.offset):
        cells: list[int | None] = [None] * len(dests)
        for dst, weight in g.original_neighbors_ascending(source.id):
            if dst in column:
                cells[column[dst]] = weight
        rows.append(MatrixRow(source.label, source.offset, tuple(cells)))
    return BuildMatrix(
        tuple(n.label for n in dests),
        tuple(n.offset for n in dests),
        tuple(rows),
    )


def parse_hidden_paths(text: str, g: ConicGraph) -> list[HiddenPath]:
    """Parse a ``from,to,true_weight`` CSV against a graph's labels."""
    records = list(csv.reader(io.StringIO(text)))
    while records and not records[-1]:
        records.pop()
    if not records or records[0] != ["from", "to", "true_weight"]:
        raise MalformedHeader(1, "expected header 'from,to,true_weight'")
    paths: list[HiddenPath] = []
    for line, record in enumerate(records[1:], start=2):
        if len(record) != 3:
            raise RaggedRow(line, f"expected 3 fields, got {len(record)}")
        try:
            src = g.node_by_label(record[0])
            dst = g.node_by_label(record[1])
        except UnknownNode as exc:
            raise ParseError(line, str(exc)) from None
        for node in (src, dst):
            if node.kind is not NodeKind.DESTINATION:
                raise ParseError(line, f"{node.label!r} is not a destination")
        src, dst = src.id, dst.id
        weight = _int_cell(record[2], line, "true_weight")
        if weight <= 0:
            raise NonIntegerCell(line, f"true_weight must be positive, got {weight}")
        paths.append(HiddenPath(src=src, dst=dst, true_weight=weight))
    return paths
