# -*- coding: utf-8 -*-
#
# Copyright (C) the medial-topology authors
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

"""Combinatorial medial complexes.

A complex is a Y-network (an extended graph whose non-artificial vertices
are 6-junction points or fin points), a list of medial sheets and, for each
sheet, its boundary circles. A boundary circle is a cyclic token list:
``"y1"`` runs along Y-edge ``y1`` from its first endpoint to its second,
``"-y1"`` runs the other way and ``"~"`` is a stretch of medial edge curve.
"""

from dataclasses import dataclass, field
import logging
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from medial_topology import exceptions
from medial_topology import extended_graph

logger = logging.getLogger(__name__)

ARC = "~"
JUNCTION_VALENCE = 4
COVER = 3


def parse_token(token: str) -> Tuple[str, int]:
    if token.startswith("-"):
        return token[1:], -1
    return token, 1


def make_token(edge_id: str, direction: int) -> str:
    return edge_id if direction > 0 else "-" + edge_id


def reverse_tokens(tokens: Sequence[str]) -> Tuple[str, ...]:
    out = []
    for token in reversed(tokens):
        if token == ARC:
            out.append(ARC)
        else:
            edge_id, direction = parse_token(token)
            out.append(make_token(edge_id, -direction))
    return tuple(out)


@dataclass(frozen=True)
class Boundary:
    tokens: Tuple[str, ...]

    @property
    def kind(self) -> str:
        arcs = sum(1 for t in self.tokens if t == ARC)
        if arcs == len(self.tokens):
            return "edge"
        if arcs == 0:
            return "attached"
        return "mixed"

    @property
    def arc_count(self) -> int:
        return sum(1 for t in self.tokens if t == ARC)

    def steps(self) -> List[Tuple[str, int]]:
        return [parse_token(t) for t in self.tokens if t != ARC]


@dataclass(frozen=True)
class Sheet:
    id: str
    genus: int = 0
    orientable: bool = True
    boundaries: Tuple[Boundary, ...] = ()

    @property
    def weighted_genus(self) -> int:
        return 2 * self.genus if self.orientable else self.genus

    @property
    def edge_curves(self) -> int:
        return sum(1 for b in self.boundaries if b.kind == "edge")

    @property
    def attached(self) -> List[Tuple[int, Boundary]]:
        return [(i, b) for i, b in enumerate(self.boundaries) if b.kind == "attached"]

    @property
    def euler_characteristic(self) -> int:
        return 2 - len(self.boundaries) - self.weighted_genus

    @property
    def closed(self) -> bool:
        return not self.boundaries


def sheet_from_euler(
    sheet_id: str, chi: int, orientable: bool, boundaries: Sequence[Boundary]
) -> Sheet:
    """Rebuild a sheet from its Euler characteristic after a rewrite."""
    weighted = 2 - len(boundaries) - chi
    if weighted < 0 or (orientable and weighted % 2) or (not orientable and weighted == 0):
        raise exceptions.StructuralError(
            "no surface has chi=%d, %d boundary circles and orientable=%s"
            % (chi, len(boundaries), orientable),
            payload={"sheet": sheet_id},
        )
    genus = weighted // 2 if orientable else weighted
    return Sheet(sheet_id, genus, orientable, tuple(boundaries))


@dataclass(frozen=True)
class FinRecord:
    """A fin curve: the tracked attached stretch of a fin sheet between two fin points."""

    id: str
    sheet: str
    boundary: int
    arc: int
    support: Tuple[Tuple[str, int], ...]
    vertices: Tuple[str, ...]
    start_sheet: str
    end_sheet: str
    # (sheet, boundary, arc index) where the trace closed
    end_leaf: Tuple[str, int, int] = ("", 0, 0)
    # "arc": the walk reached an edge arc of its own boundary;
    # "landing": it crossed a Y-edge end onto another leaf, possibly of the same sheet
    closed_by: str = "arc"
    type2: bool = False

    @property
    def origin(self) -> str:
        return self.vertices[0]

    @property
    def end(self) -> str:
        return self.vertices[-1]

    @property
    def points(self) -> Tuple[str, str]:
        return (self.origin, self.end)

    @property
    def support_edges(self) -> Tuple[str, ...]:
        return tuple(e for e, _ in self.support)

    @property
    def essential(self) -> bool:
        return self.closed_by == "arc"

    @property
    def fin_class(self) -> str:
        if not self.essential:
            return "Inessential"
        return "EssentialType2" if self.type2 else "EssentialType1"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "id": self.id,
            "points": list(self.points),
            "support": [make_token(e, d) for e, d in self.support],
            "start_sheet": self.start_sheet,
            "end_sheet": self.end_sheet,
            "end_leaf": list(self.end_leaf),
            "closed_by": self.closed_by,
            "class": self.fin_class,
        }


@dataclass(frozen=True)
class DeclaredFin:
    id: str
    points: Tuple[str, str]
    support: Tuple[str, ...] = ()
    start_sheet: Optional[str] = None
    end_sheet: Optional[str] = None


@dataclass(frozen=True)
class Attachment:
    """Where a cut fin sheet was attached: one edge of the top-level graph."""

    fin: str
    fin_sheet: str
    base_sheet: str
    edge: str

    def to_dict(self) -> Dict[str, str]:
        return {
            "fin": self.fin,
            "fin_sheet": self.fin_sheet,
            "base_sheet": self.base_sheet,
            "edge": self.edge,
        }


@dataclass(frozen=True)
class MedialComplex:
    network: extended_graph.ExtendedGraph
    sheets: Tuple[Sheet, ...]
    fins: Tuple[DeclaredFin, ...] = ()
    name: str = ""
    component: Optional[str] = None
    metadata: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)
    attachments: Tuple[Attachment, ...] = ()
    # sheet id -> id of the sheet it was merged into
    aliases: Mapping[str, str] = field(default_factory=dict, compare=False, hash=False)

    def sheet(self, sheet_id: str) -> Sheet:
        for s in self.sheets:
            if s.id == sheet_id:
                return s
        raise KeyError(sheet_id)

    def walks(self) -> Iterator[Tuple[str, int, Boundary]]:
        for s in self.sheets:
            for i, b in enumerate(s.boundaries):
                yield s.id, i, b


@dataclass(frozen=True)
class Violation:
    code: str
    location: str
    message: str

    def to_dict(self) -> Dict[str, str]:
        return {"code": self.code, "location": self.location, "message": self.message}


@dataclass
class ValidationReport:
    violations: List[Violation] = field(default_factory=list)
    warnings: List[Violation] = field(default_factory=list)
    germs: Dict[str, List[Tuple[str, str]]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, code: str, location: str, message: str) -> None:
        self.violations.append(Violation(code, location, message))

    def warn(self, code: str, location: str, message: str) -> None:
        self.warnings.append(Violation(code, location, message))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.ok,
            "violations": [v.to_dict() for v in self.violations],
            "warnings": [w.to_dict() for w in self.warnings],
        }

    def format(self) -> str:
        lines = ["valid" if self.ok else "invalid"]
        for v in self.violations:
            lines.append("  error %s at %s: %s" % (v.code, v.location, v.message))
        for w in self.warnings:
            lines.append("  warning %s at %s: %s" % (w.code, w.location, w.message))
        return "\n".join(lines)


def token_ends(network: extended_graph.ExtendedGraph, token: str) -> Tuple[str, str]:
    edge_id, direction = parse_token(token)
    e = network.edge(edge_id)
    return (e.u, e.v) if direction > 0 else (e.v, e.u)


def arc_endpoints(
    network: extended_graph.ExtendedGraph, tokens: Sequence[str], index: int
) -> Tuple[Optional[str], Optional[str]]:
    """Vertices joined by the edge arc at ``index``, or None for a bare edge circle."""
    n = len(tokens)
    before = after = None
    for k in range(1, n):
        t = tokens[(index - k) % n]
        if t != ARC:
            before = token_ends(network, t)[1]
            break
    for k in range(1, n):
        t = tokens[(index + k) % n]
        if t != ARC:
            after = token_ends(network, t)[0]
            break
    return before, after


def arc_hosts(c: MedialComplex) -> Dict[str, int]:
    """Number of edge-arc ends landing on each Y vertex."""
    hosts: Dict[str, int] = {}
    for _, _, b in c.walks():
        if b.kind != "mixed":
            continue
        for i, t in enumerate(b.tokens):
            if t != ARC:
                continue
            for v in arc_endpoints(c.network, b.tokens, i):
                hosts[v] = hosts.get(v, 0) + 1
    return hosts


def traversal_counts(c: MedialComplex) -> Dict[str, int]:
    counts = {e.id: 0 for e in c.network.edges}
    for _, _, b in c.walks():
        for edge_id, _ in b.steps():
            if edge_id in counts:
                counts[edge_id] += 1
    return counts


def _check_walk(c, report, sheet_id, index, boundary):
    location = "%s.boundaries[%d]" % (sheet_id, index)
    if not boundary.tokens:
        report.add("empty-boundary", location, "boundary circle has no tokens")
        return False
    known = {e.id for e in c.network.edges}
    for t in boundary.tokens:
        if t != ARC and parse_token(t)[0] not in known:
            report.add("unknown-edge", location, "token %s names no Y-edge" % t)
            return False
    tokens = boundary.tokens
    n = len(tokens)
    for i, t in enumerate(tokens):
        nxt = tokens[(i + 1) % n]
        if t == ARC or nxt == ARC:
            continue
        if token_ends(c.network, t)[1] != token_ends(c.network, nxt)[0]:
            report.add(
                "broken-walk",
                location,
                "%s does not end where %s starts" % (t, nxt),
            )
            return False
    return True


def validate_complex(c: MedialComplex, allow_points: bool = False) -> ValidationReport:
    """Check every model invariant and list each violation with its location.

    ``allow_points`` accepts the even-valence Y points that remain where
    the decomposition merged slid junctions.
    """
    report = ValidationReport()
    if not c.sheets:
        report.add("no-sheets", "sheets", "complex has no medial sheet")
        return report
    ids = [s.id for s in c.sheets]
    for sheet_id in sorted({i for i in ids if ids.count(i) > 1}):
        report.add("duplicate-sheet", sheet_id, "sheet id declared more than once")
    if set(ids) & set(c.network.vertices):
        report.warn("shared-id", "sheets", "a sheet id is also a Y vertex id")

    walks_ok = True
    for s in c.sheets:
        if s.genus < 0:
            report.add("genus", s.id, "genus must be nonnegative")
        if not s.orientable and s.genus < 1:
            report.add("genus", s.id, "a nonorientable sheet has genus at least 1")
        if s.closed and not s.orientable:
            report.warn(
                "closed-nonorientable",
                s.id,
                "closed nonorientable sheet: not realizable as a region medial axis",
            )
        for i, b in enumerate(s.boundaries):
            walks_ok = _check_walk(c, report, s.id, i, b) and walks_ok
    if not walks_ok:
        return report

    for edge_id, count in traversal_counts(c).items():
        if count == 0:
            report.add("naked-edge", edge_id, "Y-edge is not traversed by any sheet")
        elif count != COVER:
            report.add(
                "cover",
                edge_id,
                "Y-edge is traversed %d times, expected %d" % (count, COVER),
            )

    hosts = arc_hosts(c)
    fin_points = []
    for v in c.network.vertices:
        if v in c.network.artificial_vertices:
            continue
        val = extended_graph.valence(c.network, v)
        if val == 1:
            fin_points.append(v)
            if not hosts.get(v):
                report.add("fin-point", v, "valence-1 vertex hosts no edge arc")
        elif val == JUNCTION_VALENCE:
            continue
        elif allow_points and val >= 2 and val % 2 == 0:
            continue
        elif not hosts.get(v):
            report.add(
                "valence", v, "vertex has valence %d, expected %d" % (val, JUNCTION_VALENCE)
            )
    if not allow_points:
        for v in sorted(hosts):
            if extended_graph.valence(c.network, v) != 1:
                report.add("arc-end", v, "edge arcs may only end at fin points")
    if not fin_points and not allow_points:
        for sheet_id, i, b in c.walks():
            if b.kind == "mixed":
                report.add(
                    "mixed-boundary",
                    "%s.boundaries[%d]" % (sheet_id, i),
                    "mixed boundary circle in a fin-free complex",
                )

    if not is_connected(c):
        report.add("disconnected", c.name or "complex", "complex is not connected")

    for fin in c.fins:
        for p in fin.points:
            if p not in c.network.vertices:
                report.add("fin-record", fin.id, "fin point %s is not a Y vertex" % p)
        for edge_id in fin.support:
            if edge_id not in {e.id for e in c.network.edges}:
                report.add("fin-record", fin.id, "support edge %s is unknown" % edge_id)
        for sheet_id in (fin.start_sheet, fin.end_sheet):
            if sheet_id is not None and sheet_id not in ids:
                report.add("fin-record", fin.id, "sheet %s is unknown" % sheet_id)

    for v in report.violations:
        logger.debug("violation %s at %s: %s", v.code, v.location, v.message)
    return report


def ensure_valid(c: MedialComplex, allow_points: bool = False) -> ValidationReport:
    report = validate_complex(c, allow_points=allow_points)
    if not report.ok:
        raise exceptions.ValidationError(
            "complex %s is invalid" % (c.name or ""),
            payload={"violations": [v.to_dict() for v in report.violations]},
        )
    return report


def y_components(c: MedialComplex) -> List[extended_graph.ExtendedGraph]:
    return extended_graph.components(c.network)


def _incidence(c: MedialComplex) -> nx.Graph:
    graph = nx.Graph()
    for s in c.sheets:
        graph.add_node(("sheet", s.id))
    for v in c.network.vertices:
        graph.add_node(("vertex", v))
    for e in c.network.edges:
        graph.add_edge(("vertex", e.u), ("vertex", e.v))
    for sheet_id, _, b in c.walks():
        for edge_id, _ in b.steps():
            e = c.network.edge(edge_id)
            graph.add_edge(("sheet", sheet_id), ("vertex", e.u))
    return graph


def is_connected(c: MedialComplex) -> bool:
    graph = _incidence(c)
    return graph.number_of_nodes() == 0 or nx.is_connected(graph)


def is_fin_free(c: MedialComplex) -> bool:
    if any(b.kind == "mixed" for _, _, b in c.walks()):
        return False
    return not any(
        extended_graph.valence(c.network, v) == 1
        for v in c.network.vertices
        if v not in c.network.artificial_vertices
    )


def complex_euler_characteristic(c: MedialComplex) -> int:
    """Cell count of the whole complex, fins included."""
    arcs = sum(b.arc_count for _, _, b in c.walks() if b.kind == "mixed")
    return (
        len(c.network.vertices)
        - len(c.network.edges)
        + sum(s.euler_characteristic for s in c.sheets)
        - arcs
    )


def junction_count(c: MedialComplex) -> int:
    """Sum of (valence / 2 - 1) over the non-artificial Y vertices."""
    return sum(
        extended_graph.valence(c.network, v) // 2 - 1
        for v in c.network.vertices
        if v not in c.network.artificial_vertices
    )


def _germs(c: MedialComplex) -> Dict[str, List[Tuple[Tuple[str, int], Tuple[str, int]]]]:
    """Walk passages through each vertex as pairs of edge ends (edge, 0 = first end)."""
    germs: Dict[str, List] = {v: [] for v in c.network.vertices}
    for _, _, b in c.walks():
        tokens = b.tokens
        n = len(tokens)
        for i, t in enumerate(tokens):
            nxt = tokens[(i + 1) % n]
            if t == ARC or nxt == ARC:
                continue
            e_in, d_in = parse_token(t)
            e_out, d_out = parse_token(nxt)
            vertex = token_ends(c.network, t)[1]
            germs[vertex].append(((e_in, 1 if d_in > 0 else 0), (e_out, 0 if d_out > 0 else 1)))
    return germs


def check_six_junction_consistency(c: MedialComplex) -> ValidationReport:
    """Advisory check of the six sheet germs meeting at every 6-junction point.

    A junction has four Y-edge ends; each must carry three walk passages,
    and the six passages must pair the four ends in all six possible ways.
    """
    report = ValidationReport()
    germs = _germs(c)
    for v in c.network.vertices:
        if v in c.network.artificial_vertices:
            continue
        if extended_graph.valence(c.network, v) != JUNCTION_VALENCE:
            continue
        passages = germs[v]
        report.germs[v] = [("%s:%d" % a, "%s:%d" % b) for a, b in passages]
        if len(passages) != 6:
            report.add("germs", v, "%d sheet germs meet here, expected 6" % len(passages))
            continue
        ends: Dict[Tuple[str, int], int] = {}
        for a, b in passages:
            ends[a] = ends.get(a, 0) + 1
            ends[b] = ends.get(b, 0) + 1
        if any(count != COVER for count in ends.values()):
            report.add("germs", v, "a Y-edge end does not carry three passages")
            continue
        pairs = {frozenset((a, b)) for a, b in passages}
        if len(pairs) != 6 or any(len(p) != 2 for p in pairs):
            report.add("pairing", v, "passages do not pair the four Y-edge ends consistently")
    return report


def build_component_graph(c: MedialComplex) -> extended_graph.ExtendedGraph:
    """Bipartite graph of sheets and Y-network components, one edge per attached circle."""
    if not is_fin_free(c):
        raise exceptions.PreconditionError(
            "component graph needs a fin-free complex", payload={"complex": c.name}
        )
    pieces = y_components(c)
    node_of: Dict[str, str] = {}
    vertex_data: Dict[str, Any] = {}
    for s in c.sheets:
        vertex_data[s.id] = {
            "kind": "sheet",
            "genus": s.genus,
            "orientable": s.orientable,
            "edges": s.edge_curves,
        }
    y_nodes = []
    for k, piece in enumerate(pieces, start=1):
        node = "Y:%d" % k
        y_nodes.append(node)
        reduced = extended_graph.reduce_weighted(piece)
        vertex_data[node] = {
            "kind": "y",
            "graph": piece,
            "reduced": reduced,
            "label": extended_graph.reduced_label(reduced),
        }
        for v in piece.vertices:
            node_of[v] = node
    edges = []
    for s in c.sheets:
        for i, b in s.attached:
            edge_id = b.steps()[0][0]
            e = c.network.edge(edge_id)
            edges.append(("%s:%d" % (s.id, i), s.id, node_of[e.u]))
    return extended_graph.make_graph(
        [s.id for s in c.sheets] + y_nodes, edges, vertex_data=vertex_data
    )


def restrict(
    c: MedialComplex, sheet_ids: Sequence[str], vertices: Sequence[str], component: str
) -> MedialComplex:
    """Sub-complex on the given sheets and Y vertices."""
    keep = set(sheet_ids)
    return MedialComplex(
        network=extended_graph.subgraph(c.network, vertices),
        sheets=tuple(s for s in c.sheets if s.id in keep),
        name="%s/%s" % (c.name, component) if c.name else component,
        component=component,
        metadata=dict(c.metadata),
    )
