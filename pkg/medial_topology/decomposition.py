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

"""Fin curves and the decomposition of a medial complex into irreducible components.

Fin curves are traced from the edge arcs of the sheet boundaries. Every
rewrite works on a mutable draft of the complex and hands back a new
immutable complex:

* a slide contracts the first support edge of a fin, so its fin point
  moves across a 6-junction;
* contracting an inessential fin contracts its single support edge;
* cutting an essential fin frees the fin sheet along its support edge and
  glues the two base passages to each other, adding one edge to the
  top-level graph.

Contractions are homotopy equivalences. When a sheet boundary only touches
the contracted edge between two edge arcs the touch point is joined by a
band to another passage through the merged vertex, which keeps the
homotopy type.
"""

from dataclasses import dataclass, replace
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.utils import UnionFind

from medial_topology import config
from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import medial_model
from medial_topology.medial_model import ARC, FinRecord, MedialComplex, parse_token

logger = logging.getLogger(__name__)

MARKER = "@"
ANCHOR = "@anchor"


class _Draft:
    """Mutable copy of a complex used by the rewriting steps."""

    def __init__(self, c: MedialComplex) -> None:
        self.source = c
        self.vertices = list(c.network.vertices)
        self.artificial = set(c.network.artificial_vertices)
        self.edges: Dict[str, List[str]] = {e.id: [e.u, e.v] for e in c.network.edges}
        self.sheets: List[Dict[str, Any]] = [
            {
                "id": s.id,
                "chi": s.euler_characteristic,
                "orientable": s.orientable,
                "walks": [list(b.tokens) for b in s.boundaries],
            }
            for s in c.sheets
        ]
        self.attachments = list(c.attachments)
        self.aliases = dict(c.aliases)
        self._markers = 0

    def marker(self) -> str:
        self._markers += 1
        return "%s%d" % (MARKER, self._markers)

    @staticmethod
    def is_y(token: str) -> bool:
        return token != ARC and not token.startswith(MARKER)

    def on_edge(self, token: str, edge_id: str) -> bool:
        return self.is_y(token) and parse_token(token)[0] == edge_id

    def ends(self, token: str) -> Tuple[str, str]:
        edge_id, direction = parse_token(token)
        u, v = self.edges[edge_id]
        return (u, v) if direction > 0 else (v, u)

    def valence(self, vertex: str) -> int:
        return sum((u == vertex) + (v == vertex) for u, v in self.edges.values())

    def sheet(self, sheet_id: str) -> Dict[str, Any]:
        for s in self.sheets:
            if s["id"] == sheet_id:
                return s
        raise exceptions.StructuralError("unknown sheet %s" % sheet_id)

    def locate(self, marker: str) -> Tuple[Dict[str, Any], int, int]:
        for s in self.sheets:
            for k, w in enumerate(s["walks"]):
                if marker in w:
                    return s, k, w.index(marker)
        raise exceptions.StructuralError("lost track of touch %s" % marker)

    def merge_sheets(self, a: Dict[str, Any], b: Dict[str, Any], chi: int, orientable: bool):
        """Merge two sheets; the one declared first keeps its id."""
        first, second = sorted((a, b), key=self.sheets.index)
        first["walks"] = first["walks"] + second["walks"]
        first["chi"] = chi
        first["orientable"] = orientable
        self.sheets.remove(second)
        self.aliases[second["id"]] = first["id"]
        logger.debug("sheet %s merged into %s", second["id"], first["id"])
        return first

    def arc_hosts(self) -> set:
        hosts = set()
        for s in self.sheets:
            for w in s["walks"]:
                n = len(w)
                if all(t == ARC for t in w):
                    continue
                for i, t in enumerate(w):
                    if t != ARC:
                        continue
                    if self.is_y(w[i - 1]):
                        hosts.add(self.ends(w[i - 1])[1])
                    if self.is_y(w[(i + 1) % n]):
                        hosts.add(self.ends(w[(i + 1) % n])[0])
        return hosts

    def finish(self) -> None:
        for s in self.sheets:
            walks = []
            for w in s["walks"]:
                tidy = _tidy(w)
                if tidy:
                    walks.append(tidy)
                else:
                    s["chi"] += 1
            s["walks"] = walks
        self.vertices = [
            v for v in self.vertices if v in self.artificial or self.valence(v) > 0
        ]

    def build(self) -> MedialComplex:
        network = extended_graph.ExtendedGraph(
            vertices=tuple(self.vertices),
            edges=tuple(extended_graph.Edge(i, u, v) for i, (u, v) in self.edges.items()),
            artificial_vertices=frozenset(self.artificial & set(self.vertices)),
        )
        sheets = tuple(
            medial_model.sheet_from_euler(
                s["id"],
                s["chi"],
                s["orientable"],
                [medial_model.Boundary(tuple(w)) for w in s["walks"]],
            )
            for s in self.sheets
        )
        return MedialComplex(
            network=network,
            sheets=sheets,
            name=self.source.name,
            metadata=dict(self.source.metadata),
            attachments=tuple(self.attachments),
            aliases=dict(self.aliases),
        )


def _tidy(walk: Sequence[str]) -> List[str]:
    tokens = [t for t in walk if not t.startswith(MARKER)]
    if tokens and all(t == ARC for t in tokens):
        return [ARC]
    return [t for i, t in enumerate(tokens) if not (t == ARC and tokens[i - 1] == ARC)]


def _real(tokens: Sequence[str]) -> bool:
    return any(not t.startswith(MARKER) for t in tokens)


def _connected_sheets(d: _Draft, node: Tuple[str, str]) -> set:
    graph = nx.Graph()
    graph.add_node(node)
    for v in d.vertices:
        graph.add_node(("vertex", v))
    for u, v in d.edges.values():
        graph.add_edge(("vertex", u), ("vertex", v))
    for s in d.sheets:
        graph.add_node(("sheet", s["id"]))
        for w in s["walks"]:
            for t in w:
                if d.is_y(t):
                    graph.add_edge(("sheet", s["id"]), ("vertex", d.ends(t)[0]))
    return {n for kind, n in nx.node_connected_component(graph, node) if kind == "sheet"}


def _free_point(
    d: _Draft, sheets: set, vertex: Optional[str] = None
) -> Optional[Tuple[List[str], int]]:
    """A boundary point next to an edge arc: (walk, insertion index)."""
    for s in d.sheets:
        if s["id"] not in sheets:
            continue
        for w in s["walks"]:
            n = len(w)
            for i, t in enumerate(w):
                nxt = w[(i + 1) % n]
                if d.is_y(t) and nxt == ARC and vertex in (None, d.ends(t)[1]):
                    return w, i + 1
                if t == ARC and d.is_y(nxt) and vertex in (None, d.ends(nxt)[0]):
                    return w, i + 1
    if vertex is not None:
        return None
    for s in d.sheets:
        if s["id"] not in sheets:
            continue
        for w in s["walks"]:
            if all(t == ARC for t in w):
                return w, len(w)
    return None


def _anchor(d: _Draft, vertex: str) -> Optional[str]:
    """Put the anchor marker on a free boundary point joined to ``vertex``."""
    if d.valence(vertex) == 0:
        return None
    place = _free_point(d, {s["id"] for s in d.sheets}, vertex)
    if place is None:
        place = _free_point(d, _connected_sheets(d, ("vertex", vertex)))
    if place is None:
        raise exceptions.StructuralError(
            "no free boundary point to glue onto %s" % vertex, payload={"vertex": vertex}
        )
    walk, index = place
    walk.insert(index, ANCHOR)
    return ANCHOR


def _join(d: _Draft, anchor: str, touch: str) -> None:
    """Identify the boundary point at ``touch`` with the one at ``anchor``."""
    sa, wa, ia = d.locate(anchor)
    st, wt, it = d.locate(touch)
    a_walk = sa["walks"][wa]
    t_walk = st["walks"][wt]
    if sa is not st:
        sa["walks"][wa] = a_walk[: ia + 1] + t_walk[it + 1 :] + t_walk[:it] + a_walk[ia + 1 :]
        del st["walks"][wt]
        d.merge_sheets(
            sa, st, sa["chi"] + st["chi"] - 1, sa["orientable"] and st["orientable"]
        )
    elif wa != wt:
        sa["walks"][wa] = a_walk[: ia + 1] + t_walk[it + 1 :] + t_walk[:it] + a_walk[ia + 1 :]
        del sa["walks"][wt]
        sa["chi"] -= 1
    else:
        rotated = a_walk[ia:] + a_walk[:ia]
        k = rotated.index(touch)
        inner, rest = rotated[1:k], rotated[k + 1 :]
        if _real(inner) and _real(rest):
            sa["walks"][wa] = [anchor] + rest
            sa["walks"].append(inner)
            sa["chi"] -= 1
        else:
            a_walk.remove(touch)


def _contract(d: _Draft, edge_id: str, keep: str) -> None:
    if edge_id not in d.edges:
        raise exceptions.PreconditionError("unknown Y-edge %s" % edge_id)
    u, v = d.edges[edge_id]
    if u == v:
        raise exceptions.PreconditionError("cannot contract the loop %s" % edge_id)
    if keep not in (u, v):
        raise exceptions.PreconditionError("%s is not an end of %s" % (keep, edge_id))
    other = v if keep == u else u

    capped = []
    for s in d.sheets:
        walks = []
        for w in s["walks"]:
            on = [d.on_edge(t, edge_id) for t in w]
            if not any(on):
                walks.append(w)
                continue
            if all(on):
                s["chi"] += 1
                capped.append(s)
                continue
            start = on.index(False)
            out, in_run = [], False
            for t in w[start:] + w[:start]:
                if d.on_edge(t, edge_id):
                    if not in_run:
                        out.append(d.marker())
                    in_run = True
                else:
                    out.append(t)
                    in_run = False
            walks.append(out)
        s["walks"] = walks

    recorded: Dict[str, bool] = {}
    for s in d.sheets:
        for w in s["walks"]:
            n = len(w)
            for i, t in enumerate(w):
                if t.startswith(MARKER):
                    recorded[t] = d.is_y(w[i - 1]) or d.is_y(w[(i + 1) % n])

    del d.edges[edge_id]
    for ends in d.edges.values():
        for i in (0, 1):
            if ends[i] == other:
                ends[i] = keep
    d.vertices.remove(other)

    # a circle that collapsed entirely leaves an interior touch; any free
    # point of the same connected piece stands in for it
    for s in capped:
        place = None
        if s["walks"]:
            place = _free_point(d, _connected_sheets(d, ("sheet", s["id"])))
        if place is None:
            raise exceptions.StructuralError(
                "sheet %s collapsed onto a Y point" % s["id"],
                payload={"sheet": s["id"], "edge": edge_id},
            )
        m = d.marker()
        place[0].insert(place[1], m)
        recorded[m] = False

    pending = sorted((m for m, ok in recorded.items() if not ok), key=lambda m: int(m[1:]))
    if pending:
        anchor = _anchor(d, keep) or pending.pop(0)
        for m in pending:
            _join(d, anchor, m)
    d.finish()
    logger.debug("contracted %s into %s", edge_id, keep)


def _cut(d: _Draft, fin: FinRecord) -> str:
    edge_id = fin.support[0][0]
    walk = d.sheet(fin.sheet)["walks"][fin.boundary]
    n = len(walk)
    position = next(
        (
            i
            for i, t in enumerate(walk)
            if d.on_edge(t, edge_id) and walk[i - 1] == ARC and walk[(i + 1) % n] == ARC
        ),
        None,
    )
    if position is None:
        raise exceptions.PreconditionError(
            "fin %s has no free passage along %s" % (fin.id, edge_id)
        )
    walk[position] = ARC

    passages = [
        (s, k, i, parse_token(t)[1])
        for s in d.sheets
        for k, w in enumerate(s["walks"])
        for i, t in enumerate(w)
        if d.on_edge(t, edge_id)
    ]
    if len(passages) != 2:
        raise exceptions.StructuralError(
            "Y-edge %s carries %d base passages, expected 2" % (edge_id, len(passages)),
            payload={"fin": fin.id},
        )
    (s1, k1, i1, d1), (s2, k2, i2, d2) = passages
    if s1 is not s2 and d1 == d2:
        s2["walks"] = [list(medial_model.reverse_tokens(w)) for w in s2["walks"]]
        i2 = len(s2["walks"][k2]) - 1 - i2
        d2 = -d2
    opposite = d1 != d2
    w1, w2 = s1["walks"][k1], s2["walks"][k2]

    def point(s, k, i):
        return (s["id"], k, i % len(s["walks"][k]))

    corners = [point(s1, k1, i1), point(s1, k1, i1 + 1), point(s2, k2, i2), point(s2, k2, i2 + 1)]
    glue = UnionFind(corners)
    if opposite:
        glue.union(corners[0], corners[3])
        glue.union(corners[1], corners[2])
    else:
        glue.union(corners[0], corners[2])
        glue.union(corners[1], corners[3])
    identified = len(set(corners)) - len({glue[p] for p in corners})
    chi = s1["chi"] + (s2["chi"] if s1 is not s2 else 0) + 1 - identified

    if w1 is not w2:
        rest1 = w1[i1 + 1 :] + w1[:i1]
        rest2 = w2[i2 + 1 :] + w2[:i2]
        if not opposite:
            rest2 = list(medial_model.reverse_tokens(rest2))
        s1["walks"][k1] = rest1 + rest2
        if s1 is s2:
            del s1["walks"][k2]
        else:
            del s2["walks"][k2]
    else:
        i, j = sorted((i1, i2))
        head, middle, tail = w1[:i], w1[i + 1 : j], w1[j + 1 :]
        if opposite:
            pieces = [middle, tail + head]
        else:
            pieces = [head + list(medial_model.reverse_tokens(middle)) + tail]
        s1["walks"][k1 : k1 + 1] = [p for p in pieces if p]

    if s1 is s2:
        s1["chi"] = chi
        s1["orientable"] = s1["orientable"] and opposite
        base = s1
    else:
        base = d.merge_sheets(s1, s2, chi, s1["orientable"] and s2["orientable"])

    del d.edges[edge_id]
    d.attachments.append(
        medial_model.Attachment(
            fin=fin.id, fin_sheet=fin.sheet, base_sheet=base["id"], edge=edge_id
        )
    )
    d.finish()
    logger.debug("cut fin %s along %s", fin.id, edge_id)
    return edge_id


def _straight(d: _Draft, vertex: str) -> bool:
    for s in d.sheets:
        for w in s["walks"]:
            n = len(w)
            for i, t in enumerate(w):
                nxt = w[(i + 1) % n]
                if d.is_y(t) and d.is_y(nxt) and d.ends(t)[1] == vertex:
                    if parse_token(t)[0] == parse_token(nxt)[0]:
                        return False
    return True


def _merge_edges(d: _Draft, vertex: str, a: str, b: str) -> None:
    ua, va = d.edges[a]
    a_other = ua if va == vertex else va
    toward = a if va == vertex else "-" + a
    ub, vb = d.edges[b]
    b_other = vb if ub == vertex else ub
    for s in d.sheets:
        walks = []
        for w in s["walks"]:
            out = []
            for t in w:
                if d.on_edge(t, b):
                    continue
                if d.on_edge(t, a):
                    out.append(a if t == toward else "-" + a)
                else:
                    out.append(t)
            walks.append(out)
        s["walks"] = walks
    d.edges[a] = [a_other, b_other]
    del d.edges[b]
    d.vertices.remove(vertex)


def _normalize(d: _Draft) -> None:
    changed = True
    while changed:
        changed = False
        hosts = d.arc_hosts()
        for v in list(d.vertices):
            if v in d.artificial or v in hosts:
                continue
            incident = [i for i, (a, b) in d.edges.items() if v in (a, b)]
            if len(incident) == 1 and d.edges[incident[0]] == [v, v]:
                d.artificial.add(v)
            elif (
                len(incident) == 2
                and all(d.edges[i][0] != d.edges[i][1] for i in incident)
                and _straight(d, v)
            ):
                _merge_edges(d, v, incident[0], incident[1])
                changed = True
                break


def normalize(c: MedialComplex) -> MedialComplex:
    """Merge straight-through valence-2 points and mark lone loops artificial."""
    d = _Draft(c)
    _normalize(d)
    return d.build()


def _neighbour(tokens: Sequence[str], index: int, step: int) -> int:
    n = len(tokens)
    for k in range(1, n + 1):
        j = (index + step * k) % n
        if tokens[j] != ARC:
            return j
    raise exceptions.StructuralError("edge circle has no Y token")


def _terminals(c: MedialComplex) -> Dict[Tuple[str, int], List[Tuple[str, int, int]]]:
    """Y-edge ends (edge, 0 = first end) where an edge arc touches the network."""
    terminals: Dict[Tuple[str, int], List[Tuple[str, int, int]]] = {}
    for sheet_id, bidx, b in c.walks():
        if b.kind != "mixed":
            continue
        for i, t in enumerate(b.tokens):
            if t != ARC:
                continue
            edge_id, d = parse_token(b.tokens[_neighbour(b.tokens, i, -1)])
            terminals.setdefault((edge_id, 1 if d > 0 else 0), []).append((sheet_id, bidx, i))
            edge_id, d = parse_token(b.tokens[_neighbour(b.tokens, i, 1)])
            terminals.setdefault((edge_id, 0 if d > 0 else 1), []).append((sheet_id, bidx, i))
    return terminals


def _landing(c: MedialComplex, terminals, vertex: str) -> List[Tuple[str, int, int]]:
    """Edge arcs ending at ``vertex`` through any of its Y-edge ends."""
    found = []
    for (edge_id, side), owners in terminals.items():
        e = c.network.edge(edge_id)
        if (e.u, e.v)[side] == vertex:
            found.extend(owners)
    return found


def _trace(c, terminals, sheet_id, bidx, arc, step) -> FinRecord:
    tokens = c.sheet(sheet_id).boundaries[bidx].tokens
    n = len(tokens)
    support: List[Tuple[str, int]] = []
    vertices: List[str] = []
    j = _neighbour(tokens, arc, step)
    for _ in range(n):
        edge_id, d = parse_token(tokens[j])
        start, end = medial_model.token_ends(c.network, tokens[j])
        if step < 0:
            start, end = end, start
        if not vertices:
            vertices.append(start)
        vertices.append(end)
        support.append((edge_id, d * step))
        side = 1 if d * step > 0 else 0
        k = (j + step) % n
        if tokens[k] == ARC:
            closed_by, end_leaf = "arc", (sheet_id, bidx, k)
            break
        owners = terminals.get((edge_id, side))
        if not owners and parse_token(tokens[k])[0] in {e for e, _ in support}:
            # the boundary doubles back at this point
            owners = _landing(c, terminals, end)
        if owners:
            closed_by, end_leaf = "landing", owners[0]
            break
        j = k
    else:
        raise exceptions.StructuralError(
            "fin trace from %s does not terminate" % sheet_id,
            payload={"sheet": sheet_id, "boundary": bidx, "arc": arc},
        )
    if len({e for e, _ in support}) != len(support):
        raise exceptions.StructuralError(
            "fin support from %s is not a simple path" % vertices[0],
            payload={"sheet": sheet_id, "support": [e for e, _ in support]},
        )
    return FinRecord(
        id="",
        sheet=sheet_id,
        boundary=bidx,
        arc=arc,
        support=tuple(support),
        vertices=tuple(vertices),
        start_sheet=sheet_id,
        end_sheet=end_leaf[0],
        end_leaf=end_leaf,
        closed_by=closed_by,
    )


def _reverses(a: FinRecord, b: FinRecord) -> bool:
    return a.vertices == tuple(reversed(b.vertices)) and a.support == tuple(
        (e, -d) for e, d in reversed(b.support)
    )


def _check_declared(c: MedialComplex, fins: Sequence[FinRecord]) -> None:
    for declared in c.fins:
        match = [f for f in fins if set(f.points) == set(declared.points)]
        if not match:
            raise exceptions.StructuralError(
                "declared fin %s does not follow the sheet boundaries" % declared.id,
                payload={"fin": declared.id, "points": list(declared.points)},
            )
        fin = match[0]
        if declared.support and set(declared.support) != set(fin.support_edges):
            raise exceptions.StructuralError(
                "declared fin %s has support %s, traced %s"
                % (declared.id, list(declared.support), list(fin.support_edges)),
                payload={"fin": declared.id},
            )
        traced = (fin.start_sheet, fin.end_sheet)
        if tuple(declared.points) != fin.points:
            traced = traced[::-1]
        given = (declared.start_sheet, declared.end_sheet)
        if any(s is not None and s != t for s, t in zip(given, traced)):
            raise exceptions.StructuralError(
                "declared fin %s runs from %s to %s, traced from %s to %s"
                % ((declared.id,) + given + traced),
                payload={"fin": declared.id, "declared": list(given), "traced": list(traced)},
            )


def trace_fins(c: MedialComplex) -> List[FinRecord]:
    """Trace every fin curve, dropping traces that repeat one in reverse."""
    terminals = _terminals(c)
    order = c.network.order
    fins: List[FinRecord] = []
    for sheet_id, bidx, b in c.walks():
        if b.kind != "mixed":
            continue
        for i, t in enumerate(b.tokens):
            if t != ARC:
                continue
            for step in (1, -1):
                trace = _trace(c, terminals, sheet_id, bidx, i, step)
                twin = next(
                    (
                        k
                        for k, f in enumerate(fins)
                        if _reverses(f, trace)
                        or (f.vertices == trace.vertices and f.support == trace.support)
                    ),
                    None,
                )
                if twin is None:
                    fins.append(trace)
                elif order[trace.origin] < order[fins[twin].origin]:
                    fins[twin] = trace
    fins.sort(key=lambda f: (order[f.origin], order[f.end]))

    named = []
    seen: Dict[str, int] = {}
    for f in fins:
        base = "%s-%s" % f.points
        seen[base] = seen.get(base, 0) + 1
        name = base if seen[base] == 1 else "%s#%d" % (base, seen[base])
        named.append(replace(f, id=name))
    essentials = [f for f in named if f.essential]
    result = []
    for f in named:
        type2 = f.essential and any(
            set(f.support_edges) & set(g.support_edges) for g in essentials if g.id != f.id
        )
        result.append(replace(f, type2=type2))
    if c.fins:
        _check_declared(c, result)
    return result


def classify_fin_curves(c: MedialComplex) -> Dict[FinRecord, str]:
    return {f: f.fin_class for f in trace_fins(c)}


def _find(fins: Sequence[FinRecord], side: str, other: str) -> Optional[FinRecord]:
    for f in fins:
        if set(f.points) == {side, other}:
            return f
    return None


def slide_step(c: MedialComplex, fin: FinRecord, side: Optional[str] = None) -> MedialComplex:
    """Move the fin point ``side`` across the next junction of the support."""
    side = fin.origin if side is None else side
    if side not in fin.points:
        raise exceptions.PreconditionError("%s is not a fin point of %s" % (side, fin.id))
    if len(fin.support) < 2:
        return c
    edge_id = fin.support[0][0] if side == fin.origin else fin.support[-1][0]
    d = _Draft(c)
    _contract(d, edge_id, side)
    return d.build()


def _slide_fully(c, fin, side, record=None):
    other = fin.end if side == fin.origin else fin.origin
    while fin is not None and len(fin.support) > 1:
        edge_id = fin.support[0][0] if side == fin.origin else fin.support[-1][0]
        c = slide_step(c, fin, side)
        if record is not None:
            record("slide", fin, edge_id, side)
        fin = _find(trace_fins(c), side, other)
    if fin is None:
        logger.warning("fin %s-%s changed shape while sliding", side, other)
    return c, fin


def slide_fin(c: MedialComplex, fin: FinRecord, side: Optional[str] = None) -> MedialComplex:
    """Slide a fin until its support is a single Y-edge."""
    side = fin.origin if side is None else side
    return _slide_fully(c, fin, side)[0]


def cut_essential(c: MedialComplex, fin: FinRecord) -> MedialComplex:
    if not fin.essential:
        raise exceptions.PreconditionError("fin %s is not essential" % fin.id)
    if len(fin.support) != 1:
        raise exceptions.PreconditionError(
            "fin %s crosses a junction, slide it first" % fin.id,
            payload={"support": list(fin.support_edges)},
        )
    d = _Draft(c)
    _cut(d, fin)
    return d.build()


def contract_inessential(c: MedialComplex, fin: Optional[FinRecord] = None) -> MedialComplex:
    if fin is None:
        fin = next((f for f in trace_fins(c) if not f.essential), None)
        if fin is None:
            raise exceptions.PreconditionError("complex has no inessential fin")
    if fin.essential:
        raise exceptions.PreconditionError("fin %s is essential" % fin.id)
    if len(fin.support) != 1:
        raise exceptions.PreconditionError(
            "fin %s crosses a junction, slide it first" % fin.id,
            payload={"support": list(fin.support_edges)},
        )
    d = _Draft(c)
    _contract(d, fin.support[0][0], fin.origin)
    return d.build()


@dataclass(frozen=True)
class Policy:
    """How the algorithm chooses among type-2 essential fins and junction-crossing fins."""

    name: str = "lowest"
    highest: bool = False
    far: bool = False
    script: Tuple[str, ...] = ()
    strict: bool = False

    @classmethod
    def from_name(cls, name: str) -> "Policy":
        if name.startswith("script:"):
            tokens = tuple(t.strip() for t in name[len("script:") :].split(",") if t.strip())
            return cls(name=name, script=tokens)
        known = {
            "lowest": (False, False),
            "highest": (True, False),
            "lowest-far": (False, True),
            "highest-far": (True, True),
        }
        if name not in known:
            raise exceptions.PreconditionError(
                "unknown choice policy %s" % name,
                payload={"known": sorted(known) + ["script:<fin points>"]},
            )
        highest, far = known[name]
        return cls(name=name, highest=highest, far=far)

    def choose(
        self, candidates: Sequence[FinRecord], position: int = 0
    ) -> Tuple[FinRecord, str, int]:
        """Return the chosen fin, the fin point to slide from and the next script position."""
        if position < len(self.script):
            token = self.script[position]
            side, _, other = token.partition(">")
            for f in candidates:
                if side in f.points and (not other or set(f.points) == {side, other}):
                    return f, side, position + 1
            if self.strict:
                raise exceptions.DecompositionError(
                    "logged choice %s is not available" % token,
                    payload={"candidates": [f.id for f in candidates]},
                )
        fin = candidates[-1] if self.highest else candidates[0]
        return fin, fin.end if self.far else fin.origin, position


@dataclass(frozen=True)
class DecompositionResult:
    components: Tuple[MedialComplex, ...]
    gamma: extended_graph.ExtendedGraph
    log: Tuple[Dict[str, Any], ...]
    policy: str
    fins: Tuple[FinRecord, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "policy": self.policy,
            "fins": [f.to_dict() for f in self.fins],
            "components": [
                {"id": m.component, "sheets": [s.id for s in m.sheets]} for m in self.components
            ],
            "gamma": {
                "vertices": list(self.gamma.vertices),
                "edges": [
                    dict(self.gamma.edge_data.get(e.id, {}), id=e.id, source=e.u, target=e.v)
                    for e in self.gamma.edges
                ],
            },
            "log": list(self.log),
        }


@dataclass(frozen=True)
class GlobalInvariantInputs:
    components: Tuple[MedialComplex, ...]
    gamma: extended_graph.ExtendedGraph
    beta1: int


class _Run:
    def __init__(self, policy: Policy, guard: int) -> None:
        self.policy = policy
        self.guard = guard
        self.position = 0
        self.pending_choice = False
        self.log: List[Dict[str, Any]] = []

    def choose(self, candidates):
        fin, side, self.position = self.policy.choose(candidates, self.position)
        self.pending_choice = True
        return fin, side

    def record(self, action: str, fin: FinRecord, edge_id: str, side: str) -> None:
        if len(self.log) >= self.guard:
            raise exceptions.DecompositionError(
                "decomposition did not finish within %d steps" % self.guard,
                payload={"log": self.log},
            )
        entry = {
            "step": len(self.log) + 1,
            "action": action,
            "fin": fin.id,
            "points": list(fin.points),
            "class": fin.fin_class,
            "edge": edge_id,
            "side": side,
            "policy": self.policy.name,
            "chosen": self.pending_choice,
        }
        self.pending_choice = False
        self.log.append(entry)
        logger.info(
            "step %d: %s fin %s along %s from %s", entry["step"], action, fin.id, edge_id, side
        )


def _split(c: MedialComplex) -> List[MedialComplex]:
    graph = nx.Graph()
    sheet_order = {s.id: i for i, s in enumerate(c.sheets)}
    for s in c.sheets:
        graph.add_node(("sheet", s.id))
    for v in c.network.vertices:
        graph.add_node(("vertex", v))
    for e in c.network.edges:
        graph.add_edge(("vertex", e.u), ("vertex", e.v))
    for sheet_id, _, b in c.walks():
        for edge_id, _ in b.steps():
            graph.add_edge(("sheet", sheet_id), ("vertex", c.network.edge(edge_id).u))

    def first_sheet(part):
        orders = [sheet_order[n] for kind, n in part if kind == "sheet"]
        return min(orders, default=len(sheet_order))

    parts = sorted(nx.connected_components(graph), key=first_sheet)
    components = []
    for k, part in enumerate(parts, start=1):
        sheets = [n for kind, n in part if kind == "sheet"]
        vertices = [n for kind, n in part if kind == "vertex"]
        components.append(medial_model.restrict(c, sheets, vertices, "M%d" % k))
    return components


def _gamma(c: MedialComplex, components: Sequence[MedialComplex]) -> extended_graph.ExtendedGraph:
    def resolve(sheet_id):
        while sheet_id in c.aliases:
            sheet_id = c.aliases[sheet_id]
        return sheet_id

    owner = {s.id: m.component for m in components for s in m.sheets}
    edges, data = [], {}
    for k, a in enumerate(c.attachments, start=1):
        edge_id = "g%d" % k
        edges.append((edge_id, owner[resolve(a.fin_sheet)], owner[resolve(a.base_sheet)]))
        data[edge_id] = a.to_dict()
    return extended_graph.make_graph(
        [m.component for m in components], edges, directed=True, edge_data=data
    )


def decompose(
    c: MedialComplex,
    policy: Union[str, Policy, None] = None,
    step_factor: Optional[int] = None,
) -> DecompositionResult:
    """Cut and contract fins until only irreducible components remain."""
    if policy is None:
        policy = config.CONFIG["MEDIAL_DEFAULT_POLICY"]
    if isinstance(policy, str):
        policy = Policy.from_name(policy)
    factor = step_factor or config.CONFIG["MEDIAL_STEP_FACTOR"]
    medial_model.ensure_valid(c, allow_points=True)

    initial = trace_fins(c)
    run = _Run(policy, factor * len(initial))
    current = replace(c, fins=())
    while True:
        fins = trace_fins(current)
        if not fins:
            break
        type1 = [f for f in fins if f.essential and not f.type2]
        essentials = [f for f in fins if f.essential]
        crossing = [f for f in fins if not f.essential and len(f.support) > 1]
        if essentials:
            if type1:
                fin, side = type1[0], type1[0].origin
            else:
                fin, side = run.choose(essentials)
            current, fin = _slide_fully(current, fin, side, run.record)
            if fin is None or not fin.essential:
                continue
            edge_id = fin.support[0][0]
            current = cut_essential(current, fin)
            run.record("cut", fin, edge_id, side)
        elif crossing:
            fin, side = run.choose(crossing)
            edge_id = fin.support[0][0] if side == fin.origin else fin.support[-1][0]
            current = slide_step(current, fin, side)
            run.record("slide", fin, edge_id, side)
        else:
            fin = fins[0]
            current = contract_inessential(current, fin)
            run.record("contract", fin, fin.support[0][0], fin.origin)

    current = normalize(current)
    components = _split(current)
    for m in components:
        report = medial_model.validate_complex(m, allow_points=True)
        if not report.ok or not medial_model.is_fin_free(m):
            raise exceptions.InternalConsistencyError(
                "component %s is not an irreducible medial component" % m.component,
                payload={"violations": [v.to_dict() for v in report.violations]},
            )
    gamma = _gamma(current, components)
    before = medial_model.complex_euler_characteristic(c)
    after = sum(medial_model.complex_euler_characteristic(m) for m in components)
    if before != after - len(gamma.edges):
        raise exceptions.InternalConsistencyError(
            "decomposition changed the Euler characteristic: %d != %d - %d"
            % (before, after, len(gamma.edges))
        )
    logger.info(
        "%s: %d components, %d cuts, policy %s",
        c.name or "complex",
        len(components),
        len(gamma.edges),
        policy.name,
    )
    return DecompositionResult(
        components=tuple(components),
        gamma=gamma,
        log=tuple(run.log),
        policy=policy.name,
        fins=tuple(initial),
    )


def assemble_check(r: DecompositionResult) -> GlobalInvariantInputs:
    if len(r.gamma.vertices) != len(r.components):
        raise exceptions.InternalConsistencyError(
            "top-level graph has %d vertices for %d components"
            % (len(r.gamma.vertices), len(r.components))
        )
    return GlobalInvariantInputs(
        components=r.components, gamma=r.gamma, beta1=extended_graph.betti1(r.gamma)
    )


def replay(c: MedialComplex, log: Sequence[Dict[str, Any]]) -> DecompositionResult:
    """Run the decomposition again, taking every policy choice from a step log."""
    script = []
    for entry in log:
        if entry.get("chosen"):
            side = entry["side"]
            other = [p for p in entry["points"] if p != side] or [side]
            script.append("%s>%s" % (side, other[0]))
    policy = Policy(name="replay", script=tuple(script), strict=True)
    result = decompose(c, policy)
    expected = [(e["action"], e["fin"], e["edge"]) for e in log]
    actual = [(e["action"], e["fin"], e["edge"]) for e in result.log]
    if expected != actual:
        raise exceptions.DecompositionError(
            "replay diverged from the step log",
            payload={"expected": expected, "actual": actual},
        )
    return result
