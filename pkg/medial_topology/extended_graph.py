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

"""Extended graphs: multigraphs that allow loops and parallel edges.

These back every graph of the two-level structure: the top-level graph of
irreducible components, the bipartite sheet/Y-node graph of a component and
the Y-networks themselves.
"""

from dataclasses import dataclass, field
import logging
from typing import Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

import networkx as nx

from medial_topology import exceptions

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Edge:
    id: str
    u: str
    v: str

    @property
    def is_loop(self) -> bool:
        return self.u == self.v

    def other(self, vertex: str) -> str:
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class ExtendedGraph:
    vertices: Tuple[str, ...] = ()
    edges: Tuple[Edge, ...] = ()
    artificial_vertices: FrozenSet[str] = frozenset()
    directed: bool = False
    vertex_data: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)
    edge_data: Mapping[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise exceptions.StructuralError("duplicated vertex id in extended graph")
        edge_ids = [e.id for e in self.edges]
        if len(set(edge_ids)) != len(edge_ids):
            raise exceptions.StructuralError("duplicated edge id in extended graph")
        for e in self.edges:
            if e.u not in known or e.v not in known:
                raise exceptions.StructuralError(
                    "edge %s has an undeclared endpoint" % e.id,
                    payload={"edge": e.id, "endpoints": [e.u, e.v]},
                )
        for a in self.artificial_vertices:
            if a not in known:
                raise exceptions.StructuralError("unknown artificial vertex %s" % a)
            incident = [e for e in self.edges if a in (e.u, e.v)]
            if len(incident) != 1 or not incident[0].is_loop:
                raise exceptions.StructuralError(
                    "artificial vertex %s must carry exactly one loop" % a,
                    payload={"vertex": a},
                )

    @property
    def order(self) -> Dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def edge(self, edge_id: str) -> Edge:
        for e in self.edges:
            if e.id == edge_id:
                return e
        raise KeyError(edge_id)

    def incident(self, vertex: str) -> List[Edge]:
        return [e for e in self.edges if vertex in (e.u, e.v)]


def make_graph(
    vertices: Iterable[str],
    edges: Iterable[Tuple[str, str, str]],
    artificial: Iterable[str] = (),
    directed: bool = False,
    vertex_data: Optional[Mapping[str, Any]] = None,
    edge_data: Optional[Mapping[str, Any]] = None,
) -> ExtendedGraph:
    return ExtendedGraph(
        vertices=tuple(vertices),
        edges=tuple(Edge(i, u, v) for i, u, v in edges),
        artificial_vertices=frozenset(artificial),
        directed=directed,
        vertex_data=dict(vertex_data or {}),
        edge_data=dict(edge_data or {}),
    )


def valence(g: ExtendedGraph, vertex: str) -> int:
    return sum(2 if e.is_loop else 1 for e in g.incident(vertex))


def to_networkx(g: ExtendedGraph, directed: Optional[bool] = None):
    """Multigraph view keyed by edge id; edge attribute ``order`` is the declaration index."""
    directed = g.directed if directed is None else directed
    graph = nx.MultiDiGraph() if directed else nx.MultiGraph()
    for v in g.vertices:
        graph.add_node(v, artificial=v in g.artificial_vertices)
    for i, e in enumerate(g.edges):
        graph.add_edge(e.u, e.v, key=e.id, order=i)
    return graph


def subgraph(g: ExtendedGraph, vertices: Iterable[str]) -> ExtendedGraph:
    keep = set(vertices)
    return ExtendedGraph(
        vertices=tuple(v for v in g.vertices if v in keep),
        edges=tuple(e for e in g.edges if e.u in keep and e.v in keep),
        artificial_vertices=frozenset(a for a in g.artificial_vertices if a in keep),
        directed=g.directed,
        vertex_data={v: d for v, d in g.vertex_data.items() if v in keep},
        edge_data={
            e.id: g.edge_data[e.id]
            for e in g.edges
            if e.u in keep and e.v in keep and e.id in g.edge_data
        },
    )


def components(g: ExtendedGraph) -> List[ExtendedGraph]:
    order = g.order
    parts = nx.connected_components(to_networkx(g, directed=False))
    parts = sorted(parts, key=lambda part: min(order[v] for v in part))
    return [subgraph(g, part) for part in parts]


def betti1(g: ExtendedGraph) -> int:
    if not g.vertices:
        return 0
    graph = to_networkx(g, directed=False)
    return len(g.edges) - len(g.vertices) + nx.number_connected_components(graph)


@dataclass(frozen=True)
class SpanningTree:
    root: str
    vertices: Tuple[str, ...]
    edges: Tuple[str, ...]


@dataclass(frozen=True)
class SpanningForest:
    trees: Tuple[SpanningTree, ...]
    non_tree_edges: Tuple[str, ...]

    @property
    def tree_edges(self) -> FrozenSet[str]:
        return frozenset(e for t in self.trees for e in t.edges)


def maximal_tree(g: ExtendedGraph) -> SpanningForest:
    """Kruskal forest where the edge weight is the declaration index."""
    graph = to_networkx(g, directed=False)
    chosen = {
        key
        for _, _, key in nx.minimum_spanning_edges(
            graph, algorithm="kruskal", weight="order", keys=True, data=False
        )
    }
    trees = []
    for part in components(g):
        trees.append(
            SpanningTree(
                root=part.vertices[0],
                vertices=part.vertices,
                edges=tuple(e.id for e in part.edges if e.id in chosen),
            )
        )
    non_tree = tuple(e.id for e in g.edges if e.id not in chosen)
    logger.debug("maximal tree: %d tree edges, %d non-tree", len(chosen), len(non_tree))
    return SpanningForest(trees=tuple(trees), non_tree_edges=non_tree)


def free_rank_m_valent(k: int, m: int) -> int:
    if k < 0 or m < 0:
        raise exceptions.PreconditionError("vertex count and valence must be nonnegative")
    if (k * m) % 2:
        raise exceptions.PreconditionError(
            "no %d-valent graph has %d vertices" % (m, k), payload={"k": k, "m": m}
        )
    if k == 0:
        return 1
    return (k * (m - 2)) // 2 + 1


@dataclass(frozen=True)
class ReducedWeightedGraph:
    vertices: Tuple[str, ...]
    weights: Mapping[str, int] = field(hash=False)
    multiplicities: Mapping[Tuple[str, str], int] = field(hash=False)
    artificial_vertices: FrozenSet[str] = frozenset()

    def valence(self, vertex: str) -> int:
        return self.weights.get(vertex, 0) + sum(
            m for pair, m in self.multiplicities.items() if vertex in pair
        )

    def betti1(self) -> int:
        if not self.vertices:
            return 0
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices)
        graph.add_edges_from(self.multiplicities)
        edges = sum(self.multiplicities.values()) + sum(self.weights.values()) // 2
        return edges - len(self.vertices) + nx.number_connected_components(graph)


def reduce_weighted(g: ExtendedGraph) -> ReducedWeightedGraph:
    order = g.order
    weights = {v: 0 for v in g.vertices}
    multiplicities: Dict[Tuple[str, str], int] = {}
    for e in g.edges:
        if e.is_loop:
            weights[e.u] += 2
            continue
        pair = tuple(sorted((e.u, e.v), key=order.get))
        multiplicities[pair] = multiplicities.get(pair, 0) + 1
    return ReducedWeightedGraph(
        vertices=g.vertices,
        weights=weights,
        multiplicities=multiplicities,
        artificial_vertices=g.artificial_vertices,
    )


def local_structure_violations(rg: ReducedWeightedGraph, expected: int = 4) -> List[str]:
    """Vertices whose weight plus incident multiplicities is not the junction valence."""
    return [
        v
        for v in rg.vertices
        if v not in rg.artificial_vertices and rg.valence(v) != expected
    ]


def reduced_label(rg: ReducedWeightedGraph) -> str:
    """Short name of a reduced Y-component graph, e.g. ``circle``, ``bullet4`` or ``4``."""
    vertices = [v for v in rg.vertices if v not in rg.artificial_vertices]
    if not vertices:
        return "circle" if rg.vertices else "empty"
    parts = ["bullet%d" % rg.weights[v] for v in vertices if rg.weights.get(v)]
    parts += [str(m) for m in rg.multiplicities.values()]
    return " ".join(parts) if parts else "point"
