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

import logging
from typing import Optional

from graphviz import Digraph, Graph

from medial_topology import extended_graph

logger = logging.getLogger(__name__)

_SHAPES = {"sheet": "box", "y": "ellipse", "component": "box"}


def export_dot(
    g: extended_graph.ExtendedGraph, name: str = "G", directed: Optional[bool] = None
) -> str:
    """DOT source for any extended graph, component graph or top-level graph."""
    directed = g.directed if directed is None else directed
    dot = Digraph(name) if directed else Graph(name)
    # graphviz reads "a:b" as a port, so nodes get positional names
    node = {v: "n%d" % i for i, v in enumerate(g.vertices)}
    for v in g.vertices:
        data = g.vertex_data.get(v, {})
        attrs = {"label": v}
        kind = data.get("kind") if isinstance(data, dict) else None
        if kind in _SHAPES:
            attrs["shape"] = _SHAPES[kind]
        if kind == "y" and data.get("label"):
            attrs["label"] = "%s (%s)" % (v, data["label"])
        if v in g.artificial_vertices:
            attrs["style"] = "dashed"
        dot.node(node[v], **attrs)
    for e in g.edges:
        dot.edge(node[e.u], node[e.v], label=e.id)
    logger.debug("exported %s: %d nodes, %d edges", name, len(g.vertices), len(g.edges))
    return dot.source


def export_reduced_dot(rg: extended_graph.ReducedWeightedGraph, name: str = "reduced") -> str:
    """Loop weights go on the nodes, edge multiplicities on the edges."""
    dot = Graph(name)
    node = {v: "n%d" % i for i, v in enumerate(rg.vertices)}
    for v in rg.vertices:
        weight = rg.weights.get(v, 0)
        label = "%s (%d)" % (v, weight) if weight else v
        if v in rg.artificial_vertices:
            dot.node(node[v], label=label, style="dashed")
        else:
            dot.node(node[v], label=label, shape="doublecircle" if weight else "circle")
    for (u, v), multiplicity in rg.multiplicities.items():
        dot.edge(node[u], node[v], label=str(multiplicity))
    return dot.source
