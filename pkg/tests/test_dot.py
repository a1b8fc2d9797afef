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

from medial_topology import decomposition
from medial_topology import document
from medial_topology import dot
from medial_topology import extended_graph
from medial_topology import medial_model


def _lines(source, marker):
    return [line for line in source.splitlines() if marker in line]


def _nodes(source):
    return [
        line
        for line in source.splitlines()
        if line.strip().startswith("n") and "--" not in line and "->" not in line
    ]


def test_component_graph_export():
    g = medial_model.build_component_graph(document.load_fixture("fig13"))
    source = dot.export_dot(g, "fig13")
    assert source.startswith("graph fig13 {")
    assert len(_nodes(source)) == 7
    assert len(_lines(source, " -- ")) == 6
    assert "shape=box" in source
    assert "Y:1 (circle)" in source


def test_gamma_export_is_directed():
    result = decomposition.decompose(document.load_fixture("fig8c"))
    source = dot.export_dot(result.gamma, "gamma")
    assert source.startswith("digraph gamma {")
    assert len(_nodes(source)) == 4
    assert len(_lines(source, " -> ")) == 3


def test_y_network_marks_artificial_vertices():
    source = dot.export_dot(document.load_fixture("fig13").network, "ynet")
    assert len(_lines(source, "style=dashed")) == 2
    assert len(_lines(source, " -- ")) == 2


def test_direction_can_be_forced():
    source = dot.export_dot(document.load_fixture("fig9d").network, "ynet", directed=True)
    assert source.startswith("digraph ynet {")
    assert len(_lines(source, " -> ")) == 2


def test_reduced_graph_export():
    rg = extended_graph.reduce_weighted(document.load_fixture("fig9d").network)
    source = dot.export_reduced_dot(rg)
    assert 'label="J (4)"' in source
    assert "shape=doublecircle" in source
    assert _lines(source, " -- ") == []
    theta = extended_graph.make_graph(["a", "b"], [("e%d" % i, "a", "b") for i in range(1, 5)])
    source = dot.export_reduced_dot(extended_graph.reduce_weighted(theta), "theta")
    assert source.startswith("graph theta {")
    assert len(_lines(source, "n0 -- n1 [label=4]")) == 1
    assert len(_lines(source, "shape=circle")) == 2
