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

from dataclasses import replace

import pytest

from medial_topology import document
from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import medial_model
from medial_topology.medial_model import Boundary, Sheet


def _codes(report):
    return {v.code for v in report.violations}


def _with_sheet(c, index, **changes):
    sheets = list(c.sheets)
    sheets[index] = replace(sheets[index], **changes)
    return replace(c, sheets=tuple(sheets))


def test_token_helpers():
    assert medial_model.parse_token("y1") == ("y1", 1)
    assert medial_model.parse_token("-y1") == ("y1", -1)
    assert medial_model.make_token("y1", -1) == "-y1"
    assert medial_model.reverse_tokens(("a", "~", "-b")) == ("b", "~", "-a")


def test_boundary_kinds():
    assert Boundary(("~",)).kind == "edge"
    assert Boundary(("t", "t")).kind == "attached"
    assert Boundary(("~", "f")).kind == "mixed"
    assert Boundary(("~", "f", "~", "g")).arc_count == 2


def test_sheet_euler_characteristic():
    disk = Sheet("D", 0, True, (Boundary(("~",)),))
    torus = Sheet("T", 1, True, ())
    klein = Sheet("K", 2, False, ())
    assert disk.euler_characteristic == 1
    assert torus.euler_characteristic == 0
    assert torus.weighted_genus == 2
    assert klein.weighted_genus == 2
    assert klein.closed


def test_sheet_from_euler():
    annulus = medial_model.sheet_from_euler("A", 0, True, [Boundary(("~",)), Boundary(("t",))])
    assert annulus.genus == 0
    mobius = medial_model.sheet_from_euler("M", 0, False, [Boundary(("~",))])
    assert mobius.genus == 1
    with pytest.raises(exceptions.StructuralError):
        medial_model.sheet_from_euler("X", 0, True, [Boundary(("~",))])


@pytest.mark.parametrize("name", document.fixture_names())
def test_fixtures_are_valid(name):
    c = document.load_fixture(name, validate=False)
    report = medial_model.validate_complex(c)
    assert report.ok, report.format()


def test_closed_nonorientable_sheet_is_a_warning():
    report = medial_model.validate_complex(document.load_fixture("klein"))
    assert report.ok
    assert [w.code for w in report.warnings] == ["closed-nonorientable"]
    assert "valid" in report.format()


def test_fig13_structure():
    c = document.load_fixture("fig13")
    assert len(medial_model.y_components(c)) == 2
    assert medial_model.is_connected(c)
    assert medial_model.is_fin_free(c)
    assert medial_model.junction_count(c) == 0
    assert medial_model.complex_euler_characteristic(c) == 2
    assert medial_model.traversal_counts(c) == {"t1": 3, "t2": 3}


def test_fig8c_structure():
    c = document.load_fixture("fig8c")
    assert not medial_model.is_fin_free(c)
    assert medial_model.complex_euler_characteristic(c) == 1
    hosts = medial_model.arc_hosts(c)
    assert all(hosts[p] == 1 for p in ("p1", "q1", "p2", "q2", "p3", "q3"))


def test_fig13_component_graph():
    g = medial_model.build_component_graph(document.load_fixture("fig13"))
    assert len(g.vertices) == 7
    assert len(g.edges) == 6
    assert extended_graph.betti1(g) == 0
    assert g.vertex_data["Y:1"]["label"] == "circle"
    assert g.vertex_data["S3"]["kind"] == "sheet"
    assert [e.id for e in g.edges if e.u == "S3"] == ["S3:0", "S3:1"]


def test_torus_component_graph():
    g = medial_model.build_component_graph(document.load_fixture("torus"))
    assert g.vertices == ("T",)
    assert g.edges == ()


def test_fig9d_component_graph_has_a_bouquet():
    g = medial_model.build_component_graph(document.load_fixture("fig9d"))
    assert g.vertex_data["Y:1"]["label"] == "bullet4"
    assert extended_graph.betti1(g) == 0


def test_component_graph_needs_a_fin_free_complex():
    with pytest.raises(exceptions.PreconditionError):
        medial_model.build_component_graph(document.load_fixture("fig8c"))


def test_junction_consistency():
    report = medial_model.check_six_junction_consistency(document.load_fixture("fig9d"))
    assert report.ok
    assert len(report.germs["J"]) == 6


def test_junction_pairing_mismatch():
    c = document.load_fixture("junction_mismatch")
    assert medial_model.validate_complex(c).ok
    report = medial_model.check_six_junction_consistency(c)
    assert _codes(report) == {"pairing"}
    assert report.violations[0].location == "J"


@pytest.mark.parametrize("name", document.fixture_names())
def test_every_token_deletion_is_rejected(name):
    c = document.load_fixture(name, validate=False)
    for k, sheet in enumerate(c.sheets):
        for i, b in enumerate(sheet.boundaries):
            for j in range(len(b.tokens)):
                tokens = b.tokens[:j] + b.tokens[j + 1 :]
                boundaries = sheet.boundaries[:i] + (Boundary(tokens),) + sheet.boundaries[i + 1 :]
                mutated = _with_sheet(c, k, boundaries=boundaries)
                assert not medial_model.validate_complex(mutated).ok, (sheet.id, i, j)


def test_cover_violation():
    c = document.load_fixture("fig13")
    mutated = _with_sheet(c, 0, boundaries=(Boundary(("t1", "t1")),))
    report = medial_model.validate_complex(mutated)
    assert _codes(report) == {"cover"}
    assert report.violations[0].location == "t1"


def test_unknown_edge_and_broken_walk():
    c = document.load_fixture("fig1")
    unknown = _with_sheet(c, 0, boundaries=(Boundary(("zz",)), Boundary(("f", "-f"))))
    assert "unknown-edge" in _codes(medial_model.validate_complex(unknown))
    broken = _with_sheet(c, 0, boundaries=(Boundary(("t",)), Boundary(("f", "f"))))
    assert "broken-walk" in _codes(medial_model.validate_complex(broken))


def test_genus_violations():
    c = document.load_fixture("fig9a")
    assert "genus" in _codes(medial_model.validate_complex(_with_sheet(c, 0, genus=-1)))
    assert "genus" in _codes(medial_model.validate_complex(_with_sheet(c, 0, orientable=False)))


def test_naked_edge_and_fin_point():
    c = document.load_fixture("fig9a")
    network = extended_graph.make_graph(["p", "q"], [("x", "p", "q")])
    codes = _codes(medial_model.validate_complex(replace(c, network=network)))
    assert "naked-edge" in codes
    assert "fin-point" in codes


def test_disconnected_complex():
    c = document.load_fixture("fig9b")
    extra = Sheet("E", 0, True, (Boundary(("~",)),))
    report = medial_model.validate_complex(replace(c, sheets=c.sheets + (extra,)))
    assert _codes(report) == {"disconnected"}


def test_duplicate_sheet_and_no_sheets():
    c = document.load_fixture("fig9a")
    assert "duplicate-sheet" in _codes(
        medial_model.validate_complex(replace(c, sheets=c.sheets + c.sheets))
    )
    assert _codes(medial_model.validate_complex(replace(c, sheets=()))) == {"no-sheets"}


def test_arc_must_end_at_fin_points():
    c = document.load_fixture("fig9d")
    mutated = _with_sheet(c, 2, boundaries=(Boundary(("~", "a", "b")),))
    codes = _codes(medial_model.validate_complex(mutated))
    assert "arc-end" in codes
    assert "arc-end" not in _codes(medial_model.validate_complex(mutated, allow_points=True))


def test_ensure_valid_raises_with_violations():
    c = document.load_fixture("fig13")
    mutated = _with_sheet(c, 0, boundaries=(Boundary(("t1", "t1")),))
    with pytest.raises(exceptions.ValidationError) as e:
        medial_model.ensure_valid(mutated)
    assert e.value.payload["violations"][0]["code"] == "cover"


def test_restrict():
    c = document.load_fixture("fig13")
    sub = medial_model.restrict(c, ["S1"], ["o1"], "M9")
    assert [s.id for s in sub.sheets] == ["S1"]
    assert sub.network.vertices == ("o1",)
    assert sub.component == "M9"
    assert sub.name == "fig13/M9"
