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

import random

import mock
import pytest

from medial_topology import config
from medial_topology import decomposition
from medial_topology import document
from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import medial_model
from medial_topology.medial_model import Boundary

from tests import generators


def _sheets(result):
    return [[s.id for s in m.sheets] for m in result.components]


def _gamma_edges(result):
    return [(e.u, e.v) for e in result.gamma.edges]


def test_fig7a_fins_are_inessential():
    fins = decomposition.trace_fins(document.load_fixture("fig7a"))
    assert [f.id for f in fins] == ["1-2", "2-3", "3-1", "4-1", "5-6", "6-7", "7-5", "8-5"]
    assert {f.fin_class for f in fins} == {"Inessential"}
    assert fins[0].support == (("a1", 1), ("b1", 1))
    assert fins[0].vertices == ("1", "J1", "2")


def test_fig7b_fins_are_type2():
    fins = decomposition.trace_fins(document.load_fixture("fig7b"))
    assert [f.id for f in fins] == ["1-2", "3-4"]
    assert [f.fin_class for f in fins] == ["EssentialType2", "EssentialType2"]
    assert fins[0].support_edges == ("e1", "m", "e2")
    assert fins[1].support_edges == ("e3", "m", "e4")


def test_fig8_fin():
    fins = decomposition.trace_fins(document.load_fixture("fig8"))
    assert [(f.id, f.fin_class) for f in fins] == [("p-q", "Inessential")]
    assert fins[0].start_sheet == fins[0].end_sheet == "B"
    assert fins[0].closed_by == "landing"
    assert fins[0].to_dict()["closed_by"] == "landing"
    assert fins[0].end_leaf[0] == "B"


def test_essential_fins_close_on_their_own_arc():
    fins = decomposition.trace_fins(document.load_fixture("fig8c"))
    assert [f.closed_by for f in fins] == ["arc"] * 3
    assert fins[0].end_leaf == ("F1", 0, 0)
    assert fins[0].to_dict()["end_leaf"] == ["F1", 0, 0]


def test_fig8c_fins_match_declared_fins():
    c = document.load_fixture("fig8c")
    classes = decomposition.classify_fin_curves(c)
    assert sorted(f.id for f in classes) == ["p1-q1", "p2-q2", "p3-q3"]
    assert set(classes.values()) == {"EssentialType1"}


def test_declared_fin_must_follow_the_boundaries():
    c = document.load_fixture("fig8c")
    wrong = medial_model.DeclaredFin(id="bad", points=("p1", "q2"))
    with pytest.raises(exceptions.StructuralError):
        decomposition.trace_fins(medial_model.MedialComplex(c.network, c.sheets, fins=(wrong,)))


def test_declared_fin_sheets_must_match_the_trace():
    c = document.load_fixture("fig8c")
    ok = (
        medial_model.DeclaredFin(id="a", points=("q1", "p1"), start_sheet="F1"),
        medial_model.DeclaredFin(id="b", points=("p2", "q2"), end_sheet="F2"),
    )
    decomposition.trace_fins(medial_model.MedialComplex(c.network, c.sheets, fins=ok))
    wrong = medial_model.DeclaredFin(
        id="bad", points=("p1", "q1"), start_sheet="F1", end_sheet="A1"
    )
    with pytest.raises(exceptions.StructuralError) as e:
        decomposition.trace_fins(medial_model.MedialComplex(c.network, c.sheets, fins=(wrong,)))
    assert e.value.payload["declared"] == ["F1", "A1"]
    assert e.value.payload["traced"] == ["F1", "F1"]


def test_fin_free_complex_has_no_fins():
    assert decomposition.trace_fins(document.load_fixture("fig13")) == []


def test_slide_step_moves_the_fin_point_across_the_junction():
    c = document.load_fixture("fig7a")
    fin = decomposition.trace_fins(c)[0]
    slid = decomposition.slide_step(c, fin, "1")
    assert "J1" not in slid.network.vertices
    fins = {f.id: f for f in decomposition.trace_fins(slid)}
    assert sorted(fins) == ["1-2", "3-4", "5-6", "6-7", "7-5", "8-5"]
    assert fins["1-2"].support_edges == ("b1",)
    assert fins["1-2"].fin_class == "Inessential"
    assert fins["3-4"].support_edges == ("c1", "d1")
    assert fins["3-4"].fin_class == "EssentialType1"


def test_slide_step_rejects_a_foreign_point():
    c = document.load_fixture("fig7a")
    fin = decomposition.trace_fins(c)[0]
    with pytest.raises(exceptions.PreconditionError):
        decomposition.slide_step(c, fin, "5")


def test_slide_fin_until_single_edge():
    c = document.load_fixture("fig7b")
    fin = decomposition.trace_fins(c)[0]
    slid = decomposition.slide_fin(c, fin)
    fins = {f.id: f for f in decomposition.trace_fins(slid)}
    assert fins["1-2"].support_edges == ("e2",)
    assert fins["1-2"].fin_class == "EssentialType1"


def test_cut_and_contract_preconditions():
    fig8 = document.load_fixture("fig8")
    with pytest.raises(exceptions.PreconditionError):
        decomposition.cut_essential(fig8, decomposition.trace_fins(fig8)[0])
    fig8c = document.load_fixture("fig8c")
    with pytest.raises(exceptions.PreconditionError):
        decomposition.contract_inessential(fig8c, decomposition.trace_fins(fig8c)[0])
    with pytest.raises(exceptions.PreconditionError):
        decomposition.contract_inessential(fig8c)
    fig7b = document.load_fixture("fig7b")
    with pytest.raises(exceptions.PreconditionError):
        decomposition.cut_essential(fig7b, decomposition.trace_fins(fig7b)[0])


def test_contract_inessential_unfolds_the_mobius_board():
    c = decomposition.contract_inessential(document.load_fixture("fig8"))
    assert c.sheet("B").boundaries == (Boundary(("~",)),)
    assert c.network.vertices == ()
    assert decomposition.trace_fins(c) == []


def test_cut_essential_splits_off_the_fin_sheet():
    c = document.load_fixture("fig1")
    cut = decomposition.cut_essential(c, decomposition.trace_fins(c)[0])
    assert cut.sheet("D").boundaries == (Boundary(("t",)),)
    assert cut.sheet("F").boundaries == (Boundary(("~",)),)
    assert [(a.fin_sheet, a.base_sheet) for a in cut.attachments] == [("F", "D")]


def test_decompose_fig8c():
    result = decomposition.decompose(document.load_fixture("fig8c"))
    assert _sheets(result) == [["D1", "A1", "P", "A2", "A3"], ["F1"], ["F2"], ["F3"]]
    assert _gamma_edges(result) == [("M2", "M1"), ("M3", "M1"), ("M4", "M3")]
    assert extended_graph.betti1(result.gamma) == 0
    assert [e["action"] for e in result.log] == ["cut", "cut", "cut"]
    assert [e["class"] for e in result.log] == ["EssentialType1"] * 3
    assert not any(e["chosen"] for e in result.log)
    for m in result.components:
        assert medial_model.is_fin_free(m)


def test_decompose_fig8():
    result = decomposition.decompose(document.load_fixture("fig8"))
    assert _sheets(result) == [["B"]]
    assert result.components[0].network.edges == ()
    assert [(e["action"], e["fin"]) for e in result.log] == [("contract", "p-q")]


def test_decompose_fig5():
    result = decomposition.decompose(document.load_fixture("fig5"))
    assert _sheets(result) == [["S11", "S12", "S13"], ["S21"], ["S31"]]
    assert _gamma_edges(result) == [("M2", "M1"), ("M3", "M1")]


def test_decompose_fin_free_complex():
    result = decomposition.decompose(document.load_fixture("fig13"))
    assert len(result.components) == 1
    assert result.components[0].component == "M1"
    assert result.gamma.edges == ()
    assert result.log == ()


@pytest.mark.parametrize(
    "policy,count",
    [
        ("lowest", 3),
        ("highest", 1),
        ("lowest-far", 1),
        ("highest-far", 3),
        ("script:1,5", 3),
        ("script:1,6", 2),
        ("script:2,6", 1),
    ],
)
def test_fig7a_component_count_depends_on_the_slides(policy, count):
    result = decomposition.decompose(document.load_fixture("fig7a"), policy)
    assert len(result.components) == count
    assert result.policy == policy
    assert _sheets(result)[0][0] == "D1"
    assert extended_graph.betti1(result.gamma) == 0


def test_decompose_fig7b():
    result = decomposition.decompose(document.load_fixture("fig7b"), "lowest")
    assert _sheets(result) == [["B"], ["F1"], ["F2"]]
    assert [(e["action"], e["edge"]) for e in result.log] == [
        ("slide", "e1"),
        ("slide", "m"),
        ("cut", "e2"),
        ("slide", "e3"),
        ("cut", "e4"),
    ]
    assert [e["chosen"] for e in result.log] == [True, False, False, False, False]
    base = result.components[0]
    assert len(base.network.edges) == 1
    assert base.network.artificial_vertices == frozenset(base.network.vertices)


@pytest.mark.parametrize("policy", ["lowest", "highest", "lowest-far", "highest-far"])
def test_fig7b_splits_for_every_policy(policy):
    result = decomposition.decompose(document.load_fixture("fig7b"), policy)
    assert len(result.components) == 3
    assert extended_graph.betti1(result.gamma) == 0


def test_decompose_gamma_loop():
    result = decomposition.decompose(document.load_fixture("gamma_loop"))
    assert _sheets(result) == [["B"], ["F"]]
    assert _gamma_edges(result) == [("M2", "M1"), ("M2", "M1")]
    inputs = decomposition.assemble_check(result)
    assert inputs.beta1 == 1
    assert result.components[0].sheet("B").closed


def test_decompose_preserves_the_euler_characteristic():
    for name in ("fig1", "fig5", "fig7a", "fig7b", "fig8", "fig8c", "gamma_loop"):
        c = document.load_fixture(name)
        result = decomposition.decompose(c)
        after = sum(medial_model.complex_euler_characteristic(m) for m in result.components)
        assert medial_model.complex_euler_characteristic(c) == after - len(result.gamma.edges)


def test_unknown_policy():
    with pytest.raises(exceptions.PreconditionError):
        decomposition.decompose(document.load_fixture("fig7a"), "random")


def test_policy_from_name():
    policy = decomposition.Policy.from_name("script:1, 6>7")
    assert policy.script == ("1", "6>7")
    assert not policy.strict
    assert decomposition.Policy.from_name("highest-far").far


def test_step_guard():
    with pytest.raises(exceptions.DecompositionError):
        decomposition.decompose(document.load_fixture("fig7b"), step_factor=2)


@mock.patch.dict(config.CONFIG, {"MEDIAL_STEP_FACTOR": 2})
def test_step_guard_from_config():
    with pytest.raises(exceptions.DecompositionError):
        decomposition.decompose(document.load_fixture("fig7b"))


@mock.patch.dict(config.CONFIG, {"MEDIAL_DEFAULT_POLICY": "highest"})
def test_default_policy_from_config():
    result = decomposition.decompose(document.load_fixture("fig7a"))
    assert result.policy == "highest"
    assert len(result.components) == 1


@mock.patch("medial_topology.decomposition.trace_fins")
def test_decompose_rejects_invalid_complexes(m_trace_fins):
    c = document.load_fixture("fig13", validate=False)
    s1 = c.sheets[0]
    broken = medial_model.MedialComplex(c.network, (s1,) + c.sheets)
    with pytest.raises(exceptions.ValidationError):
        decomposition.decompose(broken)
    m_trace_fins.assert_not_called()


@pytest.mark.parametrize(
    "name,policy", [("fig7a", "script:1,6"), ("fig7a", "highest"), ("fig7b", "lowest-far")]
)
def test_replay(name, policy):
    c = document.load_fixture(name)
    result = decomposition.decompose(c, policy)
    again = decomposition.replay(c, result.log)
    assert _sheets(again) == _sheets(result)
    assert [e["edge"] for e in again.log] == [e["edge"] for e in result.log]


def test_replay_detects_a_diverging_log():
    c = document.load_fixture("fig7b")
    log = [dict(e) for e in decomposition.decompose(c).log]
    log[0]["points"] = ["3", "4"]
    log[0]["side"] = "3"
    with pytest.raises(exceptions.DecompositionError):
        decomposition.replay(c, log)


def test_to_dict():
    data = decomposition.decompose(document.load_fixture("fig8c")).to_dict()
    assert data["policy"] == "lowest"
    assert [f["id"] for f in data["fins"]] == ["p1-q1", "p2-q2", "p3-q3"]
    assert data["components"][0] == {"id": "M1", "sheets": ["D1", "A1", "P", "A2", "A3"]}
    assert data["gamma"]["vertices"] == ["M1", "M2", "M3", "M4"]
    assert data["gamma"]["edges"][0]["source"] == "M2"
    assert data["gamma"]["edges"][0]["fin_sheet"] == "F1"


def test_random_fins_terminate_and_split():
    rng = random.Random(20)
    for _ in range(25):
        base = generators.random_component(rng)
        count = rng.randint(1, 20)
        c = generators.with_fins(rng, base, count)
        assert medial_model.validate_complex(c).ok
        result = decomposition.decompose(c)
        assert len(result.components) == count + 1
        assert len(result.gamma.edges) == count
        assert extended_graph.betti1(result.gamma) == 0
        assert [s.id for s in result.components[0].sheets] == [s.id for s in base.sheets]


def test_random_folds_unfold_into_edge_circles():
    rng = random.Random(21)
    for _ in range(40):
        base = generators.random_component(rng, max_sheets=4, max_y=2)
        count = rng.randint(1, 3)
        c = generators.with_folds(rng, base, count)
        assert medial_model.validate_complex(c).ok
        fins = decomposition.trace_fins(c)
        assert [f.closed_by for f in fins] == ["landing"] * count
        assert all(len(f.support) == 1 for f in fins)
        unfolded = decomposition.contract_inessential(c)
        assert len(decomposition.trace_fins(unfolded)) == count - 1
        result = decomposition.decompose(c)
        assert len(result.components) == 1
        assert not result.gamma.edges
        before = sum(s.edge_curves for s in base.sheets)
        assert sum(s.edge_curves for s in result.components[0].sheets) == before + count


@pytest.mark.parametrize("policy", ["lowest", "highest", "lowest-far", "highest-far"])
def test_random_junction_fins_slide_off(policy):
    rng = random.Random(22)
    for _ in range(20):
        base = generators.random_component(rng, max_sheets=4, max_y=2)
        c = generators.with_junction_fins(rng, base, rng.randint(1, 2))
        assert medial_model.validate_complex(c).ok
        crossing = [f for f in decomposition.trace_fins(c) if len(f.support) > 1]
        assert crossing
        slid = decomposition.slide_step(c, crossing[0])
        assert len(slid.network.edges) == len(c.network.edges) - 1
        result = decomposition.decompose(c, policy)
        assert all(medial_model.is_fin_free(m) for m in result.components)
        assert len(extended_graph.components(result.gamma)) == 1
