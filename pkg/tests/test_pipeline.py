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

from medial_topology import document
from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import homology
from medial_topology import pipeline
from medial_topology import presentation

from tests import generators

POLICIES = ["lowest", "highest", "lowest-far", "highest-far"]


def _groups(h):
    return h.h2_rank, h.h1_rank, h.torsion


def test_fig13_analysis():
    analysis = pipeline.analyze(document.load_fixture("fig13"), oracle=True)
    assert analysis.oracle_agrees is True
    assert _groups(analysis.global_homology) == (1, 0, ())
    assert analysis.global_record.chi == 1
    assert not analysis.verdict.contractible
    failed = [k for k, ok in analysis.verdict.conditions.items() if not ok]
    assert failed == ["euler_relation"]


def test_fig8c_is_contractible():
    analysis = pipeline.analyze(document.load_fixture("fig8c"), oracle=True)
    assert [m.component for m in analysis.components] == ["M1", "M2", "M3", "M4"]
    assert analysis.global_homology.trivial
    assert analysis.global_homology.realizable
    assert analysis.verdict.contractible
    assert analysis.oracle_agrees


def test_klein_is_not_realizable():
    analysis = pipeline.analyze(document.load_fixture("klein"))
    assert analysis.oracle is None
    assert analysis.oracle_agrees is None
    assert _groups(analysis.global_homology) == (0, 1, (2,))
    assert not analysis.global_homology.realizable


@pytest.mark.parametrize("name", document.fixture_names())
def test_every_fixture_analyzes_end_to_end(name):
    analysis = pipeline.analyze(document.load_fixture(name), oracle=True)
    assert len(analysis.presentations) == len(analysis.components)
    assert analysis.oracle_agrees is True
    assert analysis.global_homology.chi == analysis.global_record.chi


@pytest.mark.parametrize("name", document.fixture_names())
def test_homology_does_not_depend_on_the_policy(name):
    c = document.load_fixture(name)
    expected = _groups(pipeline.analyze(c, "lowest").global_homology)
    for policy in POLICIES[1:] + ["script:q1"]:
        analysis = pipeline.analyze(c, policy)
        assert _groups(analysis.global_homology) == expected, policy
        assert analysis.global_record.chi == expected[0] - expected[1]


def test_to_dict():
    analysis = pipeline.analyze(document.load_fixture("gamma_loop"), oracle=True)
    data = analysis.to_dict()
    assert sorted(data) == [
        "attaching_matrices",
        "contractible",
        "decomposition",
        "homology",
        "invariants",
        "name",
        "oracle",
        "presentations",
    ]
    assert data["invariants"]["beta1"] == 1
    assert data["homology"]["global"]["H1"] == {"rank": 1, "torsion": []}
    assert data["oracle"]["agrees"] is True
    assert "oracle" not in pipeline.analyze(document.load_fixture("fig13")).to_dict()


def test_analyze_document():
    text = document.serialize_complex(document.load_fixture("fig9d"))
    analysis = pipeline.analyze_document(text, policy="highest")
    assert analysis.decomposition.policy == "highest"
    assert analysis.verdict.contractible


def test_analyze_document_rejects_invalid_complexes():
    with pytest.raises(exceptions.DocumentError):
        pipeline.analyze_document("{")


@mock.patch("medial_topology.pipeline.cw_oracle.oracle_homology")
def test_oracle_disagreement_is_an_internal_error(m_oracle):
    m_oracle.return_value = homology.HomologyResult(h2_rank=5, h1_rank=5)
    with pytest.raises(exceptions.InternalConsistencyError) as e:
        pipeline.analyze(document.load_fixture("fig13"), oracle=True)
    assert e.value.status_code == 500
    assert m_oracle.called


CONTRACTIBLE = ["fig1", "fig5", "fig9b", "fig9c", "fig9d"]


def _random_complex(rng):
    kind = rng.randrange(5)
    if kind == 0:
        base = document.load_fixture(rng.choice(CONTRACTIBLE))
        return generators.with_fins(rng, base, rng.randint(0, 2), prefix="n")
    base = generators.random_component(rng, max_sheets=4, max_y=2)
    if kind == 1:
        return base
    if kind == 2:
        return generators.with_fins(rng, base, rng.randint(1, 3))
    if kind == 3:
        return generators.with_folds(rng, base, rng.randint(1, 2))
    return generators.with_junction_fins(rng, base, 1)


def test_contractibility_verdict_is_sound_and_complete():
    rng = random.Random(29)
    verdicts = []
    for _ in range(200):
        c = _random_complex(rng)
        analysis = pipeline.analyze(c, oracle=True)
        assert analysis.oracle_agrees is True
        h = analysis.global_homology
        beta1 = extended_graph.betti1(analysis.decomposition.gamma)
        generated = all(
            presentation.generates_full_group([r.word for r in p.relations], p.rank)
            for p in analysis.presentations
        )
        if analysis.verdict.contractible:
            assert h.trivial, c.name
            assert analysis.global_record.chi == 0
            assert beta1 == 0
            assert generated
            assert all(o.trivial for o in analysis.oracle)
        if h.trivial and beta1 == 0 and generated:
            assert analysis.verdict.contractible, analysis.verdict.diagnostics
        verdicts.append(analysis.verdict.contractible)
    assert 0 < sum(verdicts) < len(verdicts)


def test_homology_of_random_fins_does_not_depend_on_the_policy():
    rng = random.Random(30)
    for _ in range(40):
        c = _random_complex(rng)
        expected = _groups(pipeline.analyze(c, "lowest").global_homology)
        for policy in POLICIES[1:]:
            assert _groups(pipeline.analyze(c, policy).global_homology) == expected, policy
