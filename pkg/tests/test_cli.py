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

import json
import os

import mock

from medial_topology import cli
from medial_topology import exceptions
from medial_topology.config import CONFIG


def _fixture(name):
    return os.path.join(CONFIG["MEDIAL_FIXTURES_DIR"], "%s.json" % name)


def _invalid(tmp_path):
    path = tmp_path / "invalid.json"
    path.write_text(
        json.dumps(
            {
                "version": 1,
                "name": "invalid",
                "y_network": {
                    "vertices": [{"id": "o", "artificial": True}],
                    "edges": [{"id": "t", "ends": ["o", "o"]}],
                },
                "sheets": [{"id": "D", "boundaries": [["t"]]}],
            }
        )
    )
    return str(path)


def test_validate(capsys):
    assert cli.main(["validate", _fixture("fig13")]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("valid")


def test_validate_invalid_document(capsys, tmp_path):
    assert cli.main(["validate", _invalid(tmp_path)]) == cli.EXIT_INPUT
    out = capsys.readouterr().out
    assert out.startswith("invalid")
    assert "error cover at t" in out


def test_validate_reports_junction_pairing_as_a_warning(capsys):
    assert cli.main(["--json", "validate", _fixture("junction_mismatch")]) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["valid"] is True
    assert {w["code"] for w in data["warnings"]} == {"pairing"}
    assert len(data["germs"]["J"]) == 6


def test_decompose_writes_the_log(capsys, tmp_path):
    log = tmp_path / "log.json"
    assert cli.main(["decompose", _fixture("fig8c"), "--log", str(log)]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("policy lowest: 4 components")
    entries = json.loads(log.read_text())
    assert [e["action"] for e in entries].count("cut") == 3


def test_invariants_json(capsys):
    assert cli.main(["--json", "invariants", _fixture("gamma_loop")]) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["beta1"] == 1
    assert data["chi"] == 0


def test_invariants_table(capsys):
    assert cli.main(["invariants", _fixture("fig13")]) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["M1", "M"]
    assert lines[-1].split() == ["chi~", "1", "1"]


def test_homology_with_oracle(capsys):
    assert cli.main(["homology", "--oracle", _fixture("fig13")]) == cli.EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["M1: H2 = Z, H1 = 0", "M: H2 = Z, H1 = 0; oracle agrees"]


def test_homology_notes(capsys):
    assert cli.main(["homology", _fixture("klein")]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert "M: H2 = 0, H1 = Z ⊕ Z/2" in out
    assert "  H1 has torsion Z/2" in out
    assert "oracle agrees" not in out


def test_pi1(capsys):
    assert cli.main(["pi1", _fixture("fig13")]) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "M1: < t1, t2 | t1^-1, t2^-1, t2^-1*t1^-1 >"


def test_check_contractible(capsys):
    assert cli.main(["check-contractible", _fixture("fig13")]) == cli.EXIT_NEGATIVE
    out = capsys.readouterr().out
    assert out.startswith("not contractible")
    assert "M1: Euler relation fails: 3 ≠ 2" in out
    assert cli.main(["check-contractible", _fixture("fig8c")]) == cli.EXIT_OK
    assert capsys.readouterr().out.strip() == "contractible"


def test_export_dot(capsys):
    assert cli.main(["export-dot", "--graph", "ynet", _fixture("fig13")]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("graph ynet {")
    assert cli.main(["export-dot", "--graph", "gamma", _fixture("fig8c")]) == cli.EXIT_OK
    assert capsys.readouterr().out.startswith("digraph gamma {")
    args = ["export-dot", "--graph", "lambda", "--component", "M2", _fixture("fig8c")]
    assert cli.main(args) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("graph M2 {")
    assert "graph M1" not in out


def test_unknown_policy(capsys):
    assert cli.main(["--json", "decompose", "--policy", "nope", _fixture("fig7a")]) == 2
    data = json.loads(capsys.readouterr().out)
    assert data["message"] == "unknown choice policy nope"


def test_missing_file():
    assert cli.main(["validate", "/nonexistent/complex.json"]) == cli.EXIT_INPUT


def test_malformed_document(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{\n")
    assert cli.main(["--json", "homology", str(path)]) == cli.EXIT_INPUT
    data = json.loads(capsys.readouterr().out)
    assert data["payload"]["line"] == 2


@mock.patch("medial_topology.cli.pipeline.analyze")
def test_internal_errors_exit_with_three(m_analyze):
    m_analyze.side_effect = exceptions.InternalConsistencyError("mismatch")
    assert cli.main(["pi1", _fixture("fig13")]) == cli.EXIT_INTERNAL


def test_export_reduced_graphs(capsys):
    assert cli.main(["--json", "export-dot", "--graph", "reduced", _fixture("fig13")]) == 0
    sources = json.loads(capsys.readouterr().out)["dot"]
    assert [s.splitlines()[0] for s in sources] == ["graph Y1 {", "graph Y2 {"]
    assert 'label="o1 (2)"' in sources[0]


def test_json_flag_after_the_subcommand(capsys):
    assert cli.main(["homology", _fixture("fig13"), "--json"]) == cli.EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["homology"]["global"]["H2"] == {"rank": 1}
    assert cli.main(["--json", "pi1", _fixture("fig13")]) == cli.EXIT_OK
    assert json.loads(capsys.readouterr().out)[0]["component"] == "M1"


def test_several_files(capsys):
    args = ["check-contractible", _fixture("fig8c"), _fixture("fig13")]
    assert cli.main(args) == cli.EXIT_NEGATIVE
    out = capsys.readouterr().out
    assert out.startswith("==> %s <==\ncontractible\n" % _fixture("fig8c"))
    assert "==> %s <==\nnot contractible" % _fixture("fig13") in out


def test_several_files_as_json(capsys, tmp_path):
    args = ["pi1", "--json", _fixture("fig13"), str(tmp_path / "missing.json")]
    assert cli.main(args) == cli.EXIT_INPUT
    data = json.loads(capsys.readouterr().out)
    assert [d["file"] for d in data] == [_fixture("fig13"), str(tmp_path / "missing.json")]
    assert data[0]["result"][0]["component"] == "M1"
    assert data[1]["error"]["status_code"] == 400
