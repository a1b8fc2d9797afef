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

import flask
from flask import json

from medial_topology import document
from medial_topology import dot
from medial_topology import exceptions
from medial_topology import homology
from medial_topology import invariants
from medial_topology import medial_model
from medial_topology import pipeline
from medial_topology import presentation
from medial_topology.api import api
from medial_topology.config import CONFIG

logger = logging.getLogger(__name__)


def _response(data, status=200):
    return flask.Response(
        json.dumps(data, ensure_ascii=False), status=status, content_type="application/json"
    )


def _request_complex(validate=True):
    body = flask.request.get_json(silent=True)
    if not isinstance(body, dict) or "document" not in body:
        raise exceptions.DocumentError("request body must carry a 'document' object")
    c = document.load_document(body["document"])
    if validate:
        medial_model.ensure_valid(c)
    return c


def _policy():
    body = flask.request.get_json(silent=True) or {}
    return body.get("policy") or CONFIG["MEDIAL_DEFAULT_POLICY"]


def _analysis(oracle=False):
    return pipeline.analyze(_request_complex(), _policy(), oracle=oracle)


@api.route("/schema/<int:version>", strict_slashes=False)
def schema(version):
    if version not in document.SUPPORTED_VERSIONS:
        raise exceptions.VersionError(
            "unsupported document version %d" % version,
            payload={"version": version},
            status_code=404,
        )
    return _response(document.load_schema(version))


@api.route("/fixtures", strict_slashes=False)
def fixtures():
    return _response({"fixtures": document.fixture_names()})


@api.route("/fixtures/<name>", strict_slashes=False)
def fixture(name):
    if name not in document.fixture_names():
        raise exceptions.DocumentError("unknown fixture %s" % name, status_code=404)
    c = document.load_fixture(name, validate=False)
    return _response(document.to_document(c))


@api.route("/validate", strict_slashes=False, methods=["POST"])
def validate():
    c = _request_complex(validate=False)
    report = medial_model.validate_complex(c)
    return _response(report.to_dict())


@api.route("/decompose", strict_slashes=False, methods=["POST"])
def decompose():
    analysis = _analysis()
    return _response(analysis.decomposition.to_dict())


@api.route("/invariants", strict_slashes=False, methods=["POST"])
def invariants_table():
    analysis = _analysis()
    data = analysis.global_record.to_dict()
    data["table"] = invariants.format_table(analysis.records, analysis.global_record)
    return _response(data)


@api.route("/homology", strict_slashes=False, methods=["POST"])
def homology_groups():
    body = flask.request.get_json(silent=True) or {}
    analysis = _analysis(oracle=bool(body.get("oracle")))
    data = analysis.to_dict()
    result = {
        "homology": data["homology"],
        "text": homology.format_homology(analysis.global_homology),
    }
    if "oracle" in data:
        result["oracle"] = data["oracle"]
    return _response(result)


@api.route("/pi1", strict_slashes=False, methods=["POST"])
def pi1():
    analysis = _analysis()
    return _response(
        {
            "presentations": [p.to_dict() for p in analysis.presentations],
            "text": [presentation.format_presentation(p) for p in analysis.presentations],
        }
    )


@api.route("/contractible", strict_slashes=False, methods=["POST"])
def contractible():
    analysis = _analysis()
    return _response(analysis.verdict.to_dict())


@api.route("/dot/<graph>", strict_slashes=False, methods=["POST"])
def dot_export(graph):
    if graph == "ynet":
        return _response({"dot": [dot.export_dot(_request_complex().network, "ynet")]})
    if graph not in ("gamma", "lambda"):
        raise exceptions.DocumentError("unknown graph %s" % graph, status_code=404)
    analysis = _analysis()
    if graph == "gamma":
        sources = [dot.export_dot(analysis.decomposition.gamma, "gamma")]
    else:
        sources = [
            dot.export_dot(g, m.component)
            for m, g in zip(analysis.components, analysis.component_graphs)
        ]
    return _response({"dot": sources})
