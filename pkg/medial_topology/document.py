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

"""Versioned JSON documents describing medial complexes.

Layout::

    {"version": 1, "name": "...", "metadata": {...},
     "y_network": {"vertices": ["a", {"id": "o", "artificial": true}],
                   "edges": [{"id": "y1", "ends": ["a", "b"]}]},
     "sheets": [{"id": "S1", "genus": 0, "orientable": true,
                 "boundaries": [["y1", "-y2"], ["~"]]}],
     "fins": [{"id": "f", "points": ["p", "q"], "support": ["y3"],
               "start_sheet": "S1", "end_sheet": "S2"}]}
"""

import json
import logging
import os
from typing import Any, Dict, List, Optional

import jsonschema
from jsonschema.exceptions import best_match

from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import medial_model
from medial_topology.config import CONFIG

logger = logging.getLogger(__name__)

SUPPORTED_VERSIONS = (1,)
SCHEMA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "schema")

_validators: Dict[int, jsonschema.Draft7Validator] = {}


def schema_path(version: int) -> str:
    return os.path.join(SCHEMA_DIR, "medial-complex.v%d.json" % version)


def load_schema(version: int) -> Dict[str, Any]:
    if version not in SUPPORTED_VERSIONS:
        raise exceptions.VersionError(
            "unsupported document version %r" % (version,), payload={"version": version}
        )
    with open(schema_path(version), encoding="utf-8") as f:
        return json.load(f)


def _validator(version: int) -> jsonschema.Draft7Validator:
    if version not in _validators:
        schema = load_schema(version)
        jsonschema.Draft7Validator.check_schema(schema)
        _validators[version] = jsonschema.Draft7Validator(schema)
    return _validators[version]


def format_path(parts) -> str:
    """``["sheets", 0, "id"]`` becomes ``sheets[0].id``; the root is ``$``."""
    path = ""
    for part in parts:
        if isinstance(part, int):
            path += "[%d]" % part
        else:
            path += ".%s" % part if path else part
    return path or "$"


def _schema_error(path: str, message: str) -> exceptions.SchemaError:
    return exceptions.SchemaError("%s: %s" % (path, message), payload={"path": path})


def check_schema(data: Any, version: Optional[int] = None) -> None:
    error = best_match(_validator(version or SUPPORTED_VERSIONS[-1]).iter_errors(data))
    if error is None:
        return
    parts = list(error.absolute_path)
    if error.validator == "required":
        parts.append(next(p for p in error.validator_value if p not in error.instance))
    raise _schema_error(format_path(parts), error.message)


def _unique(ids: List[str], path: str, what: str) -> None:
    seen = set()
    for i, value in enumerate(ids):
        if value in seen:
            raise _schema_error("%s[%d]" % (path, i), "duplicated %s id %s" % (what, value))
        seen.add(value)


def _parse_network(data: Dict[str, Any]) -> extended_graph.ExtendedGraph:
    vertices = []
    artificial = []
    for v in data.get("vertices", []):
        if isinstance(v, dict):
            vertices.append(v["id"])
            if v.get("artificial", False):
                artificial.append(v["id"])
        else:
            vertices.append(v)
    _unique(vertices, "y_network.vertices", "vertex")
    edges = [(e["id"], e["ends"][0], e["ends"][1]) for e in data.get("edges", [])]
    _unique([e[0] for e in edges], "y_network.edges", "edge")
    return extended_graph.make_graph(vertices, edges, artificial=artificial)


def _parse_sheet(data: Dict[str, Any]) -> medial_model.Sheet:
    return medial_model.Sheet(
        data["id"],
        data.get("genus", 0),
        data.get("orientable", True),
        tuple(medial_model.Boundary(tuple(b)) for b in data.get("boundaries", [])),
    )


def _parse_fin(data: Dict[str, Any]) -> medial_model.DeclaredFin:
    return medial_model.DeclaredFin(
        id=data["id"],
        points=(data["points"][0], data["points"][1]),
        support=tuple(data.get("support", [])),
        start_sheet=data.get("start_sheet"),
        end_sheet=data.get("end_sheet"),
    )


def load_document(data: Any) -> medial_model.MedialComplex:
    """Build a complex from already decoded JSON, checking it against the versioned schema."""
    version = None
    if isinstance(data, dict):
        version = data.get("version")
        if version not in SUPPORTED_VERSIONS:
            raise exceptions.VersionError(
                "unsupported document version %r" % (version,), payload={"version": version}
            )
    check_schema(data, version)
    network = _parse_network(data.get("y_network", {}))
    sheets = tuple(_parse_sheet(s) for s in data["sheets"])
    _unique([s.id for s in sheets], "sheets", "sheet")
    fins = tuple(_parse_fin(f) for f in data.get("fins", []))
    _unique([f.id for f in fins], "fins", "fin")
    return medial_model.MedialComplex(
        network=network,
        sheets=sheets,
        fins=fins,
        name=data.get("name", ""),
        metadata=data.get("metadata", {}),
    )


def parse_complex(text: str, validate: bool = True) -> medial_model.MedialComplex:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise exceptions.DocumentError(
            "malformed JSON: %s" % e.msg, payload={"line": e.lineno, "column": e.colno}
        )
    c = load_document(data)
    if validate:
        medial_model.ensure_valid(c)
    logger.debug("parsed %s: %d sheets", c.name or "complex", len(c.sheets))
    return c


def to_document(c: medial_model.MedialComplex, version: Optional[int] = None) -> Dict[str, Any]:
    network = c.network
    vertices: List[Any] = []
    for v in network.vertices:
        if v in network.artificial_vertices:
            vertices.append({"id": v, "artificial": True})
        else:
            vertices.append(v)
    doc: Dict[str, Any] = {
        "version": version or CONFIG["MEDIAL_DOCUMENT_VERSION"],
        "name": c.name,
        "metadata": dict(c.metadata),
        "y_network": {
            "vertices": vertices,
            "edges": [{"id": e.id, "ends": [e.u, e.v]} for e in network.edges],
        },
        "sheets": [
            {
                "id": s.id,
                "genus": s.genus,
                "orientable": s.orientable,
                "boundaries": [list(b.tokens) for b in s.boundaries],
            }
            for s in c.sheets
        ],
    }
    if c.fins:
        doc["fins"] = [
            {
                "id": f.id,
                "points": list(f.points),
                "support": list(f.support),
                "start_sheet": f.start_sheet,
                "end_sheet": f.end_sheet,
            }
            for f in c.fins
        ]
    return doc


def serialize_complex(c: medial_model.MedialComplex) -> str:
    return json.dumps(to_document(c), indent=2, ensure_ascii=False) + "\n"


def fixture_names(directory: Optional[str] = None) -> List[str]:
    directory = directory or CONFIG["MEDIAL_FIXTURES_DIR"]
    return sorted(f[: -len(".json")] for f in os.listdir(directory) if f.endswith(".json"))


def load_fixture(
    name: str, directory: Optional[str] = None, validate: bool = True
) -> medial_model.MedialComplex:
    directory = directory or CONFIG["MEDIAL_FIXTURES_DIR"]
    path = os.path.join(directory, "%s.json" % name)
    if not os.path.exists(path):
        raise exceptions.DocumentError("unknown fixture %s" % name, payload={"path": path})
    with open(path, encoding="utf-8") as f:
        return parse_complex(f.read(), validate=validate)
