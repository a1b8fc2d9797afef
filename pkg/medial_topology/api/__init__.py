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

from medial_topology.config import CONFIG
from medial_topology.document import SUPPORTED_VERSIONS

logger = logging.getLogger(__name__)

api = flask.Blueprint("api", __name__)


@api.route("/ok", strict_slashes=False)
def index():
    logger.debug("status requested")
    status = {
        "_status": "OK",
        "message": "Medial Topology",
        "default_policy": CONFIG["MEDIAL_DEFAULT_POLICY"],
        "document_versions": list(SUPPORTED_VERSIONS),
    }
    return flask.Response(json.dumps(status), status=200, content_type="application/json")


import medial_topology.api.analysis  # noqa
