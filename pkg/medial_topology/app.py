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

from medial_topology import api
from medial_topology import exceptions
from medial_topology.config import CONFIG

logger = logging.getLogger()


def _setup_logging():
    formatter = logging.Formatter("%(asctime)s %(levelname)s - %(name)s - %(message)s")
    streamhandler = logging.StreamHandler()
    streamhandler.setFormatter(formatter)
    logger.addHandler(streamhandler)
    logger.setLevel(CONFIG["MEDIAL_LOG_LEVEL"])


def handle_medial_exception(medial_exception):
    response = flask.jsonify(medial_exception.to_dict())
    response.status_code = medial_exception.status_code
    if medial_exception.status_code >= 500:
        logger.exception(medial_exception)
    else:
        logger.warning(
            "%s %s rejected: %s",
            flask.request.method,
            flask.request.path,
            medial_exception.message,
        )
    return response


def create_app():
    application = flask.Flask(__name__)
    application.register_error_handler(exceptions.MedialException, handle_medial_exception)
    application.register_blueprint(api.api)
    return application


_setup_logging()
app = create_app()
