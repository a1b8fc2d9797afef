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
import os

logger = logging.getLogger(__name__)

_FIXTURES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "fixtures")


def get_config():
    _config = {
        "MEDIAL_LOG_LEVEL": os.getenv("MEDIAL_LOG_LEVEL", "INFO"),
        "MEDIAL_DEFAULT_POLICY": os.getenv("MEDIAL_DEFAULT_POLICY", "lowest"),
        "MEDIAL_STEP_FACTOR": int(os.getenv("MEDIAL_STEP_FACTOR", "10")),
        "MEDIAL_FIXTURES_DIR": os.getenv("MEDIAL_FIXTURES_DIR", _FIXTURES_DIR),
        "MEDIAL_DOCUMENT_VERSION": int(os.getenv("MEDIAL_DOCUMENT_VERSION", "1")),
    }

    return _config


CONFIG = get_config()
