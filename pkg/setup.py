#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Copyright the medial-topology authors
#
# Licensed under the Apache License, Version 2.0 (the 'License'); you may
# not use this file except in compliance with the License. You may obtain
# a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an 'AS IS' BASIS, WITHOUT
# WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
# License for the specific language governing permissions and limitations
# under the License.

import os
import setuptools

root_dir = os.path.dirname(os.path.abspath(__file__))
readme = open(os.path.join(root_dir, "README.md")).read()

setuptools.setup(
    name="medial-topology",
    version="0.1.0",
    packages=setuptools.find_packages(exclude=("tests",)),
    package_data={"medial_topology": ["fixtures/*.json", "schema/*.json"]},
    author="medial-topology authors",
    description="Homotopy type of Blum medial axes from their combinatorial structure",
    long_description=readme,
    install_requires=[
        "flask",
        "graphviz",
        "jsonschema",
        "networkx",
        "numpy",
        "pandas",
        "sympy>=1.14",
    ],
    entry_points={"console_scripts": ["medial-topology=medial_topology.cli:main"]},
    license="Apache v2.0",
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: POSIX :: Linux",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
