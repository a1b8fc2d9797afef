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

from dataclasses import dataclass
import logging
from typing import Any, Dict, Optional, Tuple, Union

from medial_topology import cw_oracle
from medial_topology import decomposition
from medial_topology import document
from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import homology
from medial_topology import invariants
from medial_topology import medial_model
from medial_topology import presentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Analysis:
    complex: medial_model.MedialComplex
    decomposition: decomposition.DecompositionResult
    component_graphs: Tuple[extended_graph.ExtendedGraph, ...]
    records: Tuple[invariants.InvariantRecord, ...]
    global_record: invariants.GlobalInvariantRecord
    presentations: Tuple[presentation.Presentation, ...]
    matrices: Tuple[homology.AttachingMatrix, ...]
    homology: Tuple[homology.HomologyResult, ...]
    global_homology: homology.HomologyResult
    verdict: presentation.ContractibilityVerdict
    oracle: Optional[Tuple[homology.HomologyResult, ...]] = None

    @property
    def components(self) -> Tuple[medial_model.MedialComplex, ...]:
        return self.decomposition.components

    @property
    def oracle_agrees(self) -> Optional[bool]:
        if self.oracle is None:
            return None
        return all(
            (a.h2_rank, a.h1_rank, a.torsion) == (b.h2_rank, b.h1_rank, b.torsion)
            for a, b in zip(self.homology, self.oracle)
        )

    def to_dict(self) -> Dict[str, Any]:
        data = {
            "name": self.complex.name,
            "decomposition": self.decomposition.to_dict(),
            "invariants": self.global_record.to_dict(),
            "presentations": [p.to_dict() for p in self.presentations],
            "attaching_matrices": [m.to_dict() for m in self.matrices],
            "homology": {
                "components": [h.to_dict() for h in self.homology],
                "global": self.global_homology.to_dict(),
            },
            "contractible": self.verdict.to_dict(),
        }
        if self.oracle is not None:
            data["oracle"] = {
                "components": [h.to_dict() for h in self.oracle],
                "agrees": self.oracle_agrees,
            }
        return data


def analyze(
    c: medial_model.MedialComplex,
    policy: Union[str, decomposition.Policy, None] = None,
    oracle: bool = False,
) -> Analysis:
    """Decompose, then compute invariants, presentations, homology and the verdict."""
    result = decomposition.decompose(c, policy)
    inputs = decomposition.assemble_check(result)
    graphs = tuple(medial_model.build_component_graph(m) for m in inputs.components)
    records = tuple(
        invariants.component_invariants(m, g) for m, g in zip(inputs.components, graphs)
    )
    global_record = invariants.global_invariants(records, inputs.gamma)
    presentations = tuple(
        presentation.pi1_presentation(m, g) for m, g in zip(inputs.components, graphs)
    )
    matrices = tuple(homology.attaching_matrix(p) for p in presentations)
    results = tuple(homology.component_homology(psi, r) for psi, r in zip(matrices, records))
    total = homology.global_homology(results, inputs.gamma, global_record)
    verdict = presentation.check_contractible(
        inputs.components, inputs.gamma, records, presentations
    )
    checked = None
    if oracle:
        checked = tuple(
            cw_oracle.oracle_homology(cw_oracle.build_chain_complex(m)) for m in inputs.components
        )
    analysis = Analysis(
        complex=c,
        decomposition=result,
        component_graphs=graphs,
        records=records,
        global_record=global_record,
        presentations=presentations,
        matrices=matrices,
        homology=results,
        global_homology=total,
        verdict=verdict,
        oracle=checked,
    )
    if analysis.oracle_agrees is False:
        raise exceptions.InternalConsistencyError(
            "cell complex homology disagrees with the attaching matrix",
            payload={"complex": c.name},
        )
    return analysis


def analyze_document(
    text: str, policy: Union[str, decomposition.Policy, None] = None, oracle: bool = False
) -> Analysis:
    return analyze(document.parse_complex(text), policy=policy, oracle=oracle)
