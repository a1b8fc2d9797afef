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
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, eye, zeros
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.domains import ZZ

from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import invariants
from medial_topology import presentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AttachingMatrix:
    generators: Tuple[str, ...]
    sheets: Tuple[str, ...]
    matrix: Matrix

    def to_dict(self):
        return {
            "generators": list(self.generators),
            "sheets": list(self.sheets),
            "matrix": [[int(x) for x in self.matrix.row(i)] for i in range(self.matrix.rows)],
        }


@dataclass(frozen=True)
class SmithForm:
    diagonal: Tuple[int, ...]
    rank: int
    left: Matrix
    right: Matrix

    @property
    def torsion(self) -> Tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


@dataclass(frozen=True)
class HomologyResult:
    h2_rank: int
    h1_rank: int
    torsion: Tuple[int, ...] = ()
    realizable: bool = True
    chi: int = 0
    component: str = "M"
    notes: Tuple[str, ...] = ()

    @property
    def trivial(self) -> bool:
        return not (self.h2_rank or self.h1_rank or self.torsion)

    def to_dict(self):
        return {
            "component": self.component,
            "H2": {"rank": self.h2_rank},
            "H1": {"rank": self.h1_rank, "torsion": list(self.torsion)},
            "realizable": self.realizable,
            "chi": self.chi,
            "notes": list(self.notes),
        }


def attaching_matrix(p: presentation.Presentation) -> AttachingMatrix:
    """Exponent-sum vectors of the relations, one column per sheet without edge circles."""
    generators = p.generators
    row_of = {g: i for i, g in enumerate(generators)}
    m = zeros(len(generators), len(p.relations))
    for k, relation in enumerate(p.relations):
        for letter, power in relation.word:
            m[row_of[letter], k] += power
    return AttachingMatrix(generators, tuple(r.sheet for r in p.relations), m)


def smith_normal_form(m: Matrix) -> SmithForm:
    """Integer Smith normal form with transforms: ``left * m * right`` is diagonal."""
    if 0 in m.shape:
        return SmithForm((), 0, eye(m.rows), eye(m.cols))
    diagonal_matrix, left, right = smith_normal_decomp(m, domain=ZZ)
    diagonal = tuple(int(diagonal_matrix[i, i]) for i in range(min(m.rows, m.cols)))
    return SmithForm(
        diagonal=diagonal,
        rank=sum(1 for d in diagonal if d),
        left=left,
        right=right,
    )


def component_homology(
    psi: AttachingMatrix, record: invariants.InvariantRecord
) -> HomologyResult:
    """H2 is the kernel and H1 the cokernel of the attaching matrix."""
    if psi.matrix.rows != record.Q or psi.matrix.cols != record.s0:
        raise exceptions.StructuralError(
            "attaching matrix is %dx%d, expected %dx%d"
            % (psi.matrix.rows, psi.matrix.cols, record.Q, record.s0),
            payload={"component": record.component},
        )
    snf = smith_normal_form(psi.matrix)
    h2 = record.s0 - snf.rank
    h1 = record.Q - snf.rank
    torsion = snf.torsion
    if h2 - h1 != record.chi:
        raise exceptions.InternalConsistencyError(
            "rk H2 - rk H1 = %d but the reduced Euler characteristic is %d"
            % (h2 - h1, record.chi),
            payload={"component": record.component},
        )
    notes = _bounds(h2, h1, torsion, record.s0o, record.q, record.Q, record.s0n)
    result = HomologyResult(
        h2_rank=h2,
        h1_rank=h1,
        torsion=torsion,
        realizable=not notes,
        chi=record.chi,
        component=record.component,
        notes=tuple(notes),
    )
    logger.debug("homology of %s: %s", record.component, format_homology(result))
    return result


def _bounds(h2, h1, torsion, s0o, q, Q, s0n) -> List[str]:
    notes = []
    if torsion:
        notes.append("H1 has torsion %s" % ", ".join("Z/%d" % d for d in torsion))
    if h2 > s0o:
        notes.append("rk H2 = %d exceeds %d orientable sheets without edge circles" % (h2, s0o))
    if h1 < q:
        notes.append("rk H1 = %d is below q = %d" % (h1, q))
    if h1 > Q - s0n:
        notes.append("rk H1 = %d exceeds Q - s0n = %d" % (h1, Q - s0n))
    return notes


def global_homology(
    results: Sequence[HomologyResult],
    gamma: extended_graph.ExtendedGraph,
    global_record: Optional[invariants.GlobalInvariantRecord] = None,
) -> HomologyResult:
    beta1 = extended_graph.betti1(gamma)
    h2 = sum(r.h2_rank for r in results)
    h1 = sum(r.h1_rank for r in results) + beta1
    torsion = tuple(d for r in results for d in r.torsion)
    chi = h2 - h1
    notes = [n for r in results for n in r.notes]
    if global_record is not None:
        if chi != global_record.chi:
            raise exceptions.InternalConsistencyError(
                "assembled homology gives %d but the reduced Euler characteristic is %d"
                % (chi, global_record.chi)
            )
        notes = _bounds(
            h2,
            h1,
            torsion,
            global_record.s0o,
            global_record.q + beta1,
            global_record.Q + beta1,
            global_record.s0n,
        )
    return HomologyResult(
        h2_rank=h2,
        h1_rank=h1,
        torsion=torsion,
        realizable=not notes,
        chi=chi,
        component="M",
        notes=tuple(notes),
    )


def _group(rank: int, torsion: Sequence[int] = ()) -> str:
    parts = []
    if rank == 1:
        parts.append("Z")
    elif rank:
        parts.append("Z^%d" % rank)
    parts.extend("Z/%d" % d for d in torsion)
    return " ⊕ ".join(parts) or "0"


def format_homology(result: HomologyResult) -> str:
    return "%s: H2 = %s, H1 = %s" % (
        result.component,
        _group(result.h2_rank),
        _group(result.h1_rank, result.torsion),
    )
