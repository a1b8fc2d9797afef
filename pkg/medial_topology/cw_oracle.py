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

"""Independent homology check through an explicit cell complex.

Cells: the Y vertices plus one point per sheet, every Y edge, one segment per
attached circle and the sheet's own loops, and a 2-cell for each sheet without
edge circles glued along its full boundary word.
"""

from dataclasses import dataclass
import logging
from typing import Dict, List, Tuple

import numpy as np
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors

from medial_topology import exceptions
from medial_topology import medial_model
from medial_topology.homology import HomologyResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CWChainComplex:
    component: str
    zero_cells: Tuple[str, ...]
    one_cells: Tuple[Tuple[str, str, str], ...]
    two_cells: Tuple[str, ...]
    words: Tuple[Tuple[Tuple[str, int], ...], ...]
    d1: np.ndarray
    d2: np.ndarray

    @property
    def chi(self) -> int:
        return len(self.zero_cells) - len(self.one_cells) + len(self.two_cells) - 1


def _sheet_cells(sheet: medial_model.Sheet, network) -> Tuple[List, List]:
    point = "sheet:%s" % sheet.id
    cells = []
    word: List[Tuple[str, int]] = []
    if sheet.edge_curves:
        extra = sheet.weighted_genus + sheet.edge_curves - 1
        cells.extend(("%s/x%d" % (sheet.id, i), point, point) for i in range(extra))
    elif sheet.orientable:
        for i in range(sheet.genus):
            a, b = "%s/a%d" % (sheet.id, i), "%s/b%d" % (sheet.id, i)
            cells.extend([(a, point, point), (b, point, point)])
            word.extend([(a, 1), (b, 1), (a, -1), (b, -1)])
    else:
        for i in range(sheet.genus):
            c = "%s/c%d" % (sheet.id, i)
            cells.append((c, point, point))
            word.extend([(c, 1), (c, 1)])
    for i, b in sheet.attached:
        start = medial_model.token_ends(network, b.tokens[0])[0]
        spoke = "%s/s%d" % (sheet.id, i)
        cells.append((spoke, point, start))
        word.append((spoke, 1))
        word.extend(b.steps())
        word.append((spoke, -1))
    return cells, word


def build_chain_complex(c: medial_model.MedialComplex) -> CWChainComplex:
    network = c.network
    zero = list(network.vertices) + ["sheet:%s" % s.id for s in c.sheets]
    one = [(e.id, e.u, e.v) for e in network.edges]
    two = []
    words = []
    for sheet in c.sheets:
        cells, word = _sheet_cells(sheet, network)
        one.extend(cells)
        if not sheet.edge_curves:
            two.append(sheet.id)
            words.append(tuple(word))
    row0: Dict[str, int] = {v: i for i, v in enumerate(zero)}
    row1: Dict[str, int] = {cell[0]: i for i, cell in enumerate(one)}
    d1 = np.zeros((len(zero), len(one)), dtype=np.int64)
    for j, (_, u, v) in enumerate(one):
        d1[row0[v], j] += 1
        d1[row0[u], j] -= 1
    d2 = np.zeros((len(one), len(two)), dtype=np.int64)
    for k, word in enumerate(words):
        for cell, power in word:
            d2[row1[cell], k] += power
    if np.any(d1 @ d2):
        raise exceptions.InternalConsistencyError(
            "boundary of a boundary is not zero", payload={"component": c.component}
        )
    return CWChainComplex(
        component=c.component or c.name or "M",
        zero_cells=tuple(zero),
        one_cells=tuple(one),
        two_cells=tuple(two),
        words=tuple(words),
        d1=d1,
        d2=d2,
    )


def _rank(m: np.ndarray) -> int:
    if not m.size:
        return 0
    return Matrix(m.tolist()).rank()


def oracle_homology(cc: CWChainComplex) -> HomologyResult:
    rank1 = _rank(cc.d1)
    rank2 = _rank(cc.d2)
    h2 = len(cc.two_cells) - rank2
    h1 = len(cc.one_cells) - rank1 - rank2
    if cc.d2.size:
        factors = invariant_factors(Matrix(cc.d2.tolist()))
    else:
        factors = ()
    torsion = tuple(sorted(abs(int(d)) for d in factors if abs(int(d)) > 1))
    if h2 - h1 != cc.chi:
        raise exceptions.InternalConsistencyError(
            "cell count gives %d but ranks give %d" % (cc.chi, h2 - h1),
            payload={"component": cc.component},
        )
    logger.debug("oracle %s: H2 rank %d, H1 rank %d, torsion %s", cc.component, h2, h1, torsion)
    return HomologyResult(
        h2_rank=h2,
        h1_rank=h1,
        torsion=torsion,
        realizable=not torsion,
        chi=cc.chi,
        component=cc.component,
    )
