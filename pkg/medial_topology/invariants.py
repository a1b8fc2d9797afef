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

from dataclasses import asdict, dataclass
import logging
from typing import Any, Dict, Optional, Sequence, Tuple

import pandas as pd

from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import medial_model

logger = logging.getLogger(__name__)

# row labels of the invariant table, in display order
ROWS = [
    ("s", "s"),
    ("e", "e"),
    ("c", "c"),
    ("v", "v"),
    ("lam", "lambda"),
    ("G", "G"),
    ("q", "q"),
    ("Q", "Q"),
    ("nu", "nu"),
    ("s0", "s0"),
    ("s0o", "s0o"),
    ("s0n", "s0n"),
    ("chi", "chi~"),
]


@dataclass(frozen=True)
class InvariantRecord:
    component: str
    s: int
    c: int
    lam: int
    v: int
    e: int
    G: int
    q: int
    Q: int
    nu: int
    s0: int
    s0o: int
    s0n: int
    chi: int

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class GlobalInvariantRecord:
    components: Tuple[InvariantRecord, ...]
    beta1: int
    nu: int
    s: int
    c: int
    lam: int
    v: int
    e: int
    G: int
    q: int
    Q: int
    s0: int
    s0o: int
    s0n: int
    chi: int

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["components"] = [r.to_dict() for r in self.components]
        return data


def sheet_q(sheet: medial_model.Sheet) -> int:
    """First Betti number contribution of one sheet."""
    if sheet.edge_curves:
        return sheet.weighted_genus + sheet.edge_curves - 1
    return sheet.weighted_genus


def component_invariants(
    c: medial_model.MedialComplex, lam_graph: Optional[extended_graph.ExtendedGraph] = None
) -> InvariantRecord:
    if lam_graph is None:
        lam_graph = medial_model.build_component_graph(c)
    sheets = c.sheets
    s = len(sheets)
    y_count = len(medial_model.y_components(c))
    lam = extended_graph.betti1(lam_graph)
    v = medial_model.junction_count(c)
    e = sum(sh.edge_curves for sh in sheets)
    G = sum(sh.weighted_genus for sh in sheets)
    q = sum(sheet_q(sh) for sh in sheets)
    capped = [sh for sh in sheets if not sh.edge_curves]
    s0 = len(capped)
    s0o = sum(1 for sh in capped if sh.orientable)
    Q = lam + v + y_count + q
    if q != G + e - (s - s0):
        raise exceptions.InternalConsistencyError(
            "q = %d but G + e - (s - s0) = %d" % (q, G + e - (s - s0)),
            payload={"component": c.component},
        )
    partial = InvariantRecord(
        component=c.component or c.name or "M",
        s=s,
        c=y_count,
        lam=lam,
        v=v,
        e=e,
        G=G,
        q=q,
        Q=Q,
        nu=s - y_count - lam,
        s0=s0,
        s0o=s0o,
        s0n=s0 - s0o,
        chi=0,
    )
    record = InvariantRecord(**dict(asdict(partial), chi=euler_characteristic(partial)))
    logger.debug("invariants of %s: %s", record.component, record)
    return record


def euler_characteristic(r: InvariantRecord) -> int:
    """Reduced Euler characteristic, evaluated from the generator count and from the sheet data."""
    by_rank = r.s0 - r.Q
    by_counts = r.s - (r.e + r.v + r.c + r.G + r.lam)
    if by_rank != by_counts:
        raise exceptions.InternalConsistencyError(
            "reduced Euler characteristic disagrees: %d != %d" % (by_rank, by_counts),
            payload={"component": r.component},
        )
    return by_rank


def euler_relation_holds(r: InvariantRecord) -> bool:
    return r.s - r.e == r.v + r.c


def global_invariants(
    records: Sequence[InvariantRecord], gamma: extended_graph.ExtendedGraph
) -> GlobalInvariantRecord:
    beta1 = extended_graph.betti1(gamma)
    total = {key: sum(getattr(r, key) for r in records) for key, _ in ROWS}
    nu = total["nu"] - beta1
    chi = total["s"] - (total["e"] + total["v"] + total["c"] + total["G"] + beta1 + total["lam"])
    other = nu - (total["G"] + total["e"] + total["v"])
    assembled = total["chi"] - beta1 + len(extended_graph.components(gamma)) - 1
    if not chi == other == assembled:
        raise exceptions.InternalConsistencyError(
            "global reduced Euler characteristic disagrees: %d, %d, %d" % (chi, other, assembled)
        )
    return GlobalInvariantRecord(
        components=tuple(records),
        beta1=beta1,
        nu=nu,
        s=total["s"],
        c=total["c"],
        lam=total["lam"],
        v=total["v"],
        e=total["e"],
        G=total["G"],
        q=total["q"],
        Q=total["Q"],
        s0=total["s0"],
        s0o=total["s0o"],
        s0n=total["s0n"],
        chi=chi,
    )


def format_table(
    records: Sequence[InvariantRecord], global_record: Optional[GlobalInvariantRecord] = None
) -> str:
    """Aligned text table: one row per invariant, one column per component."""
    columns = {r.component: [getattr(r, key) for key, _ in ROWS] for r in records}
    if global_record is not None:
        values = []
        for key, _ in ROWS:
            if key == "lam":
                values.append(global_record.lam + global_record.beta1)
            else:
                values.append(getattr(global_record, key))
        columns["M"] = values
    df = pd.DataFrame(columns, index=[label for _, label in ROWS])
    return df.to_string()
