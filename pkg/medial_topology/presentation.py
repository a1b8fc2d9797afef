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

"""Fundamental group presentations of fin-free irreducible components.

The 1-skeleton joins the Y-network to one hub per sheet: a spoke runs from
the hub to the start of every attached circle and the sheet's own loops sit
at the hub. Generators are the non-tree edges of that 1-complex, listed in
three blocks: component graph cycles, Y-network cycles and sheet loops.
"""

from dataclasses import dataclass, field
import logging
from typing import Dict, List, Optional, Sequence, Tuple

from medial_topology import exceptions
from medial_topology import extended_graph
from medial_topology import medial_model

logger = logging.getLogger(__name__)

Letter = Tuple[str, int]
Word = Tuple[Letter, ...]

HUB = "h:"


def free_reduce(word: Sequence[Letter]) -> Word:
    stack: List[Letter] = []
    for letter, power in word:
        if stack and stack[-1][0] == letter and stack[-1][1] == -power:
            stack.pop()
        else:
            stack.append((letter, power))
    return tuple(stack)


def inverse(word: Sequence[Letter]) -> Word:
    return tuple((letter, -power) for letter, power in reversed(word))


def format_word(word: Sequence[Letter]) -> str:
    if not word:
        return "1"
    return "*".join(letter if power > 0 else "%s^-1" % letter for letter, power in word)


def surface_word(sheet: medial_model.Sheet, loops: Sequence[str]) -> Word:
    """Commutator or squares normal form in the sheet's own loop letters."""
    if sheet.orientable:
        word: List[Letter] = []
        for a, b in zip(loops[0::2], loops[1::2]):
            word.extend([(a, 1), (b, 1), (a, -1), (b, -1)])
        return tuple(word)
    return tuple((c, 1) for c in loops for _ in range(2))


@dataclass(frozen=True)
class SYPrimeComplex:
    complex: medial_model.MedialComplex
    graph: extended_graph.ExtendedGraph
    forest: extended_graph.SpanningForest
    lambda_block: Tuple[str, ...]
    y_block: Tuple[str, ...]
    q_block: Tuple[str, ...]
    # (sheet, boundary index) -> spoke edge id
    spokes: Dict[Tuple[str, int], str] = field(default_factory=dict)
    # sheet -> loop edge ids at its hub
    loops: Dict[str, Tuple[str, ...]] = field(default_factory=dict)

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.lambda_block + self.y_block + self.q_block

    @property
    def base_point(self) -> Optional[str]:
        return self.graph.vertices[0] if self.graph.vertices else None


@dataclass(frozen=True)
class RelationWord:
    sheet: str
    word: Word

    @property
    def trivial(self) -> bool:
        return not self.word

    def to_dict(self):
        return {"sheet": self.sheet, "word": format_word(self.word), "trivial": self.trivial}


@dataclass(frozen=True)
class Presentation:
    component: str
    lambda_block: Tuple[str, ...]
    y_block: Tuple[str, ...]
    q_block: Tuple[str, ...]
    relations: Tuple[RelationWord, ...]

    @property
    def generators(self) -> Tuple[str, ...]:
        return self.lambda_block + self.y_block + self.q_block

    @property
    def rank(self) -> int:
        return len(self.generators)

    def lambda_image(self) -> List[Word]:
        """Relations pushed onto the free group of the component graph."""
        keep = set(self.lambda_block)
        return [free_reduce([x for x in r.word if x[0] in keep]) for r in self.relations]

    def to_dict(self):
        return {
            "component": self.component,
            "generators": {
                "lambda": list(self.lambda_block),
                "Y": list(self.y_block),
                "q": list(self.q_block),
            },
            "relations": [r.to_dict() for r in self.relations],
        }


def _loop_names(sheet: medial_model.Sheet, count: int) -> List[str]:
    if sheet.edge_curves:
        return ["%s.x%d" % (sheet.id, i) for i in range(1, count + 1)]
    if sheet.orientable:
        names = []
        for i in range(1, sheet.genus + 1):
            names.extend(["%s.a%d" % (sheet.id, i), "%s.b%d" % (sheet.id, i)])
        return names
    return ["%s.c%d" % (sheet.id, i) for i in range(1, count + 1)]


def build_sy_prime(
    c: medial_model.MedialComplex, lam_graph: Optional[extended_graph.ExtendedGraph] = None
) -> SYPrimeComplex:
    if not medial_model.is_fin_free(c):
        raise exceptions.PreconditionError(
            "presentations need a fin-free component", payload={"complex": c.name}
        )
    network = c.network
    vertices = list(network.vertices)
    edges = [(e.id, e.u, e.v) for e in network.edges]
    spokes: Dict[Tuple[str, int], str] = {}
    loops: Dict[str, Tuple[str, ...]] = {}
    landed = set()
    for sheet in c.sheets:
        vertices.append(HUB + sheet.id)
    for sheet in c.sheets:
        for i, b in sheet.attached:
            start = medial_model.token_ends(network, b.tokens[0])[0]
            spoke = "%s:%d" % (sheet.id, i)
            spokes[(sheet.id, i)] = spoke
            edges.append((spoke, HUB + sheet.id, start))
            landed.add(start)
    for sheet in c.sheets:
        count = sheet.weighted_genus + max(sheet.edge_curves - 1, 0)
        loops[sheet.id] = tuple(_loop_names(sheet, count))
        edges.extend((name, HUB + sheet.id, HUB + sheet.id) for name in loops[sheet.id])
    graph = extended_graph.make_graph(
        vertices, edges, artificial=network.artificial_vertices - landed
    )
    forest = extended_graph.maximal_tree(graph)
    if len(forest.trees) > 1:
        raise exceptions.PreconditionError(
            "component is not connected", payload={"complex": c.name}
        )
    y_edges = {e.id for e in network.edges}
    spoke_ids = set(spokes.values())
    lambda_block = tuple(e for e in forest.non_tree_edges if e in spoke_ids)
    y_block = tuple(e for e in forest.non_tree_edges if e in y_edges)
    q_block = tuple(name for sheet in c.sheets for name in loops[sheet.id])
    if lam_graph is not None and len(lambda_block) != extended_graph.betti1(lam_graph):
        raise exceptions.InternalConsistencyError(
            "component graph has %d cycles but %d spokes are off the tree"
            % (extended_graph.betti1(lam_graph), len(lambda_block))
        )
    logger.debug(
        "%s: generators lambda=%d Y=%d q=%d",
        c.component or c.name,
        len(lambda_block),
        len(y_block),
        len(q_block),
    )
    return SYPrimeComplex(c, graph, forest, lambda_block, y_block, q_block, spokes, loops)


def _letters(syp: SYPrimeComplex, word: Sequence[Letter]) -> Word:
    tree = syp.forest.tree_edges
    return tuple(x for x in word if x[0] not in tree)


def relation_words(syp: SYPrimeComplex) -> List[RelationWord]:
    """One relation per sheet without edge circles: its surface word times its inverted holes."""
    relations = []
    for sheet in syp.complex.sheets:
        if sheet.edge_curves:
            continue
        holes: List[Letter] = []
        for i, b in sheet.attached:
            spoke = syp.spokes[(sheet.id, i)]
            holes.append((spoke, 1))
            holes.extend(b.steps())
            holes.append((spoke, -1))
        path = surface_word(sheet, syp.loops[sheet.id]) + inverse(holes)
        relations.append(RelationWord(sheet.id, free_reduce(_letters(syp, path))))
    return relations


def pi1_presentation(
    c: medial_model.MedialComplex, lam_graph: Optional[extended_graph.ExtendedGraph] = None
) -> Presentation:
    syp = build_sy_prime(c, lam_graph)
    relations = relation_words(syp)
    for r in relations:
        if r.trivial:
            logger.info("relation of sheet %s reduces to the empty word", r.sheet)
    return Presentation(
        component=c.component or c.name or "M",
        lambda_block=syp.lambda_block,
        y_block=syp.y_block,
        q_block=syp.q_block,
        relations=tuple(relations),
    )


class _FoldGraph:
    """Labelled graph used for subgroup folding; vertex 0 is the base point."""

    def __init__(self):
        self.edges = set()
        self.adjacent: Dict[int, set] = {0: set()}
        self.size = 1

    def vertex(self) -> int:
        v = self.size
        self.size += 1
        self.adjacent[v] = set()
        return v

    def add(self, u: int, letter: str, v: int) -> None:
        e = (u, letter, v)
        self.edges.add(e)
        self.adjacent[u].add(e)
        self.adjacent[v].add(e)

    def remove(self, e) -> None:
        self.edges.discard(e)
        self.adjacent[e[0]].discard(e)
        self.adjacent[e[2]].discard(e)

    def merge(self, keep: int, gone: int) -> None:
        for e in list(self.adjacent[gone]):
            self.remove(e)
            u, letter, v = e
            self.add(keep if u == gone else u, letter, keep if v == gone else v)
        del self.adjacent[gone]

    def degree(self, v: int) -> int:
        return sum(2 if e[0] == e[2] else 1 for e in self.adjacent[v])


def _wedge(words: Sequence[Sequence[Letter]]) -> _FoldGraph:
    g = _FoldGraph()
    for word in words:
        word = free_reduce(word)
        prev = 0
        for i, (letter, power) in enumerate(word):
            nxt = 0 if i == len(word) - 1 else g.vertex()
            if power > 0:
                g.add(prev, letter, nxt)
            else:
                g.add(nxt, letter, prev)
            prev = nxt
    return g


def fold(words: Sequence[Sequence[Letter]]) -> _FoldGraph:
    """Stallings folding of the wedge of word loops, then trimming to the core at the base."""
    g = _wedge(words)
    work = list(g.adjacent)
    while work:
        w = work.pop()
        if w not in g.adjacent:
            continue
        seen: Dict[Tuple[str, int], int] = {}
        for u, letter, v in sorted(g.adjacent[w]):
            for key, other in (((letter, 1), v), ((letter, -1), u)):
                if (u if key[1] > 0 else v) != w:
                    continue
                if key in seen and seen[key] != other:
                    keep, gone = sorted((seen[key], other))
                    g.merge(keep, gone)
                    work.extend([keep, w if w != gone else keep])
                    break
                seen[key] = other
            else:
                continue
            break
    hanging = [v for v in g.adjacent if v != 0 and g.degree(v) <= 1]
    while hanging:
        v = hanging.pop()
        if v not in g.adjacent:
            continue
        ends = [e[2] if e[0] == v else e[0] for e in g.adjacent[v]]
        for e in list(g.adjacent[v]):
            g.remove(e)
        del g.adjacent[v]
        hanging.extend(u for u in ends if u != 0 and u in g.adjacent and g.degree(u) <= 1)
    return g


def generates_full_group(words: Sequence[Sequence[Letter]], rank: int) -> bool:
    """True when the words generate the whole free group on ``rank`` letters."""
    g = fold(words)
    if set(g.adjacent) != {0}:
        return False
    labels = {letter for _, letter, _ in g.edges}
    return len(g.edges) == rank and len(labels) == rank


@dataclass(frozen=True)
class ContractibilityVerdict:
    contractible: bool
    conditions: Dict[str, bool]
    diagnostics: Tuple[str, ...] = ()

    def to_dict(self):
        return {
            "contractible": self.contractible,
            "conditions": dict(self.conditions),
            "diagnostics": list(self.diagnostics),
        }


def check_contractible(components, gamma, records, presentations) -> ContractibilityVerdict:
    """Evaluate the tree, genus, edge circle, Euler and generation conditions."""
    notes: List[str] = []
    beta1 = extended_graph.betti1(gamma)
    if beta1:
        notes.append("component attachment graph has %d independent cycles" % beta1)
    lambda_ok = True
    euler_ok = True
    generation_ok = True
    for r, p in zip(records, presentations):
        if r.lam:
            lambda_ok = False
            notes.append("%s: component graph has %d cycles" % (r.component, r.lam))
        if r.s - r.e != r.v + r.c:
            euler_ok = False
            notes.append(
                "%s: Euler relation fails: %d ≠ %d" % (r.component, r.s - r.e, r.v + r.c)
            )
        words = [rel.word for rel in p.relations]
        if not generates_full_group(words, p.rank):
            generation_ok = False
            notes.append(
                "%s: relations do not generate the free group of rank %d" % (r.component, p.rank)
            )
        if r.s0 != r.Q:
            notes.append(
                "%s: %d relations against %d generators, generation is not a free basis"
                % (r.component, r.s0, r.Q)
            )
    genus_ok = True
    edges_ok = True
    for c in components:
        for sheet in c.sheets:
            if sheet.weighted_genus:
                genus_ok = False
                notes.append("sheet %s has genus %d" % (sheet.id, sheet.genus))
            if sheet.edge_curves > 1:
                edges_ok = False
                notes.append("sheet %s has %d edge circles" % (sheet.id, sheet.edge_curves))
    conditions = {
        "gamma_tree": beta1 == 0,
        "lambda_trees": lambda_ok,
        "genus_zero": genus_ok,
        "edge_circles": edges_ok,
        "euler_relation": euler_ok,
        "generation": generation_ok,
    }
    verdict = all(conditions.values())
    logger.info("contractibility verdict: %s", verdict)
    return ContractibilityVerdict(verdict, conditions, tuple(notes))


def format_presentation(p: Presentation) -> str:
    relations = ", ".join(format_word(r.word) for r in p.relations)
    return "%s: < %s | %s >" % (p.component, ", ".join(p.generators), relations)
