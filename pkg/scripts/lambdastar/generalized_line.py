#!/usr/bin/env python3
"""Generalized line graphs up to a given order and their minimal forbidden induced subgraphs."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import networkx as nx

from graphs import CorpusLine, Graph, serialize_edges, write_corpus
from isohash import IsoIndex

LOGGER = logging.getLogger("lambdastar.generalized_line")


@dataclass(frozen=True)
class PetalRoot:
    """Simple graph on ``n`` vertices plus ``petals[v]`` double edges hanging off v."""

    n: int
    edges: Tuple[Tuple[int, int], ...]
    petals: Tuple[int, ...]

    @property
    def line_order(self) -> int:
        return len(self.edges) + 2 * sum(self.petals)

    def to_nx(self) -> nx.Graph:
        g = nx.Graph()
        for v in range(self.n):
            g.add_node(v, petals=self.petals[v], label=str(self.petals[v]))
        g.add_edges_from(self.edges)
        return g

    def line_graph(self) -> Graph:
        """Edges adjacent iff they share exactly one end vertex."""
        ends: List[Tuple[int, int]] = list(self.edges)
        # a petal at v is two edges v-x, v-x with a private x
        private = self.n
        for v, count in enumerate(self.petals):
            for _ in range(count):
                ends += [(v, private), (v, private)]
                private += 1
        pairs = []
        for i, (a, b) in enumerate(ends):
            for j in range(i + 1, len(ends)):
                shared = len({a, b} & set(ends[j]))
                if shared == 1:
                    pairs.append((i, j))
        return Graph.from_edges(len(ends), pairs)


def _moves(root: PetalRoot, max_order: int) -> List[PetalRoot]:
    out: List[PetalRoot] = []
    present = set(root.edges)
    room = max_order - root.line_order
    if room >= 1:
        for u in range(root.n):
            for v in range(u + 1, root.n):
                if (u, v) not in present:
                    out.append(PetalRoot(root.n, root.edges + ((u, v),), root.petals))
            out.append(PetalRoot(root.n + 1, root.edges + ((u, root.n),), root.petals + (0,)))
    if room >= 2:
        for v in range(root.n):
            petals = list(root.petals)
            petals[v] += 1
            out.append(PetalRoot(root.n, root.edges, tuple(petals)))
    return out


def grow_roots(max_order: int) -> List[PetalRoot]:
    """All connected petal roots with line order <= max_order, one per isomorphism class."""
    level = [PetalRoot(1, (), (0,))]
    every: List[PetalRoot] = list(level)
    seen: Dict[str, List[nx.Graph]] = {}
    node_match = nx.algorithms.isomorphism.categorical_node_match("petals", 0)
    while level:
        nxt: List[PetalRoot] = []
        for root in level:
            for child in _moves(root, max_order):
                g = child.to_nx()
                key = nx.weisfeiler_lehman_graph_hash(g, node_attr="label")
                bucket = seen.setdefault(key, [])
                if any(nx.is_isomorphic(g, other, node_match=node_match) for other in bucket):
                    continue
                bucket.append(g)
                nxt.append(child)
        every += nxt
        level = nxt
    LOGGER.debug("%s raíces con pétalos hasta orden %s", len(every), max_order)
    return every


def generalized_line_graphs(max_order: int) -> Dict[int, IsoIndex[int]]:
    """Connected generalized line graphs by order, deduplicated."""
    by_order: Dict[int, IsoIndex[int]] = {n: IsoIndex() for n in range(1, max_order + 1)}
    for root in grow_roots(max_order):
        lg = root.line_graph()
        if lg.n == 0 or not lg.is_connected():
            continue
        index = by_order[lg.n]
        index.add(lg, len(index))
    return by_order


def _from_nx(g: nx.Graph) -> Graph:
    nodes = sorted(g.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph.from_edges(len(nodes), [(pos[u], pos[v]) for u, v in g.edges()])


def minimal_forbidden(max_order: int = 7) -> List[Graph]:
    """Connected graphs outside the family whose vertex-deleted subgraphs all lie inside it."""
    if max_order > 7:
        raise ValueError("graph_atlas_g solo cubre grafos de hasta 7 vértices")
    family = generalized_line_graphs(max_order)

    def inside(graph: Graph) -> bool:
        for comp in graph.component_masks():
            part = graph.induced([v for v in range(graph.n) if (comp >> v) & 1])
            if family[part.n].find(part) is None:
                return False
        return True

    found: List[Graph] = []
    for g in nx.graph_atlas_g():
        if not 0 < g.number_of_nodes() <= max_order or not nx.is_connected(g):
            continue
        graph = _from_nx(g)
        if inside(graph):
            continue
        if all(inside(graph.without([v])) for v in range(graph.n)):
            found.append(graph)
    found.sort(key=lambda f: (f.n, f.edge_count, serialize_edges(f)))
    LOGGER.info("%s subgrafos prohibidos minimales hasta orden %s", len(found), max_order)
    return found


def write_forbidden_corpus(path: Path, max_order: int = 7) -> List[CorpusLine]:
    entries = [
        CorpusLine(f"G{i}", serialize_edges(g)) for i, g in enumerate(minimal_forbidden(max_order), start=1)
    ]
    write_corpus(path, entries, header="minimal forbidden induced subgraphs of generalized line graphs")
    return entries


__all__ = [
    "PetalRoot",
    "generalized_line_graphs",
    "grow_roots",
    "minimal_forbidden",
    "write_forbidden_corpus",
]
