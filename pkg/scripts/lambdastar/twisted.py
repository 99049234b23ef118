#!/usr/bin/env python3
"""Twisted path extension witnesses and the twisted-maverick filter."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Dict, List, NamedTuple, Sequence, Tuple

import networkx as nx

from enum_maverick import MaverickCatalog
from graphs import Graph, RootedGraph, bits, parse_edges, serialize_edges
from isohash import IsoIndex
from parallel import DEFAULT_JOBS, ordered_map

LOGGER = logging.getLogger("lambdastar.twisted")


class VerificationError(AssertionError):
    """A twisted maverick did not have exactly one witness, or a structure check failed."""


class TpeWitness(NamedTuple):
    u0: int
    u1: int
    u2: int
    uc: int

    def label(self) -> str:
        return ",".join(map(str, self))


def tpe_witnesses(graph: Graph) -> List[TpeWitness]:
    """u0u1, u0u2, u1u2, u0uc are the only edges touching u1, u2, uc."""
    out: List[TpeWitness] = []
    for u1, u2 in graph.edges():
        if graph.degree(u1) != 2 or graph.degree(u2) != 2:
            continue
        common = graph.adj[u1] & graph.adj[u2]
        for u0 in bits(common):
            for uc in graph.neighbors(u0):
                if uc not in (u1, u2) and graph.degree(uc) == 1:
                    out.append(TpeWitness(u0, u1, u2, uc))
    return sorted(out)


def tpe_base(graph: Graph, witness: TpeWitness) -> RootedGraph:
    """F_R with TPE(F_R, 0) isomorphic to the graph."""
    rest = [v for v in range(graph.n) if v not in witness]
    roots = frozenset(rest.index(v) for v in graph.neighbors(witness.u0) if v in rest)
    return RootedGraph(graph.induced(rest), roots)


@dataclass(frozen=True)
class TwistedEntry:
    graph: Graph
    witness: TpeWitness


@dataclass
class TwistedCatalog:
    entries: List[TwistedEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def histogram(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for entry in self.entries:
            counts[entry.graph.n] = counts.get(entry.graph.n, 0) + 1
        return dict(sorted(counts.items()))


def filter_twisted(mavericks: MaverickCatalog, jobs: int = DEFAULT_JOBS) -> TwistedCatalog:
    found = ordered_map(tpe_witnesses, mavericks.graphs, jobs, desc="witnesses")
    entries: List[TwistedEntry] = []
    offenders = []
    for graph, witnesses in zip(mavericks.graphs, found):
        if not witnesses:
            continue
        if len(witnesses) != 1:
            offenders.append(serialize_edges(graph))
            continue
        entries.append(TwistedEntry(graph, witnesses[0]))
    if offenders:
        raise VerificationError(f"Mavericks torcidos con más de un testigo: {offenders}")
    LOGGER.info("%s mavericks torcidos de %s", len(entries), len(mavericks))
    return TwistedCatalog(entries)


# Structure checks --------------------------------------------------------------------
def has_induced_claw(graph: Graph) -> bool:
    for centre in range(graph.n):
        for a, b, c in combinations(graph.neighbors(centre), 3):
            if not (graph.has_edge(a, b) or graph.has_edge(a, c) or graph.has_edge(b, c)):
                return True
    return False


def _to_nx(graph: Graph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges())
    return g


def is_line_graph_of_bipartite(graph: Graph) -> bool:
    """Per component: K1 is L(K2), K3 is L(K3) or L(K1,3) and passes; otherwise invert and test."""
    for comp in graph.component_masks():
        part = graph.induced(list(bits(comp)))
        if part.n == 1:
            continue
        if part.n == 3 and part.edge_count == 3:
            continue
        if has_induced_claw(part):
            return False
        try:
            root = nx.inverse_line_graph(_to_nx(part))
        except nx.NetworkXError:
            return False
        if not nx.is_bipartite(root):
            return False
    return True


def leaves_leaving_line_graph(graph: Graph) -> List[int]:
    return [v for v in graph.leaves() if is_line_graph_of_bipartite(graph.without([v]))]


def leaves_leaving_claw(graph: Graph) -> List[int]:
    return [v for v in graph.leaves() if has_induced_claw(graph.without([v]))]


def check_large_structure(graphs: Sequence[Graph], min_order: int = 18) -> List[Graph]:
    """Graphs of at least min_order vertices lacking a unique leaf whose removal is L(bipartite)."""
    return [g for g in graphs if g.n >= min_order and len(leaves_leaving_line_graph(g)) != 1]


def ape_overlap(mavericks: Sequence[Graph], ape_graphs: Sequence[Graph]) -> List[Graph]:
    """Members of ape_graphs isomorphic to some maverick; the two classes are disjoint."""
    index: IsoIndex[int] = IsoIndex()
    for i, graph in enumerate(mavericks):
        index.add(graph, i)
    hits = [g for g in ape_graphs if index.find(g) is not None]
    if hits:
        LOGGER.warning("%s extensiones APE coinciden con mavericks", len(hits))
    return hits


def non_twisted_claw_leaves(mavericks: MaverickCatalog, twisted: TwistedCatalog, order: int = 17) -> List[Tuple[Graph, List[int]]]:
    twisted_keys = {serialize_edges(e.graph) for e in twisted.entries}
    return [
        (g, leaves_leaving_claw(g))
        for g in mavericks.graphs
        if g.n == order and serialize_edges(g) not in twisted_keys
    ]


# Catalog files -----------------------------------------------------------------------
def write_twisted_catalog(path: Path, catalog: TwistedCatalog, fmt: str = "text") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        payload = {
            "graphs": [
                {"order": e.graph.n, "edges": serialize_edges(e.graph), "witness": list(e.witness)}
                for e in catalog.entries
            ],
            "histogram": {str(k): v for k, v in catalog.histogram().items()},
            "total": len(catalog),
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return
    lines = [f"{e.graph.n}\t{serialize_edges(e.graph)}\t{e.witness.label()}" for e in catalog.entries]
    lines += [f"# order {k}: {v}" for k, v in catalog.histogram().items()]
    lines.append(f"# total {len(catalog)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_twisted_catalog(path: Path) -> TwistedCatalog:
    """Witness columns refer to the parsed graph's vertex indices, so they are recomputed."""
    text = path.read_text(encoding="utf-8")
    rows: List[Tuple[int, str]] = []
    if path.suffix == ".json":
        rows = [(item["order"], item["edges"]) for item in json.loads(text)["graphs"]]
    else:
        for line in text.splitlines():
            if line and not line.startswith("#"):
                cols = line.split("\t")
                rows.append((int(cols[0]), cols[1]))
    entries = []
    for order, edges in rows:
        graph: Graph = parse_edges(edges, order=order, rooted=False)  # type: ignore[assignment]
        witnesses = tpe_witnesses(graph)
        if len(witnesses) != 1:
            raise VerificationError(f"{edges}: se esperaba un único testigo")
        entries.append(TwistedEntry(graph, witnesses[0]))
    return TwistedCatalog(entries)


__all__ = [
    "TpeWitness",
    "TwistedCatalog",
    "TwistedEntry",
    "ape_overlap",
    "VerificationError",
    "check_large_structure",
    "filter_twisted",
    "has_induced_claw",
    "is_line_graph_of_bipartite",
    "leaves_leaving_claw",
    "leaves_leaving_line_graph",
    "non_twisted_claw_leaves",
    "read_twisted_catalog",
    "tpe_base",
    "tpe_witnesses",
    "write_twisted_catalog",
]
