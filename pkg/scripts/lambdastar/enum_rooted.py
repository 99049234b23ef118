#!/usr/bin/env python3
"""Enumerate single-rooted bipartite graphs whose augmented path extension stays above -lambda*."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from graphs import (
    MAX_ORDER,
    Graph,
    SingleRootedGraph,
    ape,
    bits,
    line_graph,
    parse_edges,
    serialize_edges,
)
from isohash import IsoIndex, hash_single_rooted
from parallel import DEFAULT_JOBS, ordered_map
from spectral import GateResult, ParentCertificate, gate_lambda_star, is_psd_at_two, min_ell0

LOGGER = logging.getLogger("lambdastar.enum_rooted")

CHERRY = SingleRootedGraph(Graph.from_edges(3, [(0, 1), (0, 2)]), 0, (0, 1, 1))


@dataclass(frozen=True)
class RootedCatalogEntry:
    graph: SingleRootedGraph
    edge_string: str
    size: int
    ell0: Optional[int] = None
    maximal: bool = False


@dataclass
class RootedCatalog:
    entries: List[RootedCatalogEntry]

    def __len__(self) -> int:
        return len(self.entries)

    def histogram(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for entry in self.entries:
            counts[entry.size] = counts.get(entry.size, 0) + 1
        return dict(sorted(counts.items()))

    def maximal(self) -> List[RootedCatalogEntry]:
        return [e for e in self.entries if e.maximal]


def ape_of(single: SingleRootedGraph) -> Graph:
    return ape(line_graph(single), 0)


def _moves(single: SingleRootedGraph) -> List[Tuple[SingleRootedGraph, List[int]]]:
    """Every one-edge bipartite extension with its border inside APE(L(H), 0).

    APE(L(H), 0) lists the line vertices first (sorted edges of H), then v0.
    """
    graph = single.graph
    edges = graph.edges()
    v0 = len(edges)
    out: List[Tuple[SingleRootedGraph, List[int]]] = []

    def border(x: int, y: int) -> List[int]:
        touched = [i for i, (a, b) in enumerate(edges) if a in (x, y) or b in (x, y)]
        if single.root in (x, y):
            touched.append(v0)
        return touched

    for u in range(graph.n):
        for w in range(u + 1, graph.n):
            if single.parts[u] != single.parts[w] and not graph.has_edge(u, w):
                out.append((single.add_edge(u, w), border(u, w)))
    for u in range(graph.n):
        out.append((single.add_leaf(u), border(u, graph.n)))
    return out


def extend_member(single: SingleRootedGraph) -> Tuple[List[SingleRootedGraph], bool]:
    """Admitted one-edge extensions of a member and whether it is maximal."""
    certificate = ParentCertificate(ape_of(single), with_psd2=False)
    admitted = [
        child
        for child, border in _moves(single)
        if certificate.gate_child(border) is GateResult.ABOVE
    ]
    return admitted, not admitted


def _ell0_of(single: SingleRootedGraph) -> int:
    return min_ell0(line_graph(single))


def enumerate_rooted(jobs: int = DEFAULT_JOBS, annotate: bool = True) -> RootedCatalog:
    trivial = SingleRootedGraph.trivial()
    if gate_lambda_star(ape_of(CHERRY)) is not GateResult.ABOVE:
        raise AssertionError("La semilla r0r1 debe pasar la compuerta")
    found: List[RootedCatalogEntry] = [RootedCatalogEntry(trivial, "", 0, maximal=False)]
    level = [CHERRY]
    size = 2
    while level:
        results = ordered_map(extend_member, level, jobs, desc=f"tamaño {size}")
        index: IsoIndex[int] = IsoIndex()
        nxt: List[SingleRootedGraph] = []
        for parent, (children, is_maximal) in zip(level, results):
            found.append(RootedCatalogEntry(parent, serialize_edges(parent), size, maximal=is_maximal))
            for child in children:
                if index.add(child, len(nxt), key=hash_single_rooted(child)):
                    nxt.append(child)
        LOGGER.info("Tamaño %s: %s miembros, %s candidatos nuevos", size, len(level), len(nxt))
        level = nxt
        size += 1
    catalog = RootedCatalog(sorted(found, key=lambda e: (e.size, e.edge_string)))
    if annotate:
        annotate_ell0(catalog, jobs)
    LOGGER.info("Catálogo enraizado: %s miembros, %s maximales", len(catalog), len(catalog.maximal()))
    return catalog


def ape_family(catalog: RootedCatalog, max_order: int = MAX_ORDER) -> List[Graph]:
    """APE(L(H), ell) for every member H and every ell that keeps the order within max_order."""
    out: List[Graph] = []
    for entry in catalog.entries:
        base = line_graph(entry.graph)
        ell = 0
        while base.graph.n + ell + 4 <= max_order:
            out.append(ape(base, ell))
            ell += 1
    return out


def annotate_ell0(catalog: RootedCatalog, jobs: int = DEFAULT_JOBS) -> RootedCatalog:
    values = ordered_map(_ell0_of, [e.graph for e in catalog.entries], jobs, desc="ell0")
    catalog.entries = [replace(e, ell0=v) for e, v in zip(catalog.entries, values)]
    return catalog


# Structural checks -----------------------------------------------------------------
def _edge_subgraph(single: SingleRootedGraph, edges: Sequence[Tuple[int, int]]) -> Optional[SingleRootedGraph]:
    """Connected general subgraph on the given edges, or None when the root is a leaf or it splits."""
    root = single.root
    if not edges:
        return SingleRootedGraph.trivial()
    vertices = sorted({root} | {v for e in edges for v in e})
    pos = {v: i for i, v in enumerate(vertices)}
    sub = Graph.from_edges(len(vertices), [(pos[a], pos[b]) for a, b in edges])
    if sub.degree(pos[root]) < 2 or not sub.is_connected():
        return None
    return SingleRootedGraph(sub, pos[root], tuple(single.parts[v] ^ single.parts[root] for v in vertices))


def check_general_subgraph_closure(catalog: RootedCatalog) -> bool:
    index: IsoIndex[int] = IsoIndex()
    for i, entry in enumerate(catalog.entries):
        index.add(entry.graph, i)
    for entry in catalog.maximal():
        edges = entry.graph.graph.edges()
        for mask in range(1 << len(edges)):
            sub = _edge_subgraph(entry.graph, [edges[i] for i in bits(mask)])
            if sub is not None and index.find(sub) is None:
                LOGGER.warning("Subgrafo de %s fuera del catálogo: %s", entry.edge_string, serialize_edges(sub))
                return False
    return True


def ell0_violations(catalog: RootedCatalog, max_ell: int = 6) -> List[str]:
    """Members where some APE(L(H), ell) with ell0 <= ell <= max_ell is still PSD at -2."""
    bad = []
    for entry in catalog.entries:
        if entry.ell0 is None:
            bad.append(entry.edge_string)
            continue
        base = line_graph(entry.graph)
        if any(is_psd_at_two(ape(base, ell)) for ell in range(entry.ell0, max_ell + 1)):
            bad.append(entry.edge_string)
    return bad


def degree_and_distance_bounds(catalog: RootedCatalog) -> Tuple[int, int]:
    """Largest degree and largest root distance over the catalog."""
    max_degree = max_distance = 0
    for entry in catalog.entries:
        graph = entry.graph.graph
        max_degree = max(max_degree, max(graph.degrees(), default=0))
        dist = graph.distances_from(entry.graph.root)
        max_distance = max(max_distance, max(d for d in dist if d is not None))
    return max_degree, max_distance


def match_published_maximal(catalog: RootedCatalog, published: Sequence[SingleRootedGraph]) -> bool:
    index: IsoIndex[int] = IsoIndex()
    for i, graph in enumerate(published):
        index.add(graph, i)
    hits = {index.find(e.graph) for e in catalog.maximal()}
    return len(catalog.maximal()) == len(published) and hits == set(range(len(published)))


# Catalog files ---------------------------------------------------------------------
def write_rooted_catalog(path: Path, catalog: RootedCatalog, fmt: str = "text") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        payload = {
            "entries": [
                {"edges": e.edge_string, "size": e.size, "ell0": e.ell0, "maximal": e.maximal}
                for e in catalog.entries
            ],
            "histogram": {str(k): v for k, v in catalog.histogram().items()},
            "maximal_count": len(catalog.maximal()),
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return
    lines = [
        f"{e.edge_string}\t{e.size}\t{'' if e.ell0 is None else e.ell0}\t{'yes' if e.maximal else 'no'}"
        for e in catalog.entries
    ]
    lines += [f"# size {k}: {v}" for k, v in catalog.histogram().items()]
    lines.append(f"# total {len(catalog)} maximal {len(catalog.maximal())}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_rooted_catalog(path: Path) -> RootedCatalog:
    text = path.read_text(encoding="utf-8")
    rows: List[Tuple[str, int, Optional[int], bool]] = []
    if path.suffix == ".json":
        for item in json.loads(text)["entries"]:
            rows.append((item["edges"], item["size"], item["ell0"], item["maximal"]))
    else:
        for line in text.splitlines():
            if not line or line.startswith("#"):
                continue
            edges, size, ell0, maximal = line.split("\t")
            rows.append((edges, int(size), int(ell0) if ell0 else None, maximal == "yes"))
    entries = []
    for edges, size, ell0, maximal in rows:
        graph = parse_edges(edges, rooted=True)
        entries.append(RootedCatalogEntry(graph, edges, size, ell0, maximal))  # type: ignore[arg-type]
    return RootedCatalog(entries)


__all__ = [
    "CHERRY",
    "RootedCatalog",
    "RootedCatalogEntry",
    "annotate_ell0",
    "ape_family",
    "ape_of",
    "check_general_subgraph_closure",
    "degree_and_distance_bounds",
    "ell0_violations",
    "enumerate_rooted",
    "extend_member",
    "match_published_maximal",
    "read_rooted_catalog",
    "write_rooted_catalog",
]
