#!/usr/bin/env python3
"""Grow connected graphs vertex by vertex above -lambda* and collect the mavericks."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from graphs import (
    Graph,
    MAX_ORDER,
    RootedGraph,
    bits,
    parse_edges,
    parse_indexed_edges,
    popcount,
    serialize_edges,
    serialize_indexed_edges,
)
from isohash import GeneralizedDegreeHash, IsoIndex, hash_graph
from parallel import DEFAULT_JOBS, ordered_map
from spectral import GateResult, ParentCertificate, gate_lambda_star, is_psd_at_two

LOGGER = logging.getLogger("lambdastar.enum_maverick")

# the order-10 restriction keeps only graphs strictly below -2
PSD_FILTER_ORDER = 10
WITNESS_FILTER_ORDER = 11


class ApeWitness(NamedTuple):
    u0: int
    u1: int
    u2: int
    uc: int


def ape_witnesses(graph: Graph) -> List[ApeWitness]:
    """u0u1, u1u2, u0uc are the only edges touching u1, u2, uc."""
    out: List[ApeWitness] = []
    for u1 in range(graph.n):
        if graph.degree(u1) != 2:
            continue
        for u2 in graph.neighbors(u1):
            if graph.degree(u2) != 1:
                continue
            u0 = next(v for v in graph.neighbors(u1) if v != u2)
            for uc in graph.neighbors(u0):
                if uc != u1 and graph.degree(uc) == 1:
                    out.append(ApeWitness(u0, u1, u2, uc))
    return sorted(out)


def ape_base(graph: Graph, witness: ApeWitness) -> RootedGraph:
    """F_R with APE(F_R, 0) isomorphic to the graph, read off a witness."""
    rest = [v for v in range(graph.n) if v not in witness]
    roots = frozenset(rest.index(v) for v in graph.neighbors(witness.u0) if v in rest)
    return RootedGraph(graph.induced(rest), roots)


@dataclass(frozen=True)
class GrowNode:
    graph: Graph
    possible_subsets: Tuple[int, ...]


@dataclass(frozen=True)
class NodeOutcome:
    maverick: bool
    children: Tuple[Tuple[GrowNode, GeneralizedDegreeHash], ...]


def subset_key(mask: int) -> Tuple[int, int]:
    return popcount(mask), mask


def is_maverick(graph: Graph) -> bool:
    if graph.n <= PSD_FILTER_ORDER - 1 and is_psd_at_two(graph):
        return False
    return not ape_witnesses(graph)


def grow_node(node: GrowNode) -> NodeOutcome:
    graph = node.graph
    n = graph.n
    certificate = ParentCertificate(graph, with_psd2=n + 1 == PSD_FILTER_ORDER)
    passing = [s for s in node.possible_subsets if certificate.gate_child(list(bits(s))) is GateResult.ABOVE]
    new_bit = 1 << n
    subsets = {new_bit}
    for s in passing:
        subsets.update((s, s | new_bit))
    shared = tuple(sorted(subsets, key=subset_key))
    unique_witness = n + 1 == WITNESS_FILTER_ORDER and len(ape_witnesses(graph)) == 1
    children = []
    for s in passing:
        if n + 1 == PSD_FILTER_ORDER and certificate.child_psd_at_two(list(bits(s))):
            continue
        child = graph.add_vertex(s)
        if unique_witness and ape_witnesses(child):
            continue
        children.append((GrowNode(child, shared), hash_graph(child)))
    return NodeOutcome(is_maverick(graph), tuple(children))


@dataclass
class MaverickCatalog:
    graphs: List[Graph]

    def __len__(self) -> int:
        return len(self.graphs)

    def histogram(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for graph in self.graphs:
            counts[graph.n] = counts.get(graph.n, 0) + 1
        return dict(sorted(counts.items()))

    def sorted(self) -> "MaverickCatalog":
        return MaverickCatalog(sorted(self.graphs, key=lambda g: (g.n, serialize_edges(g))))


# Checkpoints -------------------------------------------------------------------------
def _save_level(checkpoint_dir: Path, order: int, level: Sequence[GrowNode], found: Sequence[Graph]) -> None:
    checkpoint_dir.mkdir(parents=True, exist_ok=True)
    lines = [
        f"{serialize_indexed_edges(node.graph)}\t{','.join(map(str, node.possible_subsets))}" for node in level
    ]
    (checkpoint_dir / f"level_{order}.txt").write_text("\n".join(lines) + "\n", encoding="utf-8")
    (checkpoint_dir / "mavericks.txt").write_text(
        "".join(f"{g.n}\t{serialize_indexed_edges(g)}\n" for g in found), encoding="utf-8"
    )
    state = {"order": order, "level_size": len(level), "mavericks": len(found)}
    (checkpoint_dir / "state.json").write_text(json.dumps(state, indent=2) + "\n", encoding="utf-8")


def _load_level(checkpoint_dir: Path) -> Tuple[int, List[GrowNode], List[Graph]]:
    state = json.loads((checkpoint_dir / "state.json").read_text(encoding="utf-8"))
    order = int(state["order"])
    level = []
    for line in (checkpoint_dir / f"level_{order}.txt").read_text(encoding="utf-8").splitlines():
        if not line:
            continue
        edges, subsets = line.split("\t")
        level.append(GrowNode(parse_indexed_edges(edges, order), tuple(int(s) for s in subsets.split(","))))
    found = []
    for line in (checkpoint_dir / "mavericks.txt").read_text(encoding="utf-8").splitlines():
        if line:
            n, edges = line.split("\t")
            found.append(parse_indexed_edges(edges, int(n)))
    LOGGER.info("Reanudando en orden %s con %s nodos y %s mavericks", order, len(level), len(found))
    return order, level, found


def enumerate_mavericks(
    jobs: int = DEFAULT_JOBS,
    checkpoint_dir: Optional[Path] = None,
    resume: bool = False,
) -> MaverickCatalog:
    if resume and checkpoint_dir is not None and (checkpoint_dir / "state.json").exists():
        order, level, found = _load_level(checkpoint_dir)
    else:
        k2 = Graph.from_edges(2, [(0, 1)])
        if gate_lambda_star(k2) is not GateResult.ABOVE:
            raise AssertionError("K2 debe quedar por encima de -lambda*")
        order, level, found = 2, [GrowNode(k2, (1, 2, 3))], []
    while level:
        outcomes = ordered_map(grow_node, level, jobs, desc=f"orden {order}")
        index: IsoIndex[int] = IsoIndex()
        nxt: List[GrowNode] = []
        emitted = 0
        for node, outcome in zip(level, outcomes):
            if outcome.maverick:
                found.append(node.graph)
                emitted += 1
            for child, key in outcome.children:
                if index.add(child.graph, len(nxt), key=key):
                    nxt.append(child)
        LOGGER.info("Orden %s: %s nodos, %s mavericks, %s hijos", order, len(level), emitted, len(nxt))
        level = nxt
        order += 1
        if level and order > MAX_ORDER:
            raise RuntimeError(f"El nivel {order} no está vacío; se esperaba terminar antes")
        if checkpoint_dir is not None:
            _save_level(checkpoint_dir, order, level, found)
    return MaverickCatalog(found).sorted()


def verify_maverick(graph: Graph) -> bool:
    return (
        graph.is_connected()
        and gate_lambda_star(graph) is GateResult.ABOVE
        and not is_psd_at_two(graph)
        and not ape_witnesses(graph)
    )


# Catalog files -----------------------------------------------------------------------
def write_maverick_catalog(path: Path, catalog: MaverickCatalog, fmt: str = "text") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "json":
        payload = {
            "graphs": [{"order": g.n, "edges": serialize_edges(g)} for g in catalog.graphs],
            "histogram": {str(k): v for k, v in catalog.histogram().items()},
            "total": len(catalog),
        }
        path.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
        return
    lines = [f"{g.n}\t{serialize_edges(g)}" for g in catalog.graphs]
    lines += [f"# order {k}: {v}" for k, v in catalog.histogram().items()]
    lines.append(f"# total {len(catalog)}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_maverick_catalog(path: Path) -> MaverickCatalog:
    text = path.read_text(encoding="utf-8")
    graphs: List[Graph] = []
    if path.suffix == ".json":
        for item in json.loads(text)["graphs"]:
            graphs.append(parse_edges(item["edges"], order=item["order"], rooted=False))  # type: ignore[arg-type]
    else:
        for line in text.splitlines():
            if not line or line.startswith("#"):
                continue
            order, edges = line.split("\t")[:2]
            graphs.append(parse_edges(edges, order=int(order), rooted=False))  # type: ignore[arg-type]
    return MaverickCatalog(graphs)


__all__ = [
    "ApeWitness",
    "GrowNode",
    "MaverickCatalog",
    "NodeOutcome",
    "ape_base",
    "ape_witnesses",
    "enumerate_mavericks",
    "grow_node",
    "is_maverick",
    "read_maverick_catalog",
    "verify_maverick",
    "write_maverick_catalog",
]
