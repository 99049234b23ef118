#!/usr/bin/env python3
"""Isomorphism hashes and a backtracking isomorphism test for the three graph kinds."""
from __future__ import annotations

from typing import Dict, Generic, Hashable, List, Optional, Sequence, Tuple, TypeVar

from graphs import AnyGraph, Graph, RootedGraph, SingleRootedGraph, bits, popcount

SingleRootedHash = Tuple[int, Tuple[int, ...], Tuple[int, ...]]
GeneralizedDegreeHash = Tuple[Tuple[int, int], ...]

T = TypeVar("T")


def generalized_degrees(graph: Graph) -> List[Tuple[int, int]]:
    """(d_v, number of edges among the neighbours of v) for every vertex."""
    adj = graph.adj
    out = []
    for v in range(graph.n):
        nbrs = adj[v]
        inner = sum(popcount(adj[u] & nbrs) for u in bits(nbrs)) // 2
        out.append((popcount(nbrs), inner))
    return out


def hash_graph(graph: Graph) -> GeneralizedDegreeHash:
    return tuple(sorted(generalized_degrees(graph)))


def hash_single_rooted(single: SingleRootedGraph) -> SingleRootedHash:
    graph = single.graph
    root_part = single.parts[single.root]
    same, other = [], []
    for v in range(graph.n):
        (same if single.parts[v] == root_part else other).append(graph.degree(v))
    return graph.degree(single.root), tuple(sorted(same)), tuple(sorted(other))


def hash_rooted(rooted: RootedGraph) -> Tuple[int, GeneralizedDegreeHash, GeneralizedDegreeHash]:
    gd = generalized_degrees(rooted.graph)
    on = tuple(sorted(gd[r] for r in rooted.roots))
    off = tuple(sorted(gd[v] for v in range(rooted.graph.n) if v not in rooted.roots))
    return len(rooted.roots), on, off


def _classes(item: AnyGraph) -> Tuple[Graph, List[Hashable]]:
    if isinstance(item, SingleRootedGraph):
        graph = item.graph
        root_part = item.parts[item.root]
        gd = generalized_degrees(graph)
        return graph, [
            (v == item.root, item.parts[v] == root_part, gd[v]) for v in range(graph.n)
        ]
    if isinstance(item, RootedGraph):
        gd = generalized_degrees(item.graph)
        return item.graph, [(v in item.roots, gd[v]) for v in range(item.graph.n)]
    return item, list(generalized_degrees(item))


def _search_order(graph: Graph) -> List[int]:
    """Next vertex: most already-placed neighbours, then highest degree."""
    n = graph.n
    placed = 0
    order: List[int] = []
    degrees = graph.degrees()
    for _ in range(n):
        best = max(
            (v for v in range(n) if not (placed >> v) & 1),
            key=lambda v: (popcount(graph.adj[v] & placed), degrees[v], -v),
        )
        order.append(best)
        placed |= 1 << best
    return order


def find_isomorphism(first: AnyGraph, second: AnyGraph) -> Optional[List[int]]:
    """Return mapping[v] = image of v, or None when the graphs are not isomorphic."""
    if type(first) is not type(second):
        raise TypeError("Solo se comparan grafos del mismo tipo")
    g, cls_g = _classes(first)
    h, cls_h = _classes(second)
    if g.n != h.n or g.edge_count != h.edge_count or sorted(map(repr, cls_g)) != sorted(map(repr, cls_h)):
        return None
    candidates: Dict[Hashable, List[int]] = {}
    for w, c in enumerate(cls_h):
        candidates.setdefault(c, []).append(w)
    order = _search_order(g)
    mapping = [-1] * g.n
    adj_g, adj_h = g.adj, h.adj

    def extend(k: int, used: int) -> bool:
        if k == g.n:
            return True
        v = order[k]
        image = 0
        for u in bits(adj_g[v]):
            if mapping[u] >= 0:
                image |= 1 << mapping[u]
        for w in candidates[cls_g[v]]:
            if (used >> w) & 1 or adj_h[w] & used != image:
                continue
            mapping[v] = w
            if extend(k + 1, used | (1 << w)):
                return True
            mapping[v] = -1
        return False

    return mapping if extend(0, 0) else None


def isomorphic(first: AnyGraph, second: AnyGraph) -> bool:
    return find_isomorphism(first, second) is not None


def invariant_hash(item: AnyGraph) -> Hashable:
    if isinstance(item, SingleRootedGraph):
        return hash_single_rooted(item)
    if isinstance(item, RootedGraph):
        return hash_rooted(item)
    return hash_graph(item)


class IsoIndex(Generic[T]):
    """Hash buckets of representatives; the first graph of each class is kept."""

    def __init__(self) -> None:
        self._buckets: Dict[Hashable, List[Tuple[AnyGraph, T]]] = {}
        self._size = 0

    def __len__(self) -> int:
        return self._size

    def find(self, item: AnyGraph, key: Optional[Hashable] = None) -> Optional[T]:
        bucket = self._buckets.get(invariant_hash(item) if key is None else key, ())
        for other, payload in bucket:
            if isomorphic(item, other):
                return payload
        return None

    def add(self, item: AnyGraph, payload: T, key: Optional[Hashable] = None) -> bool:
        """Insert unless an isomorphic graph is present; True when inserted."""
        key = invariant_hash(item) if key is None else key
        bucket = self._buckets.setdefault(key, [])
        for other, _ in bucket:
            if isomorphic(item, other):
                return False
        bucket.append((item, payload))
        self._size += 1
        return True

    def __contains__(self, item: object) -> bool:
        return self.find(item) is not None  # type: ignore[arg-type]


def dedup(items: Sequence[AnyGraph]) -> List[AnyGraph]:
    index: IsoIndex[int] = IsoIndex()
    return [item for i, item in enumerate(items) if index.add(item, i)]


__all__ = [
    "GeneralizedDegreeHash",
    "IsoIndex",
    "SingleRootedHash",
    "dedup",
    "find_isomorphism",
    "generalized_degrees",
    "hash_graph",
    "hash_rooted",
    "hash_single_rooted",
    "invariant_hash",
    "isomorphic",
]
