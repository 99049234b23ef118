#!/usr/bin/env python3
"""Graphs as bitset rows, rooted variants, extensions, line graphs and the edge-string format."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

MAX_ORDER = 20
ROOT_LABEL = "r"
LABELS = "0123456789abcdefghij"


class GraphError(ValueError):
    """Raised for malformed graphs, extension specs or edge strings."""


class CorpusError(ValueError):
    """Raised when a corpus file is missing or has an invalid line."""


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    adj: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"Se esperaban {self.n} filas de adyacencia, hay {len(self.adj)}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full or (row >> v) & 1:
                raise GraphError(f"Fila {v} inválida (lazo o vértice fuera de rango)")
            for u in bits(row):
                if not (self.adj[u] >> v) & 1:
                    raise GraphError(f"Adyacencia no simétrica entre {v} y {u}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphError(f"Lazo en el vértice {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"Arista {u}-{v} fuera de rango para orden {n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(n, (0,) * n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def degrees(self) -> List[int]:
        return [popcount(row) for row in self.adj]

    def neighbors(self, v: int) -> List[int]:
        return list(bits(self.adj[v]))

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def leaves(self) -> List[int]:
        return [v for v in range(self.n) if popcount(self.adj[v]) == 1]

    def component_masks(self) -> List[int]:
        seen = 0
        comps: List[int] = []
        for start in range(self.n):
            if (seen >> start) & 1:
                continue
            comp = 1 << start
            frontier = comp
            while frontier:
                reach = 0
                for v in bits(frontier):
                    reach |= self.adj[v]
                frontier = reach & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.component_masks()) == 1

    def distances_from(self, source: int) -> List[Optional[int]]:
        dist: List[Optional[int]] = [None] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for u in bits(self.adj[v]):
                if dist[u] is None:
                    dist[u] = dist[v] + 1  # type: ignore[operator]
                    queue.append(u)
        return dist

    def add_vertex(self, mask: int) -> "Graph":
        """Append vertex n joined to the vertices in mask: the path extension (G_S, 0)."""
        rows = list(self.adj)
        for v in bits(mask):
            rows[v] |= 1 << self.n
        rows.append(mask)
        return Graph(self.n + 1, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Graph":
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            row = 0
            for u in bits(self.adj[v]):
                if u in index:
                    row |= 1 << index[u]
            rows.append(row)
        return Graph(len(vertices), tuple(rows))

    def without(self, removed: Iterable[int]) -> "Graph":
        drop = set(removed)
        return self.induced([v for v in range(self.n) if v not in drop])

    def two_coloring(self) -> Optional[List[int]]:
        color = [-1] * self.n
        for start in range(self.n):
            if color[start] >= 0:
                continue
            color[start] = 0
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for u in bits(self.adj[v]):
                    if color[u] < 0:
                        color[u] = 1 - color[v]
                        queue.append(u)
                    elif color[u] == color[v]:
                        return None
        return color


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    roots: FrozenSet[int]

    def __post_init__(self) -> None:
        if any(not 0 <= r < self.graph.n for r in self.roots):
            raise GraphError("Raíz fuera de rango")
        if not self.roots and self.graph.n > 0:
            raise GraphError("Un grafo enraizado no vacío necesita al menos una raíz")

    @property
    def root_mask(self) -> int:
        mask = 0
        for r in self.roots:
            mask |= 1 << r
        return mask


@dataclass(frozen=True)
class SingleRootedGraph:
    graph: Graph
    root: int
    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.root < self.graph.n:
            raise GraphError(f"Raíz {self.root} fuera de rango")
        if len(self.parts) != self.graph.n or self.parts[self.root] != 0:
            raise GraphError("La raíz debe estar en la parte 0")
        for u, v in self.graph.edges():
            if self.parts[u] == self.parts[v]:
                raise GraphError(f"La arista {u}-{v} no cruza la bipartición")

    @classmethod
    def trivial(cls) -> "SingleRootedGraph":
        return cls(Graph.empty(1), 0, (0,))

    @classmethod
    def from_graph(cls, graph: Graph, root: int) -> "SingleRootedGraph":
        coloring = graph.two_coloring()
        if coloring is None:
            raise GraphError("El grafo con raíz única debe ser bipartito")
        if coloring[root] == 1:
            flip = set(bits(_component_of(graph, root)))
            coloring = [1 - c if v in flip else c for v, c in enumerate(coloring)]
        return cls(graph, root, tuple(coloring))

    @property
    def size(self) -> int:
        return self.graph.edge_count

    def add_edge(self, u: int, v: int) -> "SingleRootedGraph":
        rows = list(self.graph.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return SingleRootedGraph(Graph(self.graph.n, tuple(rows)), self.root, self.parts)

    def add_leaf(self, u: int) -> "SingleRootedGraph":
        graph = self.graph.add_vertex(1 << u)
        return SingleRootedGraph(graph, self.root, self.parts + (1 - self.parts[u],))


def _component_of(graph: Graph, v: int) -> int:
    for comp in graph.component_masks():
        if (comp >> v) & 1:
            return comp
    return 0


AnyGraph = Union[Graph, RootedGraph, SingleRootedGraph]


# Extensions ------------------------------------------------------------------
class ExtensionKind(str, Enum):
    PATH = "path"
    CLIQUE = "clique"
    PATH_CLIQUE = "path-clique"
    PATH_AUGMENT = "path-augment"
    APE = "ape"
    TPE = "tpe"


@dataclass(frozen=True)
class ExtensionSpec:
    kind: ExtensionKind
    ell: Optional[int] = None
    m: Optional[int] = None
    second: Optional[RootedGraph] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        needs_ell = self.kind is not ExtensionKind.CLIQUE
        needs_m = self.kind in (ExtensionKind.CLIQUE, ExtensionKind.PATH_CLIQUE)
        needs_second = self.kind is ExtensionKind.PATH_AUGMENT
        if needs_ell != (self.ell is not None) or (self.ell is not None and self.ell < 0):
            raise GraphError(f"Extensión {self.kind.value}: parámetro ell inválido ({self.ell})")
        if needs_m != (self.m is not None) or (self.m is not None and self.m < 1):
            raise GraphError(f"Extensión {self.kind.value}: parámetro m inválido ({self.m})")
        if needs_second != (self.second is not None):
            raise GraphError(f"Extensión {self.kind.value}: grafo secundario inválido")


# Gadget of the augmented path extension: a-c is an edge, a and b are the roots.
APE_GADGET = RootedGraph(Graph.from_edges(3, [(0, 2)]), frozenset({0, 1}))
# Gadget of the twisted path extension: u1-u2 is an edge, every vertex is a root.
TPE_GADGET = RootedGraph(Graph.from_edges(3, [(0, 1)]), frozenset({0, 1, 2}))


def extend(base: RootedGraph, spec: ExtensionSpec) -> Graph:
    """Vertex order: base vertices, then v_0..v_ell, then clique or second-graph vertices."""
    n0 = base.graph.n
    edges = list(base.graph.edges())
    kind = spec.kind
    if kind is ExtensionKind.CLIQUE:
        m = spec.m or 0
        clique = list(range(n0, n0 + m))
        edges += [(r, c) for c in clique for r in sorted(base.roots)]
        edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
        return Graph.from_edges(n0 + m, edges)

    ell = spec.ell or 0
    path = list(range(n0, n0 + ell + 1))
    edges += [(r, path[0]) for r in sorted(base.roots)]
    edges += list(zip(path, path[1:]))
    order = n0 + ell + 1
    tail = path[-1]
    if kind is ExtensionKind.PATH:
        return Graph.from_edges(order, edges)
    if kind is ExtensionKind.PATH_CLIQUE:
        m = spec.m or 0
        clique = list(range(order, order + m))
        edges += [(tail, c) for c in clique]
        edges += [(a, b) for i, a in enumerate(clique) for b in clique[i + 1 :]]
        return Graph.from_edges(order + m, edges)

    if kind is ExtensionKind.APE:
        second = APE_GADGET
    elif kind is ExtensionKind.TPE:
        second = TPE_GADGET
    else:
        second = spec.second  # type: ignore[assignment]
    edges += [(order + u, order + v) for u, v in second.graph.edges()]
    edges += [(tail, order + s) for s in sorted(second.roots)]
    return Graph.from_edges(order + second.graph.n, edges)


def ape(base: RootedGraph, ell: int) -> Graph:
    return extend(base, ExtensionSpec(ExtensionKind.APE, ell=ell))


def tpe(base: RootedGraph, ell: int) -> Graph:
    return extend(base, ExtensionSpec(ExtensionKind.TPE, ell=ell))


def path_extension(base: RootedGraph, ell: int) -> Graph:
    return extend(base, ExtensionSpec(ExtensionKind.PATH, ell=ell))


EMPTY_ROOTED = RootedGraph(Graph.empty(0), frozenset())


def e_graph(n: int) -> Graph:
    """E_n: a path on n-1 vertices with a pendant on the third vertex from one end."""
    if n < 4:
        raise GraphError("E_n está definido para n >= 4")
    edges = [(i, i + 1) for i in range(n - 2)]
    edges.append((2, n - 1))
    return Graph.from_edges(n, edges)


def e_prime_graph(n: int) -> Graph:
    """E'_n: triangle {0,1,2}, pendant 3 on vertex 0, path of n-4 more vertices from vertex 0."""
    if n < 4:
        raise GraphError("E'_n está definido para n >= 4")
    edges = [(0, 1), (0, 2), (1, 2), (0, 3)]
    prev = 0
    for v in range(4, n):
        edges.append((prev, v))
        prev = v
    return Graph.from_edges(n, edges)


def rooted_e6_prime() -> RootedGraph:
    return RootedGraph(e_prime_graph(6), frozenset({5}))


def line_graph(single: SingleRootedGraph) -> RootedGraph:
    """L(H) rooted at the edges through the root; vertices follow sorted edge order."""
    edges = single.graph.edges()
    rows = [0] * len(edges)
    for i, (a, b) in enumerate(edges):
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if a in (c, d) or b in (c, d):
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    roots = frozenset(i for i, e in enumerate(edges) if single.root in e)
    return RootedGraph(Graph(len(edges), tuple(rows)), roots)


# Edge strings ------------------------------------------------------------------
def _label_index(text: str, extra: str = "") -> Dict[str, int]:
    index: Dict[str, int] = {}
    if ROOT_LABEL in text or ROOT_LABEL in extra:
        index[ROOT_LABEL] = 0
    for ch in text + extra:
        if ch != ROOT_LABEL and ch not in index:
            if ch not in LABELS:
                raise GraphError(f"Carácter desconocido {ch!r} en la cadena de aristas")
            index[ch] = len(index)
    return index


def _parse_pairs(text: str, index: Dict[str, int]) -> List[Tuple[int, int]]:
    if len(text) % 2:
        raise GraphError(f"Cadena de longitud impar: {text!r}")
    seen = set()
    edges = []
    for k in range(0, len(text), 2):
        a, b = text[k], text[k + 1]
        if a == b:
            raise GraphError(f"Lazo {a}{b} en la cadena de aristas")
        key = frozenset((a, b))
        if key in seen:
            raise GraphError(f"Arista repetida {a}{b}")
        seen.add(key)
        edges.append((index[a], index[b]))
    return edges


def parse_edges(
    text: str,
    order: Optional[int] = None,
    rooted: Optional[bool] = None,
) -> Union[Graph, SingleRootedGraph]:
    """'r' takes index 0, other labels follow in order of first appearance."""
    text = text.strip()
    index = _label_index(text)
    edges = _parse_pairs(text, index)
    is_rooted = ROOT_LABEL in index if rooted is None else rooted
    n = len(index)
    if is_rooted and ROOT_LABEL not in index:
        if text:
            raise GraphError("Cadena enraizada sin vértice 'r'")
        n = 1
    n = max(n, order or 0)
    if n > MAX_ORDER + (1 if is_rooted else 0):
        raise GraphError(f"Orden {n} excede el máximo {MAX_ORDER}")
    graph = Graph.from_edges(n, edges)
    if is_rooted:
        return SingleRootedGraph.from_graph(graph, 0)
    return graph


def serialize_edges(graph: Union[Graph, SingleRootedGraph]) -> str:
    if isinstance(graph, SingleRootedGraph):
        base, root = graph.graph, graph.root
        labels: List[str] = []
        k = 0
        for v in range(base.n):
            if v == root:
                labels.append(ROOT_LABEL)
            else:
                labels.append(LABELS[k] if k < len(LABELS) else "?")
                k += 1
        order = sorted((0 if v == root else 1, v) for v in range(base.n))
        rank = {v: i for i, (_, v) in enumerate(order)}
    else:
        base = graph
        labels = [LABELS[v] if v < len(LABELS) else "?" for v in range(base.n)]
        rank = {v: v for v in range(base.n)}
    if "?" in labels:
        raise GraphError(f"Orden {base.n} excede el máximo {MAX_ORDER}")
    pairs = []
    for u, v in base.edges():
        a, b = (u, v) if rank[u] < rank[v] else (v, u)
        pairs.append((rank[a], rank[b], labels[a] + labels[b]))
    return "".join(p for _, _, p in sorted(pairs))


def parse_indexed_edges(text: str, order: int) -> Graph:
    """Labels are vertex indices ('0' is 0, 'a' is 10); used where subsets refer to indices."""
    text = text.strip()
    index = {ch: i for i, ch in enumerate(LABELS)}
    try:
        edges = _parse_pairs(text, index)
    except KeyError as exc:
        raise GraphError(f"Etiqueta desconocida en {text!r}") from exc
    return Graph.from_edges(order, edges)


def serialize_indexed_edges(graph: Graph) -> str:
    if graph.n > MAX_ORDER:
        raise GraphError(f"Orden {graph.n} excede el máximo {MAX_ORDER}")
    return "".join(LABELS[u] + LABELS[v] for u, v in graph.edges())


def parse_rooted_entry(edges: str, roots: str = "", order: Optional[int] = None) -> RootedGraph:
    """Corpus form of a multi-rooted graph: edge string plus the root labels."""
    edges = edges.strip()
    index = _label_index(edges, roots)
    graph = Graph.from_edges(max(len(index), order or 0), _parse_pairs(edges, index))
    return RootedGraph(graph, frozenset(index[ch] for ch in roots))


def serialize_rooted(rooted: RootedGraph) -> Tuple[str, str]:
    return serialize_edges(rooted.graph), "".join(LABELS[r] for r in sorted(rooted.roots))


# Corpus files --------------------------------------------------------------------
@dataclass(frozen=True)
class CorpusLine:
    label: str
    edges: str
    roots: str = ""
    order: Optional[int] = None


def read_corpus(path: Path) -> List[CorpusLine]:
    """`label<TAB>edge-string[<TAB>roots[<TAB>order]]`, `#` starts a comment line."""
    if not path.exists():
        raise CorpusError(f"No se encontró el corpus {path}")
    entries: List[CorpusLine] = []
    seen = set()
    for lineno, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        cols = raw.rstrip("\n").split("\t")
        if len(cols) < 2 or len(cols) > 4:
            raise CorpusError(f"{path}:{lineno}: se esperaban 2 a 4 columnas")
        label = cols[0].strip()
        if label in seen:
            raise CorpusError(f"{path}:{lineno}: etiqueta repetida {label}")
        seen.add(label)
        order = None
        if len(cols) == 4 and cols[3].strip():
            try:
                order = int(cols[3])
            except ValueError as exc:
                raise CorpusError(f"{path}:{lineno}: orden inválido {cols[3]!r}") from exc
        entries.append(CorpusLine(label, cols[1].strip(), cols[2].strip() if len(cols) > 2 else "", order))
    return entries


def write_corpus(path: Path, entries: Iterable[CorpusLine], header: str = "") -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    for entry in entries:
        cols = [entry.label, entry.edges]
        if entry.roots or entry.order is not None:
            cols.append(entry.roots)
        if entry.order is not None:
            cols.append(str(entry.order))
        lines.append("\t".join(cols))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


__all__ = [
    "APE_GADGET",
    "AnyGraph",
    "CorpusError",
    "CorpusLine",
    "EMPTY_ROOTED",
    "ExtensionKind",
    "ExtensionSpec",
    "Graph",
    "GraphError",
    "MAX_ORDER",
    "RootedGraph",
    "SingleRootedGraph",
    "TPE_GADGET",
    "ape",
    "bits",
    "e_graph",
    "e_prime_graph",
    "extend",
    "line_graph",
    "parse_edges",
    "parse_indexed_edges",
    "parse_rooted_entry",
    "path_extension",
    "popcount",
    "read_corpus",
    "rooted_e6_prime",
    "serialize_edges",
    "serialize_indexed_edges",
    "serialize_rooted",
    "tpe",
    "write_corpus",
]
