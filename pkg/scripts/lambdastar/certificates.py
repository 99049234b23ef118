#!/usr/bin/env python3
"""Determinant certificates for the forbidden rooted graphs and the path-extension limit lists."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from exact_linalg import det, is_positive_definite, shifted_adjacency, sqrt_lower_bound
from generalized_line import minimal_forbidden
from graphs import (
    CorpusError,
    Graph,
    GraphError,
    RootedGraph,
    ape,
    bits,
    e_graph,
    parse_edges,
    parse_rooted_entry,
    path_extension,
    read_corpus,
    rooted_e6_prime,
    serialize_edges,
)
from isohash import IsoIndex, isomorphic
from spectral import CONSTANTS, SQRT_ITERS, limit_below

LOGGER = logging.getLogger("lambdastar.certificates")

FORBIDDEN_LABELS = ("K2C", "S3", "K3", "C5", "C7", "P7", "P9", "K7")


@dataclass(frozen=True)
class LabelledRooted:
    label: str
    rooted: RootedGraph


@dataclass(frozen=True)
class LabelledGraph:
    label: str
    graph: Graph


@dataclass
class ForbiddenReport:
    rows: List[Tuple[str, Fraction]]

    @property
    def passed(self) -> bool:
        return len(self.rows) == len(FORBIDDEN_LABELS) and all(value < 0 for _, value in self.rows)


@dataclass
class LimitReport:
    collected: List[Tuple[str, Tuple[int, ...], Fraction]] = field(default_factory=list)
    unexpected: List[Tuple[str, Tuple[int, ...]]] = field(default_factory=list)
    checked: int = 0

    @property
    def passed(self) -> bool:
        return not self.unexpected


# Corpora -----------------------------------------------------------------------------
def load_rooted_corpus(path: Path) -> List[LabelledRooted]:
    out = []
    for entry in read_corpus(path):
        try:
            out.append(LabelledRooted(entry.label, parse_rooted_entry(entry.edges, entry.roots, entry.order)))
        except GraphError as exc:
            raise CorpusError(f"{path}: {entry.label}: {exc}") from exc
    return out


def load_graph_corpus(path: Path) -> List[LabelledGraph]:
    out = []
    for entry in read_corpus(path):
        try:
            graph = parse_edges(entry.edges, order=entry.order, rooted=False)
        except GraphError as exc:
            raise CorpusError(f"{path}: {entry.label}: {exc}") from exc
        out.append(LabelledGraph(entry.label, graph))  # type: ignore[arg-type]
    return out


def a_list() -> List[LabelledGraph]:
    """E6 plus one vertex joined to a nonempty subset, one graph per isomorphism class."""
    e6 = e_graph(6)
    index: IsoIndex[int] = IsoIndex()
    graphs = []
    for mask in range(1, 1 << e6.n):
        candidate = e6.add_vertex(mask)
        if index.add(candidate, len(graphs)):
            graphs.append(candidate)
    graphs.sort(key=lambda g: (g.edge_count, serialize_edges(g)))
    return [LabelledGraph(f"A{i}", g) for i, g in enumerate(graphs, start=1)]


def check_b_list(b_list: Sequence[LabelledGraph]) -> List[str]:
    """Labels whose transcription fails: F-{6,7} must be E6 and both F-6, F-7 must be E7."""
    e6, e7 = e_graph(6), e_graph(7)
    bad = []
    for item in b_list:
        g = item.graph
        if g.n != 8:
            bad.append(item.label)
            continue
        ok = isomorphic(g.without([6, 7]), e6) and isomorphic(g.without([6]), e7) and isomorphic(g.without([7]), e7)
        if not ok:
            bad.append(item.label)
    return bad


def g_list(path: Optional[Path]) -> List[LabelledGraph]:
    if path is not None and path.exists():
        return load_graph_corpus(path)
    LOGGER.info("Sin corpus de prohibidos; se genera en el proceso")
    return [LabelledGraph(f"G{i}", g) for i, g in enumerate(minimal_forbidden(), start=1)]


# Checks ------------------------------------------------------------------------------
def forbidden_determinant(rooted: RootedGraph, q: Fraction = CONSTANTS.q_forb) -> Fraction:
    return det(shifted_adjacency(ape(rooted, 0), q))


def verify_forbidden_rooted(corpus: Sequence[LabelledRooted]) -> ForbiddenReport:
    labels = [item.label for item in corpus]
    if sorted(labels) != sorted(FORBIDDEN_LABELS):
        raise CorpusError(f"Corpus de prohibidos inesperado: {labels}")
    rows = [(item.label, forbidden_determinant(item.rooted)) for item in corpus]
    for label, value in rows:
        LOGGER.info("%s: det = %s (%s)", label, value, "negativo" if value < 0 else "NO negativo")
    return ForbiddenReport(rows)


def limit_determinant(rooted: RootedGraph, q: Fraction, coefficient: Fraction) -> Fraction:
    extended = path_extension(rooted, 0)
    return det(shifted_adjacency(extended, q, (extended.n - 1, coefficient)))


def _root_sets(n: int) -> List[Tuple[int, ...]]:
    return [tuple(bits(mask)) for mask in range(1, 1 << n)]


def verify_path_extension_limits(
    graphs: Sequence[LabelledGraph],
    q: Fraction = CONSTANTS.q_limit,
    coefficient: Fraction = CONSTANTS.coef_limit,
) -> LimitReport:
    exceptions = [e_graph(6), e_graph(7)]
    exceptional_rooted = rooted_e6_prime()
    report = LimitReport()
    for item in graphs:
        graph = item.graph
        if not is_positive_definite(shifted_adjacency(graph, q)):
            continue
        for roots in _root_sets(graph.n):
            report.checked += 1
            rooted = RootedGraph(graph, frozenset(roots))
            value = limit_determinant(rooted, q, coefficient)
            if value < 0:
                continue
            report.collected.append((item.label, roots, value))
            expected = any(isomorphic(graph, e) for e in exceptions) or (
                graph.n == exceptional_rooted.graph.n and isomorphic(rooted, exceptional_rooted)
            )
            if not expected:
                report.unexpected.append((item.label, roots))
    LOGGER.info(
        "%s pares (F, R) revisados, %s con determinante >= 0, %s inesperados",
        report.checked,
        len(report.collected),
        len(report.unexpected),
    )
    return report


def limit_coefficient_holds(iters: int = SQRT_ITERS) -> bool:
    """6/7 stays below 95/94 - 3*sqrt(21)/94 with sqrt(21) bounded from above."""
    upper = Fraction(21) / sqrt_lower_bound(Fraction(21), iters)
    return Fraction(95, 94) - 3 * upper / 94 > CONSTANTS.coef_limit


def limits_agree(graphs: Sequence[LabelledGraph], q: Fraction = CONSTANTS.q_limit) -> List[Tuple[str, Tuple[int, ...]]]:
    """(F, R) pairs with a negative certificate determinant whose limit is not certified below -q."""
    disagreements = []
    for item in graphs:
        if not is_positive_definite(shifted_adjacency(item.graph, q)):
            continue
        for roots in _root_sets(item.graph.n):
            rooted = RootedGraph(item.graph, frozenset(roots))
            if limit_determinant(rooted, q, CONSTANTS.coef_limit) < 0 and not limit_below(rooted, q):
                disagreements.append((item.label, roots))
    return disagreements


__all__ = [
    "FORBIDDEN_LABELS",
    "ForbiddenReport",
    "LabelledGraph",
    "LabelledRooted",
    "LimitReport",
    "a_list",
    "limit_coefficient_holds",
    "check_b_list",
    "forbidden_determinant",
    "g_list",
    "limit_determinant",
    "limits_agree",
    "load_graph_corpus",
    "load_rooted_corpus",
    "verify_forbidden_rooted",
    "verify_path_extension_limits",
]
