from itertools import permutations

import pytest

from conftest import random_graph
from enum_maverick import MaverickCatalog, enumerate_mavericks
from enum_rooted import RootedCatalog, RootedCatalogEntry, ape_family, enumerate_rooted
from graphs import Graph, RootedGraph, SingleRootedGraph, e_graph, tpe
from isohash import isomorphic
from twisted import (
    TpeWitness,
    TwistedCatalog,
    TwistedEntry,
    VerificationError,
    ape_overlap,
    check_large_structure,
    filter_twisted,
    has_induced_claw,
    is_line_graph_of_bipartite,
    non_twisted_claw_leaves,
    read_twisted_catalog,
    tpe_base,
    tpe_witnesses,
    write_twisted_catalog,
)

TWISTED_HISTOGRAM = {10: 48, 11: 133, 12: 220, 13: 236, 14: 210, 15: 162, 16: 96, 17: 40, 18: 13, 19: 3}

K3 = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
PAW = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
CLAW = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
DIAMOND = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])


def witnesses_by_definition(graph):
    found = []
    for u0, u1, u2, uc in permutations(range(graph.n), 4):
        if u1 > u2:
            continue
        wanted = {frozenset(p) for p in ((u0, u1), (u0, u2), (u1, u2), (u0, uc))}
        touching = {frozenset(e) for e in graph.edges() if set(e) & {u1, u2, uc}}
        if touching == wanted:
            found.append(TpeWitness(u0, u1, u2, uc))
    return sorted(found)


def random_base(rng):
    n = rng.randint(1, 5)
    g = random_graph(rng, n, p=0.5)
    roots = frozenset(v for v in range(n) if rng.random() < 0.5) or frozenset({0})
    return RootedGraph(g, roots)


def test_witness_examples():
    assert tpe_witnesses(PAW) == [TpeWitness(0, 1, 2, 3)]
    assert tpe_witnesses(K3) == []
    assert tpe_witnesses(e_graph(10)) == []


def test_witnesses_match_definition(rng):
    for i in range(500):
        if i % 2:
            graph = tpe(random_base(rng), rng.randint(0, 3))
        else:
            graph = random_graph(rng, rng.randint(4, 8), p=0.3)
        assert tpe_witnesses(graph) == witnesses_by_definition(graph)


def test_base_rebuilds_the_graph(rng):
    for _ in range(100):
        graph = tpe(random_base(rng), rng.randint(0, 3))
        witnesses = tpe_witnesses(graph)
        assert witnesses
        for witness in witnesses:
            assert isomorphic(tpe(tpe_base(graph, witness), 0), graph)


def test_line_graph_of_bipartite_recognition():
    path = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    assert is_line_graph_of_bipartite(path)
    assert is_line_graph_of_bipartite(c4)
    assert is_line_graph_of_bipartite(K3)
    assert is_line_graph_of_bipartite(PAW)
    assert is_line_graph_of_bipartite(Graph.from_edges(4, [(1, 2), (2, 3)]))
    assert not is_line_graph_of_bipartite(CLAW)
    assert not is_line_graph_of_bipartite(DIAMOND)


def test_induced_claw():
    assert has_induced_claw(CLAW)
    assert not has_induced_claw(PAW)
    assert has_induced_claw(e_graph(10))


def test_more_than_one_witness_is_an_error():
    # a triangle with two pendant leaves on the same vertex
    graph = Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4)])
    assert len(tpe_witnesses(graph)) == 2
    with pytest.raises(VerificationError):
        filter_twisted(MaverickCatalog([graph]), jobs=1)


def test_filter_keeps_graphs_with_one_witness():
    catalog = filter_twisted(MaverickCatalog([PAW, e_graph(10), K3]), jobs=1)
    assert len(catalog) == 1
    assert catalog.entries[0].witness == TpeWitness(0, 1, 2, 3)


def test_catalog_file_round_trip(tmp_path):
    catalog = TwistedCatalog([TwistedEntry(PAW, TpeWitness(0, 1, 2, 3))])
    for name, fmt in (("t.txt", "text"), ("t.json", "json")):
        write_twisted_catalog(tmp_path / name, catalog, fmt)
        back = read_twisted_catalog(tmp_path / name)
        assert back.histogram() == {4: 1}
        assert isomorphic(back.entries[0].graph, PAW)
    assert "0,1,2,3" in (tmp_path / "t.txt").read_text(encoding="utf-8")


def test_read_rejects_graph_without_witness(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3\t011220\n", encoding="utf-8")
    with pytest.raises(VerificationError):
        read_twisted_catalog(path)


@pytest.mark.slow
def test_full_twisted_filter():
    mavericks = enumerate_mavericks(jobs=4)
    catalog = filter_twisted(mavericks, jobs=4)
    assert len(catalog) == 1161
    assert catalog.histogram() == TWISTED_HISTOGRAM
    assert check_large_structure(mavericks.graphs) == []
    for e in catalog.entries:
        assert isomorphic(tpe(tpe_base(e.graph, e.witness), 0), e.graph)
    cases = non_twisted_claw_leaves(mavericks, catalog)
    assert len(cases) == 2
    assert all(len(leaves) == 1 for _, leaves in cases)


def test_ape_overlap_finds_isomorphic_members():
    trivial = SingleRootedGraph.trivial()
    family = ape_family(RootedCatalog([RootedCatalogEntry(trivial, "", 0)]), max_order=10)
    hits = ape_overlap([e_graph(10), PAW], family)
    assert [g.n for g in hits] == [10]
    assert ape_overlap([PAW], family) == []


@pytest.mark.slow
def test_mavericks_and_ape_extensions_are_disjoint():
    mavericks = enumerate_mavericks(jobs=4)
    ape_graphs = ape_family(enumerate_rooted(jobs=4, annotate=False))
    assert ape_overlap(mavericks.graphs, ape_graphs) == []
    assert check_large_structure([*mavericks.graphs, *ape_graphs]) == []
