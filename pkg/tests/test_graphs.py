import pytest

from graphs import (
    APE_GADGET,
    EMPTY_ROOTED,
    TPE_GADGET,
    CorpusError,
    CorpusLine,
    ExtensionKind,
    ExtensionSpec,
    Graph,
    GraphError,
    RootedGraph,
    SingleRootedGraph,
    ape,
    e_graph,
    e_prime_graph,
    extend,
    line_graph,
    parse_edges,
    parse_indexed_edges,
    parse_rooted_entry,
    read_corpus,
    rooted_e6_prime,
    serialize_edges,
    serialize_indexed_edges,
    tpe,
    write_corpus,
)
from isohash import isomorphic
from twisted import has_induced_claw


def test_from_edges_validates():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(GraphError):
        Graph(2, (2, 0))


def test_basic_queries():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    assert g.edges() == [(0, 1), (1, 2), (2, 3)]
    assert g.degrees() == [1, 2, 2, 1]
    assert g.leaves() == [0, 3]
    assert g.distances_from(0) == [0, 1, 2, 3]
    assert g.is_connected()
    assert not Graph.from_edges(3, [(0, 1)]).is_connected()
    assert g.two_coloring() == [0, 1, 0, 1]
    assert Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]).two_coloring() is None


def test_add_vertex_and_without():
    g = Graph.from_edges(3, [(0, 1)])
    h = g.add_vertex(0b101)
    assert h.n == 4
    assert h.neighbors(3) == [0, 2]
    assert h.without([3]) == g


def test_named_families():
    e6 = e_graph(6)
    assert e6.n == 6 and e6.edge_count == 5
    assert sorted(e6.degrees()) == [1, 1, 1, 2, 2, 3]
    ep = e_prime_graph(6)
    assert ep.n == 6 and ep.edge_count == 6
    assert ep.degree(0) == 4
    with pytest.raises(GraphError):
        e_graph(3)
    assert rooted_e6_prime().roots == frozenset({5})


def test_ape_and_tpe_sizes():
    f = RootedGraph(Graph.from_edges(3, [(0, 1), (1, 2)]), frozenset({0, 2}))
    for ell in range(4):
        g = ape(f, ell)
        assert g.n == 3 + ell + 4
        assert g.edge_count == 2 + 2 + ell + 3
        t = tpe(f, ell)
        assert t.n == 3 + ell + 4
        assert t.edge_count == 2 + 2 + ell + 4


def test_extensions_of_empty_rooted_graph():
    for ell in range(6):
        assert isomorphic(ape(EMPTY_ROOTED, ell), e_graph(ell + 4))
        assert isomorphic(tpe(EMPTY_ROOTED, ell), e_prime_graph(ell + 4))


def test_rooted_e6_prime_path_extensions():
    for ell in range(4):
        g = extend(rooted_e6_prime(), ExtensionSpec(ExtensionKind.PATH, ell=ell))
        assert isomorphic(g, e_prime_graph(ell + 7))


def test_clique_and_augment_extensions():
    base = RootedGraph(Graph.from_edges(2, [(0, 1)]), frozenset({0}))
    clique = extend(base, ExtensionSpec(ExtensionKind.CLIQUE, m=3))
    assert clique.n == 5 and clique.edge_count == 1 + 3 + 3
    pc = extend(base, ExtensionSpec(ExtensionKind.PATH_CLIQUE, ell=1, m=2))
    assert pc.n == 6 and pc.edge_count == 1 + 1 + 1 + 2 + 1
    aug = extend(base, ExtensionSpec(ExtensionKind.PATH_AUGMENT, ell=0, second=APE_GADGET))
    assert aug == ape(base, 0)


def test_extension_spec_validation():
    with pytest.raises(GraphError):
        ExtensionSpec(ExtensionKind.PATH)
    with pytest.raises(GraphError):
        ExtensionSpec(ExtensionKind.CLIQUE, ell=1, m=2)
    with pytest.raises(GraphError):
        ExtensionSpec(ExtensionKind.PATH_AUGMENT, ell=0)
    with pytest.raises(GraphError):
        ExtensionSpec(ExtensionKind.APE, ell=-1)


def test_gadgets():
    assert APE_GADGET.graph.edges() == [(0, 2)]
    assert TPE_GADGET.graph.edges() == [(0, 1)]
    assert len(TPE_GADGET.roots) == 3


def test_line_graph_of_cherry():
    cherry = SingleRootedGraph.from_graph(Graph.from_edges(3, [(0, 1), (0, 2)]), 0)
    lg = line_graph(cherry)
    assert lg.graph == Graph.from_edges(2, [(0, 1)])
    assert lg.roots == frozenset({0, 1})


def test_single_rooted_parts():
    with pytest.raises(GraphError):
        SingleRootedGraph.from_graph(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), 0)
    path = SingleRootedGraph.from_graph(Graph.from_edges(3, [(0, 1), (1, 2)]), 1)
    assert path.parts == (1, 0, 1)
    grown = path.add_leaf(0)
    assert grown.parts[3] == 0


def test_serialize_small_graphs():
    assert serialize_edges(Graph.from_edges(2, [(0, 1)])) == "01"
    cherry = SingleRootedGraph.from_graph(Graph.from_edges(3, [(0, 1), (0, 2)]), 0)
    assert serialize_edges(cherry) == "r0r1"
    assert serialize_edges(SingleRootedGraph.trivial()) == ""


def test_parse_assigns_first_appearance_order():
    g = parse_edges("0212", rooted=False)
    assert g == Graph.from_edges(3, [(0, 1), (1, 2)])
    single = parse_edges("r0r1", rooted=None)
    assert isinstance(single, SingleRootedGraph)
    assert single.root == 0 and single.graph.degree(0) == 2
    trivial = parse_edges("", rooted=True)
    assert trivial.graph.n == 1


def test_parse_then_serialize_is_isomorphic(rng):
    for _ in range(50):
        n = rng.randint(2, 12)
        edges = [(i, rng.randrange(i)) for i in range(1, n)]
        g = Graph.from_edges(n, edges)
        assert isomorphic(parse_edges(serialize_edges(g), rooted=False), g)


@pytest.mark.parametrize("text", ["011", "00", "0101", "0z"])
def test_parse_rejects_bad_strings(text):
    with pytest.raises(GraphError):
        parse_edges(text, rooted=False)


def test_indexed_edges_keep_labels():
    g = Graph.from_edges(12, [(0, 11), (3, 11), (1, 2), (2, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 10), (10, 3), (0, 1)])
    text = serialize_indexed_edges(g)
    assert parse_indexed_edges(text, 12) == g


def test_parse_rooted_entry_maps_roots():
    claw = parse_rooted_entry("300102", "01")
    assert claw.graph.n == 4
    centre = [v for v in range(4) if claw.graph.degree(v) == 3][0]
    assert centre in claw.roots and len(claw.roots) == 2
    empty = parse_rooted_entry("", "01", 2)
    assert empty.graph.n == 2 and empty.roots == frozenset({0, 1})


def test_corpus_round_trip(tmp_path):
    path = tmp_path / "c.txt"
    entries = [CorpusLine("A", "0112"), CorpusLine("B", "", "01", 2)]
    write_corpus(path, entries, header="demo")
    assert read_corpus(path) == entries


def test_corpus_errors(tmp_path):
    with pytest.raises(CorpusError):
        read_corpus(tmp_path / "missing.txt")
    bad = tmp_path / "bad.txt"
    bad.write_text("A\t01\nA\t12\n", encoding="utf-8")
    with pytest.raises(CorpusError):
        read_corpus(bad)


def test_shipped_corpora_parse(corpus_dir):
    assert len(read_corpus(corpus_dir / "forbidden_rooted.txt")) == 8
    assert len(read_corpus(corpus_dir / "path_extension.txt")) == 5
    maximal = read_corpus(corpus_dir / "maximal_rooted.txt")
    assert len(maximal) == 48
    for entry in maximal:
        single = parse_edges(entry.edges, rooted=True)
        assert single.graph.is_connected()
        assert single.graph.degree(single.root) >= 2


def random_single_rooted(rng, n):
    parent = [None] + [rng.randrange(v) for v in range(1, n)]
    depth = [0] * n
    for v in range(1, n):
        depth[v] = depth[parent[v]] + 1
    edges = {(parent[v], v) for v in range(1, n)}
    for u in range(n):
        for v in range(u + 1, n):
            if depth[u] % 2 != depth[v] % 2 and rng.random() < 0.2:
                edges.add((u, v))
    return SingleRootedGraph.from_graph(Graph.from_edges(n, sorted(edges)), 0)


def test_line_graph_degree_law_and_claw_freeness(rng):
    for _ in range(200):
        single = random_single_rooted(rng, rng.randint(2, 10))
        h = single.graph
        lg = line_graph(single)
        for i, (u, v) in enumerate(h.edges()):
            assert lg.graph.degree(i) == h.degree(u) + h.degree(v) - 2
        assert not has_induced_claw(lg.graph)
        assert len(lg.roots) == h.degree(single.root)


def test_line_graph_of_star_is_a_rooted_clique():
    star = SingleRootedGraph.from_graph(Graph.from_edges(7, [(0, i) for i in range(1, 7)]), 0)
    lg = line_graph(star)
    assert lg.graph.n == 6 and lg.graph.edge_count == 15
    assert lg.roots == frozenset(range(6))
