from fractions import Fraction

import pytest

from graphs import CorpusError, Graph, RootedGraph, e_graph, rooted_e6_prime
from isohash import isomorphic
from spectral import CONSTANTS, limit_below
from certificates import (
    FORBIDDEN_LABELS,
    LabelledGraph,
    a_list,
    limit_coefficient_holds,
    check_b_list,
    forbidden_determinant,
    g_list,
    limit_determinant,
    limits_agree,
    load_graph_corpus,
    load_rooted_corpus,
    verify_forbidden_rooted,
    verify_path_extension_limits,
)


@pytest.fixture
def path_extension_corpus(corpus_dir):
    return load_graph_corpus(corpus_dir / "path_extension.txt")


def test_forbidden_rooted_determinants_are_negative(corpus_dir):
    corpus = load_rooted_corpus(corpus_dir / "forbidden_rooted.txt")
    report = verify_forbidden_rooted(corpus)
    assert [label for label, _ in report.rows] == list(FORBIDDEN_LABELS)
    assert all(value < 0 for _, value in report.rows)
    assert report.passed


def test_forbidden_corpus_label_set_is_checked(corpus_dir):
    corpus = load_rooted_corpus(corpus_dir / "forbidden_rooted.txt")
    with pytest.raises(CorpusError):
        verify_forbidden_rooted(corpus[:-1])


def test_foil_runs_through_the_same_pipeline():
    foil = RootedGraph(Graph.from_edges(2, [(0, 1)]), frozenset({0, 1}))
    assert isinstance(forbidden_determinant(foil), Fraction)


def test_a_list():
    graphs = a_list()
    assert len(graphs) == 39
    assert [g.label for g in graphs[:2]] == ["A1", "A2"]
    assert all(g.graph.n == 7 and g.graph.is_connected() for g in graphs)
    assert sum(isomorphic(g.graph, e_graph(7)) for g in graphs) == 1


def test_b_list_transcription(path_extension_corpus):
    b_list = [g for g in path_extension_corpus if g.label.startswith("B")]
    assert len(b_list) == 4
    assert check_b_list(b_list) == []
    assert check_b_list([LabelledGraph("X", e_graph(8))]) == ["X"]


def test_limits_over_a_and_b_lists(path_extension_corpus):
    report = verify_path_extension_limits(path_extension_corpus + a_list())
    assert report.passed
    assert report.checked > 0
    labels = {label for label, _, _ in report.collected}
    assert "E6" in labels
    assert all(value >= 0 for _, _, value in report.collected)


def test_unexpected_collection_fails_the_report():
    # a single rooted vertex leaves a positive determinant
    report = verify_path_extension_limits([LabelledGraph("K1", Graph.empty(1))])
    assert report.collected and not report.passed


def test_coefficient_bound():
    assert limit_coefficient_holds()
    assert limit_coefficient_holds(iters=4)


def test_rooted_e6_prime_is_the_exception():
    assert limit_determinant(rooted_e6_prime(), CONSTANTS.q_limit, CONSTANTS.coef_limit) >= 0
    assert not limit_below(rooted_e6_prime(), CONSTANTS.q_limit)


def test_certificate_agrees_with_limit_decision(path_extension_corpus):
    assert limits_agree(path_extension_corpus) == []


def test_missing_g_list_file_is_generated(tmp_path):
    graphs = g_list(tmp_path / "missing.txt")
    assert len(graphs) == 31
    assert graphs[0].label == "G1"


@pytest.mark.slow
def test_limits_over_g_list():
    report = verify_path_extension_limits(g_list(None))
    assert report.passed
