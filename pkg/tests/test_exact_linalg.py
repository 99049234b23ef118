from fractions import Fraction

import numpy as np
import pytest

from exact_linalg import (
    LinalgError,
    RatMatrix,
    adjugate_positive_definite,
    bareiss_det,
    bordered_det,
    det,
    is_positive_definite,
    is_positive_semidefinite,
    leading_minors_positive,
    scaled_adjacency,
    shifted_adjacency,
    sqrt_lower_bound,
    sqrt_upper_bound,
)
from graphs import Graph, e_graph


def cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, value in enumerate(m[0]):
        if value:
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            total += (-1) ** j * value * cofactor_det(minor)
    return total


def test_bareiss_matches_cofactor_expansion(rng):
    for _ in range(10000):
        m = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(5)]
        assert bareiss_det(m) == cofactor_det(m)


def test_bareiss_handles_zero_pivot_and_empty():
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[0, 0], [0, 1]]) == 0
    assert bareiss_det([]) == 1


def test_rat_matrix_rejects_asymmetric_and_ragged():
    with pytest.raises(LinalgError):
        RatMatrix.from_rows([[1, 2], [3, 1]])
    with pytest.raises(LinalgError):
        RatMatrix.from_rows([[1, 2], [2]])


def test_rational_det_with_fractions():
    m = RatMatrix.from_rows([[Fraction(1, 2), 1], [1, Fraction(1, 3)]])
    assert det(m) == Fraction(1, 6) - 1
    assert det(RatMatrix.identity(4)) == 1


def test_shifted_and_scaled_adjacency_agree():
    graph = e_graph(6)
    shift = Fraction(95, 47)
    rat = shifted_adjacency(graph, shift)
    ints = scaled_adjacency(graph, shift)
    assert det(rat) * 47 ** graph.n == bareiss_det(ints)
    adjusted = shifted_adjacency(graph, shift, (5, Fraction(6, 7)))
    assert adjusted[5, 5] == shift - Fraction(6, 7)
    assert adjusted[0, 0] == shift


def test_leading_minors_match_eigenvalues(rng):
    for _ in range(300):
        n = rng.randint(1, 6)
        a = [[0] * n for _ in range(n)]
        for i in range(n):
            a[i][i] = rng.randint(-2, 6)
            for j in range(i + 1, n):
                a[i][j] = a[j][i] = rng.randint(-2, 2)
        smallest = np.linalg.eigvalsh(np.array(a, dtype=float)).min()
        if abs(smallest) < 1e-9:
            continue
        assert leading_minors_positive(a) == (smallest > 0)


def test_adjugate_times_matrix_is_det_identity():
    m = scaled_adjacency(e_graph(7), Fraction(18259, 9040))
    d, adj = adjugate_positive_definite(m)
    n = len(m)
    assert d == bareiss_det(m)
    for i in range(n):
        for j in range(n):
            assert sum(m[i][k] * adj[k][j] for k in range(n)) == (d if i == j else 0)


def test_adjugate_requires_positive_definite():
    with pytest.raises(LinalgError):
        adjugate_positive_definite([[1, 2], [2, 1]])


def test_bordered_det_matches_full_determinant(rng):
    shift = Fraction(305, 152)
    for _ in range(50):
        n = rng.randint(2, 8)
        graph = Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])
        mask = rng.randint(1, (1 << n) - 1)
        child = graph.add_vertex(mask)
        d, adj = adjugate_positive_definite(scaled_adjacency(graph, shift))
        border = [v for v in range(n) if (mask >> v) & 1]
        expected = bareiss_det(scaled_adjacency(child, shift))
        assert bordered_det(305, 152, d, adj, border) == expected


def test_positive_semidefinite_edge_cases():
    assert is_positive_semidefinite(RatMatrix.from_rows([[1, 1], [1, 1]]))
    assert not is_positive_semidefinite(RatMatrix.from_rows([[1, 2], [2, 1]]))
    assert is_positive_semidefinite(RatMatrix.from_rows([[0, 0], [0, 0]]))
    assert not is_positive_semidefinite(RatMatrix.from_rows([[0, 1], [1, 0]]))
    assert not is_positive_definite(RatMatrix.from_rows([[1, 1], [1, 1]]))


def test_semidefinite_matches_eigenvalues(rng):
    for _ in range(200):
        n = rng.randint(1, 5)
        b = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(1, n))]
        gram = [[sum(r[i] * r[j] for r in b) for j in range(n)] for i in range(n)]
        assert is_positive_semidefinite(RatMatrix.from_rows(gram))
        shifted = [[gram[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
        smallest = np.linalg.eigvalsh(np.array(shifted, dtype=float)).min()
        if abs(smallest) > 1e-9:
            assert is_positive_semidefinite(RatMatrix.from_rows(shifted)) == (smallest > 0)


def test_sqrt_bounds_bracket_and_tighten():
    q = Fraction(21)
    previous = Fraction(0)
    for iters in range(0, 6):
        lower = sqrt_lower_bound(q, iters)
        assert lower * lower <= q
        assert lower >= previous
        previous = lower
    upper = sqrt_upper_bound(q, 5)
    assert upper * upper >= q
    assert float(upper - previous) < 1e-12
    assert sqrt_lower_bound(Fraction(9, 4), 3) == Fraction(3, 2)
    assert sqrt_lower_bound(Fraction(0), 3) == 0
    with pytest.raises(LinalgError):
        sqrt_lower_bound(Fraction(-1), 3)


@pytest.mark.parametrize("q", [Fraction(2), Fraction(21), Fraction(189, 2209), Fraction(10**6 + 1, 7)])
def test_sqrt_lower_bound_never_decreases(q):
    previous = Fraction(0)
    for iters in range(0, 41):
        lower = sqrt_lower_bound(q, iters)
        assert lower >= previous
        assert lower * lower <= q
        previous = lower
    assert float(sqrt_upper_bound(q, 40) - previous) < 1e-30 * max(1.0, float(q))
