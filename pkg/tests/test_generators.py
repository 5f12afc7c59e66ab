from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb, sqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcembed.errors import ConstructionError, PreconditionError, UnsupportedFieldError
from drcembed.embedders.subdivision import square_graph
from drcembed.generators import (
    all_graphs,
    complete,
    complete_bipartite,
    empty,
    cycle,
    hypercube,
    named_graph,
    one_subdivision,
    paley,
    random_bipartite,
    random_bipartite_degenerate,
    random_d_degenerate,
    random_graph,
)
from drcembed.graph import BipartiteGraph, degeneracy_order
from drcembed.io import dumps_graph
from drcembed.oracles import canonical_form

from conftest import graphs


@pytest.mark.parametrize("d", [1, 2, 3, 4, 6])
def test_hypercube_regular_and_bipartite(d):
    q = hypercube(d)
    assert q.n == 2**d
    assert q.m == d * 2**d // 2
    assert set(q.degrees()) == {d}
    # parity classes are independent
    for u, v in q.edges():
        assert bin(u).count("1") % 2 != bin(v).count("1") % 2


def test_hypercube_small_cases():
    assert hypercube(1) == complete(2)
    assert canonical_form(hypercube(2)) == canonical_form(cycle(4))
    with pytest.raises(PreconditionError):
        hypercube(0)
    with pytest.raises(PreconditionError):
        hypercube(21)


@pytest.mark.parametrize("h, n, m", [(complete(3), 6, 6), (complete(4), 10, 12), (complete(5), 15, 20)])
def test_one_subdivision_sizes(h, n, m):
    s = one_subdivision(h)
    assert (s.n, s.m) == (n, m)
    assert isinstance(s, BipartiteGraph)
    assert all(s.degree(v) == 2 for v in range(h.n, s.n))


def test_subdivision_of_triangle_is_c6():
    assert canonical_form(one_subdivision(complete(3))) == canonical_form(cycle(6))


def test_subdivision_rejects_isolated_vertex():
    with pytest.raises(PreconditionError):
        one_subdivision(empty(3))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_square_graph_recovers_pattern_exhaustively(n):
    for h in all_graphs(n):
        if any(r == 0 for r in h.rows):
            continue
        assert square_graph(one_subdivision(h)) == h


@given(graphs(min_n=2, max_n=6))
def test_square_graph_recovers_pattern(h):
    if any(r == 0 for r in h.rows):
        return
    assert square_graph(one_subdivision(h)) == h


def test_random_graph_extremes():
    assert random_graph(7, 1, seed=3) == complete(7)
    assert random_graph(7, 0, seed=3).m == 0
    assert random_bipartite(4, 1, seed=2) == complete_bipartite(4, 4)
    assert random_bipartite(4, 0, seed=2).m == 0


def test_random_graph_concentration():
    g = random_graph(1000, Fraction(1, 2), seed=7)
    pairs = comb(1000, 2)
    sigma = sqrt(pairs / 4)
    assert abs(g.m - pairs / 2) <= 5 * sigma


@pytest.mark.parametrize("make", [
    lambda s: random_graph(40, Fraction(3, 10), s),
    lambda s: random_bipartite(20, Fraction(2, 3), s),
    lambda s: random_d_degenerate(30, 3, 8, s),
    lambda s: random_bipartite_degenerate(10, 12, 2, 4, s),
])
def test_generators_deterministic(make):
    assert dumps_graph(make(11)) == dumps_graph(make(11))
    assert dumps_graph(make(11)) != dumps_graph(make(12))


def test_paley_five_is_c5():
    assert paley(5) == cycle(5)


@pytest.mark.parametrize("q", [5, 13, 17, 29, 37, 101])
def test_paley_regular_and_symmetric(q):
    g = paley(q)
    assert g.n == q and set(g.degrees()) == {(q - 1) // 2}
    a = g.adjacency_matrix()
    assert (a == a.T).all()
    squares = {x * x % q for x in range(1, q)}
    for x, y in combinations(range(q), 2):
        assert g.has_edge(x, y) == ((x - y) % q in squares)


@pytest.mark.parametrize("q", [9, 7, 15, 1, 25])
def test_paley_rejects_unsupported(q):
    with pytest.raises(UnsupportedFieldError):
        paley(q)


def test_random_degenerate_examples():
    g = random_d_degenerate(20, 1, seed=4)
    assert g.m == 19 and degeneracy_order(g)[1] == 1  # a tree: connected with n-1 edges
    assert degeneracy_order(random_d_degenerate(10, 2, seed=5))[1] <= 2
    g = random_d_degenerate(50, 3, 8, seed=6)
    assert g.max_degree() <= 8 and degeneracy_order(g)[1] <= 3


def test_random_degenerate_errors():
    with pytest.raises(PreconditionError):
        random_d_degenerate(3, 3)
    with pytest.raises(ConstructionError):
        random_d_degenerate(20, 3, 1, seed=0)


@given(st.integers(2, 30), st.integers(1, 4), st.integers(0, 10_000))
def test_random_degenerate_property(n, d, seed):
    if d >= n:
        return
    assert degeneracy_order(random_d_degenerate(n, d, seed=seed))[1] <= d


def test_bipartite_degenerate_property():
    for seed in range(10):
        g = random_bipartite_degenerate(8, 9, 2, 5, seed)
        assert degeneracy_order(g)[1] <= 2
        assert g.max_degree() <= 5


@pytest.mark.parametrize("spec, n, m", [("k4", 4, 6), ("c5", 5, 5), ("p3", 3, 2), ("q3", 8, 12), ("e4", 4, 0), ("s3", 4, 3), ("k2,3", 5, 6)])
def test_named_graphs(spec, n, m):
    g = named_graph(spec)
    assert (g.n, g.m) == (n, m)


def test_named_graph_unknown():
    with pytest.raises(PreconditionError):
        named_graph("z9")
