from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcembed.bitset import full_mask, mask_of, to_list
from drcembed.errors import DegenerateInputError, InvalidEmbeddingError, PreconditionError
from drcembed.generators import complete, complete_bipartite, cycle, empty, hypercube, path, perfect_matching, random_graph
from drcembed.graph import (
    INDUCED_PAIR,
    PART_RESPECTING,
    BipartiteGraph,
    Embedding,
    Graph,
    back_degrees,
    balanced_max_cut_partition,
    common_neighborhood,
    cross_edges,
    degeneracy_order,
    density_between,
    edge_density,
    partition_cut_bound,
    validate_embedding,
    verify_arrangeable,
)
from drcembed.oracles import recheck_embedding

from conftest import graphs


# construction ----------------------------------------------------------


def test_rejects_self_loops():
    with pytest.raises(ValueError):
        Graph.from_edges(3, [(1, 1)])
    with pytest.raises(ValueError):
        Graph(2, [0b01, 0])


def test_rejects_asymmetric_rows():
    with pytest.raises(ValueError):
        Graph(2, [0b10, 0])


def test_duplicate_edges_collapse():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (0, 1)])
    assert g.m == 1


def test_bipartite_rejects_crossing_violation():
    with pytest.raises(ValueError):
        BipartiteGraph(4, 0b0011, 0b1100, Graph.from_edges(4, [(0, 1)]).rows)


@given(graphs())
def test_adjacency_matrix_roundtrip(g):
    a = g.adjacency_matrix()
    assert a.shape == (g.n, g.n)
    assert np.array_equal(a, a.T)
    assert Graph.from_adjacency_matrix(a) == g
    assert int(a.sum()) == 2 * g.m


@given(graphs(min_n=1))
def test_complement_involution(g):
    c = g.complement()
    assert c.complement() == g
    assert g.m + c.m == g.n * (g.n - 1) // 2


def test_subgraph_relabels_in_given_order():
    g = path(4)
    s = g.subgraph([3, 2, 0])
    assert s.n == 3
    assert set(s.edges()) == {(0, 1)}


# common neighbourhood ----------------------------------------------------


def test_common_neighborhood_k33():
    g = complete_bipartite(3, 3)
    assert common_neighborhood(g, 1 << 0) == mask_of([3, 4, 5])


def test_common_neighborhood_empty_set():
    assert common_neighborhood(empty(5), 0) == full_mask(5)
    g = complete_bipartite(2, 3)
    assert common_neighborhood(g, 0) == g.right
    assert common_neighborhood(g, 0, part=2) == g.left


def test_common_neighborhood_c5():
    assert common_neighborhood(cycle(5), mask_of([0, 2])) == mask_of([1])


@given(graphs(min_n=1), st.data())
def test_common_neighborhood_antitone(g, data):
    u = data.draw(st.integers(0, full_mask(g.n)))
    extra = data.draw(st.integers(0, full_mask(g.n)))
    assert common_neighborhood(g, u | extra) & ~common_neighborhood(g, u) == 0


@given(graphs(min_n=1), st.data())
def test_common_neighborhood_matches_definition(g, data):
    u = data.draw(st.integers(0, full_mask(g.n)))
    want = mask_of(w for w in range(g.n) if all(g.has_edge(w, x) for x in to_list(u)))
    assert common_neighborhood(g, u) == want


# densities ---------------------------------------------------------------


@pytest.mark.parametrize(
    "g, want",
    [(complete(4), Fraction(1)), (empty(10), Fraction(0)), (cycle(5), Fraction(1, 2))],
)
def test_edge_density(g, want):
    assert edge_density(g) == want
    assert isinstance(edge_density(g), Fraction)


def test_edge_density_too_small():
    with pytest.raises(DegenerateInputError):
        edge_density(empty(1))


def test_density_between_examples():
    assert density_between(complete(6), mask_of([0, 1]), mask_of([2, 3, 4])) == 1
    assert density_between(complete(6), 1, 1) == 0
    assert density_between(cycle(4), mask_of([0, 1]), mask_of([2, 3])) == Fraction(1, 2)
    with pytest.raises(DegenerateInputError):
        density_between(cycle(4), 0, 1)


@given(graphs(min_n=1))
def test_density_whole_vertex_set(g):
    v = g.vertex_mask
    assert density_between(g, v, v) == Fraction(2 * g.m, g.n * g.n)


# degeneracy and arrangeability ------------------------------------------


@pytest.mark.parametrize("g, d", [(path(7), 1), (cycle(6), 2), (hypercube(3), 3), (complete(5), 4), (empty(3), 0)])
def test_degeneracy_examples(g, d):
    order, got = degeneracy_order(g)
    assert got == d
    assert sorted(order) == list(range(g.n))


@given(graphs())
def test_degeneracy_back_degree_bound(g):
    order, d = degeneracy_order(g)
    assert max(back_degrees(g, order), default=0) <= d
    assert d <= g.max_degree()
    # minimality: some subgraph has minimum degree d
    if g.n:
        assert _max_min_degree(g) == d


def _max_min_degree(g):
    best = 0
    for k in range(1, g.n + 1):
        for s in combinations(range(g.n), k):
            sub = g.subgraph(list(s))
            best = max(best, min(sub.degrees()))
    return best


def test_verify_arrangeable_examples():
    assert verify_arrangeable(path(5), list(range(5)), 1)
    for order in permutations(range(4)):
        assert not verify_arrangeable(complete(4), list(order), 1)
    assert verify_arrangeable(cycle(4), [0, 1, 2, 3], 2)


def test_verify_arrangeable_rejects_non_permutation():
    with pytest.raises(PreconditionError):
        verify_arrangeable(path(3), [0, 0, 1], 1)


def _arrangeable_brute(g, order, p):
    for i in range(len(order)):
        left = set(order[: i + 1])
        union = set()
        for j in range(i + 1, len(order)):
            if g.has_edge(order[i], order[j]):
                union |= {w for w in left if g.has_edge(w, order[j])}
        if len(union) > p:
            return False
    return True


@given(graphs(max_n=7), st.integers(0, 4), st.randoms(use_true_random=False))
def test_verify_arrangeable_matches_brute(g, p, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    assert verify_arrangeable(g, order, p) == _arrangeable_brute(g, order, p)


# embeddings ----------------------------------------------------------------


def test_validate_embedding_examples():
    assert validate_embedding(complete(2), complete(3), Embedding((2, 0)))
    assert not validate_embedding(complete(2), empty(3), Embedding((0, 1)))
    # a 2-face of the cube: 0-1-3-2
    assert validate_embedding(cycle(4), hypercube(3), Embedding((0, 1, 3, 2)))
    with pytest.raises(InvalidEmbeddingError):
        validate_embedding(complete(2), complete(3), Embedding((1, 1)))
    with pytest.raises(InvalidEmbeddingError):
        validate_embedding(complete(2), complete(3), Embedding((1,)))


def test_validate_embedding_modes():
    g = path(3)  # 0-1-2, non-edge (0,2)
    host = complete(4)
    f = Embedding((0, 1, 2), mode=INDUCED_PAIR)
    assert not validate_embedding(g, host, f)  # complement of K4 is empty
    second = Graph.from_edges(4, [(0, 2)])
    assert validate_embedding(g, host, f, second)
    f = Embedding((0, 1, 2), mode=PART_RESPECTING, parts=((0b001, 0b0001), (0b110, 0b0110)))
    assert validate_embedding(g, host, f)
    f = Embedding((0, 1, 2), mode=PART_RESPECTING, parts=((0b001, 0b0010),))
    assert not validate_embedding(g, host, f)


def test_unknown_mode_rejected():
    with pytest.raises(ValueError):
        Embedding((0,), mode="sideways")


@given(graphs(max_n=5), graphs(min_n=5, max_n=8), st.randoms(use_true_random=False), st.sampled_from(["subgraph", INDUCED_PAIR]))
def test_validate_agrees_with_recheck(h, g, rnd, mode):
    f = Embedding(tuple(rnd.sample(range(g.n), h.n)), mode=mode)
    assert validate_embedding(h, g, f) == recheck_embedding(h, g, f)


# equipartitions ------------------------------------------------------------


def _check_cut(g, seed=0):
    a, b = balanced_max_cut_partition(g, seed)
    assert a & b == 0 and (a | b) & ~g.vertex_mask == 0
    assert abs(a.bit_count() - b.bit_count()) <= 1
    assert a.bit_count() + b.bit_count() >= g.n - 1
    got = cross_edges(g, a, b)
    assert got >= partition_cut_bound(g)
    return got


def test_cut_examples():
    assert _check_cut(complete(4)) == 4
    assert _check_cut(perfect_matching(4)) >= 1
    g = random_graph(20, Fraction(1, 2), seed=1)
    got = _check_cut(g, 1)
    assert got >= -(-g.m * 100 // 190)


def test_cut_too_small():
    with pytest.raises(DegenerateInputError):
        balanced_max_cut_partition(empty(1))


@given(graphs(min_n=2, max_n=9), st.integers(0, 1000))
def test_cut_bound_on_random_graphs(g, seed):
    _check_cut(g, seed)
