from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcembed.bitset import mask_of
from drcembed.errors import BudgetError, PreconditionError
from drcembed.generators import all_graphs, complete, complete_bipartite, cycle, empty, hypercube, paley, path, random_graph, star
from drcembed.graph import Graph
from drcembed.oracles import (
    SearchBudget,
    canonical_form,
    chromatic_partition,
    coloring_has_mono,
    contains_induced,
    count_c4_fast,
    count_labeled_copies,
    find_induced,
    graph_catalog,
    is_clique,
    is_independent,
    max_clique,
    max_independent_set,
    min_mono_copies,
    ramsey_exact,
    ramsey_witness,
    universality_check,
)

from conftest import graphs


def brute_copies(h: Graph, g: Graph, induced: bool = False) -> int:
    total = 0
    for img in permutations(range(g.n), h.n):
        ok = True
        for u, v in combinations(range(h.n), 2):
            e = g.has_edge(img[u], img[v])
            if h.has_edge(u, v) and not e or induced and not h.has_edge(u, v) and e:
                ok = False
                break
        total += ok
    return total


# counting -------------------------------------------------------------------


@pytest.mark.parametrize(
    "h, g, want",
    [(complete(2), complete(3), 6), (cycle(4), hypercube(3), 48), (path(3), empty(6), 0), (complete(3), cycle(5), 0)],
)
def test_count_examples(h, g, want):
    assert count_labeled_copies(h, g) == want
    assert count_labeled_copies(h, g, fast=False) == want


@given(graphs(max_n=4), graphs(min_n=1, max_n=6))
def test_count_matches_brute(h, g):
    assert count_labeled_copies(h, g) == brute_copies(h, g)
    assert count_labeled_copies(h, g, "induced") == brute_copies(h, g, induced=True)


@given(graphs(max_n=4), graphs(min_n=1, max_n=7))
def test_subgraph_count_dominates_induced(h, g):
    assert count_labeled_copies(h, g) >= count_labeled_copies(h, g, "induced")


@given(graphs(max_n=4), graphs(min_n=1, max_n=7), st.randoms(use_true_random=False))
def test_count_invariant_under_relabelling(h, g, rnd):
    ph = list(range(h.n))
    pg = list(range(g.n))
    rnd.shuffle(ph)
    rnd.shuffle(pg)
    assert count_labeled_copies(h.relabel(ph), g.relabel(pg)) == count_labeled_copies(h, g)


@pytest.mark.parametrize("seed", range(3))
def test_c4_fast_path(seed):
    g = random_graph(60, Fraction(1, 2), seed)
    assert count_c4_fast(g) == count_labeled_copies(cycle(4), g, fast=False)


def test_count_budget():
    with pytest.raises(BudgetError):
        count_labeled_copies(path(5), complete(30), budget=1000)


def test_search_budget_time_limit():
    b = SearchBudget(nodes=10**9, seconds=0.0)
    with pytest.raises(BudgetError):
        for _ in range(4096):
            b.tick()


# induced containment and universality ------------------------------------------


def test_find_induced_returns_induced_copy():
    g = paley(13)
    for h in graph_catalog(4):
        img = find_induced(h, g)
        if img is not None:
            assert g.subgraph(list(img)) == h
        assert (img is not None) == contains_induced(h, g) == (brute_copies(h, g, induced=True) > 0)


def test_contains_induced_small():
    assert not contains_induced(path(3), complete(5))
    assert contains_induced(path(3), cycle(5))


@pytest.mark.parametrize("n, classes", [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)])
def test_catalog_sizes(n, classes):
    cat = graph_catalog(n)
    assert len(cat) == classes
    assert len({canonical_form(g) for g in cat}) == classes


def test_universality_examples():
    assert universality_check(paley(13), 2)
    assert not universality_check(complete(10), 2)
    for seed in range(3):
        assert universality_check(random_graph(64, Fraction(1, 2), seed), 3)
    with pytest.raises(PreconditionError):
        universality_check(complete(10), 6)


def test_universality_matches_brute_on_small_hosts():
    for g in list(all_graphs(4))[::5]:
        want = all(brute_copies(h, g, induced=True) > 0 for h in graph_catalog(3))
        assert universality_check(g, 3) == want


# cliques ---------------------------------------------------------------------


def test_clique_examples():
    assert max_clique(cycle(5)).bit_count() == 2
    assert max_independent_set(cycle(5)).bit_count() == 2
    assert max_independent_set(complete_bipartite(4, 4)).bit_count() == 4
    g = paley(17)
    k = max_clique(g)
    assert k.bit_count() == 3 and is_clique(g, k)
    # cross-check: no 4-subset is a clique
    assert not any(is_clique(g, mask_of(s)) for s in combinations(range(17), 4))


@given(graphs(min_n=1, max_n=9))
def test_clique_duality_and_optimality(g):
    k = max_clique(g)
    s = max_independent_set(g.complement())
    assert is_clique(g, k) and is_independent(g.complement(), k)
    assert k.bit_count() == s.bit_count()
    best = max(r for r in range(g.n + 1) for c in combinations(range(g.n), r) if is_clique(g, mask_of(c)))
    assert k.bit_count() == best


def test_clique_within():
    g = complete(8)
    assert max_clique(g, within=mask_of([1, 4, 6])) == mask_of([1, 4, 6])


def test_chromatic_partition():
    assert len(chromatic_partition(cycle(5))) == 3
    assert len(chromatic_partition(hypercube(3))) == 2
    assert len(chromatic_partition(complete(4))) == 4
    assert len(chromatic_partition(empty(3))) == 1


@given(graphs(min_n=1, max_n=7))
def test_chromatic_partition_is_optimal(g):
    parts = chromatic_partition(g)
    assert sum(p.bit_count() for p in parts) == g.n
    assert all(is_independent(g, p) for p in parts)
    k = len(parts)
    if k > 1:
        # no proper colouring with k-1 colours
        for labels in product(range(k - 1), repeat=g.n):
            assert any(labels[u] == labels[v] for u, v in g.edges())


# Ramsey ----------------------------------------------------------------------


@pytest.mark.parametrize(
    "h1, h2, want",
    [(complete(3), complete(3), 6), (cycle(4), cycle(4), 6), (complete(2), complete(2), 2), (path(3), path(3), 3), (complete(3), complete(2), 3)],
)
def test_ramsey_values(h1, h2, want):
    assert ramsey_exact(h1, h2, 8) == want


def test_ramsey_symmetric():
    for h1, h2 in [(complete(3), path(3)), (star(2), cycle(4)), (complete(3), path(4))]:
        assert ramsey_exact(h1, h2, 7) == ramsey_exact(h2, h1, 7)


def test_ramsey_not_found_and_limit():
    assert ramsey_exact(complete(3), complete(3), 5) is None
    with pytest.raises(PreconditionError):
        ramsey_exact(complete(3), complete(3), 9)


def test_two_c5_witness():
    wit = ramsey_witness(complete(3), complete(3), 5)
    assert wit is not None and not coloring_has_mono(complete(3), 5, wit)
    # the two-C5 colouring explicitly
    c5 = cycle(5)
    colours = [0 if c5.has_edge(u, v) else 1 for u, v in combinations(range(5), 2)]
    assert not coloring_has_mono(complete(3), 5, colours)


@pytest.mark.parametrize("h, n, want", [(complete(3), 5, 0), (complete(3), 6, 12), (complete(2), 5, 20), (complete(2), 4, 12)])
def test_min_mono_copies(h, n, want):
    assert min_mono_copies(h, n) == want


def test_min_mono_brute_n5():
    pairs = list(combinations(range(5), 2))
    best = None
    for bits in range(1 << len(pairs)):
        red = Graph.from_edges(5, [p for i, p in enumerate(pairs) if bits >> i & 1])
        val = count_labeled_copies(path(3), red) + count_labeled_copies(path(3), red.complement())
        best = val if best is None else min(best, val)
    assert min_mono_copies(path(3), 5) == best
