from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest

from drcembed.bitset import full_mask, mask_of, to_list
from drcembed.embedders import NestedFamily, embed_induced
from drcembed.embedders.induced import bad_pairs, check_induced_chain, estimate_bad_pairs, pair_level_budget
from drcembed.errors import HypothesisFailure, PreconditionError
from drcembed.generators import complete, empty, path, random_graph
from drcembed.graph import INDUCED_PAIR, Graph, validate_embedding
from drcembed.oracles import contains_induced, recheck_embedding


def halves(n: int, levels: int) -> NestedFamily:
    return NestedFamily([full_mask(n >> i) for i in range(levels)])


def brute_bad_pairs(g: Graph, f: Graph, a_next, a_prev, n, m):
    out = set()
    local = to_list(a_next)
    for s1 in combinations(local, n):
        for s2 in combinations(local, n):
            if set(s1) & set(s2):
                continue
            common = [w for w in to_list(a_prev) if all(g.has_edge(w, u) for u in s1) and all(f.has_edge(w, u) for u in s2)]
            if len(common) < m:
                out.add((mask_of(s1), mask_of(s2)))
    return out


def test_pair_level_budget():
    assert pair_level_budget(2, 4) == Fraction(36, 256)


@pytest.mark.parametrize("seed", range(4))
def test_bad_pairs_match_brute(seed):
    g = random_graph(18, Fraction(1, 2), seed)
    f = g.complement()
    a_prev, a_next = full_mask(18), full_mask(7)
    got = set(bad_pairs(g, f, a_next, a_prev, 2, 4))
    assert got == brute_bad_pairs(g, f, a_next, a_prev, 2, 4)
    est = estimate_bad_pairs(g, f, a_next, a_prev, 2, 4, samples=4000, seed=seed)
    population = 21 * 10  # ordered disjoint pairs of 2-subsets of 7 vertices
    assert abs(est - len(got)) <= 0.1 * population


@pytest.mark.parametrize("seed", range(5))
def test_certified_small_instance(seed):
    g = random_graph(256, Fraction(1, 2), seed)
    f = g.complement()
    nested = NestedFamily([g.vertex_mask, full_mask(8)])
    for h in (complete(2), empty(2)):
        emb = embed_induced(h, g, f, nested, 4)
        assert emb.meta["certified"] and emb.mode == INDUCED_PAIR
        assert validate_embedding(h, g, emb, second=f)
        assert 2 * h.n * emb.meta["max_excluded"] <= (h.n - 1) * 4


@pytest.mark.parametrize("seed", range(5))
def test_p3_in_random_graph(seed):
    g = random_graph(32, Fraction(1, 2), seed)
    f = g.complement()
    emb = embed_induced(path(3), g, f, halves(32, 3), 6, strict=False)
    assert recheck_embedding(path(3), g, emb, second=f)
    # with F the complement this is an induced copy
    assert g.subgraph(list(emb.mapping)) == path(3)
    assert contains_induced(path(3), g)


def test_single_vertex_pattern():
    g = random_graph(10, Fraction(1, 2), 0)
    emb = embed_induced(empty(1), g, g.complement(), NestedFamily([mask_of([3, 5])]), 2, strict=False)
    assert emb.mapping[0] in (3, 5)


def test_strict_mode_reports_level():
    g = empty(32)
    with pytest.raises(HypothesisFailure) as exc:
        embed_induced(path(3), g, complete(32), halves(32, 3), 6)
    assert exc.value.level == 1


def test_sampled_mode_never_certified():
    g = random_graph(64, Fraction(1, 2), 2)
    f = g.complement()
    emb = embed_induced(path(3), g, f, halves(64, 3), 6, strict=False, mode="sampled")
    assert emb.meta["sampled"] and not emb.meta["certified"]
    rep, _ = check_induced_chain(g, f, halves(64, 3), 3, 6, mode="sampled")
    assert rep.sampled and not rep.holds


def test_overlapping_graphs_rejected():
    g = complete(6)
    with pytest.raises(PreconditionError):
        embed_induced(path(2), g, g, halves(6, 2), 4)


def test_too_few_levels_rejected():
    g = random_graph(16, Fraction(1, 2), 0)
    with pytest.raises(PreconditionError):
        embed_induced(path(3), g, g.complement(), halves(16, 2), 6)
