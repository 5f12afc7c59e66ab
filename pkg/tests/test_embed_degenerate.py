from __future__ import annotations

from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest

from drcembed.bitset import mask_of, to_list
from drcembed.embedders import embed_arrangeable, embed_degenerate, embed_degenerate_pair
from drcembed.embedders.degenerate import check_pair_hypotheses, side_budget, theorem_x
from drcembed.errors import PreconditionError, SizeError
from drcembed.generators import complete, complete_bipartite, cycle, path, random_bipartite_degenerate, random_graph, star
from drcembed.graph import BipartiteGraph, Graph, degeneracy_order, validate_embedding
from drcembed.oracles import recheck_embedding

EPS = Fraction(2, 3)  # hosts are G(2N, 0.7); the slack absorbs density fluctuation


def test_side_budget():
    assert side_budget(4, 2, 12) == Fraction(66, 16)


def test_theorem_x_formula():
    # eps = 1, delta = 1, Delta = 1: x = N / 512
    assert theorem_x(1024, Fraction(1), Fraction(1), 1, 1) == 2.0


def test_star_into_complete_host():
    h = star(5)
    g = complete(128)
    f = embed_degenerate(h, g, 1, 1, seed=0, x=24)
    assert validate_embedding(h, g, f) and recheck_embedding(h, g, f)
    assert f.meta["x_override"]


def test_theorem_x_too_small_is_size_error():
    with pytest.raises(SizeError):
        embed_degenerate(star(5), complete(128), 1, 1)


def test_delta_range_checked():
    h = random_bipartite_degenerate(4, 4, 2, seed=1)
    with pytest.raises(PreconditionError):
        embed_degenerate(h, complete(64), 1, Fraction(1, 100), x=32)


@pytest.mark.parametrize("seed", range(20))
def test_random_degenerate_pattern(seed):
    h = random_bipartite_degenerate(6, 6, 2, 4, seed)
    g = random_graph(1200, Fraction(7, 10), seed)
    f = embed_degenerate(h, g, EPS, 1, seed, x=48)
    assert validate_embedding(h, g, f) and recheck_embedding(h, g, f)
    assert 2 * f.meta["max_excluded"] <= f.meta["x"]


def test_pair_lemma_on_complete_bipartite():
    m = 24
    g = complete_bipartite(m, m)
    h = random_bipartite_degenerate(3, 3, 2, seed=3)
    f = embed_degenerate_pair(h, g, g.left, g.right, m)
    assert f.meta["hypothesis_holds"] and f.meta["bad_counts"] == (0, 0)
    assert validate_embedding(h, g, f)


def _count_part_respecting(h: BipartiteGraph, g: Graph, a1, a2) -> int:
    left, right = to_list(h.left), to_list(h.right)
    total = 0
    for il in permutations(to_list(a1), len(left)):
        for ir in permutations(to_list(a2), len(right)):
            mp = dict(zip(left, il)) | dict(zip(right, ir))
            total += all(g.has_edge(mp[u], mp[v]) for u, v in h.edges())
    return total


PATTERNS = [complete_bipartite(1, 1), path(3), complete_bipartite(1, 2)]


@pytest.mark.parametrize("which", range(len(PATTERNS)))
def test_pair_count_bound(which):
    """Under the counted hypotheses there are at least (x/4)^n part-respecting copies."""
    h = BipartiteGraph.from_graph(PATTERNS[which])
    x, n = 12, h.n
    d = max(degeneracy_order(h)[1], 1)
    g0 = complete_bipartite(x, x)
    edges = list(g0.edges())
    held = 0
    for seed, removed in product(range(6), (0, 3, 6, 12)):
        rng = np.random.default_rng(seed)
        drop = {int(i) for i in rng.choice(len(edges), size=removed, replace=False)}
        g = BipartiteGraph.from_parts(x, x, [e for i, e in enumerate(edges) if i not in drop])
        rep, _ = check_pair_hypotheses(g, g.left, g.right, d, x, 2 * h.max_degree(), n)
        if not rep.holds:
            continue
        held += 1
        assert _count_part_respecting(h, g, g.left, g.right) >= Fraction(x, 4) ** n
        f = embed_degenerate_pair(h, g, g.left, g.right, x)
        assert f.meta["certified"] and validate_embedding(h, g, f)
    assert held >= 6


def test_pair_best_effort_flagged():
    g = random_graph(40, Fraction(1, 2), seed=1)
    h = path(4)
    f = embed_degenerate_pair(h, g, mask_of(range(20)), mask_of(range(20, 40)), 16)
    assert not f.meta["hypothesis_holds"]
    assert validate_embedding(h, g, f)


def test_pair_sides_must_be_disjoint():
    with pytest.raises(PreconditionError):
        embed_degenerate_pair(path(2), complete(10), 0b11, 0b10, 4)


# arrangeable ------------------------------------------------------------------


def test_arrangeable_path_complete_host():
    h = path(4)
    g = complete(64)
    f = embed_arrangeable(h, list(range(4)), 1, g, 1, seed=0, x=16)
    assert validate_embedding(h, g, f)


@pytest.mark.parametrize("seed", range(5))
def test_arrangeable_c6_random_host(seed):
    h = cycle(6)
    g = random_graph(600, Fraction(7, 10), seed)
    f = embed_arrangeable(h, list(range(6)), 2, g, EPS, seed, x=24)
    assert validate_embedding(h, g, f) and recheck_embedding(h, g, f)


def test_arrangeable_rejects_bad_ordering():
    with pytest.raises(PreconditionError):
        embed_arrangeable(complete_bipartite(3, 3), list(range(6)), 1, complete(200), 1, x=24)

