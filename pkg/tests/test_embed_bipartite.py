from __future__ import annotations

from fractions import Fraction

import pytest

from drcembed.embedders import embed_bipartite_dense
from drcembed.embedders.bipartite import bipartite_dense_threshold
from drcembed.errors import EmbeddingFailure, HypothesisFailure, SizeError
from drcembed.generators import complete, complete_bipartite, cycle, disjoint_union, hypercube, random_graph, star
from drcembed.graph import PART_RESPECTING, validate_embedding
from drcembed.oracles import recheck_embedding


def test_threshold_value():
    assert bipartite_dense_threshold(4, 2, Fraction(1, 2)) == 16 * 2 * 4 * 4


def test_c4_into_complete_host():
    g = complete(1024)
    f = embed_bipartite_dense(cycle(4), g, Fraction(1, 2), seed=1)
    assert f.mode == PART_RESPECTING
    assert validate_embedding(cycle(4), g, f)
    assert recheck_embedding(cycle(4), g, f)


def test_star_into_complete_host():
    h = star(3)
    g = complete(400)
    f = embed_bipartite_dense(h, g, Fraction(1), seed=0)
    assert recheck_embedding(h, g, f)


def test_too_small_host_is_size_error():
    with pytest.raises(SizeError) as exc:
        embed_bipartite_dense(cycle(4), complete(100), Fraction(1, 2))
    assert exc.value.details["N"] == 50


def test_triangles_never_yield_invalid_embedding():
    host = disjoint_union(*[complete(3)] * 400)
    eps = Fraction(host.m, host.n * (host.n - 1) // 2)
    with pytest.raises((SizeError, HypothesisFailure, EmbeddingFailure)):
        embed_bipartite_dense(complete_bipartite(1, 3), host, eps)


def test_sparse_host_rejected_by_density():
    g = random_graph(1200, Fraction(1, 10), seed=2)
    with pytest.raises(HypothesisFailure):
        embed_bipartite_dense(complete_bipartite(1, 1), g, Fraction(1, 2))


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(20))
def test_cube_into_random_host(seed):
    # part size 1970 clears 16 d eps^-d n = 1970 at eps = 0.58
    eps = Fraction(58, 100)
    h = hypercube(3)
    g = random_graph(3940, Fraction(3, 5), seed)
    f = embed_bipartite_dense(h, g, eps, seed, budget=50_000_000)
    assert validate_embedding(h, g, f) and recheck_embedding(h, g, f)
