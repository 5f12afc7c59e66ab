"""Bipartite patterns of bounded maximum degree in dense hosts.

Pipeline: equipartition the host, pick ``A = N(T)`` in ``V2`` by dependent
random choice so that almost every ``d``-subset of ``A`` is nice (has at
least ``x`` common neighbours in ``V1``), embed the neighbourhood
hypergraph of the larger pattern part into the nice sets of ``A``, and
finish the other part through common neighbourhoods.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, comb

from ..bitset import iter_bits, lowest, mask_of, to_list
from ..drc import DrcParams, drc_find_witness
from ..errors import InternalError, SizeError
from ..graph import PART_RESPECTING, Embedding, Graph, Hypergraph, common_neighborhood, validate_embedding
from ._host import as_bipartite_pattern, equal_part_host, require_cross, require_density
from .hypergraph import embed_hypergraph_greedy


def bipartite_dense_threshold(n: int, d: int, epsilon: Fraction) -> Fraction:
    """Smallest admissible part size ``16 d eps^-d n``."""
    return 16 * d * Fraction(epsilon) ** (-d) * n


def embed_bipartite_dense(
    h: Graph,
    g: Graph,
    epsilon,
    seed: int = 0,
    *,
    max_trials: int = 64,
    budget: int | None = None,
) -> Embedding:
    eps = Fraction(epsilon)
    pat = as_bipartite_pattern(h)
    n = pat.n
    d = max(pat.max_degree(), 2)
    need = bipartite_dense_threshold(n, d, eps)
    n_part = g.n1 if hasattr(g, "n1") and g.n1 == g.n2 else g.n // 2
    if n_part < need:
        raise SizeError(
            f"part size N = {n_part} < 16 d eps^-d n = {float(need):.1f} (d={d}, n={n}, eps={eps})",
            details={"N": n_part, "required": str(need)},
        )
    require_density(g, eps)
    host = equal_part_host(g, seed)
    require_cross(host, eps)
    N = host.N

    u1, u2 = pat.left, pat.right
    if u1.bit_count() > u2.bit_count():
        u1, u2 = u2, u1
    u2_list = to_list(u2)
    index = {v: i for i, v in enumerate(u2_list)}
    hedges = []
    for u in iter_bits(u1):
        nb = mask_of(index[w] for w in iter_bits(pat.rows[u]))
        if nb and nb not in hedges:
            hedges.append(nb)
    hyp = Hypergraph(len(u2_list), tuple(hedges))

    x = eps**d * N / (8 * d)
    x_int = ceil(x)
    params = DrcParams(a=d, d=d, t=d, x=x_int, epsilon=eps)
    lemma_bound = lambda o: Fraction(4 * d) ** (-d) * comb(o.size, d)

    def usable(o) -> bool:
        return o.size >= 4 * hyp.n and o.bad_count < lemma_bound(o)

    wit = drc_find_witness(host.graph, params, max_trials, seed, budget=budget, collect=True, accept=usable)
    a = wit.A
    sub = embed_hypergraph_greedy(hyp, a, wit.bad_sets, h=d, d=d, budget=budget)

    f: dict[int, int] = {v: sub.mapping[i] for i, v in enumerate(u2_list)}
    used = mask_of(f.values())
    v1 = host.v1
    for u in iter_bits(u1):
        nb = pat.rows[u]
        img = mask_of(f[w] for w in iter_bits(nb))
        cands = (common_neighborhood(host.graph, img, part=2) if img else v1) & v1 & ~used
        if not cands:
            raise InternalError(f"no common neighbour left for pattern vertex {u}")
        f[u] = lowest(cands)
        used |= 1 << f[u]

    left_host, right_host = v1, host.v2
    emb = Embedding(
        tuple(f[v] for v in range(pat.n)),
        PART_RESPECTING,
        parts=((u1, left_host), (u2, right_host)),
        meta={
            "N": N,
            "d": d,
            "x": str(x),
            "A_size": wit.size,
            "bad_in_A": wit.bad_count,
            "drc_trial": wit.trial,
            "drc_method": wit.method,
        },
    )
    if not validate_embedding(pat, g, emb):
        raise InternalError("bipartite pipeline produced an invalid embedding")
    return emb
