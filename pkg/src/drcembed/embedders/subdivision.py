"""1-subdivisions in dense hosts.

The branch vertices of ``H`` are embedded into an auxiliary graph ``G*``
on the high-degree vertices of ``V1`` (two vertices adjacent in ``G*``
when they have at least ``n`` common neighbours in ``V2``); each
subdividing vertex then takes an unused common neighbour of its two
branch vertices.  ``G*`` is nearly complete inside a nested chain
``A_0 ⊇ A_1 ⊇ ...`` whose complement degrees shrink geometrically, and
vertices of high ``H``-degree go into the large early levels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ..bitset import iter_bits, lowest, mask_of, to_list
from ..config import DEFAULT_RETRIES
from ..errors import EmbeddingFailure, HypothesisFailure, InternalError, PreconditionError, SizeError
from ..generators import one_subdivision
from ..graph import PART_RESPECTING, BipartiteGraph, Embedding, Graph, validate_embedding
from ._host import equal_part_host
from .ledger import NestedFamily


def square_graph(sub: BipartiteGraph) -> Graph:
    """``H'``: left-part vertices adjacent when they share a right-part neighbour (left labels kept)."""
    edges = set()
    for u in iter_bits(sub.right):
        nb = to_list(sub.rows[u])
        for i in range(len(nb)):
            for j in range(i + 1, len(nb)):
                edges.add((nb[i], nb[j]))
    g = Graph.from_edges(sub.n, edges)
    return g.subgraph(to_list(sub.left))


@dataclass
class SubdivisionChain:
    family: NestedFamily
    complement_degree: list[int]
    draws: list[int]


def subdivision_threshold(n: int, epsilon: Fraction) -> Fraction:
    return 128 * Fraction(epsilon) ** -3 * n


def _complement_star(adj: np.ndarray, idx: np.ndarray) -> np.ndarray:
    sub = adj[np.ix_(idx, idx)]
    comp = ~sub
    np.fill_diagonal(comp, False)
    return comp


def build_chain(
    adj_star: np.ndarray,
    local_rows: np.ndarray,
    epsilon: Fraction,
    levels: int,
    rng: np.random.Generator,
    retries: int = DEFAULT_RETRIES,
):
    """Nested index sets with ``|A_i| >= (eps/8)|A_{i-1}|`` and complement degree ``<= (eps/8)^i |A_i|``.

    ``adj_star`` is the ``G*`` adjacency on the local vertices and
    ``local_rows`` their boolean neighbourhoods in ``V2``.
    """
    eps = Fraction(epsilon)
    c = lambda i: (eps / 8) ** i
    current = np.arange(adj_star.shape[0])
    chain = [current]
    comp0 = _complement_star(adj_star, current)
    degs = [int(comp0.sum(axis=1).max(initial=0))]
    draws = []
    for i in range(1, levels + 1):
        prev = chain[-1]
        found = None
        for attempt in range(retries):
            w = int(rng.integers(local_rows.shape[1]))
            a = prev[local_rows[prev, w]]
            if len(a) == 0:
                continue
            comp = _complement_star(adj_star, a)
            deg = comp.sum(axis=1).astype(np.int64)
            alive = np.ones(len(a), dtype=bool)
            limit = eps * c(i - 1) * len(a) / 16
            while alive.any():
                masked = np.where(alive, deg, -1)
                top = int(np.argmax(masked))
                if masked[top] <= limit:
                    break
                alive[top] = False
                deg -= comp[top].astype(np.int64)
            kept = a[alive]
            if len(kept) == 0:
                continue
            kd = int(_complement_star(adj_star, kept).sum(axis=1).max(initial=0))
            if 8 * len(kept) >= eps * len(prev) and kd <= c(i) * len(kept):
                found = kept
                degs.append(kd)
                draws.append(attempt + 1)
                break
        if found is None:
            raise HypothesisFailure(
                f"chain level {i}: no admissible w within {retries} draws",
                level=i,
                details={"previous_size": int(len(prev)), "retries": retries},
            )
        chain.append(found)
    return chain, degs, draws


def embed_subdivision(
    h: Graph,
    g: Graph,
    epsilon,
    seed: int = 0,
    *,
    retries: int = DEFAULT_RETRIES,
    check_size: bool = True,
) -> Embedding:
    """Embed the 1-subdivision of ``h`` (``n`` = number of edges of ``h``).

    The returned embedding is of ``one_subdivision(h)``: branch vertex ``v``
    keeps label ``v`` and the ``i``-th edge's subdividing vertex is
    ``h.n + i``.
    """
    eps = Fraction(epsilon)
    sub = one_subdivision(h)
    n = h.m
    if n == 0:
        raise PreconditionError("pattern has no edges")
    host = equal_part_host(g, seed)
    N = host.N
    need = subdivision_threshold(n, eps)
    if check_size and N < need:
        raise SizeError(f"N = {N} < 128 eps^-3 n = {float(need):.1f}", details={"N": N, "required": str(need)})
    if host.cross < eps * N * N:
        raise HypothesisFailure(
            f"partition has {host.cross} crossing edges, fewer than eps N^2 = {eps * N * N}",
            details={"cross": host.cross, "required": str(eps * N * N), "edges": g.m},
        )
    v1, v2 = host.v1, host.v2
    v2_list = to_list(v2)
    v1_list = to_list(v1)
    amat = g.adjacency_matrix()
    deg_v2 = amat[np.ix_(v1_list, v2_list)].sum(axis=1)
    keep = [v for v, dg in zip(v1_list, deg_v2) if 2 * dg >= eps * N]
    if not keep:
        raise HypothesisFailure("no vertex of V1 has eps N / 2 neighbours in V2")
    rows = amat[np.ix_(keep, v2_list)]
    rf = rows.astype(np.float32)
    codeg = rf @ rf.T
    adj_star = codeg >= n
    np.fill_diagonal(adj_star, False)

    hprime = square_graph(sub)
    if hprime.m > n:
        raise InternalError(f"H' has {hprime.m} edges, more than n = {n}")
    # branch vertices in decreasing H'-degree; position i (1-based) goes to level j(i)
    order = sorted(range(hprime.n), key=lambda v: (-hprime.degree(v), v))
    ratio = eps / 8

    def level_of(i: int) -> int:
        j = 1
        while ratio**j > Fraction(i, 4 * n):
            j += 1
        return j

    levels = max(level_of(i) for i in range(1, len(order) + 1))
    rng = np.random.default_rng(seed)
    chain, cdeg, draws = build_chain(adj_star, rows, eps, levels, rng, retries)
    for i in range(1, len(chain)):
        assert 8 * len(chain[i]) >= eps * len(chain[i - 1])
        assert cdeg[i] <= ratio**i * len(chain[i])

    # H' -> G* greedy
    fstar: dict[int, int] = {}
    used_local = set()
    pos = {v: k for k, v in enumerate(order)}
    for k, v in enumerate(order, start=1):
        lvl = chain[level_of(k)]
        ok = np.ones(len(lvl), dtype=bool)
        for w in iter_bits(hprime.rows[v]):
            if pos[w] < pos[v]:
                ok &= adj_star[lvl, fstar[w]]
        picks = [int(a) for a in lvl[ok] if int(a) not in used_local]
        if not picks:
            raise EmbeddingFailure(f"no G* vertex for branch vertex {v}", details={"level": level_of(k)})
        fstar[v] = min(picks)
        used_local.add(fstar[v])

    f: dict[int, int] = {v: keep[fstar[v]] for v in range(hprime.n)}
    used = mask_of(f.values())
    for u in iter_bits(sub.right):
        a, b = to_list(sub.rows[u])
        cands = g.rows[f[a]] & g.rows[f[b]] & v2 & ~used
        if not cands:
            raise InternalError(f"no common neighbour left for subdividing vertex {u}")
        f[u] = lowest(cands)
        used |= 1 << f[u]

    family = NestedFamily([mask_of(keep[int(i)] for i in lv) for lv in chain])
    emb = Embedding(
        tuple(f[v] for v in range(sub.n)),
        PART_RESPECTING,
        parts=((sub.left, mask_of(keep)), (sub.right, v2)),
        meta={
            "N": N,
            "n": n,
            "edges_ok": g.m >= 2 * eps * N * N,
            "hprime_edges": hprime.m,
            "chain_sizes": family.sizes(),
            "complement_degrees": cdeg,
            "draws": draws,
        },
    )
    if not validate_embedding(sub, g, emb):
        raise InternalError("subdivision pipeline produced an invalid embedding")
    return emb
