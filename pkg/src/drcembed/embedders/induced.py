"""Induced-pair embedding along a nested chain ``A_1 ⊇ ... ⊇ A_n``.

Two edge-disjoint graphs ``G`` and ``F`` share a vertex set.  Pattern
edges must land on ``G``-edges and pattern non-edges on ``F``-edges; with
``F`` the complement of ``G`` this is an induced copy.  Pattern vertex
``v_h`` goes into ``A_{n-h+1}``.  Goodness is tracked for pairs
``(U1, U2)``: the images of the earlier ``G``-neighbours and earlier
non-neighbours of a later vertex.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from ..bitset import VertexSet, iter_bits, lowest, mask_of, pack_rows, to_list
from ..config import default_budget
from ..errors import BudgetError, EmbeddingFailure, HypothesisFailure, InternalError, PreconditionError
from ..graph import INDUCED_PAIR, Embedding, Graph, validate_embedding
from .hypergraph import HypothesisReport
from .ledger import GoodnessLedger, NestedFamily, pair_budget


def pair_level_budget(n: int, m: int) -> Fraction:
    return Fraction(2 * n) ** (-2 * n) * comb(m, n) ** 2


def _subset_masks(g: Graph, local: list[int], n: int, within: VertexSet):
    subsets = list(combinations(range(len(local)), n))
    commons = []
    for s in subsets:
        acc = within
        for i in s:
            acc &= g.rows[local[i]]
        commons.append(acc)
    return subsets, commons


def bad_pairs(
    g: Graph,
    f: Graph,
    a_next: VertexSet,
    a_prev: VertexSet,
    n: int,
    m: int,
    *,
    budget: int | None = None,
) -> list[tuple[VertexSet, VertexSet]]:
    """Disjoint pairs ``(S1, S2)`` of ``n``-subsets of ``a_next`` with fewer than ``m``
    vertices of ``a_prev`` adjacent to all of ``S1`` in ``g`` and all of ``S2`` in ``f``."""
    budget = default_budget() if budget is None else budget
    local = to_list(a_next)
    k = comb(len(local), n)
    if k * k > budget:
        raise BudgetError(f"{k}^2 subset pairs exceed the budget {budget}")
    if k == 0:
        return []
    subs, gcom = _subset_masks(g, local, n, a_prev)
    _, fcom = _subset_masks(f, local, n, a_prev)
    gp = pack_rows(gcom, g.n)
    fp = pack_rows(fcom, g.n)
    bits = np.array([sum(1 << i for i in s) for s in subs], dtype=np.int64 if len(local) < 63 else object)
    out = []
    for i, s1 in enumerate(subs):
        cnt = np.bitwise_count(gp[i] & fp).sum(axis=1, dtype=np.int64)
        hit = np.nonzero((cnt < m) & ((bits & bits[i]) == 0))[0]
        if len(hit):
            m1 = mask_of(local[x] for x in s1)
            for j in hit:
                out.append((m1, mask_of(local[x] for x in subs[int(j)])))
    return out


def estimate_bad_pairs(g: Graph, f: Graph, a_next: VertexSet, a_prev: VertexSet, n: int, m: int, *, samples: int = 2000, seed: int = 0):
    """Sampled estimate of the bad-pair count (flagged; never used for certification)."""
    local = to_list(a_next)
    if len(local) < 2 * n:
        return 0.0
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        pick = rng.choice(len(local), size=2 * n, replace=False)
        s1, s2 = pick[:n], pick[n:]
        acc = a_prev
        for i in s1:
            acc &= g.rows[local[int(i)]]
        for i in s2:
            acc &= f.rows[local[int(i)]]
        if acc.bit_count() < m:
            hits += 1
    total = comb(len(local), n) * comb(len(local) - n, n)
    return hits / samples * total


def check_induced_chain(g, f, nested: NestedFamily, n: int, m: int, *, mode="exact", budget=None, seed=0):
    """Per-level bad pair lists (exact) or estimates (sampled); report names the first failing level."""
    limit = pair_level_budget(n, m)
    per_level, counts = [], []
    failing = None
    for i in range(1, n):
        if mode == "exact":
            bp = bad_pairs(g, f, nested[i], nested[i - 1], n, m, budget=budget)
            per_level.append(bp)
            counts.append(len(bp))
            if failing is None and len(bp) >= limit:
                failing = i
        else:
            est = estimate_bad_pairs(g, f, nested[i], nested[i - 1], n, m, seed=seed + i)
            per_level.append(None)
            counts.append(est)
            if failing is None and est >= limit:
                failing = i
    sizes_ok = nested[n - 1].bit_count() >= m >= 2 * n
    if not sizes_ok and failing is None:
        failing = n
    rep = HypothesisReport(failing is None and mode == "exact", counts, limit, sampled=mode != "exact", notes={"failing_level": failing})
    return rep, per_level


def embed_induced(
    h: Graph,
    g: Graph,
    f: Graph,
    nested: NestedFamily,
    m: int,
    *,
    strict: bool = True,
    mode: str = "exact",
    budget: int | None = None,
    seed: int = 0,
) -> Embedding:
    """Map ``h`` so edges go to ``g``-edges and non-edges to ``f``-edges.

    ``mode="sampled"`` estimates the per-level bad pair counts instead of
    enumerating them; such runs are never certified.  With ``strict`` a
    level over budget raises :class:`HypothesisFailure`; otherwise the greedy
    runs best-effort.
    """
    n = h.n
    if g.n != f.n:
        raise PreconditionError("G and F must share the vertex set")
    if any(a & b for a, b in zip(g.rows, f.rows)):
        raise PreconditionError("G and F must be edge-disjoint")
    if len(nested) < n:
        raise PreconditionError(f"need {n} nested levels, got {len(nested)}")
    if n == 0:
        return Embedding((), INDUCED_PAIR)
    rep, per_level = check_induced_chain(g, f, nested, n, m, mode=mode, budget=budget, seed=seed)
    failing = rep.notes["failing_level"]
    if strict and failing is not None:
        raise HypothesisFailure(
            f"nested family fails its pair budget at level {failing}",
            level=failing,
            details={"bad_pairs": rep.measured, "budget": str(rep.bound)},
        )
    certified = rep.holds
    # ledgers[i] handles goodness with respect to level i (1-based), pairs inside A_{i+1}
    ledgers = {i: GoodnessLedger(per_level[i - 1], (n, n), pair_budget(n, m)) for i in range(1, n) if per_level[i - 1] is not None}

    fmap: list[int] = []
    used = 0
    worst = 0
    fallbacks = 0
    for hh in range(1, n + 1):
        v = hh - 1
        target = nested[n - hh]
        earlier = (1 << v) - 1
        back_g = h.rows[v] & earlier
        back_f = earlier & ~back_g
        p = mask_of(fmap[u] for u in iter_bits(back_g))
        q = mask_of(fmap[u] for u in iter_bits(back_f))
        level = n - hh + 1
        if certified and hh > 1 and not ledgers[level].good((p, q)):
            raise InternalError(f"step {hh}: tracked pair lost goodness")
        hard = target & ~used
        for x in iter_bits(p):
            hard &= g.rows[x]
        for x in iter_bits(q):
            hard &= f.rows[x]
        excluded = 0
        for j in range(hh + 1, n + 1):
            w = j - 1
            lv = n - j + 1
            if lv not in ledgers:
                continue
            wg = h.rows[w] & earlier
            pair = (mask_of(fmap[u] for u in iter_bits(wg)), mask_of(fmap[u] for u in iter_bits(earlier & ~wg)))
            comp = 0 if (h.rows[w] >> v) & 1 else 1
            excluded |= ledgers[lv].bad_vertices(pair, comp)
        excluded &= target & ~used
        worst = max(worst, excluded.bit_count())
        if certified and 2 * n * excluded.bit_count() > (n - hh) * m:
            raise InternalError(f"step {hh}: {excluded.bit_count()} excluded vertices exceed (n-h) m / 2n")
        cands = hard & ~excluded
        if not cands:
            if certified:
                raise InternalError(f"step {hh}: no admissible vertex under verified hypotheses")
            cands = hard
            fallbacks += 1
            if not cands:
                raise EmbeddingFailure(f"no admissible host vertex for pattern vertex {v}", details={"step": hh})
        fmap.append(lowest(cands))
        used |= 1 << fmap[-1]

    emb = Embedding(
        tuple(fmap),
        INDUCED_PAIR,
        meta={
            "certified": certified,
            "sampled": rep.sampled,
            "failing_level": failing,
            "bad_pairs": rep.measured,
            "pair_budget": str(rep.bound),
            "max_excluded": worst,
            "fallback_steps": fallbacks,
        },
    )
    if not validate_embedding(h, g, emb, second=f):
        raise InternalError("induced greedy produced an invalid embedding")
    return emb
