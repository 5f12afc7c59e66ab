"""Degenerate and arrangeable bipartite patterns.

The two-sided greedy runs on sets ``A1 ⊆ V1`` and ``A2 ⊆ V2`` in which
fewer than ``(2Δ)^-d C(x, d)`` of the ``d``-subsets of either side have
fewer than ``x`` common neighbours on the other side.  Such a pair is found
by dependent random choice followed by a random ``t``-subset ``S`` of the
chosen set (``A2 = N(S)``), re-drawn until both counts are below budget.
"""

from __future__ import annotations

from fractions import Fraction
from math import ceil, comb, floor
from typing import Sequence

import numpy as np

from ..bitset import VertexSet, iter_bits, lowest, mask_of, to_list
from ..config import DEFAULT_RETRIES
from ..drc import bad_dsets
from ..errors import EmbeddingFailure, HypothesisFailure, InternalError, PreconditionError, SizeError
from ..graph import (
    PART_RESPECTING,
    Embedding,
    Graph,
    common_neighborhood,
    degeneracy_order,
    validate_embedding,
    verify_arrangeable,
)
from ._host import as_bipartite_pattern, equal_part_host, require_cross, require_density
from .hypergraph import HypothesisReport
from .ledger import GoodnessLedger, power_budget


def side_budget(width: int, d: int, x: int) -> Fraction:
    """``width^-d C(x, d)``: allowed number of bad ``d``-sets per side (``width`` = 2Δ or 2^p)."""
    return Fraction(width) ** (-d) * comb(x, d)


def check_pair_hypotheses(g: Graph, a1: VertexSet, a2: VertexSet, d: int, x: int, width: int, n: int, *, budget=None):
    """Count the bad ``d``-sets of both sides; returns (report, [bad1, bad2])."""
    limit = side_budget(width, d, x)
    bad1 = bad_dsets(g, a1, d, x, within=a2, budget=budget)
    bad2 = bad_dsets(g, a2, d, x, within=a1, budget=budget)
    sizes_ok = min(a1.bit_count(), a2.bit_count()) >= x >= 4 * n
    holds = sizes_ok and len(bad1) < limit and len(bad2) < limit
    rep = HypothesisReport(
        holds,
        (len(bad1), len(bad2)),
        limit,
        notes={"sizes": (a1.bit_count(), a2.bit_count()), "x": x, "4n": 4 * n},
    )
    return rep, [bad1, bad2]


def two_sided_greedy(
    pat,
    order: Sequence[int],
    g: Graph,
    sides: tuple[VertexSet, VertexSet],
    bads: list[list[VertexSet]],
    d: int,
    x: int,
    width: int,
    certified: bool,
    rng=None,
) -> Embedding:
    """Goodness-tracking greedy over ``order``; left pattern part goes to ``sides[0]``."""
    ledgers = [GoodnessLedger(b, (d,), power_budget(width, d, x)) for b in bads]
    pos = {v: i for i, v in enumerate(order)}
    side_of = {v: (0 if (pat.left >> v) & 1 else 1) for v in range(pat.n)}
    back = {v: mask_of(w for w in iter_bits(pat.rows[v]) if pos[w] < pos[v]) for v in range(pat.n)}
    for v in range(pat.n):
        if back[v].bit_count() > d:
            raise PreconditionError(f"pattern vertex {v} has {back[v].bit_count()} earlier neighbours, more than {d}")
    f: dict[int, int] = {}
    used = 0
    worst = 0
    fallbacks = 0
    for step, v in enumerate(order):
        i = side_of[v]
        target = sides[i]
        prior = mask_of(f[w] for w in iter_bits(back[v]))
        if certified and not ledgers[1 - i].good(prior):
            raise InternalError(f"step {step}: back-neighbourhood image lost goodness")
        reach = common_neighborhood(g, prior) if prior else g.vertex_mask
        hard = reach & target & ~used
        excluded = 0
        seen = set()
        done = mask_of(order[:step])
        for w in iter_bits(pat.rows[v]):
            if pos[w] <= step:
                continue
            s = mask_of(f[u] for u in iter_bits(back[w] & done))
            if s in seen:
                continue
            seen.add(s)
            excluded |= ledgers[i].bad_vertices(s)
        excluded &= target & ~used
        worst = max(worst, excluded.bit_count())
        if certified and 2 * excluded.bit_count() > x:
            raise InternalError(f"step {step}: {excluded.bit_count()} excluded vertices exceed x/2 = {x / 2}")
        cands = hard & ~excluded
        if certified and 4 * cands.bit_count() <= x:
            raise InternalError(f"step {step}: only {cands.bit_count()} admissible vertices, not above x/4")
        if not cands:
            cands = hard
            fallbacks += 1
            if not cands:
                raise EmbeddingFailure(f"no admissible host vertex for pattern vertex {v}", details={"step": step})
        if rng is None:
            f[v] = lowest(cands)
        else:
            members = to_list(cands)
            f[v] = members[int(rng.integers(len(members)))]
        used |= 1 << f[v]
    return Embedding(
        tuple(f[v] for v in range(pat.n)),
        PART_RESPECTING,
        parts=((pat.left, sides[0]), (pat.right, sides[1])),
        meta={"certified": certified, "max_excluded": worst, "fallback_steps": fallbacks, "x": x},
    )


def embed_degenerate_pair(
    h: Graph,
    g: Graph,
    a1: VertexSet,
    a2: VertexSet,
    x: int,
    *,
    ordering: Sequence[int] | None = None,
    d: int | None = None,
    width: int | None = None,
    budget: int | None = None,
    seed: int | None = None,
) -> Embedding:
    """Embed a degenerate bipartite pattern between ``a1`` and ``a2`` directly.

    The hypotheses are counted first; when they fail the greedy still runs
    in best-effort mode and the returned embedding is flagged uncertified.
    """
    pat = as_bipartite_pattern(h)
    if ordering is None:
        ordering, dd = degeneracy_order(pat)
        d = max(dd, 1) if d is None else d
    d = max(d or 1, 1)
    width = 2 * max(pat.max_degree(), 1) if width is None else width
    if a1 & a2:
        raise PreconditionError("the two host sides must be disjoint")
    rep, bads = check_pair_hypotheses(g, a1, a2, d, x, width, pat.n, budget=budget)
    rng = None if seed is None else np.random.default_rng(seed)
    emb = two_sided_greedy(pat, ordering, g, (a1, a2), bads, d, x, width, rep.holds, rng)
    emb.meta.update({"hypothesis_holds": rep.holds, "bad_counts": rep.measured, "bad_budget": str(rep.bound)})
    if not validate_embedding(pat, g, emb):
        raise InternalError("two-sided greedy produced an invalid embedding")
    return emb


def theorem_x(N: int, epsilon: Fraction, delta: Fraction, d: int, max_degree: int) -> float:
    """``2^-9 eps^((1 + (1 + 1/δ) d)(1 + δ)) Δ^-δ N``."""
    t = (1 + 1 / delta) * d
    return 2.0**-9 * float(epsilon) ** float((1 + t) * (1 + delta)) * max_degree ** -float(delta) * N


def _drc_pair_search(g, host, pat, order, d, width, x, t, rng, retries, budget):
    """Sample T, then S ⊆ N(T), until both sides meet their bad-set budgets."""
    n = pat.n
    v1, v2 = host.v1, host.v2
    v2_list = to_list(v2)
    history = []
    a_prime = 0
    for attempt in range(retries):
        if attempt == 0 or a_prime.bit_count() < 2 * x or attempt % 8 == 0:
            T = [v2_list[int(i)] for i in rng.integers(0, len(v2_list), size=t)]
            a_prime = common_neighborhood(g, mask_of(T)) & v1
        ap = to_list(a_prime)
        if len(ap) < max(2 * x, t):
            history.append({"attempt": attempt, "A_prime": len(ap), "reason": "N(T) too small"})
            continue
        S = mask_of(ap[int(i)] for i in rng.choice(len(ap), size=t, replace=False))
        a2 = common_neighborhood(g, S) & v2
        a1 = a_prime & ~S
        if a2.bit_count() < x:
            history.append({"attempt": attempt, "A2": a2.bit_count(), "reason": "N(S) too small"})
            continue
        rep, bads = check_pair_hypotheses(g, a1, a2, d, x, width, n, budget=budget)
        history.append({"attempt": attempt, "bad": rep.measured, "budget": str(rep.bound)})
        if rep.holds:
            return a1, a2, bads, history
    raise HypothesisFailure(
        f"no admissible (T, S) within {retries} draws",
        details={"x": x, "t": t, "d": d, "history": history[-5:]},
    )


def _embed_via_pairs(pat, order, g, epsilon, delta, d, width, max_degree, seed, x, retries, budget):
    eps = Fraction(epsilon)
    n = pat.n
    require_density(g, eps)
    host = equal_part_host(g, seed)
    require_cross(host, eps)
    t = ceil((1 + 1 / Fraction(delta)) * d)
    x_theory = theorem_x(host.N, eps, Fraction(delta), d, max_degree)
    x_used = floor(x_theory) if x is None else int(x)
    if x_used < 4 * n:
        raise SizeError(
            f"x = {x_used} < 4n = {4 * n} (theorem x = {x_theory:.3g} at N = {host.N})",
            details={"x": x_used, "theorem_x": x_theory, "N": host.N},
        )
    rng = np.random.default_rng(seed)
    a1, a2, bads, history = _drc_pair_search(host.graph, host, pat, order, d, width, x_used, t, rng, retries, budget)
    emb = two_sided_greedy(pat, order, g, (a1, a2), bads, d, x_used, width, True)
    emb.meta.update(
        {"N": host.N, "t": t, "theorem_x": x_theory, "x_override": x is not None, "draws": len(history), "bad_counts": history[-1]["bad"]}
    )
    if not validate_embedding(pat, g, emb):
        raise InternalError("degenerate pipeline produced an invalid embedding")
    return emb


def embed_degenerate(
    h: Graph,
    g: Graph,
    epsilon,
    delta=1,
    seed: int = 0,
    *,
    x: int | None = None,
    retries: int = DEFAULT_RETRIES,
    budget: int | None = None,
) -> Embedding:
    """Embed a ``d``-degenerate bipartite pattern into a dense host.

    ``x`` defaults to the theorem's value, which needs enormous hosts; pass
    an explicit ``x`` (at least ``4n``) to run at desk scale.
    """
    pat = as_bipartite_pattern(h)
    order, d = degeneracy_order(pat)
    d = max(d, 1)
    delta = Fraction(delta)
    n = pat.n
    if not (Fraction(d, n) <= delta <= 1):
        raise PreconditionError(f"need d/n <= delta <= 1, got d={d}, n={n}, delta={delta}")
    dmax = max(pat.max_degree(), 1)
    return _embed_via_pairs(pat, order, g, epsilon, delta, d, 2 * dmax, dmax, seed, x, retries, budget)


def embed_arrangeable(
    h: Graph,
    ordering: Sequence[int],
    p: int,
    g: Graph,
    epsilon,
    seed: int = 0,
    *,
    delta=1,
    x: int | None = None,
    retries: int = DEFAULT_RETRIES,
    budget: int | None = None,
) -> Embedding:
    """``p``-arrangeable variant: ``p``-sets, budget ``2^(-p^2) C(x, p)``."""
    pat = as_bipartite_pattern(h)
    ordering = list(ordering)
    if not verify_arrangeable(pat, ordering, p):
        raise PreconditionError(f"ordering is not {p}-arrangeable")
    # at most 2^(p-1) distinct tracked sets per step play the role of the degree bound
    return _embed_via_pairs(pat, ordering, g, epsilon, Fraction(delta), p, 2**p, 2 ** (p - 1), seed, x, retries, budget)
