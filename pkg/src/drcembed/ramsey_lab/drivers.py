"""Monochromatic embeddings in edge colourings.

* :func:`mono_embed_2color` builds a chain ``A_1 ⊇ A_2 ⊇ ...`` by halving,
  taking the densest colour between the halves and applying dependent
  random choice; the popular colour then feeds :func:`embed_chromatic`.
* :func:`multicolor_bipartite_driver` runs the bipartite embedder on the
  majority colour with ``eps = 1/k``.
* :func:`induced_ramsey_driver` does the same chain construction inside a
  pseudo-random host and finishes with :func:`embed_induced`.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

import numpy as np

from ..bitset import VertexSet, mask_of, to_list
from ..drc import DrcParams, count_bad_dsets, drc_find_witness
from ..errors import (
    BudgetError,
    EmbeddingFailure,
    HypothesisFailure,
    InternalError,
    PreconditionError,
    SizeError,
    WitnessNotFound,
)
from ..graph import BipartiteGraph, Embedding, Graph, balanced_max_cut_partition, common_neighborhood
from ..embedders.bipartite import embed_bipartite_dense
from ..embedders.chromatic import embed_chromatic
from ..embedders.induced import embed_induced
from ..embedders.ledger import NestedFamily
from ..oracles import chromatic_partition
from .coloring import EdgeColoring, densest, is_induced_mono_copy, is_monochromatic_copy
from .pseudorandom import PseudoRandomCertificate, certify_pseudorandom


def _is_complete(g: Graph) -> bool:
    return g.m == g.n * (g.n - 1) // 2


def mono_threshold(n: int, q: int, d: int) -> int:
    """``2^((2d+2)(2q-3)+2) n``."""
    return 2 ** ((2 * d + 2) * (2 * q - 3) + 2) * n


def _trivial_copy(h: Graph, coloring: EdgeColoring) -> tuple[int, Embedding]:
    if coloring.n < h.n:
        raise EmbeddingFailure("host has fewer vertices than the pattern")
    return 0, Embedding(tuple(range(h.n)), meta={"certified": True, "edgeless": True})


def _halves(a: VertexSet, rng: np.random.Generator) -> tuple[VertexSet, VertexSet]:
    members = to_list(a)
    rng.shuffle(members)
    half = len(members) // 2
    return mask_of(members[:half]), mask_of(members[half : 2 * half])


def mono_embed_2color(
    h: Graph,
    coloring: EdgeColoring,
    seed: int = 0,
    *,
    override: bool = False,
    max_trials: int = 64,
    budget: int | None = None,
) -> tuple[int, Embedding]:
    """A validated monochromatic copy of ``h`` in a 2-colouring of ``K_N``.

    Below the size threshold a :class:`SizeError` is raised unless
    ``override`` is set; overridden runs are best-effort, flagged
    uncertified, and either return a validated copy or fail.
    """
    if coloring.k != 2 or not _is_complete(coloring.host):
        raise PreconditionError("mono_embed_2color needs a 2-colouring of a complete graph")
    if h.m == 0:
        return _trivial_copy(h, coloring)
    classes = chromatic_partition(h)
    q = len(classes)
    d = max(h.max_degree(), 2)
    N = coloring.n
    need = mono_threshold(h.n, q, d)
    certified = N >= need
    if not certified and not override:
        raise SizeError(f"N = {N} < 2^((2d+2)(2q-3)+2) n = {need} (q={q}, d={d})", details={"N": N, "required": need})
    x = max(N >> ((2 * d + 2) * (2 * q - 3)), 1)
    shrink = 2 ** (2 * d + 2)
    bad_limit = Fraction(2 * d) ** (-d) * comb(x, d)
    rng = np.random.default_rng(seed)

    chain = [mask_of(range(N))]
    seq: list[int] = []
    bad_counts: list[int | None] = []
    for i in range(1, 2 * q - 2):
        a_i = chain[-1]
        left, right = _halves(a_i, rng)
        if not left:
            raise HypothesisFailure(f"chain level {i}: set of size {a_i.bit_count()} cannot be halved", level=i)
        c = densest(coloring.counts_between(left, right))
        gc = coloring.class_graph(c)
        bip = BipartiteGraph.between(gc, left, right)
        params = DrcParams(a=1, d=d, t=2 * d, x=x, epsilon=Fraction(1, 2))
        seen: dict[VertexSet, int] = {}

        def strong(o, a_i=a_i, gc=gc, seen=seen) -> bool:
            if shrink * o.size < a_i.bit_count():
                return False
            try:
                seen[o.A] = count_bad_dsets(gc, o.A, d, x, within=a_i, budget=budget)
            except BudgetError:
                return False
            return seen[o.A] < bad_limit

        try:
            wit = drc_find_witness(bip, params, max_trials, int(rng.integers(2**31)), budget=budget, accept=strong)
            nxt = wit.A
            bad_counts.append(seen[nxt])
        except (WitnessNotFound, HypothesisFailure) as exc:
            if not override:
                raise HypothesisFailure(f"chain level {i}: {exc}", level=i, details=getattr(exc, "details", {})) from exc
            certified = False
            # best effort: the largest common neighbourhood among fresh samples
            lefts = to_list(left)
            nxt = 0
            for _ in range(max_trials):
                t = mask_of(lefts[int(j)] for j in rng.integers(0, len(lefts), size=2 * d))
                cand = common_neighborhood(gc, t) & right
                if cand.bit_count() > nxt.bit_count():
                    nxt = cand
            bad_counts.append(None)
            if not nxt:
                raise HypothesisFailure(f"chain level {i}: every sampled neighbourhood is empty", level=i) from exc
        if certified:
            assert shrink * nxt.bit_count() >= a_i.bit_count(), "chain level shrank below 2^(-2d-2)"
        chain.append(nxt)
        seq.append(c)

    counts = [seq.count(j) for j in range(2)]
    popular = min(j for j in range(2) if counts[j] >= q - 1)
    levels = [chain[0]] + [chain[j + 1] for j, c in enumerate(seq) if c == popular][: q - 1]
    nested = NestedFamily(levels)
    g = coloring.class_graph(popular)
    emb = embed_chromatic(h, classes, g, nested, x, d, strict=certified, budget=budget)
    emb.meta.update(
        {
            "certified": certified and emb.meta.get("certified", False),
            "chain_sizes": [a.bit_count() for a in chain],
            "chain_colors": seq,
            "chain_bad_counts": bad_counts,
            "x": x,
            "threshold": need,
            "override": not N >= need,
        }
    )
    if not is_monochromatic_copy(h, coloring, emb.mapping, popular):
        raise InternalError("driver produced a copy that is not monochromatic")
    return popular, emb


def multicolor_threshold(n: int, max_degree: int, k: int) -> int:
    """``32 Δ k^Δ n``."""
    return 32 * max_degree * k**max_degree * n


def multicolor_bipartite_driver(
    patterns: Sequence[Graph],
    coloring: EdgeColoring,
    seed: int = 0,
    *,
    max_trials: int = 64,
    budget: int | None = None,
) -> tuple[int, Embedding]:
    """Copy of ``patterns[i]`` in colour ``i``, for the majority colour ``i``."""
    k = coloring.k
    if len(patterns) != k:
        raise PreconditionError(f"need one pattern per colour ({k}), got {len(patterns)}")
    if not _is_complete(coloring.host):
        raise PreconditionError("the multicolour driver needs a colouring of a complete graph")
    dmax = max(max(p.max_degree(), 1) for p in patterns)
    n = max(p.n for p in patterns)
    need = multicolor_threshold(n, dmax, k)
    if coloring.n < need:
        raise SizeError(f"N = {coloring.n} < 32 Δ k^Δ n = {need}", details={"N": coloring.n, "required": need})
    j = densest(coloring.class_sizes())
    emb = embed_bipartite_dense(patterns[j], coloring.class_graph(j), Fraction(1, k), seed, max_trials=max_trials, budget=budget)
    emb.meta["color"] = j
    if not is_monochromatic_copy(patterns[j], coloring, emb.mapping, j):
        raise InternalError("driver produced a copy that is not monochromatic")
    return j, emb


def _split(g: Graph, b: VertexSet, seed: int) -> tuple[VertexSet, VertexSet]:
    """Equipartition of ``b`` with at least the average number of ``g``-edges across."""
    members = to_list(b)
    sub = g.subgraph(members)
    p1, p2 = balanced_max_cut_partition(sub, seed, max_swaps=0)
    m1 = mask_of(members[i] for i in to_list(p1))
    m2 = mask_of(members[i] for i in to_list(p2))
    if m1.bit_count() > m2.bit_count():
        m1 &= ~(1 << max(to_list(m1)))
    return m1, m2


def induced_ramsey_driver(
    h: Graph,
    gamma: Graph,
    coloring: EdgeColoring,
    seed: int = 0,
    *,
    certificate: PseudoRandomCertificate | None = None,
    m: int | None = None,
    t: int | None = None,
    trials: int = 32,
    budget: int | None = None,
) -> tuple[int, Embedding]:
    """Monochromatic induced copy of ``h`` in a colouring of the pseudo-random ``gamma``.

    The chain has at most ``k(n-2)+2`` levels and stops as soon as some
    colour has appeared ``n-1`` times.  Each level halves the current set
    and keeps ``N(T)`` on one side for a random ``t``-multiset ``T`` (``t``
    defaults to ``4n``; toy hosts need a much smaller value).  Pair
    goodness is counted by :func:`embed_induced`; when it fails the greedy
    runs best-effort and the output is still validated.
    """
    if coloring.host is not gamma and coloring.host != gamma:
        raise PreconditionError("the colouring must be of gamma")
    n, k = h.n, coloring.k
    if certificate is None:
        certificate = certify_pseudorandom(gamma, "spectral" if gamma.is_regular() else "sampled", seed=seed)
    if certificate.p > Fraction(1, 2):
        raise PreconditionError(f"need p <= 1/2, certificate has p = {certificate.p}")
    if n <= 1:
        return _trivial_copy(h, coloring)
    t = 4 * n if t is None else t
    m = 2 * n if m is None else m
    rng = np.random.default_rng(seed)
    max_levels = k * (n - 2) + 2
    chain = [gamma.vertex_mask]
    seq: list[int] = []
    while len(chain) < max_levels and max((seq.count(j) for j in range(k)), default=0) < n - 1:
        i = len(chain)
        b = chain[-1]
        c = densest(coloring.counts_within(b))
        gc = coloring.class_graph(c)
        if b.bit_count() < 2:
            raise HypothesisFailure(f"chain level {i}: only {b.bit_count()} vertices left", level=i)
        left, right = _split(gc, b, int(rng.integers(2**31)))
        lefts = to_list(left)
        best = 0
        for _ in range(trials if t else 1):
            tm = mask_of(lefts[int(j)] for j in rng.integers(0, len(lefts), size=t)) if t else 0
            cand = common_neighborhood(gc, tm) & right if tm else right
            if cand.bit_count() > best.bit_count():
                best = cand
        if not best:
            raise HypothesisFailure(f"chain level {i}: every sampled neighbourhood is empty", level=i, details={"size": b.bit_count()})
        chain.append(best)
        seq.append(c)

    counts = [seq.count(j) for j in range(k)]
    popular = min(j for j in range(k) if counts[j] == max(counts))
    if n >= 2 and counts[popular] < n - 1:
        raise InternalError("pigeonhole failed on the colour sequence")
    levels = [chain[0]] + [chain[j + 1] for j, c in enumerate(seq) if c == popular][: n - 1]
    nested = NestedFamily(levels)
    g = coloring.class_graph(popular)
    f = gamma.complement()
    try:
        emb = embed_induced(h, g, f, nested, m, strict=False, mode="exact", budget=budget, seed=seed)
    except BudgetError:
        emb = embed_induced(h, g, f, nested, m, strict=False, mode="sampled", budget=budget, seed=seed)
    emb.meta.update({"chain_sizes": [a.bit_count() for a in chain], "chain_colors": seq, "t": t, "m": m, "certificate_p": str(certificate.p), "lambda": certificate.lam})
    if not is_induced_mono_copy(h, coloring, emb.mapping, popular):
        raise InternalError("driver produced a copy that is not a monochromatic induced copy")
    return popular, emb
