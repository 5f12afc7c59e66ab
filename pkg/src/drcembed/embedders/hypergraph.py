"""Greedy embedding of a sparse hypergraph into a very dense down-closed one.

The host hypergraph ``F`` lives on a vertex set ``A`` and is never
materialised: a set is an edge of ``F`` when it is contained in some nice
``h``-subset of ``A``.  Callers pass the non-nice ``h``-sets (``bad``);
everything else is derived from them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

import numpy as np

from ..bitset import VertexSet, iter_bits, lowest, mask_of, to_list
from ..config import default_budget
from ..errors import BudgetError, EmbeddingFailure, InternalError, PreconditionError
from ..graph import SUBGRAPH, Embedding, Hypergraph
from .ledger import GoodnessLedger, power_budget


@dataclass
class HypothesisReport:
    """Outcome of a verified hypothesis: the measured quantity against its bound."""

    holds: bool
    measured: object
    bound: object
    sampled: bool = False
    notes: dict = field(default_factory=dict)


class DownClosedHost:
    """``F[A]``: subsets of ``A`` contained in a nice ``h``-subset of ``A``."""

    def __init__(self, a: VertexSet, h: int, bad: Iterable[VertexSet]):
        self.a = a
        self.h = h
        self.size = a.bit_count()
        self.bad = list(bad)
        for b in self.bad:
            if b & ~a or b.bit_count() != h:
                raise PreconditionError("bad sets must be h-subsets of the host vertex set")
        # a set is an F-edge iff fewer bad h-supersets than h-supersets in A
        self.members = GoodnessLedger(self.bad, (h,), lambda s: Fraction(comb(self.size - s[0], h - s[0])))

    def is_edge(self, s: VertexSet) -> bool:
        if s & ~self.a or s.bit_count() > self.h:
            return False
        return self.members.good(s)

    def is_edge_slow(self, s: VertexSet) -> bool:
        """Direct recount, independent of the ledger arrays."""
        if s & ~self.a or s.bit_count() > self.h:
            return False
        k = s.bit_count()
        hits = sum(1 for b in self.bad if b & s == s)
        return hits < comb(self.size - k, self.h - k)

    def extenders(self, s: VertexSet) -> VertexSet:
        """All ``j`` in ``A`` outside ``s`` with ``s + j`` an F-edge (``s`` itself an F-edge)."""
        if s.bit_count() >= self.h:
            return 0
        return self.a & ~s & ~self.members.bad_vertices(s)


def greedy_hypothesis(host: DownClosedHost, d: int) -> HypothesisReport:
    """More than ``(1 - (4d)^-h) C(N, h)`` nice h-sets and ``N >= 4n`` (size checked by caller)."""
    bound = Fraction(4 * d) ** (-host.h) * comb(host.size, host.h)
    return HypothesisReport(len(host.bad) < bound, len(host.bad), bound)


def _edge_prefixes(hyp: Hypergraph, order: list[int]):
    """For each step ``i``, the distinct ``e ∩ L_{i-1}`` for edges ``e`` containing ``order[i]``,
    and the edges that become complete at step ``i``."""
    pos = {v: i for i, v in enumerate(order)}
    tracked, completed = [], []
    for i, v in enumerate(order):
        prev = mask_of(order[:i])
        sets, done = [], []
        for e in hyp.edges:
            if (e >> v) & 1:
                s = e & prev
                if s not in sets:
                    sets.append(s)
                if max(pos[u] for u in iter_bits(e)) == i:
                    done.append(e & ~(1 << v))
        tracked.append(sets)
        completed.append(done)
    return tracked, completed


def _choose(cands: VertexSet, rng) -> int:
    if rng is None:
        return lowest(cands)
    members = to_list(cands)
    return members[int(rng.integers(len(members)))]


def embed_hypergraph_greedy(
    hyp: Hypergraph,
    host_a: VertexSet,
    bad: Iterable[VertexSet] = (),
    *,
    h: int | None = None,
    d: int | None = None,
    nice: Callable[[VertexSet], bool] | None = None,
    count_mode: bool = False,
    seed: int | None = None,
    budget: int | None = None,
):
    """Embed ``hyp`` into the down-closed hypergraph defined by ``bad`` on ``host_a``.

    ``bad`` lists the non-nice ``h``-subsets of ``host_a``; alternatively a
    ``nice`` predicate is evaluated on every ``h``-subset (small hosts).
    Returns an :class:`Embedding` (pattern vertex ``i`` to host vertex), or
    with ``count_mode`` the exact number of labelled copies of ``hyp`` in
    ``F``.  A seed switches tie-breaking from lowest index to a seeded
    uniform choice.
    """
    h = max(hyp.h, 1) if h is None else h
    d = max(hyp.maxdeg, 1) if d is None else d
    if h < 1:
        raise PreconditionError("edge size bound h must be positive")
    if hyp.h > h:
        raise PreconditionError(f"pattern has an edge of size {hyp.h} > h = {h}")
    budget = default_budget() if budget is None else budget
    if nice is not None:
        from itertools import combinations

        members = to_list(host_a)
        if comb(len(members), h) > budget:
            raise BudgetError("too many h-sets to evaluate the niceness predicate")
        bad = [mask_of(c) for c in combinations(members, h) if not nice(mask_of(c))]
    host = DownClosedHost(host_a, h, bad)
    if count_mode:
        return count_hypergraph_copies(hyp, host, budget=budget)

    n_pat = hyp.n
    size = host.size
    report = greedy_hypothesis(host, d)
    size_ok = size >= 4 * n_pat
    certified = report.holds and size_ok
    ledger = GoodnessLedger(host.bad, (h,), power_budget(4 * d, h, size))
    order = list(range(n_pat))
    tracked, completed = _edge_prefixes(hyp, order)
    rng = None if seed is None else np.random.default_rng(seed)

    f: dict[int, int] = {}
    used = 0
    worst_excluded = 0
    fallbacks = 0
    for i, v in enumerate(order):
        excluded = 0
        for s in tracked[i]:
            img = mask_of(f[u] for u in iter_bits(s))
            if certified and not ledger.good(img):
                raise InternalError("tracked set lost goodness under verified hypotheses")
            excluded |= ledger.bad_vertices(img)
        excluded &= host_a & ~used
        worst_excluded = max(worst_excluded, excluded.bit_count())
        if certified and 4 * excluded.bit_count() > size:
            raise InternalError(f"step {i}: {excluded.bit_count()} bad vertices exceed N/4 = {size / 4}")
        hard = host_a & ~used
        for rest in completed[i]:
            img = mask_of(f[u] for u in iter_bits(rest))
            hard &= host.extenders(img) if host.is_edge(img) else 0
        cands = hard & ~excluded
        if not cands:
            if certified:
                raise InternalError(f"step {i}: no admissible vertex under verified hypotheses")
            # best effort: any vertex keeping every partial edge image inside F
            # (necessary for completion, since F is down-closed)
            cands = hard
            for s in tracked[i]:
                img = mask_of(f[u] for u in iter_bits(s))
                cands &= host.extenders(img) if host.is_edge(img) else 0
            fallbacks += 1
            if not cands:
                raise EmbeddingFailure(
                    f"no admissible host vertex for pattern vertex {v}",
                    details={"step": i, "hypothesis": report.holds, "size_ok": size_ok},
                )
        x = _choose(cands, rng)
        f[v] = x
        used |= 1 << x

    emb = Embedding(
        tuple(f[v] for v in range(n_pat)),
        SUBGRAPH,
        meta={
            "hypothesis_holds": report.holds,
            "size_ok": size_ok,
            "bad_sets": report.measured,
            "bad_bound": str(report.bound),
            "max_excluded": worst_excluded,
            "fallback_steps": fallbacks,
        },
    )
    if not validate_hypergraph_embedding(hyp, host, emb):
        raise InternalError("hypergraph greedy produced an invalid embedding")
    return emb


def validate_hypergraph_embedding(hyp: Hypergraph, host: DownClosedHost, f: Embedding) -> bool:
    mp = f.mapping
    if len(mp) != hyp.n or len(set(mp)) != hyp.n:
        return False
    if any(not (host.a >> x) & 1 for x in mp):
        return False
    return all(host.is_edge_slow(mask_of(mp[u] for u in iter_bits(e))) for e in hyp.edges)


def count_hypergraph_copies(hyp: Hypergraph, host: DownClosedHost, *, budget: int | None = None) -> int:
    """Exact number of injective maps sending every edge of ``hyp`` to an F-edge."""
    budget = default_budget() if budget is None else budget
    order = list(range(hyp.n))
    _, completed = _edge_prefixes(hyp, order)
    if hyp.n == 0:
        return 1
    f = [0] * hyp.n
    nodes = 0
    ext_cache: dict[VertexSet, VertexSet] = {}

    def allowed(rest: VertexSet) -> VertexSet:
        img = mask_of(f[u] for u in iter_bits(rest))
        hit = ext_cache.get(img)
        if hit is None:
            hit = host.extenders(img) if host.is_edge(img) else 0
            ext_cache[img] = hit
        return hit

    def rec(i: int, used: VertexSet) -> int:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise BudgetError(f"copy count exceeded {budget} search nodes")
        cands = host.a & ~used
        for rest in completed[i]:
            cands &= allowed(rest)
            if not cands:
                return 0
        if i == hyp.n - 1:
            return cands.bit_count()
        total = 0
        for x in iter_bits(cands):
            f[i] = x
            total += rec(i + 1, used | (1 << x))
        return total

    return rec(0, 0)
