"""Bi-dense pairs, bicliques and cliques.

A bi-dense pair ``(W1, W2)`` has every vertex of ``W1`` adjacent to at
least ``(1 - 2 eps)|W2|`` vertices of ``W2``.  Such a pair comes from sets
``B1, B2`` (possibly overlapping, ``|B2| >= 2z``, ``|B1| >= z``) where
every vertex of ``B1`` sees at least ``(1 - eps)|B2|`` of ``B2``: take
``W1`` to be ``z`` vertices of ``B1`` and ``W2 = B2 \\ W1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..bitset import VertexSet, iter_bits, mask_of, to_list
from ..errors import BudgetError, InternalError, PreconditionError
from ..graph import Graph, common_neighborhood
from ..oracles import is_clique, is_independent, max_clique, max_independent_set

INDEPENDENT = "independent"
BICLIQUE = "biclique"
FAILURE = "failure"


@dataclass
class BidenseOutcome:
    """A validated pair, or a report that none was found within the search budget.

    Absence is relative to the candidates tried; it is not a proof that no
    pair exists.
    """

    w1: VertexSet = 0
    w2: VertexSet = 0
    found: bool = False
    candidates: int = 0
    source: str = ""

    @property
    def pair(self) -> tuple[VertexSet, VertexSet] | None:
        return (self.w1, self.w2) if self.found else None


def is_bidense(g: Graph, w1: VertexSet, w2: VertexSet, z: int, epsilon) -> bool:
    eps = Fraction(epsilon)
    if w1 & w2 or w1.bit_count() < z or w2.bit_count() < z:
        return False
    need = (1 - 2 * eps) * w2.bit_count()
    return all((g.rows[v] & w2).bit_count() >= need for v in iter_bits(w1))


def _extract(g: Graph, b2: VertexSet, z: int, eps: Fraction) -> tuple[VertexSet, VertexSet] | None:
    """``W1, W2`` from a candidate ``B2`` via ``B1`` = vertices seeing ``(1 - eps)`` of ``B2``."""
    size = b2.bit_count()
    if size < 2 * z:
        return None
    need = (1 - eps) * size
    b1 = [v for v in range(g.n) if (g.rows[v] & b2).bit_count() >= need]
    if len(b1) < z:
        return None
    # prefer vertices outside B2 so W2 stays as large as possible
    b1.sort(key=lambda v: ((b2 >> v) & 1, -(g.rows[v] & b2).bit_count(), v))
    w1 = mask_of(b1[:z])
    return w1, b2 & ~w1


def _candidates(g: Graph, z: int, rng: np.random.Generator, rounds: int):
    yield "all", g.vertex_mask
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for v in order:
        yield "neighbourhood", g.rows[v]
    for _ in range(rounds):
        s = mask_of(int(v) for v in rng.choice(g.n, size=min(2, g.n), replace=False))
        yield "common", common_neighborhood(g, s)


def _refine(g: Graph, b2: VertexSet, eps: Fraction, steps: int = 8) -> VertexSet:
    """Alternate ``B1 = {v : deg_B2(v) >= (1-eps)|B2|}`` and ``B2 = {v : deg_B1(v) >= (1-eps)|B1|}``."""
    for _ in range(steps):
        if not b2:
            return 0
        b1 = mask_of(v for v in range(g.n) if (g.rows[v] & b2).bit_count() >= (1 - eps) * b2.bit_count())
        if not b1:
            return 0
        nb2 = mask_of(v for v in range(g.n) if (g.rows[v] & b1).bit_count() >= (1 - eps) * b1.bit_count())
        if nb2 == b2:
            break
        b2 = nb2
    return b2


def bidense_search(g: Graph, z: int, epsilon, *, seed: int = 0, rounds: int = 64, max_candidates: int = 4096) -> BidenseOutcome:
    """Look for a bi-dense pair with both sides of size at least ``z``."""
    eps = Fraction(epsilon)
    if z < 1:
        raise PreconditionError("z must be positive")
    if not 0 < eps < Fraction(1, 2):
        raise PreconditionError("epsilon must lie in (0, 1/2)")
    rng = np.random.default_rng(seed)
    tried = 0
    for source, b2 in _candidates(g, z, rng, rounds):
        if tried >= max_candidates:
            break
        tried += 1
        for cand, tag in ((b2, source), (_refine(g, b2, eps), source + "+refined")):
            got = _extract(g, cand, z, eps)
            if got is not None:
                w1, w2 = got
                if not is_bidense(g, w1, w2, z, eps):
                    raise InternalError("extracted pair is not bi-dense")
                return BidenseOutcome(w1, w2, True, tried, tag)
    got = _greedy_bidense(g, z, eps)
    if got is not None:
        return BidenseOutcome(got[0], got[1], True, tried, "greedy")
    got = _split_bidense(g, z, eps, rng, rounds)
    if got is not None:
        return BidenseOutcome(got[0], got[1], True, tried, "split")
    return BidenseOutcome(found=False, candidates=tried, source="exhausted")


def _prune(g: Graph, w1: VertexSet, w2: VertexSet, z: int, eps: Fraction) -> tuple[VertexSet, VertexSet] | None:
    """Drop failing ``W1`` vertices while ``|W1| > z``, then the ``W2`` vertices they miss most."""
    while w1.bit_count() >= z and w2.bit_count() >= z:
        size2 = w2.bit_count()
        failing = [v for v in iter_bits(w1) if size2 - (g.rows[v] & w2).bit_count() > 2 * eps * size2]
        if not failing:
            return w1, w2
        if w1.bit_count() > z:
            worst = max(failing, key=lambda v: (size2 - (g.rows[v] & w2).bit_count(), v))
            w1 &= ~(1 << worst)
            continue
        fmask = mask_of(failing)
        u = max(iter_bits(w2), key=lambda u: ((fmask & ~g.rows[u]).bit_count(), u))
        w2 &= ~(1 << u)
    return None


def _split_bidense(g: Graph, z: int, eps: Fraction, rng: np.random.Generator, rounds: int) -> tuple[VertexSet, VertexSet] | None:
    """Random halvings of the whole graph and of large neighbourhoods, each pruned to a bi-dense pair."""
    pools = [g.vertex_mask] + [g.rows[v] for v in sorted(range(g.n), key=lambda v: (-g.degree(v), v))[:8]]
    for pool in pools:
        members = to_list(pool)
        if len(members) < 2 * z:
            continue
        for _ in range(max(1, rounds // 8)):
            perm = rng.permutation(members)
            half = len(perm) // 2
            got = _prune(g, mask_of(int(v) for v in perm[:half]), mask_of(int(v) for v in perm[half:]), z, eps)
            if got is not None and is_bidense(g, got[0], got[1], z, eps):
                return got
    return None


def _greedy_bidense(g: Graph, z: int, eps: Fraction) -> tuple[VertexSet, VertexSet] | None:
    """Direct greedy: grow ``W1`` by highest degree into a shrinking ``W2``."""
    for start in sorted(range(g.n), key=lambda v: (-g.degree(v), v))[: max(1, min(g.n, 16))]:
        w1 = 1 << start
        w2 = g.rows[start]
        while w1.bit_count() < z:
            best, best_deg = None, -1
            for v in iter_bits(g.vertex_mask & ~w1 & ~w2):
                dv = (g.rows[v] & w2).bit_count()
                if dv > best_deg:
                    best, best_deg = v, dv
            if best is None:
                break
            w1 |= 1 << best
            # drop W2 vertices missed by too many of W1
            w2 = mask_of(u for u in iter_bits(w2) if (g.rows[u] & w1).bit_count() >= w1.bit_count() - 1)
            if w2.bit_count() < z:
                break
        if is_bidense(g, w1, w2, z, eps):
            return w1, w2
    return None


@dataclass
class EHResult:
    kind: str
    left: VertexSet = 0
    right: VertexSet = 0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.kind != FAILURE


def is_biclique(g: Graph, x: VertexSet, y: VertexSet) -> bool:
    return not x & y and all(g.rows[v] & y == y for v in iter_bits(x))


def validate_eh(g: Graph, res: EHResult, t: int) -> bool:
    if res.kind == INDEPENDENT:
        return res.left.bit_count() == t and is_independent(g, res.left)
    if res.kind == BICLIQUE:
        return res.left.bit_count() == t and res.right.bit_count() == t and is_biclique(g, res.left, res.right)
    return True


def erdos_hajnal_driver(g: Graph, t: int, *, seed: int = 0, budget=None) -> EHResult:
    """An independent ``t``-set or a ``K_{t,t}``; failure is reported, never an invalid object."""
    if t < 1:
        raise PreconditionError("t must be positive")
    details: dict = {}
    try:
        ind = max_independent_set(g, budget=budget)
        details["independence_number"] = ind.bit_count()
        if ind.bit_count() >= t:
            res = EHResult(INDEPENDENT, mask_of(to_list(ind)[:t]), 0, details)
            if not validate_eh(g, res, t):
                raise InternalError("independent set failed validation")
            return res
    except BudgetError as exc:
        details["independent_search"] = f"budget: {exc}"
    eps = Fraction(1, 4 * t)
    out = bidense_search(g, 2 * t, eps, seed=seed)
    details["bidense_candidates"] = out.candidates
    if out.found:
        x = mask_of(to_list(out.w1)[:t])
        common = common_neighborhood(g, x) & out.w2
        if common.bit_count() < t:
            raise InternalError("bi-dense pair left fewer than t common neighbours")
        res = EHResult(BICLIQUE, x, mask_of(to_list(common)[:t]), {**details, "source": out.source})
        if not validate_eh(g, res, t):
            raise InternalError("biclique failed validation")
        return res
    return EHResult(FAILURE, details={**details, "reason": "no independent t-set and no bi-dense pair within budget"})


def clique_or_independent_step(g: Graph, w1: VertexSet, w2: VertexSet, *, budget=None) -> tuple[VertexSet, VertexSet]:
    """Largest clique ``X`` in ``W1``, then largest clique ``Y`` among ``W2``-vertices adjacent to all of ``X``."""
    if w1 & w2:
        raise PreconditionError("W1 and W2 must be disjoint")
    x = max_clique(g, within=w1, budget=budget)
    reach = common_neighborhood(g, x) & w2 if x else w2
    y = max_clique(g, within=reach, budget=budget) if reach else 0
    if not is_clique(g, x | y):
        raise InternalError("X and Y do not span a clique")
    return x, y
