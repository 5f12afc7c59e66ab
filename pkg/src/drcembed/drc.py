"""Dependent random choice on a bipartite host ``(V1, V2)``.

A multiset ``T`` of ``t`` vertices is drawn from ``V1`` uniformly with
repetition and ``A = N(T)`` is taken in ``V2``.  The outcome records how
many ``d``-subsets of ``A`` have fewer than ``x`` common neighbours, and
whether the sample meets the two guarantees

    |A| >= 2^(-1/a) eps^t N
    bad <= 2 eps^(-t a) (x/N)^t (|A|/N)^a C(N, d).

The size guarantee is irrational for ``a > 1``; it is checked exactly as
``2 |A|^a >= (eps^t N)^a``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import comb
from typing import Iterable

import numpy as np

from .bitset import VertexSet, iter_bits, mask_of, pack_rows, to_list
from .config import default_budget
from .errors import BudgetError, HypothesisFailure, PreconditionError, WitnessNotFound
from .graph import BipartiteGraph, Graph, common_neighborhood


@dataclass(frozen=True)
class DrcParams:
    a: int
    d: int
    t: int
    x: int
    epsilon: Fraction

    def __post_init__(self):
        for name in ("a", "d", "t", "x"):
            if getattr(self, name) < 1:
                raise PreconditionError(f"{name} must be a positive integer")
        eps = Fraction(self.epsilon)
        object.__setattr__(self, "epsilon", eps)
        if not 0 < eps <= 1:
            raise PreconditionError("epsilon must lie in (0, 1]")


@dataclass
class DrcOutcome:
    T: tuple[int, ...]
    A: VertexSet
    bad_count: int
    N: int
    params: DrcParams
    trial: int = 0
    method: str = "sampled"
    bad_sets: list[VertexSet] | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return self.A.bit_count()

    @property
    def size_bound(self) -> float:
        p = self.params
        return 2 ** (-1 / p.a) * float(p.epsilon) ** p.t * self.N

    @property
    def size_bound_power(self) -> Fraction:
        """``(eps^t N)^a / 2``; the size guarantee is ``|A|^a >= this``."""
        p = self.params
        return (p.epsilon**p.t * self.N) ** p.a / 2

    @property
    def bad_bound(self) -> Fraction:
        p = self.params
        n = self.N
        return (
            2
            * p.epsilon ** (-p.t * p.a)
            * Fraction(p.x, n) ** p.t
            * Fraction(self.size, n) ** p.a
            * comb(n, p.d)
        )

    @property
    def meets_size_bound(self) -> bool:
        return self.size**self.params.a >= self.size_bound_power

    @property
    def meets_bad_bound(self) -> bool:
        return self.bad_count <= self.bad_bound

    @property
    def is_witness(self) -> bool:
        return self.meets_size_bound and self.meets_bad_bound


@dataclass(frozen=True)
class Estimate:
    """Sampled estimate of a count; never to be mistaken for an exact value."""

    value: float
    samples: int
    population: int
    sampled: bool = True


# ---------------------------------------------------------------------------
# bad-set counting


def _scan_bad_dsets(rows, a_list, d, x, within, n, collect, lo=0, hi=None):
    """Count (and optionally list) d-subsets of ``a_list`` with < x common neighbours.

    Only subsets whose first element has index in ``[lo, hi)`` are visited,
    which is how the work is split across processes.
    """
    k = len(a_list)
    hi = k if hi is None else hi
    found: list[VertexSet] = []
    if d == 0:
        bad = (within.bit_count() < x)
        if collect and bad:
            found.append(0)
        return int(bad), found
    packed = pack_rows([rows[v] & within for v in a_list], n)
    full = np.frombuffer(within.to_bytes(packed.shape[1] * 8, "little"), dtype="<u8").astype(np.uint64)
    total = 0

    def popc(vec) -> int:
        return int(np.bitwise_count(vec).sum())

    def rec(start: int, depth: int, inter: np.ndarray, chosen: list[int]):
        nonlocal total
        remaining_slots = d - depth
        if depth == d - 1:
            tail = packed[start:] & inter
            cnt = np.bitwise_count(tail).sum(axis=1, dtype=np.int64)
            badidx = np.nonzero(cnt < x)[0]
            total += len(badidx)
            if collect:
                base = mask_of(a_list[i] for i in chosen)
                for j in badidx:
                    found.append(base | (1 << a_list[start + int(j)]))
            return
        stop = k - remaining_slots + 1
        if depth == 0:
            stop = min(stop, hi)
            start = max(start, lo)
        for i in range(start, stop):
            nxt = inter & packed[i]
            if popc(nxt) < x:
                rest = k - i - 1
                total += comb(rest, remaining_slots - 1)
                if collect:
                    base = [a_list[j] for j in chosen] + [a_list[i]]
                    for tail in combinations(a_list[i + 1 :], remaining_slots - 1):
                        found.append(mask_of(base) | mask_of(tail))
                continue
            chosen.append(i)
            rec(i + 1, depth + 1, nxt, chosen)
            chosen.pop()

    if d == 1:
        cnt = np.bitwise_count(packed[lo:hi] & full).sum(axis=1, dtype=np.int64)
        badidx = np.nonzero(cnt < x)[0]
        total = len(badidx)
        if collect:
            found = [1 << a_list[lo + int(j)] for j in badidx]
        return total, found
    rec(0, 0, full, [])
    return total, found


def _scan_chunk(args):
    return _scan_bad_dsets(*args)[0]


def count_bad_dsets(
    g: Graph,
    a: VertexSet,
    d: int,
    x: int,
    *,
    within: VertexSet | None = None,
    budget: int | None = None,
    workers: int = 1,
) -> int:
    """Number of ``d``-subsets of ``a`` with fewer than ``x`` common neighbours.

    Common neighbours are counted inside ``within`` (default: every vertex).
    With ``workers > 1`` the subsets are split by their smallest element and
    the partial counts summed; the result does not depend on the split.
    """
    budget = default_budget() if budget is None else budget
    a_list = to_list(a)
    if d > len(a_list):
        return 0
    population = comb(len(a_list), d)
    if population > budget:
        raise BudgetError(f"C({len(a_list)},{d}) = {population} d-sets exceeds the budget {budget}")
    within = g.vertex_mask if within is None else within
    if workers <= 1 or d == 0:
        return _scan_bad_dsets(g.rows, a_list, d, x, within, g.n, False)[0]
    bounds = np.linspace(0, len(a_list), workers + 1).astype(int)
    jobs = [(g.rows, a_list, d, x, within, g.n, False, int(lo), int(hi)) for lo, hi in zip(bounds[:-1], bounds[1:])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_scan_chunk, jobs))


def bad_dsets(
    g: Graph,
    a: VertexSet,
    d: int,
    x: int,
    *,
    within: VertexSet | None = None,
    budget: int | None = None,
) -> list[VertexSet]:
    """The bad ``d``-subsets themselves, as masks (same semantics as :func:`count_bad_dsets`)."""
    budget = default_budget() if budget is None else budget
    a_list = to_list(a)
    if d > len(a_list):
        return []
    population = comb(len(a_list), d)
    if population > budget:
        raise BudgetError(f"C({len(a_list)},{d}) = {population} d-sets exceeds the budget {budget}")
    within = g.vertex_mask if within is None else within
    return _scan_bad_dsets(g.rows, a_list, d, x, within, g.n, True)[1]


def estimate_bad_dsets(
    g: Graph,
    a: VertexSet,
    d: int,
    x: int,
    *,
    samples: int = 10_000,
    seed: int = 0,
    within: VertexSet | None = None,
) -> Estimate:
    a_list = to_list(a)
    population = comb(len(a_list), d)
    if population == 0:
        return Estimate(0.0, 0, 0)
    within = g.vertex_mask if within is None else within
    rng = np.random.default_rng(seed)
    hits = 0
    for _ in range(samples):
        idx = rng.choice(len(a_list), size=d, replace=False)
        acc = within
        for i in idx:
            acc &= g.rows[a_list[int(i)]]
        if acc.bit_count() < x:
            hits += 1
    return Estimate(hits / samples * population, samples, population)


# ---------------------------------------------------------------------------
# sampling


def _host_size(g: BipartiteGraph) -> int:
    if not isinstance(g, BipartiteGraph):
        raise PreconditionError("dependent random choice needs a bipartite host")
    if g.n1 != g.n2:
        raise PreconditionError(f"parts must have equal size, got {g.n1} and {g.n2}")
    return g.n1


def _check_host(g: BipartiteGraph, params: DrcParams) -> int:
    n = _host_size(g)
    if g.m < params.epsilon * n * n:
        raise HypothesisFailure(
            f"host has {g.m} edges, fewer than eps N^2 = {params.epsilon * n * n}",
            details={"edges": g.m, "required": str(params.epsilon * n * n)},
        )
    return n


def drc_expectation_exact(g: BipartiteGraph, t: int) -> Fraction:
    """Exact E|N(T)| = N^-t * sum over v in V2 of deg(v)^t."""
    n = _host_size(g)
    total = sum(g.degree(v) ** t for v in iter_bits(g.right))
    return Fraction(total, n**t)


def _outcome(g, params, support_multiset, n, budget, trial, method, collect=False) -> DrcOutcome:
    support = mask_of(support_multiset)
    a = common_neighborhood(g, support)
    if collect:
        bad = bad_dsets(g, a, params.d, params.x, budget=budget)
        return DrcOutcome(tuple(support_multiset), a, len(bad), n, params, trial, method, bad)
    cnt = count_bad_dsets(g, a, params.d, params.x, budget=budget)
    return DrcOutcome(tuple(support_multiset), a, cnt, n, params, trial, method)


def drc_sample(
    g: BipartiteGraph,
    params: DrcParams,
    seed: int = 0,
    *,
    budget: int | None = None,
    collect: bool = False,
) -> DrcOutcome:
    n = _check_host(g, params)
    rng = np.random.default_rng(seed)
    left = to_list(g.left)
    t = tuple(left[int(i)] for i in rng.integers(0, n, size=params.t))
    return _outcome(g, params, t, n, budget, 0, "sampled", collect)


def drc_find_witness(
    g: BipartiteGraph,
    params: DrcParams,
    max_trials: int = 64,
    seed: int = 0,
    *,
    budget: int | None = None,
    collect: bool = False,
    accept=None,
) -> DrcOutcome:
    """First sample (lowest trial index) meeting both guarantees.

    When sampling fails, every multiset support is tried in lexicographic
    order; the guarantees say at least one works, so exhausting that search
    is reported as :class:`WitnessNotFound`.  ``accept`` adds an extra
    predicate a caller needs on top of the two guarantees.
    """
    budget = default_budget() if budget is None else budget
    n = _check_host(g, params)
    rng = np.random.default_rng(seed)
    left = to_list(g.left)

    def ok(o: DrcOutcome) -> bool:
        return o.is_witness and (accept is None or accept(o))

    for trial in range(max_trials):
        t = tuple(left[int(i)] for i in rng.integers(0, n, size=params.t))
        o = _outcome(g, params, t, n, budget, trial, "sampled", collect)
        if ok(o):
            return o
    space = comb(n + params.t - 1, params.t)
    if space > budget:
        raise WitnessNotFound(
            f"no witness in {max_trials} samples and the exhaustive search ({space} multisets) exceeds the budget",
            details={"trials": max_trials, "multisets": space, "budget": budget},
        )
    seen: set[VertexSet] = set()
    for trial, t in enumerate(combinations_with_replacement(left, params.t), start=max_trials):
        support = mask_of(t)
        if support in seen:
            continue
        seen.add(support)
        o = _outcome(g, params, t, n, budget, trial, "exhaustive", collect)
        if ok(o):
            return o
    raise WitnessNotFound(
        "exhaustive search found no multiset meeting the guarantees",
        details={"trials": max_trials, "multisets": space},
    )


def support_of(outcome: DrcOutcome) -> VertexSet:
    return mask_of(outcome.T)


def iter_multisets(vertices: Iterable[int], t: int):
    return combinations_with_replacement(list(vertices), t)
