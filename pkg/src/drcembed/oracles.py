"""Brute-force ground truth.

Everything here is exact and exhaustive, guarded by a node budget.  The
embedders never call into this module; tests and the CLI use it to check
them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .bitset import VertexSet, iter_bits, lowest, mask_of
from .config import default_budget
from .errors import BudgetError, PreconditionError
from .graph import INDUCED_PAIR, PART_RESPECTING, Embedding, Graph, degeneracy_order

SUBGRAPH_MODE = "subgraph"
INDUCED_MODE = "induced"


@dataclass
class SearchBudget:
    """Node limit (and optional wall-clock ceiling) for a backtracking search."""

    nodes: int = field(default_factory=default_budget)
    seconds: float | None = None
    used: int = 0
    _start: float = field(default_factory=time.monotonic, repr=False)

    def tick(self, k: int = 1) -> None:
        self.used += k
        if self.used > self.nodes:
            raise BudgetError(f"search exceeded {self.nodes} nodes")
        if self.seconds is not None and (self.used & 1023) == 0 and time.monotonic() - self._start > self.seconds:
            raise BudgetError(f"search exceeded {self.seconds} s")


def _budget(b) -> SearchBudget:
    if b is None:
        return SearchBudget()
    if isinstance(b, SearchBudget):
        return b
    return SearchBudget(nodes=int(b))


# ---------------------------------------------------------------------------
# copy counting


def _is_c4(h: Graph) -> bool:
    if h.n != 4 or h.m != 4 or any(h.degree(v) != 2 for v in range(4)):
        return False
    # 2-regular on 4 vertices with 4 edges is C4 (K3 plus isolated vertex has 3 edges)
    return True


def count_c4_fast(g: Graph) -> int:
    """Labelled 4-cycles: sum over ordered pairs a != c of codeg(a,c) (codeg(a,c) - 1)."""
    a = g.adjacency_matrix().astype(np.float64)
    cod = a @ a
    np.fill_diagonal(cod, 0)
    cod = np.rint(cod).astype(np.int64)
    return int((cod * (cod - 1)).sum())


def count_labeled_copies(h: Graph, g: Graph, mode: str = SUBGRAPH_MODE, *, budget=None, fast: bool = True) -> int:
    """Number of injective maps ``V(h) -> V(g)`` sending edges to edges
    (and, in induced mode, non-edges to non-edges)."""
    if mode not in (SUBGRAPH_MODE, INDUCED_MODE):
        raise PreconditionError(f"unknown counting mode {mode!r}")
    if h.n == 0:
        return 1
    if h.n > g.n:
        return 0
    if fast and mode == SUBGRAPH_MODE and _is_c4(h):
        return count_c4_fast(g)
    bud = _budget(budget)
    order, _ = degeneracy_order(h)
    pos = {v: i for i, v in enumerate(order)}
    back = [[w for w in iter_bits(h.rows[v]) if pos[w] < pos[v]] for v in order]
    nonback = [
        [w for w in order[:i] if not (h.rows[order[i]] >> w) & 1] for i in range(len(order))
    ] if mode == INDUCED_MODE else None
    rows = g.rows
    comp = g.complement().rows if mode == INDUCED_MODE else None
    full = g.vertex_mask
    img = [0] * h.n
    last = h.n - 1

    def rec(i: int, used: VertexSet) -> int:
        bud.tick()
        cands = full & ~used
        for w in back[i]:
            cands &= rows[img[pos[w]]]
        if nonback is not None:
            for w in nonback[i]:
                cands &= comp[img[pos[w]]]
        if i == last:
            return cands.bit_count()
        total = 0
        for x in iter_bits(cands):
            img[i] = x
            total += rec(i + 1, used | (1 << x))
        return total

    return rec(0, 0)


def contains_induced(h: Graph, g: Graph, *, budget=None) -> bool:
    return find_induced(h, g, budget=budget) is not None


def find_induced(h: Graph, g: Graph, *, budget=None) -> tuple[int, ...] | None:
    """An induced copy of ``h`` in ``g`` as a map, or ``None``."""
    if h.n > g.n:
        return None
    if h.n == 0:
        return ()
    bud = _budget(budget)
    order, _ = degeneracy_order(h)
    comp = g.complement().rows
    img: dict[int, int] = {}

    def rec(i: int, used: VertexSet) -> bool:
        bud.tick()
        if i == h.n:
            return True
        v = order[i]
        cands = g.vertex_mask & ~used
        for w in order[:i]:
            cands &= g.rows[img[w]] if (h.rows[v] >> w) & 1 else comp[img[w]]
        for x in iter_bits(cands):
            img[v] = x
            if rec(i + 1, used | (1 << x)):
                return True
        img.pop(v, None)
        return False

    if rec(0, 0):
        return tuple(img[v] for v in range(h.n))
    return None


def canonical_form(h: Graph) -> tuple[int, ...]:
    """Lexicographically smallest sorted edge list over all relabellings (small graphs only)."""
    best = None
    edges = list(h.edges())
    for perm in permutations(range(h.n)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return (h.n, best or ())


def graph_catalog(n: int) -> list[Graph]:
    """One representative of every isomorphism class of ``n``-vertex graphs (``n <= 5``)."""
    if n > 5:
        raise PreconditionError("graph catalog is limited to n <= 5")
    pairs = list(combinations(range(n), 2))
    seen = {}
    for bits in range(1 << len(pairs)):
        g = Graph.from_edges(n, [pairs[i] for i in iter_bits(bits)])
        key = canonical_form(g)
        if key not in seen:
            seen[key] = g
    return list(seen.values())


def universality_check(g: Graph, n: int, *, budget=None) -> bool:
    """True when ``g`` contains every ``n``-vertex graph as an induced subgraph."""
    if n > 5:
        raise PreconditionError("universality check is limited to n <= 5")
    return all(contains_induced(h, g, budget=budget) for h in graph_catalog(n))


# ---------------------------------------------------------------------------
# cliques and colourings


def max_clique(g: Graph, *, within: VertexSet | None = None, budget=None) -> VertexSet:
    """Maximum clique by branch and bound with a greedy-colouring bound."""
    bud = _budget(budget)
    rows = g.rows
    best = 0
    start = g.vertex_mask if within is None else within & g.vertex_mask

    def color_bound(p: VertexSet) -> list[tuple[int, int]]:
        # greedy sequential colouring; returns (vertex, colour) in increasing colour order
        out = []
        color = 0
        rest = p
        while rest:
            color += 1
            q = rest
            while q:
                v = lowest(q)
                q &= ~rows[v] & ~(1 << v)
                rest &= ~(1 << v)
                out.append((v, color))
        return out

    def expand(r: VertexSet, p: VertexSet) -> None:
        nonlocal best
        bud.tick()
        for v, c in reversed(color_bound(p)):
            if r.bit_count() + c <= best.bit_count():
                return
            nr = r | (1 << v)
            np_ = p & rows[v]
            if np_:
                expand(nr, np_)
            elif nr.bit_count() > best.bit_count():
                best = nr
            p &= ~(1 << v)

    if start:
        best = 1 << lowest(start)
        expand(0, start)
    return best


def max_independent_set(g: Graph, *, within: VertexSet | None = None, budget=None) -> VertexSet:
    return max_clique(g.complement(), within=within, budget=budget)


def is_clique(g: Graph, s: VertexSet) -> bool:
    return all((g.rows[v] | (1 << v)) & s == s for v in iter_bits(s))


def is_independent(g: Graph, s: VertexSet) -> bool:
    return all(g.rows[v] & s == 0 for v in iter_bits(s))


def chromatic_partition(h: Graph, *, budget=None) -> list[VertexSet]:
    """A proper colouring with the minimum number of colours (exact; small graphs)."""
    bud = _budget(budget)
    if h.n == 0:
        return []
    order = sorted(range(h.n), key=lambda v: -h.degree(v))
    for q in range(1, h.n + 1):
        color = [-1] * h.n

        def rec(i: int, used: int) -> bool:
            bud.tick()
            if i == h.n:
                return True
            v = order[i]
            forbidden = {color[w] for w in iter_bits(h.rows[v])}
            # symmetry: a fresh colour only as the next unused one
            for c in range(min(used + 1, q)):
                if c in forbidden:
                    continue
                color[v] = c
                if rec(i + 1, max(used, c + 1)):
                    return True
            color[v] = -1
            return False

        if rec(0, 0):
            return [mask_of(v for v in range(h.n) if color[v] == c) for c in range(q)]
    raise AssertionError("unreachable: n colours always suffice")


# ---------------------------------------------------------------------------
# Ramsey search


def _edge_index(n: int) -> dict[tuple[int, int], int]:
    return {e: i for i, e in enumerate(combinations(range(n), 2))}


def copies_in_complete(h: Graph, n: int) -> dict[tuple[VertexSet, int], int]:
    """Copies of ``h`` in ``K_n``: (vertex mask, edge-index mask) -> number of labelled maps onto it."""
    if h.n > n:
        return {}
    idx = _edge_index(n)
    edges = list(h.edges())
    out: dict[tuple[VertexSet, int], int] = {}
    for img in permutations(range(n), h.n):
        em = 0
        for u, v in edges:
            a, b = img[u], img[v]
            em |= 1 << idx[(a, b) if a < b else (b, a)]
        key = (mask_of(img), em)
        out[key] = out.get(key, 0) + 1
    return out


def _avoiding_coloring(h1: Graph, h2: Graph, n: int, bud: SearchBudget) -> list[int] | None:
    """A red/blue colouring of ``K_n`` with no red ``h1`` and no blue ``h2``, or ``None``."""
    e = n * (n - 1) // 2
    c1 = copies_in_complete(h1, n)
    c2 = copies_in_complete(h2, n)
    if any(em == 0 for _, em in c1) or any(em == 0 for _, em in c2):
        return None  # an edgeless pattern is always present once it fits
    if e == 0:
        return []
    by_last = [[[], []] for _ in range(e)]
    for _, em in c1:
        by_last[em.bit_length() - 1][0].append(em)
    for _, em in c2:
        by_last[em.bit_length() - 1][1].append(em)
    same = h1 == h2
    red = 0
    blue = 0
    colors = [0] * e

    def rec(i: int) -> bool:
        nonlocal red, blue
        bud.tick()
        if i == e:
            return True
        choices = (0,) if (same and i == 0) else (0, 1)
        for c in choices:
            bit = 1 << i
            if c == 0:
                red |= bit
                ok = all(em & red != em for em in by_last[i][0])
            else:
                blue |= bit
                ok = all(em & blue != em for em in by_last[i][1])
            if ok:
                colors[i] = c
                if rec(i + 1):
                    return True
            red &= ~bit
            blue &= ~bit
        return False

    return list(colors) if rec(0) else None


def ramsey_exact(h1: Graph, h2: Graph, nmax: int, *, budget=None) -> int | None:
    """Least ``N <= nmax`` such that every 2-colouring of ``K_N`` has a red ``h1`` or a blue ``h2``."""
    if nmax * (nmax - 1) // 2 > 28:
        raise PreconditionError("exhaustive Ramsey search is limited to 28 edges (N <= 8)")
    bud = _budget(budget)
    for n in range(1, nmax + 1):
        if _avoiding_coloring(h1, h2, n, bud) is None:
            return n
    return None


def ramsey_witness(h1: Graph, h2: Graph, n: int, *, budget=None) -> list[int] | None:
    """An avoiding colouring of ``K_n`` (edge order as ``combinations(range(n), 2)``)."""
    return _avoiding_coloring(h1, h2, n, _budget(budget))


def min_mono_copies(h: Graph, n: int, *, budget=None) -> int:
    """Minimum over 2-colourings of ``K_n`` of the number of monochromatic labelled copies of ``h``."""
    e = n * (n - 1) // 2
    if e > 28:
        raise PreconditionError("exhaustive colouring search is limited to 28 edges (N <= 8)")
    bud = _budget(budget)
    copies = copies_in_complete(h, n)
    if not copies:
        return 0
    const = sum(w for (_, em), w in copies.items() if em == 0)
    by_last = [[] for _ in range(e)]
    for (_, em), w in copies.items():
        if em:
            by_last[em.bit_length() - 1].append((em, w))
    best = sum(w for (_, em), w in copies.items() if em)  # all one colour
    red = 0

    def rec(i: int, assigned: int, value: int) -> None:
        nonlocal best, red
        bud.tick()
        if value >= best:
            return
        if i == e:
            best = value
            return
        choices = (0,) if i == 0 else (0, 1)  # colour swap symmetry
        for c in choices:
            bit = 1 << i
            if c == 0:
                red |= bit
            nxt = assigned | bit
            add = 0
            for em, w in by_last[i]:
                r = em & red
                if r == em or r == 0:
                    add += w
            rec(i + 1, nxt, value + add)
            red &= ~bit

    rec(0, 0, 0)
    return best + const


def coloring_has_mono(h: Graph, n: int, colors: Sequence[int]) -> bool:
    """Does this colouring of ``K_n`` (edge order as ``combinations``) contain a monochromatic ``h``?"""
    red = mask_of(i for i, c in enumerate(colors) if c == 0)
    blue = mask_of(i for i, c in enumerate(colors) if c != 0)
    return any(em & red == em or em & blue == em for (_, em) in copies_in_complete(h, n))


# ---------------------------------------------------------------------------
# independent re-check of embedder output


def recheck_embedding(pattern: Graph, host: Graph, f: Embedding, second: Graph | None = None) -> bool:
    """Pairwise re-check on dense adjacency matrices, independent of ``validate_embedding``."""
    mp = list(f.mapping)
    if len(mp) != pattern.n or len(set(mp)) != len(mp):
        return False
    if any(not 0 <= x < host.n for x in mp):
        return False
    pa = pattern.adjacency_matrix()
    ha = host.adjacency_matrix()
    idx = np.array(mp, dtype=np.int64)
    sub = ha[np.ix_(idx, idx)]
    if np.any(pa & ~sub):
        return False
    if f.mode == INDUCED_PAIR:
        oa = (second if second is not None else host.complement()).adjacency_matrix()[np.ix_(idx, idx)]
        off = ~pa
        np.fill_diagonal(off, False)
        if np.any(off & ~oa):
            return False
    if f.mode == PART_RESPECTING:
        for pm, hm in f.parts:
            for v in iter_bits(pm):
                if not (hm >> mp[v]) & 1:
                    return False
    return True
