"""Named graph families and seeded random constructors.

Randomness always comes from ``numpy.random.default_rng(seed)`` and
probabilities are rationals drawn as integers, so a fixed seed gives a
bit-identical graph on every platform.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .bitset import full_mask, iter_bits, mask_of
from .errors import ConstructionError, PreconditionError, UnsupportedFieldError
from .graph import BipartiteGraph, Graph, degeneracy_order

MAX_HYPERCUBE_DIM = 20


def _as_fraction(p) -> Fraction:
    p = Fraction(p).limit_denominator(10**9) if isinstance(p, float) else Fraction(p)
    if not 0 <= p <= 1:
        raise PreconditionError(f"probability {p} outside [0, 1]")
    return p


def _bernoulli(rng: np.random.Generator, p: Fraction, shape) -> np.ndarray:
    if p == 0:
        return np.zeros(shape, dtype=bool)
    if p == 1:
        return np.ones(shape, dtype=bool)
    return rng.integers(0, p.denominator, size=shape, dtype=np.int64) < p.numerator


def hypercube(d: int) -> Graph:
    if not 1 <= d <= MAX_HYPERCUBE_DIM:
        raise PreconditionError(f"hypercube dimension must be in 1..{MAX_HYPERCUBE_DIM}")
    n = 1 << d
    rows = []
    for v in range(n):
        r = 0
        for i in range(d):
            r |= 1 << (v ^ (1 << i))
        rows.append(r)
    return Graph(n, rows, check=False)


def complete(n: int) -> Graph:
    return Graph.complete(n)


def empty(n: int) -> Graph:
    return Graph.empty(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges)."""
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def perfect_matching(n: int) -> Graph:
    if n % 2:
        raise PreconditionError("perfect matching needs an even vertex count")
    return Graph.from_edges(n, [(2 * i, 2 * i + 1) for i in range(n // 2)])


def complete_bipartite(a: int, b: int) -> BipartiteGraph:
    return BipartiteGraph.from_parts(a, b, [(i, a + j) for i in range(a) for j in range(b)])


def disjoint_union(*graphs: Graph) -> Graph:
    rows, off = [], 0
    for g in graphs:
        rows.extend(r << off for r in g.rows)
        off += g.n
    return Graph(off, rows, check=False)


def one_subdivision(h: Graph) -> BipartiteGraph:
    """Replace every edge by a path of length two.

    Left part is ``V(H)`` (labels kept), right part holds one vertex per
    edge, ``n + i`` for the ``i``-th edge in :meth:`Graph.edges` order.
    """
    if any(r == 0 for r in h.rows):
        raise PreconditionError("H has an isolated vertex")
    edges = list(h.edges())
    pairs = []
    for i, (u, v) in enumerate(edges):
        pairs.append((u, h.n + i))
        pairs.append((v, h.n + i))
    return BipartiteGraph.from_parts(h.n, len(edges), pairs)


def random_graph(n: int, p, seed: int = 0) -> Graph:
    """G(n, p): each pair independently an edge with probability ``p``."""
    p = _as_fraction(p)
    rng = np.random.default_rng(seed)
    a = np.zeros((n, n), dtype=bool)
    iu = np.triu_indices(n, k=1)
    a[iu] = _bernoulli(rng, p, len(iu[0]))
    a |= a.T
    return Graph.from_adjacency_matrix(a)


def random_bipartite(n1: int, p, seed: int = 0, n2: int | None = None) -> BipartiteGraph:
    """Random bipartite graph with parts ``0..n1-1`` and ``n1..n1+n2-1``."""
    p = _as_fraction(p)
    n2 = n1 if n2 is None else n2
    rng = np.random.default_rng(seed)
    bi = _bernoulli(rng, p, (n1, n2))
    n = n1 + n2
    a = np.zeros((n, n), dtype=bool)
    a[:n1, n1:] = bi
    a |= a.T
    g = Graph.from_adjacency_matrix(a)
    return BipartiteGraph(n, full_mask(n1), full_mask(n) & ~full_mask(n1), g.rows, check=False)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def paley(q: int) -> Graph:
    """Paley graph over the prime field GF(q), ``q = 1 (mod 4)``."""
    if not _is_prime(q) or q % 4 != 1:
        raise UnsupportedFieldError(f"Paley graphs are built only for primes q = 1 mod 4, got {q}")
    squares = mask_of({(x * x) % q for x in range(1, q)})
    rows = []
    full = full_mask(q)
    for v in range(q):
        # neighbours of v are v + s for nonzero squares s (rotate the square mask by v)
        r = ((squares << v) | (squares >> (q - v))) & full
        rows.append(r)
    return Graph(q, rows, check=False)


def random_d_degenerate(n: int, d: int, max_degree: int | None = None, seed: int = 0) -> Graph:
    """Each vertex ``i`` joins ``min(d, i)`` uniformly random earlier vertices.

    With ``max_degree`` only earlier vertices below the cap are eligible and
    the new vertex's back-degree must also respect it; if too few remain a
    :class:`ConstructionError` is raised.
    """
    if not 1 <= d < n:
        raise PreconditionError("need 1 <= d < n")
    if max_degree is not None and max_degree < 1:
        raise ConstructionError("degree cap must be positive")
    rng = np.random.default_rng(seed)
    deg = [0] * n
    edges = []
    for i in range(1, n):
        want = min(d, i)
        if max_degree is not None:
            want = min(want, max_degree)
            pool = [j for j in range(i) if deg[j] < max_degree]
        else:
            pool = list(range(i))
        if len(pool) < want:
            raise ConstructionError(f"vertex {i}: only {len(pool)} earlier vertices below the degree cap")
        chosen = rng.choice(len(pool), size=want, replace=False)
        for c in sorted(int(c) for c in chosen):
            j = pool[c]
            edges.append((j, i))
            deg[j] += 1
            deg[i] += 1
    g = Graph.from_edges(n, edges)
    _, dd = degeneracy_order(g)
    assert dd <= d
    return g


def random_bipartite_degenerate(n1: int, n2: int, d: int, max_degree: int | None = None, seed: int = 0) -> BipartiteGraph:
    """Bipartite pattern in which every vertex has at most ``d`` earlier neighbours.

    Vertices are visited in an interleaved order; each picks up to ``d``
    earlier vertices of the opposite part (below the degree cap).
    """
    rng = np.random.default_rng(seed)
    n = n1 + n2
    order = list(rng.permutation(n))
    side = [0 if v < n1 else 1 for v in range(n)]
    deg = [0] * n
    edges = []
    seen: list[int] = []
    for v in order:
        v = int(v)
        pool = [u for u in seen if side[u] != side[v] and (max_degree is None or deg[u] < max_degree)]
        want = min(d, len(pool))
        if max_degree is not None:
            want = min(want, max_degree)
        if want:
            for c in sorted(int(c) for c in rng.choice(len(pool), size=want, replace=False)):
                u = pool[c]
                edges.append((u, v))
                deg[u] += 1
                deg[v] += 1
        seen.append(v)
    return BipartiteGraph.from_parts(n1, n2, edges)


def named_graph(spec: str) -> Graph:
    """Small named patterns used by the CLI: ``k3``, ``c5``, ``p4``, ``q3``, ``k2,3`` ..."""
    s = spec.strip().lower()
    if "," in s and s.startswith("k"):
        a, b = s[1:].split(",")
        return complete_bipartite(int(a), int(b))
    kind, num = s[0], s[1:]
    if not num.isdigit():
        raise PreconditionError(f"unknown named graph {spec!r}")
    k = int(num)
    if kind == "k":
        return complete(k)
    if kind == "c":
        return cycle(k)
    if kind == "p":
        return path(k)
    if kind == "q":
        return hypercube(k)
    if kind == "e":
        return empty(k)
    if kind == "s":
        return star(k)
    raise PreconditionError(f"unknown named graph {spec!r}")


def all_graphs(n: int):
    """Every labelled graph on ``n`` vertices (``2^C(n,2)`` of them)."""
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, [pairs[i] for i in iter_bits(bits)])
