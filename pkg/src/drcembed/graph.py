"""Dense graph types and the neighbourhood/density primitives.

Every graph stores one bit-row per vertex (see :mod:`drcembed.bitset`).
Patterns and hosts use the same types; vertices are always ``0..n-1``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

import numpy as np

from .bitset import VertexSet, full_mask, iter_bits, mask_of, pack_rows
from .errors import DegenerateInputError, InvalidEmbeddingError, PreconditionError


class Graph:
    """Simple undirected graph on ``0..n-1`` with bit-row adjacency."""

    __slots__ = ("n", "rows", "_m")

    def __init__(self, n: int, rows: Sequence[int], *, check: bool = True):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        rows = tuple(int(r) for r in rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        self.n = n
        self.rows = rows
        self._m: int | None = None
        if check:
            self._check()

    def _check(self) -> None:
        allv = full_mask(self.n)
        for v, r in enumerate(self.rows):
            if (r >> v) & 1:
                raise ValueError(f"self-loop at vertex {v}")
            if r & ~allv:
                raise ValueError(f"row {v} references a vertex outside 0..{self.n - 1}")
        if self.n > 256:
            a = self.adjacency_matrix()
            if not np.array_equal(a, a.T):
                raise ValueError("adjacency is not symmetric")
            return
        for u, r in enumerate(self.rows):
            for v in iter_bits(r):
                if not (self.rows[v] >> u) & 1:
                    raise ValueError(f"edge ({u},{v}) is not symmetric")

    # construction -----------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, check=False)

    @classmethod
    def from_adjacency_matrix(cls, a: np.ndarray) -> "Graph":
        a = np.asarray(a, dtype=bool)
        n = a.shape[0]
        if a.shape != (n, n):
            raise ValueError("adjacency matrix must be square")
        if a.diagonal().any():
            raise ValueError("adjacency matrix has self-loops")
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix is not symmetric")
        packed = np.packbits(a, axis=1, bitorder="little")
        rows = [int.from_bytes(packed[v].tobytes(), "little") for v in range(n)]
        return cls(n, rows, check=False)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n, check=False)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        allv = full_mask(n)
        return cls(n, [allv & ~(1 << v) for v in range(n)], check=False)

    # queries ----------------------------------------------------------
    @property
    def vertex_mask(self) -> VertexSet:
        return full_mask(self.n)

    @property
    def m(self) -> int:
        if self._m is None:
            self._m = sum(r.bit_count() for r in self.rows) // 2
        return self._m

    def neighbors(self, v: int) -> VertexSet:
        return self.rows[v]

    def degree(self, v: int) -> int:
        return self.rows[v].bit_count()

    def degrees(self) -> list[int]:
        return [r.bit_count() for r in self.rows]

    def max_degree(self) -> int:
        return max((r.bit_count() for r in self.rows), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.rows[u] >> v) & 1 == 1

    def edges(self) -> Iterator[tuple[int, int]]:
        for u, r in enumerate(self.rows):
            for v in iter_bits(r >> (u + 1)):
                yield u, u + 1 + v

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def complement(self) -> "Graph":
        allv = full_mask(self.n)
        return Graph(self.n, [allv & ~r & ~(1 << v) for v, r in enumerate(self.rows)], check=False)

    def restrict(self, mask: VertexSet) -> "Graph":
        """Keep only edges inside ``mask``; labels are unchanged."""
        return Graph(
            self.n,
            [(r & mask) if (mask >> v) & 1 else 0 for v, r in enumerate(self.rows)],
            check=False,
        )

    def subgraph(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph relabelled to ``0..len(vertices)-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            r = 0
            for w in iter_bits(self.rows[v]):
                i = pos.get(w)
                if i is not None:
                    r |= 1 << i
            rows.append(r)
        return Graph(len(vertices), rows, check=False)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        rows = [0] * self.n
        for u, v in self.edges():
            a, b = perm[u], perm[v]
            rows[a] |= 1 << b
            rows[b] |= 1 << a
        return Graph(self.n, rows, check=False)

    def adjacency_matrix(self) -> np.ndarray:
        if self.n == 0:
            return np.zeros((0, 0), dtype=bool)
        packed = pack_rows(self.rows, self.n)
        bits = np.unpackbits(packed.view(np.uint8), axis=1, bitorder="little")
        return bits[:, : self.n].astype(bool)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.n, self.rows))

    def __repr__(self) -> str:
        return f"{type(self).__name__}(n={self.n}, m={self.m})"


class BipartiteGraph(Graph):
    """Graph whose edges all cross between the vertex sets ``left`` and ``right``.

    Vertices outside ``left | right`` are allowed and must be isolated; this
    lets a bipartite view between two subsets of a host keep host labels.
    """

    __slots__ = ("left", "right")

    def __init__(self, n: int, left: VertexSet, right: VertexSet, rows: Sequence[int], *, check: bool = True):
        super().__init__(n, rows, check=check)
        if left & right:
            raise ValueError("parts overlap")
        if not left or not right:
            raise ValueError("both parts must be nonempty")
        if (left | right) & ~full_mask(n):
            raise ValueError("parts reference vertices outside the graph")
        self.left = left
        self.right = right
        if check:
            for v, r in enumerate(self.rows):
                if not r:
                    continue
                if (left >> v) & 1:
                    ok = r & ~right == 0
                elif (right >> v) & 1:
                    ok = r & ~left == 0
                else:
                    ok = False
                if not ok:
                    raise ValueError(f"vertex {v} has an edge that does not cross the parts")

    @classmethod
    def from_parts(cls, n1: int, n2: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        """Left part ``0..n1-1``, right part ``n1..n1+n2-1``; edges use global labels."""
        g = Graph.from_edges(n1 + n2, edges)
        return cls(n1 + n2, full_mask(n1), full_mask(n1 + n2) & ~full_mask(n1), g.rows)

    @classmethod
    def between(cls, g: Graph, left: VertexSet, right: VertexSet) -> "BipartiteGraph":
        """Edges of ``g`` between two disjoint vertex sets, host labels kept."""
        rows = []
        for v, r in enumerate(g.rows):
            if (left >> v) & 1:
                rows.append(r & right)
            elif (right >> v) & 1:
                rows.append(r & left)
            else:
                rows.append(0)
        return cls(g.n, left, right, rows, check=False)

    @classmethod
    def from_graph(cls, g: Graph) -> "BipartiteGraph":
        """Two-colour ``g`` (BFS, lowest vertex of each component on the left)."""
        side = [-1] * g.n
        for s in range(g.n):
            if side[s] >= 0:
                continue
            side[s] = 0
            stack = [s]
            while stack:
                u = stack.pop()
                for w in iter_bits(g.rows[u]):
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        stack.append(w)
                    elif side[w] == side[u]:
                        raise PreconditionError("graph is not bipartite")
        left = mask_of(v for v in range(g.n) if side[v] == 0)
        right = full_mask(g.n) & ~left
        if not right:
            raise PreconditionError("bipartite graph needs two nonempty parts")
        return cls(g.n, left, right, g.rows, check=False)

    @property
    def n1(self) -> int:
        return self.left.bit_count()

    @property
    def n2(self) -> int:
        return self.right.bit_count()

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(self.n, self.right, self.left, self.rows, check=False)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and super().__eq__(other)
            and self.left == other.left
            and self.right == other.right
        )

    def __hash__(self) -> int:
        return hash((self.n, self.rows, self.left, self.right))

    def __repr__(self) -> str:
        return f"BipartiteGraph(n1={self.n1}, n2={self.n2}, m={self.m})"


@dataclass(frozen=True)
class Hypergraph:
    """Vertex set ``0..n-1`` plus a list of edges (vertex sets as masks)."""

    n: int
    edges: tuple[VertexSet, ...]

    def __post_init__(self):
        allv = full_mask(self.n)
        for e in self.edges:
            if e & ~allv:
                raise ValueError("hyperedge references a vertex outside the vertex set")

    @classmethod
    def from_sets(cls, n: int, edges: Iterable[Iterable[int]]) -> "Hypergraph":
        return cls(n, tuple(mask_of(e) for e in edges))

    @property
    def h(self) -> int:
        """Maximum edge size."""
        return max((e.bit_count() for e in self.edges), default=0)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if (e >> v) & 1)

    @property
    def maxdeg(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def edges_containing(self, v: int) -> list[VertexSet]:
        return [e for e in self.edges if (e >> v) & 1]


SUBGRAPH = "subgraph"
INDUCED_PAIR = "induced-pair"
PART_RESPECTING = "part-respecting"
MODES = (SUBGRAPH, INDUCED_PAIR, PART_RESPECTING)


@dataclass(frozen=True)
class Embedding:
    """Injective map pattern vertex ``i`` -> host vertex ``mapping[i]``.

    ``parts`` lists ``(pattern_mask, host_mask)`` constraints used in
    part-respecting mode: every pattern vertex of the first mask must land
    inside the second.
    """

    mapping: tuple[int, ...]
    mode: str = SUBGRAPH
    parts: tuple[tuple[VertexSet, VertexSet], ...] = ()
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown embedding mode {self.mode!r}")

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)

    def image(self, mask: VertexSet) -> VertexSet:
        return mask_of(self.mapping[v] for v in iter_bits(mask))


# ---------------------------------------------------------------------------
# operations


def common_neighborhood(g: Graph, u: VertexSet, *, part: int = 1) -> VertexSet:
    """Vertices adjacent to every vertex of ``u``.

    The empty set has every vertex as common neighbour; for a bipartite
    graph that means the whole part opposite to ``part`` (the part the
    empty ``u`` is taken from).
    """
    if not u:
        if isinstance(g, BipartiteGraph):
            return g.right if part == 1 else g.left
        return g.vertex_mask
    acc = -1
    rows = g.rows
    for v in iter_bits(u):
        acc &= rows[v]
        if not acc:
            break
    return acc & g.vertex_mask


def edge_density(g: Graph) -> Fraction:
    if g.n < 2:
        raise DegenerateInputError("edge density needs at least two vertices")
    return Fraction(g.m, comb(g.n, 2))


def density_between(g: Graph, a: VertexSet, b: VertexSet) -> Fraction:
    """Fraction of ordered pairs in ``a x b`` that are edges."""
    na, nb = a.bit_count(), b.bit_count()
    if not na or not nb:
        raise DegenerateInputError("density between sets needs two nonempty sets")
    e = sum((g.rows[v] & b).bit_count() for v in iter_bits(a))
    return Fraction(e, na * nb)


def degeneracy_order(h: Graph) -> tuple[list[int], int]:
    """Min-degree peel, reversed; every vertex then has at most ``d`` earlier neighbours."""
    n = h.n
    if n == 0:
        return [], 0
    deg = np.array(h.degrees(), dtype=np.int64)
    big = np.iinfo(np.int64).max
    removed = []
    d = 0
    for _ in range(n):
        v = int(np.argmin(deg))
        d = max(d, int(deg[v]))
        removed.append(v)
        deg[v] = big
        for w in iter_bits(h.rows[v]):
            if deg[w] != big:
                deg[w] -= 1
    removed.reverse()
    return removed, d


def back_degrees(h: Graph, ordering: Sequence[int]) -> list[int]:
    seen = 0
    out = []
    for v in ordering:
        out.append((h.rows[v] & seen).bit_count())
        seen |= 1 << v
    return out


def verify_arrangeable(h: Graph, ordering: Sequence[int], p: int) -> bool:
    if sorted(ordering) != list(range(h.n)):
        raise PreconditionError("ordering is not a permutation of the vertices")
    pos = [0] * h.n
    for i, v in enumerate(ordering):
        pos[v] = i
    prefix = 0
    for i, v in enumerate(ordering):
        prefix |= 1 << v
        union = 0
        for w in iter_bits(h.rows[v]):
            if pos[w] > i:
                union |= h.rows[w] & prefix
        if union.bit_count() > p:
            return False
    return True


def _check_total_injective(pattern: Graph, host: Graph, f: Embedding) -> None:
    if len(f.mapping) != pattern.n:
        raise InvalidEmbeddingError(f"map covers {len(f.mapping)} of {pattern.n} pattern vertices")
    for x in f.mapping:
        if not 0 <= x < host.n:
            raise InvalidEmbeddingError(f"host vertex {x} out of range")
    if len(set(f.mapping)) != len(f.mapping):
        raise InvalidEmbeddingError("map is not injective")


def validate_embedding(pattern: Graph, host: Graph, f: Embedding, second: Graph | None = None) -> bool:
    """Check ``f`` against its mode contract.

    Induced-pair mode needs ``second`` (the graph that must carry the images
    of pattern non-edges); when omitted the complement of ``host`` is used,
    which makes the check an ordinary induced-subgraph test.
    """
    _check_total_injective(pattern, host, f)
    mp = f.mapping
    for u, v in pattern.edges():
        if not host.has_edge(mp[u], mp[v]):
            return False
    if f.mode == INDUCED_PAIR:
        other = second if second is not None else host.complement()
        if other.n != host.n:
            raise PreconditionError("second graph must share the host vertex set")
        for u, v in combinations(range(pattern.n), 2):
            if not pattern.has_edge(u, v) and not other.has_edge(mp[u], mp[v]):
                return False
    if f.mode == PART_RESPECTING:
        for pmask, hmask in f.parts:
            if f.image(pmask) & ~hmask:
                return False
    return True


def partition_cut_bound(g: Graph) -> int:
    """Cross-edge count every returned equipartition must reach."""
    if g.n < 2:
        raise DegenerateInputError("partition needs at least two vertices")
    half = g.n // 2
    num = g.m * half * half
    den = comb(g.n, 2)
    return -(-num // den)


def cross_edges(g: Graph, a: VertexSet, b: VertexSet) -> int:
    return sum((g.rows[v] & b).bit_count() for v in iter_bits(a))


def balanced_max_cut_partition(g: Graph, seed: int = 0, *, max_swaps: int | None = None) -> tuple[VertexSet, VertexSet]:
    """Equipartition with at least the average number of crossing edges.

    Vertices are placed in a seeded random order by the method of
    conditional expectations (exact rationals), which guarantees the
    average over all equipartitions; a bounded swap hill-climb then only
    increases the cut.  For odd ``n`` the first part is one larger.
    """
    n = g.n
    if n < 2:
        raise DegenerateInputError("partition needs at least two vertices")
    rng = random.Random(seed)
    order = list(range(n))
    rng.shuffle(order)
    rows = g.rows
    r1, r2 = (n + 1) // 2, n // 2
    p1 = p2 = 0
    unassigned = full_mask(n)
    known = e1u = e2u = 0
    euu = g.m

    def cond(known, e1u, e2u, euu, r1, r2):
        rr = r1 + r2
        val = Fraction(known)
        if rr:
            val += Fraction(e1u * r2 + e2u * r1, rr)
        if rr > 1:
            val += Fraction(2 * euu * r1 * r2, rr * (rr - 1))
        return val

    for v in order:
        unassigned &= ~(1 << v)
        row = rows[v]
        a1 = (row & p1).bit_count()
        a2 = (row & p2).bit_count()
        au = (row & unassigned).bit_count()
        options = []
        if r1 > 0:
            options.append((cond(known + a2, e1u - a1 + au, e2u - a2, euu - au, r1 - 1, r2), 1))
        if r2 > 0:
            options.append((cond(known + a1, e1u - a1, e2u - a2 + au, euu - au, r1, r2 - 1), 2))
        best = max(options, key=lambda t: t[0])[1]
        if best == 1:
            p1 |= 1 << v
            known, e1u, e2u, euu, r1 = known + a2, e1u - a1 + au, e2u - a2, euu - au, r1 - 1
        else:
            p2 |= 1 << v
            known, e1u, e2u, euu, r2 = known + a1, e1u - a1, e2u - a2 + au, euu - au, r2 - 1

    p1, p2 = _swap_climb(g, p1, p2, n if max_swaps is None else max_swaps)
    assert cross_edges(g, p1, p2) >= partition_cut_bound(g)
    return p1, p2


def _swap_climb(g: Graph, p1: VertexSet, p2: VertexSet, max_swaps: int, top: int = 6):
    if max_swaps <= 0 or g.m == 0:
        return p1, p2
    a = g.adjacency_matrix().astype(np.int64)
    side = np.zeros(g.n, dtype=np.int64)
    for v in iter_bits(p2):
        side[v] = 1
    same = np.where(side[None, :] == side[:, None], a, 0).sum(axis=1)
    cross = a.sum(axis=1) - same
    gain = same - cross
    for _ in range(max_swaps):
        g1 = np.where(side == 0, gain, np.iinfo(np.int64).min)
        g2 = np.where(side == 1, gain, np.iinfo(np.int64).min)
        c1 = np.argsort(-g1, kind="stable")[:top]
        c2 = np.argsort(-g2, kind="stable")[:top]
        best, pair = 0, None
        for u in c1:
            if side[u] != 0:
                continue
            for w in c2:
                if side[w] != 1:
                    continue
                val = gain[u] + gain[w] + 2 * a[u, w]
                if val > best:
                    best, pair = val, (int(u), int(w))
        if pair is None:
            break
        for x in pair:
            old = side[x]
            # neighbours on the old side lose a same-side neighbour, the others gain one
            gain += np.where(side == old, -2, 2) * a[x]
            side[x] = 1 - old
            same_x = int(a[x][side == side[x]].sum())
            gain[x] = same_x - (int(a[x].sum()) - same_x)
    p1 = mask_of(int(v) for v in np.nonzero(side == 0)[0])
    p2 = mask_of(int(v) for v in np.nonzero(side == 1)[0])
    return p1, p2
