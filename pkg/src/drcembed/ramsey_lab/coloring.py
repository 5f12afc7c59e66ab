"""Edge colourings of a host graph."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

import numpy as np

from ..bitset import VertexSet, to_list
from ..errors import PreconditionError
from ..graph import Graph


@dataclass
class EdgeColoring:
    """Colour matrix over ``host``: entry ``c`` in ``0..k-1`` on host edges, ``-1`` elsewhere."""

    host: Graph
    k: int
    colors: np.ndarray
    _classes: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.k < 1:
            raise PreconditionError("a colouring needs k >= 1")
        c = np.asarray(self.colors, dtype=np.int16)
        n = self.host.n
        if c.shape != (n, n) or not np.array_equal(c, c.T):
            raise PreconditionError("colour matrix must be symmetric and match the host order")
        adj = self.host.adjacency_matrix()
        if np.any(adj & ((c < 0) | (c >= self.k))):
            raise PreconditionError("every host edge needs a colour in 0..k-1")
        if np.any(~adj & (c != -1)):
            raise PreconditionError("non-edges must carry colour -1")
        self.colors = c

    @property
    def n(self) -> int:
        return self.host.n

    @classmethod
    def from_function(cls, host: Graph, k: int, fn: Callable[[int, int], int]) -> "EdgeColoring":
        c = np.full((host.n, host.n), -1, dtype=np.int16)
        for u, v in host.edges():
            c[u, v] = c[v, u] = fn(u, v)
        return cls(host, k, c)

    @classmethod
    def from_edges(cls, host: Graph, k: int, triples: Iterable[tuple[int, int, int]]) -> "EdgeColoring":
        c = np.full((host.n, host.n), -1, dtype=np.int16)
        for u, v, col in triples:
            c[u, v] = c[v, u] = col
        return cls(host, k, c)

    @classmethod
    def random(cls, host: Graph, k: int, seed: int = 0) -> "EdgeColoring":
        rng = np.random.default_rng(seed)
        n = host.n
        draw = rng.integers(0, k, size=(n, n), dtype=np.int16)
        upper = np.triu(draw, 1)
        c = upper + upper.T
        c[~host.adjacency_matrix()] = -1
        return cls(host, k, c)

    @classmethod
    def random_complete(cls, n: int, k: int, seed: int = 0) -> "EdgeColoring":
        from ..generators import complete

        return cls.random(complete(n), k, seed)

    @classmethod
    def constant(cls, host: Graph, k: int, color: int = 0) -> "EdgeColoring":
        c = np.where(host.adjacency_matrix(), color, -1).astype(np.int16)
        return cls(host, k, c)

    def color(self, u: int, v: int) -> int:
        return int(self.colors[u, v])

    def edges(self) -> Iterator[tuple[int, int, int]]:
        iu, iv = np.nonzero(np.triu(self.colors >= 0, 1))
        for u, v in zip(iu.tolist(), iv.tolist()):
            yield u, v, int(self.colors[u, v])

    def class_graph(self, j: int) -> Graph:
        """Spanning graph of colour ``j``."""
        if j not in self._classes:
            self._classes[j] = Graph.from_adjacency_matrix(self.colors == j)
        return self._classes[j]

    def class_sizes(self) -> list[int]:
        up = self.colors[np.triu_indices(self.n, 1)]
        return np.bincount(up[up >= 0], minlength=self.k).tolist()

    def counts_within(self, a: VertexSet) -> list[int]:
        idx = np.array(to_list(a), dtype=np.int64)
        sub = self.colors[np.ix_(idx, idx)][np.triu_indices(len(idx), 1)]
        return np.bincount(sub[sub >= 0], minlength=self.k).tolist()

    def counts_between(self, a: VertexSet, b: VertexSet) -> list[int]:
        sub = self.colors[np.ix_(to_list(a), to_list(b))].ravel()
        return np.bincount(sub[sub >= 0], minlength=self.k).tolist()


def densest(counts: list[int]) -> int:
    """Index of the largest count; ties go to the lowest index."""
    return max(range(len(counts)), key=lambda j: (counts[j], -j))


def is_monochromatic_copy(h: Graph, coloring: EdgeColoring, mapping, color: int) -> bool:
    """Independent check: every pattern edge lands on a host edge of ``color``."""
    mp = list(mapping)
    if len(mp) != h.n or len(set(mp)) != len(mp):
        return False
    return all(coloring.color(mp[u], mp[v]) == color for u, v in h.edges())


def is_induced_mono_copy(h: Graph, coloring: EdgeColoring, mapping, color: int) -> bool:
    """Pattern edges on ``color`` edges of the host, pattern non-edges on host non-edges."""
    if not is_monochromatic_copy(h, coloring, mapping, color):
        return False
    mp = list(mapping)
    for u in range(h.n):
        for v in range(u + 1, h.n):
            if not (h.rows[u] >> v) & 1 and coloring.host.has_edge(mp[u], mp[v]):
                return False
    return True
