"""Host preparation shared by the bipartite pipelines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..bitset import VertexSet, iter_bits
from ..errors import HypothesisFailure, PreconditionError
from ..graph import BipartiteGraph, Graph, balanced_max_cut_partition, cross_edges, edge_density


@dataclass
class BipartiteHost:
    graph: BipartiteGraph
    v1: VertexSet
    v2: VertexSet
    N: int
    cross: int


def as_bipartite_pattern(h: Graph) -> BipartiteGraph:
    """Bipartite view of a pattern; vertices outside both parts join the left part."""
    if isinstance(h, BipartiteGraph):
        stray = h.vertex_mask & ~(h.left | h.right)
        if stray:
            return BipartiteGraph(h.n, h.left | stray, h.right, h.rows, check=False)
        return h
    if h.n < 2:
        raise PreconditionError("pattern needs at least two vertices")
    return BipartiteGraph.from_graph(h)


def equal_part_host(g: Graph, seed: int = 0) -> BipartiteHost:
    """Bipartite host with two parts of equal size ``N``.

    A bipartite input with equal parts is used as is.  Otherwise the host is
    split by :func:`balanced_max_cut_partition`; for an odd vertex count the
    vertex of the larger part with the fewest crossing edges is dropped.
    """
    if isinstance(g, BipartiteGraph) and g.n1 == g.n2:
        v1, v2 = g.left, g.right
    else:
        v1, v2 = balanced_max_cut_partition(g, seed)
        if v1.bit_count() > v2.bit_count():
            drop = min(iter_bits(v1), key=lambda v: ((g.rows[v] & v2).bit_count(), v))
            v1 &= ~(1 << drop)
    bip = BipartiteGraph.between(g, v1, v2)
    return BipartiteHost(bip, v1, v2, v1.bit_count(), cross_edges(g, v1, v2))


def require_density(g: Graph, epsilon: Fraction) -> None:
    if isinstance(g, BipartiteGraph) and g.n1 == g.n2:
        dens = Fraction(g.m, g.n1 * g.n2)
    else:
        dens = edge_density(g)
    if dens < epsilon:
        raise HypothesisFailure(
            f"host density {dens} is below epsilon = {epsilon}",
            details={"density": str(dens), "epsilon": str(epsilon)},
        )


def require_cross(host: BipartiteHost, epsilon: Fraction) -> None:
    need = epsilon * host.N * host.N
    if host.cross < need:
        raise HypothesisFailure(
            f"partition has {host.cross} crossing edges, fewer than eps N^2 = {need}",
            details={"cross": host.cross, "required": str(need)},
        )
