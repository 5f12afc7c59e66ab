"""Greedy embedders driven by goodness ledgers."""

from __future__ import annotations

from .bipartite import embed_bipartite_dense
from .chromatic import embed_chromatic
from .degenerate import embed_arrangeable, embed_degenerate, embed_degenerate_pair
from .hypergraph import count_hypergraph_copies, embed_hypergraph_greedy
from .induced import embed_induced
from .ledger import GoodnessLedger, NestedFamily
from .subdivision import embed_subdivision

__all__ = [
    "GoodnessLedger",
    "NestedFamily",
    "count_hypergraph_copies",
    "embed_arrangeable",
    "embed_bipartite_dense",
    "embed_chromatic",
    "embed_degenerate",
    "embed_degenerate_pair",
    "embed_hypergraph_greedy",
    "embed_induced",
    "embed_subdivision",
]
