"""Dense-host embedding algorithms built on dependent random choice."""

from .graph import BipartiteGraph, Embedding, Graph, Hypergraph

__all__ = ["BipartiteGraph", "Embedding", "Graph", "Hypergraph"]
__version__ = "0.1.0"
