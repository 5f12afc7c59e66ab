"""Theorem pipelines assembled from dependent random choice and the embedders."""

from __future__ import annotations

from .coloring import EdgeColoring, is_induced_mono_copy, is_monochromatic_copy
from .drivers import induced_ramsey_driver, mono_embed_2color, multicolor_bipartite_driver
from .erdos_hajnal import (
    BidenseOutcome,
    EHResult,
    bidense_search,
    clique_or_independent_step,
    erdos_hajnal_driver,
    validate_eh,
)
from .pseudorandom import PseudoRandomCertificate, certify_pseudorandom

__all__ = [
    "BidenseOutcome",
    "EHResult",
    "EdgeColoring",
    "PseudoRandomCertificate",
    "bidense_search",
    "certify_pseudorandom",
    "clique_or_independent_step",
    "erdos_hajnal_driver",
    "induced_ramsey_driver",
    "is_induced_mono_copy",
    "is_monochromatic_copy",
    "mono_embed_2color",
    "multicolor_bipartite_driver",
    "validate_eh",
]
