"""Pseudo-randomness certificates.

A graph is ``(p, λ)``-pseudo-random when every pair of vertex sets has
``|d(A,B) - p| <= λ / sqrt(|A||B|)``, with ``d(A,B)`` the fraction of
ordered pairs in ``A x B`` that are edges.  For a ``D``-regular graph the
expander mixing inequality gives this with ``λ`` the second-largest
adjacency eigenvalue in absolute value.  With ``p = D/(N-1)`` the bound
still holds provided ``λ >= p``: the shift from ``D/N`` contributes
``p sqrt(αβ)`` against ``λ sqrt((1-α)(1-β))`` from the eigenvalue term
(``α = |A|/N``, ``β = |B|/N``), and the two sum to at most ``λ`` by
Cauchy-Schwarz.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np

from ..bitset import VertexSet, iter_bits, mask_of
from ..errors import DegenerateInputError, PreconditionError
from ..graph import Graph

SPECTRAL = "spectral"
SAMPLED = "sampled"
DENSE_EIG_LIMIT = 2000


@dataclass
class PseudoRandomCertificate:
    p: Fraction
    lam: float
    method: str
    evidence: dict = field(default_factory=dict)

    @property
    def sampled(self) -> bool:
        return self.method == SAMPLED

    def deviation_bound(self, a: int, b: int) -> float:
        return self.lam / sqrt(a * b)


def second_eigenvalue(g: Graph) -> tuple[float, float]:
    """(largest eigenvalue, largest absolute value among the rest)."""
    a = g.adjacency_matrix().astype(np.float64)
    if g.n <= DENSE_EIG_LIMIT:
        ev = np.linalg.eigvalsh(a)
    else:
        from scipy.sparse.linalg import eigsh

        ev = np.sort(eigsh(a, k=3, which="LM", tol=1e-9, return_eigenvectors=False))
    ev = np.sort(ev)
    top = float(ev[-1])
    rest = ev[:-1]
    return top, float(np.max(np.abs(rest))) if len(rest) else 0.0


def pair_deviation(g: Graph, a: VertexSet, b: VertexSet, p) -> float:
    """``|d(A,B) - p| * sqrt(|A||B|)`` with ordered-pair density (``A``, ``B`` may overlap)."""
    na, nb = a.bit_count(), b.bit_count()
    if not na or not nb:
        raise DegenerateInputError("deviation needs two nonempty sets")
    e = sum((g.rows[v] & b).bit_count() for v in iter_bits(a))
    dev = abs(Fraction(e, na * nb) - Fraction(p))
    return float(dev) * sqrt(na * nb)


def random_pairs(n: int, count: int, seed: int = 0):
    """Seeded random subset pairs with sizes uniform in ``1..n``."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        sa, sb = (int(s) for s in rng.integers(1, n + 1, size=2))
        a = mask_of(int(v) for v in rng.choice(n, size=sa, replace=False))
        b = mask_of(int(v) for v in rng.choice(n, size=sb, replace=False))
        yield a, b


def certify_pseudorandom(
    g: Graph,
    method: str = SPECTRAL,
    *,
    samples: int = 1000,
    seed: int = 0,
    p=None,
) -> PseudoRandomCertificate:
    """Spectral certificate for regular graphs, or sampled lower-bound evidence."""
    if g.n < 2:
        raise DegenerateInputError("certificate needs at least two vertices")
    if method == SPECTRAL:
        if not g.is_regular():
            raise PreconditionError("spectral certificate needs a regular graph")
        deg = g.degree(0)
        pp = Fraction(deg, g.n - 1)
        top, lam = second_eigenvalue(g)
        # the shifted density needs lam >= p (true whenever g has an edge)
        return PseudoRandomCertificate(pp, max(lam, float(pp)), SPECTRAL, {"degree": deg, "top_eigenvalue": top, "second_eigenvalue": lam})
    if method == SAMPLED:
        pp = Fraction(2 * g.m, g.n * (g.n - 1)) if p is None else Fraction(p)
        worst = 0.0
        for a, b in random_pairs(g.n, samples, seed):
            worst = max(worst, pair_deviation(g, a, b, pp))
        return PseudoRandomCertificate(pp, worst, SAMPLED, {"samples": samples, "seed": seed, "lower_bound_only": True})
    raise PreconditionError(f"unknown certificate method {method!r}")
