"""Good/bad bookkeeping shared by the greedy embedders.

A ledger is built from the list of *bad top-level sets*: the ``h``-sets
(or pairs of ``n``-sets in pair mode) that fail the host's niceness
condition.  A smaller set (or pair of sets) ``U`` is good when the number
of bad top-level sets extending it is strictly below ``budget(|U|)``.  A
vertex ``j`` is bad with respect to ``U`` when adding it to ``U`` produces
a set that is not good; the number of such vertices is what each greedy
step has to avoid.

Bad sets are held as integer arrays of vertex indices (one row per bad
set, one array per component) so that superset filtering and the per-vertex
tallies are vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, comb
from typing import Callable, Sequence

import numpy as np

from ..bitset import VertexSet, is_subset, iter_bits, mask_of, to_list
from ..errors import PreconditionError

Budget = Callable[[tuple[int, ...]], Fraction]


def _as_array(sets: Sequence[VertexSet], size: int) -> np.ndarray:
    if not sets:
        return np.zeros((0, size), dtype=np.int64)
    rows = [to_list(s) for s in sets]
    for r in rows:
        if len(r) != size:
            raise PreconditionError(f"bad set of size {len(r)}, expected {size}")
    return np.asarray(rows, dtype=np.int64)


class GoodnessLedger:
    """Memoised goodness verdicts for sets (``arity=1``) or set pairs (``arity=2``).

    ``bad`` holds the bad top-level objects: masks for ``arity=1``, tuples
    of masks for ``arity=2``.  ``sizes`` gives the top-level component
    sizes and ``budget`` maps a tuple of component sizes to the threshold.
    """

    def __init__(self, bad, sizes: tuple[int, ...], budget: Budget):
        self.sizes = tuple(sizes)
        self.arity = len(self.sizes)
        self.budget = budget
        if self.arity == 1:
            bad = [(b,) for b in bad]
        bad = list(bad)
        self.bad_count = len(bad)
        self._comps = [_as_array([b[c] for b in bad], self.sizes[c]) for c in range(self.arity)]
        self._memo: dict[tuple[VertexSet, ...], bool] = {}

    # -- helpers ------------------------------------------------------------

    def _key(self, u) -> tuple[VertexSet, ...]:
        return (u,) if self.arity == 1 else tuple(u)

    def _containing(self, key: tuple[VertexSet, ...]) -> np.ndarray:
        sel = np.ones(self.bad_count, dtype=bool)
        for comp, mask in zip(self._comps, key):
            for v in iter_bits(mask):
                sel &= (comp == v).any(axis=1)
        return sel

    def threshold(self, sizes: tuple[int, ...]) -> int:
        """Smallest bad-extension count that makes a set of these sizes bad."""
        return ceil(Fraction(self.budget(sizes)))

    # -- queries ------------------------------------------------------------

    def bad_extensions(self, u) -> int:
        key = self._key(u)
        return int(self._containing(key).sum())

    def good(self, u) -> bool:
        key = self._key(u)
        hit = self._memo.get(key)
        if hit is None:
            hit = self.recompute(u)
            self._memo[key] = hit
        return hit

    def recompute(self, u) -> bool:
        """Verdict from scratch, bypassing the memo."""
        key = self._key(u)
        sizes = tuple(k.bit_count() for k in key)
        if any(s > top for s, top in zip(sizes, self.sizes)):
            raise PreconditionError("set larger than the top level")
        return self.bad_extensions(u) < Fraction(self.budget(sizes))

    def bad_vertices(self, u, component: int = 0) -> VertexSet:
        """Vertices ``j`` whose addition to component ``component`` of ``u`` is not good."""
        key = self._key(u)
        sizes = list(k.bit_count() for k in key)
        if sizes[component] >= self.sizes[component]:
            return 0
        sizes[component] += 1
        need = self.threshold(tuple(sizes))
        if need <= 0:
            raise PreconditionError("non-positive budget")
        sel = self._containing(key)
        if not sel.any():
            return 0
        sub = self._comps[component][sel]
        counts = np.bincount(sub.ravel())
        hits = np.nonzero(counts >= need)[0]
        return mask_of(int(j) for j in hits) & ~key[component]

    def verdicts(self) -> dict:
        return dict(self._memo)


def power_budget(base: Fraction | int, top: int, pool: int) -> Budget:
    """``base^(s - top) * C(pool, top - s)``: the single-set budgets of every lemma."""
    base = Fraction(base)

    def budget(sizes: tuple[int, ...]) -> Fraction:
        (s,) = sizes
        return base ** (s - top) * comb(pool, top - s)

    return budget


def pair_budget(n: int, m: int) -> Budget:
    """``(2n)^(s1+s2-2n) C(m, n-s1) C(m, n-s2)`` for pair goodness."""

    def budget(sizes: tuple[int, ...]) -> Fraction:
        s1, s2 = sizes
        return Fraction(2 * n) ** (s1 + s2 - 2 * n) * comb(m, n - s1) * comb(m, n - s2)

    return budget


@dataclass
class NestedFamily:
    """Chain ``A_1 ⊇ A_2 ⊇ ... ⊇ A_k`` with per-level metadata."""

    levels: list[VertexSet]
    colors: list[int | None] = field(default_factory=list)
    size_bounds: list[Fraction | float | None] = field(default_factory=list)

    def __post_init__(self):
        if not self.levels:
            raise PreconditionError("a nested family needs at least one level")
        self.check()

    def check(self) -> None:
        for i in range(1, len(self.levels)):
            if not is_subset(self.levels[i], self.levels[i - 1]):
                raise PreconditionError(f"level {i + 1} is not contained in level {i}")
        for i, b in enumerate(self.size_bounds):
            if b is not None and self.levels[i].bit_count() < b:
                raise PreconditionError(f"level {i + 1} has {self.levels[i].bit_count()} vertices, below {b}")

    def __len__(self) -> int:
        return len(self.levels)

    def __getitem__(self, i: int) -> VertexSet:
        return self.levels[i]

    def sizes(self) -> list[int]:
        return [a.bit_count() for a in self.levels]
