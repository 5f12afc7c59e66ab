"""Patterns of bounded chromatic number along a nested chain ``V_1 ⊇ ... ⊇ V_q``.

Colour class ``W_k`` of the pattern goes into ``V_k``.  For every level
``k < q`` the ``d``-subsets of ``V_{k+1}`` with fewer than ``x`` common
neighbours inside ``V_k`` must number less than ``(2d)^-d C(x, d)``;
this is counted before the greedy starts.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

from ..bitset import VertexSet, iter_bits, lowest, mask_of
from ..drc import bad_dsets
from ..errors import EmbeddingFailure, HypothesisFailure, InternalError, PreconditionError
from ..graph import PART_RESPECTING, Embedding, Graph, common_neighborhood, validate_embedding
from .ledger import GoodnessLedger, NestedFamily, power_budget


def classes_from_labels(labels: Sequence[int]) -> list[VertexSet]:
    """Colour classes from a per-vertex colour index (0-based)."""
    q = max(labels) + 1 if labels else 0
    return [mask_of(v for v, c in enumerate(labels) if c == k) for k in range(q)]


def normalize_partition(h: Graph, partition) -> list[VertexSet]:
    """Classes given as masks or vertex iterables; checks they partition ``h`` into independent sets."""
    classes = [c if isinstance(c, int) else mask_of(c) for c in partition]
    union = 0
    for c in classes:
        if union & c:
            raise PreconditionError("colour classes overlap")
        union |= c
        for v in iter_bits(c):
            if h.rows[v] & c:
                raise PreconditionError("colour class is not an independent set")
    if union != h.vertex_mask:
        raise PreconditionError("colour classes do not cover the pattern")
    return classes


def level_bad_sets(g: Graph, nested: NestedFamily, d: int, x: int, *, budget=None) -> list[list[VertexSet]]:
    """For level ``k`` (0-based), the bad ``d``-subsets of ``V_{k+2}`` relative to ``V_{k+1}``."""
    return [bad_dsets(g, nested[k + 1], d, x, within=nested[k], budget=budget) for k in range(len(nested) - 1)]


def check_chain(g: Graph, nested: NestedFamily, d: int, x: int, n: int, *, budget=None):
    """Returns (bad sets per level, first failing level or None, details)."""
    limit = Fraction(2 * d) ** (-d) * comb(x, d)
    bads = level_bad_sets(g, nested, d, x, budget=budget)
    details = {"bad_counts": [len(b) for b in bads], "budget": str(limit), "last_size": nested[-1].bit_count()}
    if not nested[-1].bit_count() >= x >= 4 * n:
        return bads, len(nested), details
    for k, b in enumerate(bads):
        if len(b) >= limit:
            return bads, k + 1, details
    return bads, None, details


def embed_chromatic(
    h: Graph,
    q_partition,
    g: Graph,
    nested: NestedFamily,
    x: int,
    d: int | None = None,
    *,
    strict: bool = True,
    budget: int | None = None,
) -> Embedding:
    """Embed ``h`` with colour class ``W_k`` inside level ``V_k`` of ``nested``.

    With ``strict=False`` a failed chain check does not stop the greedy; the
    run is best-effort and the result is flagged uncertified (and still
    validated).
    """
    classes = normalize_partition(h, q_partition)
    q = len(classes)
    if q > len(nested):
        raise PreconditionError(f"{q} colour classes but only {len(nested)} nested levels")
    levels = NestedFamily(list(nested.levels[:q]))
    d = max(h.max_degree(), 1) if d is None else max(d, 1)
    if h.max_degree() > d:
        raise PreconditionError(f"pattern has maximum degree {h.max_degree()} > d = {d}")
    bads, failing, details = check_chain(g, levels, d, x, h.n, budget=budget)
    if failing is not None and strict:
        raise HypothesisFailure(f"nested family fails its bad-set budget at level {failing}", level=failing, details=details)
    certified = failing is None
    ledgers = [GoodnessLedger(b, (d,), power_budget(2 * d, d, x)) for b in bads]

    cls = [0] * h.n
    for k, c in enumerate(classes):
        for v in iter_bits(c):
            cls[v] = k
    # higher classes first
    order = [v for k in reversed(range(q)) for v in iter_bits(classes[k])]
    pos = {v: i for i, v in enumerate(order)}
    back = {v: mask_of(w for w in iter_bits(h.rows[v]) if pos[w] < pos[v]) for v in range(h.n)}

    f: dict[int, int] = {}
    used = 0
    worst = 0
    fallbacks = 0
    for step, v in enumerate(order):
        ell = cls[v]
        target = levels[ell]
        prior = mask_of(f[w] for w in iter_bits(back[v]))
        if prior and certified and not ledgers[ell].good(prior):
            raise InternalError(f"step {step}: back-neighbourhood image lost goodness")
        reach = common_neighborhood(g, prior) if prior else g.vertex_mask
        hard = reach & target & ~used
        done = mask_of(order[:step])
        excluded = 0
        seen = set()
        for w in iter_bits(h.rows[v]):
            if pos[w] <= step:
                continue
            j = cls[w]
            s = mask_of(f[u] for u in iter_bits(back[w] & done))
            if (j, s) in seen:
                continue
            seen.add((j, s))
            excluded |= ledgers[j].bad_vertices(s)
        excluded &= target & ~used
        worst = max(worst, excluded.bit_count())
        if certified and 2 * excluded.bit_count() > x:
            raise InternalError(f"step {step}: {excluded.bit_count()} excluded vertices exceed x/2")
        cands = hard & ~excluded
        if certified and 4 * cands.bit_count() < x:
            raise InternalError(f"step {step}: only {cands.bit_count()} admissible vertices, below x/4")
        if not cands:
            cands = hard
            fallbacks += 1
            if not cands:
                raise EmbeddingFailure(f"no admissible host vertex for pattern vertex {v}", details={"step": step})
        f[v] = lowest(cands)
        used |= 1 << f[v]

    emb = Embedding(
        tuple(f[v] for v in range(h.n)),
        PART_RESPECTING,
        parts=tuple((classes[k], levels[k]) for k in range(q)),
        meta={"certified": certified, "failing_level": failing, "max_excluded": worst, "fallback_steps": fallbacks, **details},
    )
    if not validate_embedding(h, g, emb):
        raise InternalError("chromatic greedy produced an invalid embedding")
    return emb
