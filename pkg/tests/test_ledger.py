from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drcembed.bitset import mask_of
from drcembed.embedders.ledger import GoodnessLedger, NestedFamily, pair_budget, power_budget
from drcembed.errors import PreconditionError


def test_power_budget_values():
    b = power_budget(4, 2, 10)
    assert b((2,)) == 1
    assert b((1,)) == Fraction(10, 4)
    assert b((0,)) == Fraction(45, 16)


def test_pair_budget_values():
    b = pair_budget(2, 4)
    assert b((2, 2)) == 1
    assert b((1, 2)) == Fraction(4, 4)
    assert b((0, 0)) == Fraction(36, 256)


@st.composite
def single_ledgers(draw):
    n = draw(st.integers(3, 8))
    h = draw(st.integers(1, min(3, n)))
    pool = [mask_of(c) for c in combinations(range(n), h)]
    bad = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool)))
    base = draw(st.integers(1, 6))
    return n, h, bad, GoodnessLedger(bad, (h,), power_budget(base, h, n))


@given(single_ledgers(), st.data())
def test_ledger_memo_matches_recompute(case, data):
    n, h, bad, led = case
    for _ in range(6):
        u = mask_of(data.draw(st.sets(st.integers(0, n - 1), max_size=h)))
        assert led.good(u) == led.recompute(u)
        assert led.good(u) == led.recompute(u)  # memo hit
    for key, verdict in led.verdicts().items():
        assert verdict == led.recompute(key[0])


@given(single_ledgers(), st.data())
def test_ledger_counts_and_bad_vertices(case, data):
    n, h, bad, led = case
    u = mask_of(data.draw(st.sets(st.integers(0, n - 1), max_size=h - 1)))
    assert led.bad_extensions(u) == sum(1 for b in bad if b & u == u)
    expect = mask_of(j for j in range(n) if not (u >> j) & 1 and not led.recompute(u | 1 << j))
    assert led.bad_vertices(u) == expect


@st.composite
def pair_ledgers(draw):
    n_top = 2
    size = draw(st.integers(4, 6))
    subs = [mask_of(c) for c in combinations(range(size), n_top)]
    pool = [(a, b) for a in subs for b in subs if not a & b]
    bad = draw(st.lists(st.sampled_from(pool), unique=True, max_size=20))
    m = draw(st.integers(4, 6))
    return size, bad, GoodnessLedger(bad, (2, 2), pair_budget(2, m))


@given(pair_ledgers(), st.data())
def test_pair_ledger_bad_vertices(case, data):
    size, bad, led = case
    p = mask_of(data.draw(st.sets(st.integers(0, size - 1), max_size=1)))
    q = mask_of(data.draw(st.sets(st.integers(0, size - 1), max_size=1))) & ~p
    assert led.bad_extensions((p, q)) == sum(1 for a, b in bad if a & p == p and b & q == q)
    for comp in (0, 1):
        parts = [p, q]
        expect = 0
        for j in range(size):
            if (parts[comp] >> j) & 1:
                continue
            grown = list(parts)
            grown[comp] |= 1 << j
            if not led.recompute(tuple(grown)):
                expect |= 1 << j
        assert led.bad_vertices((p, q), comp) == expect


def test_ledger_rejects_wrong_sizes():
    with pytest.raises(PreconditionError):
        GoodnessLedger([mask_of([0, 1, 2])], (2,), power_budget(2, 2, 5))
    led = GoodnessLedger([mask_of([0, 1])], (2,), power_budget(2, 2, 5))
    with pytest.raises(PreconditionError):
        led.good(mask_of([0, 1, 2]))


def test_nested_family_checks():
    fam = NestedFamily([0b1111, 0b0110, 0b0010])
    assert fam.sizes() == [4, 2, 1] and len(fam) == 3 and fam[1] == 0b0110
    with pytest.raises(PreconditionError):
        NestedFamily([0b0011, 0b0100])
    with pytest.raises(PreconditionError):
        NestedFamily([])
    with pytest.raises(PreconditionError):
        NestedFamily([0b1111, 0b0001], size_bounds=[None, 2])
