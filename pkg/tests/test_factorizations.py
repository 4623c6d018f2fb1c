import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from wordlab.colorings import Constant, FirstLetter, LengthMod, PrefixOf
from wordlab.factorizations import (
    BudgetExceeded,
    Factorization,
    FactorizationError,
    coarsen,
    find_monochromatic,
    find_sequential,
    groups_by_letter_count,
    permuted_orders,
    refutation_is_sound,
    verify_conditional,
    verify_monochromatic,
    verify_notion,
    verify_sequential,
    verify_shift_invariant,
    verify_ultra,
)
from wordlab.factors import build_index
from wordlab.words import Explicit, Fibonacci, Periodic, Stair, ThueMorse


def brute_reach(phi, text, n, cap, c):
    reach = {0}
    for p in range(n):
        if p in reach:
            for q in range(p + 1, min(len(text), p + cap) + 1):
                if phi(text[p:q]) == c:
                    reach.add(q)
    return reach


def test_blocks_and_concat():
    f = Factorization(ThueMorse(), [0, 1, 3, 6])
    assert f.blocks() == [b"\x00", b"\x01\x01", b"\x00\x01\x00"]
    assert f.concat((2, 0)) == b"\x00\x01\x00\x00"
    with pytest.raises(FactorizationError):
        Factorization(ThueMorse(), [1, 3])
    with pytest.raises(FactorizationError):
        Factorization(ThueMorse(), [0, 2, 2])


def test_permuted_orders_are_canonical():
    orders = list(permuted_orders(3, 2))
    assert orders[:3] == [(0,), (1,), (2,)]
    # subsets in order, each followed by its permutations
    assert orders[3:] == [(0, 1), (1, 0), (0, 2), (2, 0), (1, 2), (2, 1)]


def test_budget_is_checked_before_work():
    f = Factorization.from_lengths(Fibonacci(), [1] * 30)
    with pytest.raises(BudgetExceeded):
        verify_ultra(Constant(0), f, 30, 6, budget=1000)


def test_sequential_example_is_violated():
    f = Factorization.from_lengths(ThueMorse(), [1, 2, 3])
    cert = verify_sequential(PrefixOf(ThueMorse()), f, 3)
    assert cert.violated
    assert (cert.witness["i"], cert.witness["j"], cert.witness["word"]) == (1, 0, "11")


@settings(max_examples=30)
@given(st.lists(st.integers(1, 4), min_size=2, max_size=8))
def test_sequential_matches_naive_runs(lengths):
    x = Stair()
    f = Factorization.from_lengths(x, lengths)
    phi = PrefixOf(ThueMorse())
    m = len(lengths)
    colors = {phi(f.concat(range(i, j + 1))) for i in range(m) for j in range(i, m)}
    assert verify_sequential(phi, f, m).holds == (len(colors) == 1)


def test_hierarchy_on_random_factorizations():
    rng = random.Random(3)
    phi = LengthMod(2)
    for _ in range(40):
        f = Factorization.from_lengths(Fibonacci(), [rng.choice((2, 4, 1)) for _ in range(5)])
        u = verify_ultra(phi, f, 5, 3).holds
        s = verify_sequential(phi, f, 5).holds
        m = verify_monochromatic(phi, f, 5).holds
        assert (not u or s) and (not s or m)


def test_conditional_exempts_absent_words():
    idx = build_index(Fibonacci(), 500)
    f = Factorization.from_lengths(Fibonacci(), [1] * 5)  # 0 1 0 0 1, and 11 never occurs
    cond = verify_conditional(Constant(0), f, idx, 5, 2)
    assert cond.details["exempt"] >= 1
    assert cond.details["checked"] + cond.details["exempt"] == cond.details["enumerated"]


def test_coarsening_preserves_holds():
    f = Factorization.from_lengths(Fibonacci(), [2] * 12)
    phi = LengthMod(2)
    assert verify_ultra(phi, f, 12, 2).holds
    g = coarsen(f, [2, 3, 1, 4])
    assert g.lengths == (4, 6, 2, 8)
    assert verify_ultra(phi, g, 4, 2).holds
    with pytest.raises(FactorizationError):
        coarsen(f, [10, 10])


def test_groups_by_letter_count():
    f = Factorization.from_lengths(Fibonacci(), [1] * 10)  # 0100101001
    sizes = groups_by_letter_count(f, 1, 2)
    g = coarsen(f, sizes)
    assert all(b.count(1) >= 2 for b in g.blocks())


def test_shift_invariant_per_shift_colors():
    f = Factorization.from_lengths(Periodic(b"\x00\x01"), [2] * 6)
    cert = verify_shift_invariant(FirstLetter([0, 1]), f, 6, 3)
    assert cert.holds and cert.color == [0, 1, 0, 1]


def test_verify_notion_dispatch():
    f = Factorization.from_lengths(Periodic(b"\x00"), [1, 2])
    for notion in ("mono", "sequential", "ultra"):
        assert verify_notion(Constant(0), f, 2, notion, 2).holds
    with pytest.raises(FactorizationError):
        verify_notion(Constant(0), f, 2, "bogus")


@pytest.mark.parametrize("cap", [1, 3, 7])
@pytest.mark.parametrize("word", [ThueMorse(), Stair(), Fibonacci()])
def test_find_monochromatic_agrees_with_brute_force(word, cap):
    phi = PrefixOf(ThueMorse())
    n = 40
    cert = find_monochromatic(phi, word, n, cap)
    text = word.prefix(n + cap)
    for c in phi.colors:
        reach = brute_reach(phi, text, n, cap, c)
        info = cert.details["per_color"][str(c)]
        assert set(info["reachable"]) == reach
        assert info["reached"] == (max(reach) >= n)
        if not info["reached"]:
            assert refutation_is_sound(phi, word, cert, c)
    if cert.holds:
        f = Factorization(word, cert.witness["cuts"])
        assert verify_monochromatic(phi, f, f.num_blocks).holds
        assert f.cuts[-1] >= n and max(f.lengths) <= cap


def test_refutation_rejects_tampered_sets():
    phi = PrefixOf(ThueMorse())
    cert = find_monochromatic(phi, Stair(), 30, 2)
    for c in phi.colors:
        info = cert.details["per_color"][str(c)]
        if not info["reached"] and len(info["reachable"]) > 1:
            info["reachable"] = info["reachable"][:1]
            assert not refutation_is_sound(phi, Stair(), cert, c)


def test_finite_word_is_covered_when_exhausted():
    cert = find_monochromatic(Constant(0), Explicit(b"\x00\x01\x00"), 100, 2)
    assert cert.holds and cert.witness["cuts"][-1] == 3


def test_find_sequential_witness_rechecks():
    cert = find_sequential(LengthMod(2), Fibonacci(), 64)
    assert cert.holds
    x = Fibonacci().shift(cert.witness["offset"])
    f = Factorization(x, cert.witness["cuts"])
    assert verify_sequential(LengthMod(2), f, f.num_blocks).holds


def test_small_rigidity_brute_force():
    # for every length pattern, ultra for LengthMod(2) holds iff all block lengths are even
    phi = LengthMod(2)
    for lengths in itertools.product((1, 2, 3), repeat=3):
        f = Factorization.from_lengths(ThueMorse(), lengths)
        assert verify_ultra(phi, f, 3, 3).holds == all(l % 2 == 0 for l in lengths)
