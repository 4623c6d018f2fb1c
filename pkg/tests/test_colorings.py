import random

import pytest
from hypothesis import given, strategies as st

from wordlab.colorings import (
    ColoringError,
    Constant,
    FactorOf,
    FiniteSemigroup,
    FirstLetter,
    LengthMod,
    PrefixEndingLetter,
    PrefixOf,
    Product,
    SemigroupMorphism,
    parse_coloring,
)
from wordlab.factors import build_index
from wordlab.words import Fibonacci, Stair, ThueMorse

B = bytes


def test_prefix_colorings_on_thue_morse():
    tm = ThueMorse()
    phi, psi = PrefixOf(tm), PrefixEndingLetter(tm)
    assert phi(B([0, 1, 1])) == 0 and phi(B([0, 1, 0])) == 1
    assert psi(B([0, 1, 1, 0])) == 0 and psi(B([0, 1])) == 1 and psi(B([1])) == 2
    with pytest.raises(ColoringError):
        phi(b"")


@pytest.mark.parametrize("make", [
    lambda: PrefixOf(ThueMorse()),
    lambda: PrefixEndingLetter(Stair()),
    lambda: SemigroupMorphism(FiniteSemigroup.cyclic(3), [1, 2]),
    lambda: LengthMod(3),
    lambda: FirstLetter([1, 0]),
])
def test_row_agrees_with_color(make):
    phi = make()
    text = Fibonacci().prefix(300)
    rng = random.Random(0)
    for _ in range(20):
        start = rng.randrange(250)
        stops = sorted(rng.sample(range(start + 1, 301), 20))
        assert phi.row(text, start, stops) == [phi(text[start:s]) for s in stops]


def test_factor_of_is_horizon_relative():
    idx = build_index(Fibonacci(), 100)
    phi = FactorOf(idx)
    assert phi(B([0, 0, 1])) == 0
    assert phi(B([1, 1])) == 1
    assert phi.horizon == 100


def test_semigroup_checks_associativity():
    with pytest.raises(ColoringError):
        FiniteSemigroup([[0, 0], [1, 0]])
    s = FiniteSemigroup.cyclic(2)
    assert s.idempotents() == {0}


@given(st.lists(st.integers(0, 1), min_size=1, max_size=30), st.lists(st.integers(0, 1), min_size=1, max_size=30))
def test_semigroup_coloring_is_a_morphism(u, v):
    s = FiniteSemigroup([[0, 1, 2], [1, 1, 1], [2, 2, 2]])  # left-zero-ish with identity 0
    phi = SemigroupMorphism(s, [0, 2])
    a, b = B(u), B(v)
    assert phi(a + b) == s.mul(phi(a), phi(b))


def test_product_and_constant():
    phi = Product(LengthMod(2), FirstLetter([0, 1]))
    assert phi(B([1, 0, 0])) == (1, 1)
    assert len(phi.colors) == 4
    assert Constant(3)(B([0])) == 3


@pytest.mark.parametrize("spec", [
    "prefix-of:thue-morse", "prefix-end:stair", "factor-of:fibonacci:500", "len-mod:3", "len-mod:2:1,0",
    "first-letter:0,1", "const:2", "semigroup:0,1/1,0:1,0", "product:len-mod:2+first-letter:0,1",
    "table:1:01=0,0=0",
])
def test_parse_round_trip(spec):
    phi = parse_coloring(spec)
    again = parse_coloring(phi.spec)
    w = Fibonacci().prefix(7)
    assert all(phi(w[:n]) == again(w[:n]) for n in range(1, 8))


def test_parse_semigroup_file(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("0 1\n1 0\n")
    phi = parse_coloring(f"semigroup:{p}:1,0")
    assert phi(B([0, 0, 1])) == 0


def test_parse_errors():
    for bad in ["nope:1", "len-mod:x", "factor-of:fibonacci", "semigroup:0,1/1,0"]:
        with pytest.raises((ColoringError, ValueError)):
            parse_coloring(bad)
