import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wordlab.colorings import FirstLetter, LengthMod, PrefixOf
from wordlab.ramsey import (
    ComponentColoring,
    Exhausted,
    FSWitness,
    MTWitness,
    PairColoring,
    block_families,
    extract_monochromatic_positions,
    finite_sums,
    hindman_search,
    is_pair_monochromatic,
    milliken_taylor_search,
    parse_int_coloring,
    power_coloring,
    shift_invariant_ultra,
    shifted_extract,
    ultra_from_fs,
    validate_fs,
    validate_mt,
)
from wordlab.factorizations import verify_ultra
from wordlab.words import Alphabet, Fibonacci, Stair


def test_constant_matrix_takes_the_first_positions():
    pc = PairColoring.explicit(np.zeros((10, 10), dtype=np.uint8))
    ext = extract_monochromatic_positions(pc, 10, 5)
    assert ext.positions[:5] == (0, 1, 2, 3, 4)
    assert ext.sufficient and ext.status == "ok"


def test_length_parity_pairs():
    pc = PairColoring.word_induced(LengthMod(2), Fibonacci(), 64)
    ext = extract_monochromatic_positions(pc, 64)
    assert len(ext.positions) >= 8
    assert is_pair_monochromatic(pc, ext.positions)


def test_stair_prefix_pairs():
    from wordlab.words import ThueMorse
    pc = PairColoring.word_induced(PrefixOf(ThueMorse()), Stair(), 256)
    ext = extract_monochromatic_positions(pc, 256, 5)
    assert len(ext.positions) >= 5
    assert is_pair_monochromatic(pc, ext.positions)


@settings(max_examples=40)
@given(seed=st.integers(0, 2**32 - 1), colors=st.integers(1, 3))
def test_extraction_is_monochromatic_and_large(seed, colors):
    n = 81
    rng = np.random.default_rng(seed)
    pc = PairColoring.explicit(rng.integers(0, colors, size=(n, n)))
    ext = extract_monochromatic_positions(pc, n)
    assert is_pair_monochromatic(pc, ext.positions)
    # floor(log_c N) / c guarantee
    c = len(pc.palette)
    bound = (int(np.log(n) / np.log(c) + 1e-9) if c > 1 else n) // c
    assert len(ext.positions) >= bound


def test_insufficient_extraction_is_reported():
    pc = PairColoring.explicit(np.zeros((4, 4), dtype=np.uint8))
    assert extract_monochromatic_positions(pc, 4, 9).status == "Insufficient"


def test_shifted_extract_on_fibonacci():
    phi = PrefixOf(Fibonacci())
    pos, colors = shifted_extract(phi, Fibonacci(), 2**12, 2)
    assert len(pos) >= 4 and len(colors) == 3
    for i in range(3):
        pc = PairColoring.word_induced(phi, Fibonacci().shift(i), 2**12)
        assert is_pair_monochromatic(pc, pos)


def test_finite_sums():
    assert sorted(finite_sums([1, 2, 4])) == list(range(1, 8))
    assert len(finite_sums([3, 5, 7, 11])) == 15


def test_hindman_parity_example():
    w = hindman_search(lambda n: n % 2, 3, 100)
    assert isinstance(w, FSWitness)
    assert w.sequence == (2, 4, 6) and w.color == 0
    assert validate_fs(lambda n: n % 2, w)


def test_hindman_is_lexicographically_least():
    psi = lambda n: (n % 3 == 0)
    w = hindman_search(psi, 3, 60)
    best = min(s for s in itertools.combinations(range(1, 60), 3)
               if sum(s) <= 60 and len({psi(t) for t in finite_sums(s)}) == 1)
    assert w.sequence == best


def test_hindman_exhausts():
    got = hindman_search(lambda n: n % 2, 4, 10)
    assert isinstance(got, Exhausted) and got.nodes > 0


def test_restricted_hindman_stays_inside():
    first = hindman_search(lambda n: n % 3, 4, 400)
    second = hindman_search(lambda n: (n // 3) % 2, 2, 400, first.fs_set)
    assert isinstance(second, FSWitness)
    assert set(second.sums) <= first.fs_set


def test_ultra_from_fs():
    psi = power_coloring(LengthMod(2), b"\x00\x01")
    w = hindman_search(psi, 3, 50)
    f = ultra_from_fs(b"\x00\x01", w)
    assert verify_ultra(LengthMod(2), f, 3, 3).holds


def test_block_families_count_and_order():
    fams = list(block_families(4, 2))
    for a, b in fams:
        assert max(a) < min(b)
    brute = [(a, b) for a in _subsets(4) for b in _subsets(4) if max(a) < min(b)]
    assert sorted(fams) == sorted(brute)


def _subsets(q):
    return [s for r in range(1, q + 1) for s in itertools.combinations(range(1, q + 1), r)]


def test_mt_arity_one_matches_hindman():
    psi = lambda s: s[0] % 2
    mt = milliken_taylor_search(psi, 1, 3, 100)
    fs = hindman_search(lambda n: n % 2, 3, 100)
    assert mt.sequence == fs.sequence
    assert validate_fs(lambda n: n % 2, FSWitness(mt.sequence, mt.color, tuple(finite_sums(mt.sequence))))


def test_mt_componentwise_validates():
    psi = ComponentColoring([lambda n: n % 2, lambda n: n % 3 == 0])
    w = milliken_taylor_search(psi, 2, 4, 500)
    assert isinstance(w, MTWitness)
    assert validate_mt(psi, w)
    assert not validate_mt(psi, MTWitness(2, (1, 2, 3, 4), w.color, 0))


@pytest.mark.parametrize("u", ["a", "ab", "abc"])
@pytest.mark.parametrize("spec", ["len-mod:2", "len-mod:3", "first-letter"])
def test_shift_invariant_end_to_end(u, spec):
    alpha = Alphabet.from_text(u)
    phi = FirstLetter(list(range(len(alpha.symbols)))) if spec == "first-letter" else LengthMod(int(spec[-1]))
    f, cert = shift_invariant_ultra(alpha.encode(u), phi, 3, 600, alphabet=alpha, k_max=3)
    assert f is not None and cert.holds, cert.details
    assert all(length % len(u) == 0 for length in f.lengths)


def test_milliken_taylor_method():
    f, cert = shift_invariant_ultra(b"\x00\x01", LengthMod(2), 3, 2000, "mt", k_max=3)
    assert cert.holds
    assert cert.details["printed_family_failures"] == []


def test_shift_invariant_exhausted():
    f, cert = shift_invariant_ultra(b"\x00\x01", LengthMod(3), 4, 8)
    assert f is None and cert.verdict == "Exhausted"


def test_parse_int_coloring():
    assert parse_int_coloring("mod:3")(7) == 1
    assert parse_int_coloring("mod:2:5,6")(3) == 6
    assert parse_int_coloring("const:4")(99) == 4
    assert parse_int_coloring("power:ab:len-mod:3")(2) == 1
    with pytest.raises(ValueError):
        parse_int_coloring("mod:2:1")
