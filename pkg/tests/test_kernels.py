"""The compiled kernels must agree with the pure-Python ones and with naive oracles."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wordlab import _kernels

BACKENDS = [_kernels.pure] + ([_kernels.compiled] if _kernels.compiled is not None else [])
words = st.binary(min_size=0, max_size=80).map(lambda b: bytes(c % 3 for c in b))


def naive_z(w):
    n = len(w)
    z = [0] * n
    if n:
        z[0] = n
    for i in range(1, n):
        while i + z[i] < n and w[z[i]] == w[i + z[i]]:
            z[i] += 1
    return z


def naive_repetition(w, mult, add):
    # least (position, period) with w[pos:pos+need] of period p, need = mult*p + add
    for pos in range(len(w)):
        for p in range(1, len(w)):
            need = mult * p + add
            if pos + p + need > len(w):
                break
            if all(w[pos + k] == w[pos + p + k] for k in range(need)):
                return pos, p
    return -1, -1


@pytest.mark.parametrize("k", BACKENDS)
@given(w=words)
def test_z_array(k, w):
    assert list(k.z_array(w)) == naive_z(w)


@pytest.mark.parametrize("k", BACKENDS)
@given(w=words, mult=st.integers(1, 3), add=st.integers(0, 2))
def test_first_repetition(k, w, mult, add):
    assert tuple(k.first_repetition(w, mult, add)) == naive_repetition(w, mult, add)


@pytest.mark.parametrize("k", BACKENDS)
@settings(max_examples=50)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40), colors=st.integers(1, 3))
def test_greedy_extract_is_monochromatic(k, seed, n, colors):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, colors, size=(n, n)).astype(np.uint8)
    m = np.triu(m, 1)
    m = m + m.T
    picks, cols = k.greedy_extract(m, np.arange(n, dtype=np.int64))
    picks, cols = list(picks), list(cols)
    assert cols[-1] == -1
    for i, (p, c) in enumerate(zip(picks, cols)):
        assert all(m[p, q] == c for q in picks[i + 1:])


@settings(max_examples=30)
@given(seed=st.integers(0, 2**32 - 1))
def test_backends_agree_on_extraction(seed):
    if _kernels.compiled is None:
        pytest.skip("compiled kernels not built")
    rng = np.random.default_rng(seed)
    m = rng.integers(0, 2, size=(64, 64)).astype(np.uint8)
    m = np.triu(m, 1)
    m = m + m.T
    cand = np.arange(64, dtype=np.int64)
    a = _kernels.pure.greedy_extract(m, cand)
    b = _kernels.compiled.greedy_extract(m, cand)
    assert list(a[0]) == list(b[0]) and list(a[1]) == list(b[1])


def test_backend_name():
    assert _kernels.BACKEND in ("cython", "python")
