"""Pure-Python (numpy) versions of the hot loops in ``_ckernels.pyx``.

Both modules expose the same three functions with identical results; the
test suite checks that on random inputs.
"""
from __future__ import annotations

import numpy as np


def z_array(word: bytes) -> np.ndarray:
    """``z[i]`` = length of the longest common prefix of ``word`` and ``word[i:]``."""
    n = len(word)
    z = np.zeros(n, dtype=np.int64)
    if n == 0:
        return z
    z[0] = n
    lo = hi = 0
    for i in range(1, n):
        k = 0
        if i < hi:
            k = min(hi - i, int(z[i - lo]))
        while i + k < n and word[k] == word[i + k]:
            k += 1
        z[i] = k
        if i + k > hi:
            lo, hi = i, i + k
    return z


def first_repetition(word: bytes, mult: int, add: int) -> tuple[int, int]:
    """Least ``(pos, period)`` such that ``word[pos:pos + need + period]`` has the
    given period, where ``need = mult * period + add``.  ``(-1, -1)`` if none.

    ``mult = r - 1, add = 0`` finds r-th powers; ``mult = 1, add = 1`` overlaps.
    """
    a = np.frombuffer(word, dtype=np.uint8)
    n = len(a)
    best = (-1, -1)
    best_pos = n
    period = 1
    while True:
        need = mult * period + add
        if need <= 0 or need + period > n:
            break
        eq = (a[: n - period] == a[period:]).astype(np.int64)
        cs = np.concatenate(([0], np.cumsum(eq)))
        hits = np.flatnonzero(cs[need:] - cs[:-need] == need)
        if hits.size and hits[0] < best_pos:
            best_pos = int(hits[0])
            best = (best_pos, period)
        period += 1
    return best


def greedy_extract(matrix: np.ndarray, candidates: np.ndarray) -> tuple[list[int], list[int]]:
    """Greedy pigeonhole pass over a dense pair-color table.

    Repeatedly takes the least live candidate ``v`` and keeps only the later
    candidates joined to ``v`` by the most frequent color (ties: smallest
    color).  Returns the picked positions and each pick's color (``-1`` for
    the final pick, which has no later neighbours).
    """
    live = np.asarray(candidates, dtype=np.int64)
    picks: list[int] = []
    colors: list[int] = []
    while live.size:
        v = int(live[0])
        rest = live[1:]
        picks.append(v)
        if not rest.size:
            colors.append(-1)
            break
        row = matrix[v, rest]
        counts = np.bincount(row)
        c = int(np.argmax(counts))
        colors.append(c)
        live = rest[row == c]
    return picks, colors
