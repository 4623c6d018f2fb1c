# cython: language_level=3
"""Compiled versions of the functions in ``_pykernels``."""
import numpy as np


def z_array(const unsigned char[:] word):
    cdef Py_ssize_t n = word.shape[0]
    z_np = np.zeros(n, dtype=np.int64)
    cdef long long[:] z = z_np
    cdef Py_ssize_t i, k, lo = 0, hi = 0
    if n == 0:
        return z_np
    z[0] = n
    for i in range(1, n):
        k = 0
        if i < hi:
            k = hi - i
            if z[i - lo] < k:
                k = z[i - lo]
        while i + k < n and word[k] == word[i + k]:
            k += 1
        z[i] = k
        if i + k > hi:
            lo = i
            hi = i + k
    return z_np


def first_repetition(const unsigned char[:] word, long mult, long add):
    cdef Py_ssize_t n = word.shape[0]
    cdef Py_ssize_t period = 1, need, j, run, start
    cdef Py_ssize_t best_pos = n, best_period = -1
    while True:
        need = mult * period + add
        if need <= 0 or need + period > n:
            break
        run = 0
        j = 0
        # a hit starting before best_pos must complete by index best_pos + need - 1
        while j < n - period and j < best_pos + need - 1:
            if word[j] == word[j + period]:
                run += 1
                if run >= need:
                    start = j - need + 1
                    if start < best_pos:
                        best_pos = start
                        best_period = period
                    break
            else:
                run = 0
            j += 1
        period += 1
    if best_period < 0:
        return (-1, -1)
    return (best_pos, best_period)


def greedy_extract(const unsigned char[:, :] matrix, candidates):
    cdef long long[:] live = np.array(candidates, dtype=np.int64)
    cdef Py_ssize_t size = live.shape[0]
    cdef Py_ssize_t i, k, v, c, best_c
    cdef long long counts[256]
    picks = []
    colors = []
    while size > 0:
        v = live[0]
        picks.append(v)
        if size == 1:
            colors.append(-1)
            break
        for c in range(256):
            counts[c] = 0
        for i in range(1, size):
            counts[matrix[v, live[i]]] += 1
        best_c = 0
        for c in range(1, 256):
            if counts[c] > counts[best_c]:
                best_c = c
        colors.append(best_c)
        k = 0
        for i in range(1, size):
            if matrix[v, live[i]] == best_c:
                live[k] = live[i]
                k += 1
        size = k
    return picks, colors
