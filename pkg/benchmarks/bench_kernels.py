"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints one line per kernel and input size with the best time of each
backend and the speedup.  Both backends are run on identical inputs and
their outputs are compared before timing.
"""
import argparse
import timeit

import numpy as np

from wordlab import _kernels
from wordlab.words import Fibonacci, ThueMorse


def cases():
    for n in (10**4, 10**5):
        tm = ThueMorse().prefix(n)
        fib = Fibonacci().prefix(n)
        yield "z_array", f"thue-morse n={n}", (tm,)
        yield "first_repetition", f"thue-morse n={n} (overlap)", (tm, 2, 1)
        yield "first_repetition", f"fibonacci n={n} (4th power)", (fib, 4, 0)
    rng = np.random.default_rng(0)
    for n in (500, 2000):
        m = rng.integers(0, 2, size=(n, n)).astype(np.uint8)
        m = np.triu(m, 1)
        m = m + m.T
        yield "greedy_extract", f"random 2-coloring n={n}", (m, np.arange(n, dtype=np.int64))


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.compiled is None:
        raise SystemExit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")
    print(f"{'kernel':<18}{'input':<32}{'python ms':>11}{'cython ms':>11}{'speedup':>9}")
    for name, label, argv in cases():
        fp, fc = getattr(_kernels.pure, name), getattr(_kernels.compiled, name)
        assert same(fp(*argv), fc(*argv)), f"backends disagree on {name} {label}"
        tp = min(timeit.repeat(lambda: fp(*argv), number=1, repeat=args.repeat))
        tc = min(timeit.repeat(lambda: fc(*argv), number=1, repeat=args.repeat))
        print(f"{name:<18}{label:<32}{tp * 1e3:>11.3f}{tc * 1e3:>11.3f}{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
