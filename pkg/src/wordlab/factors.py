"""Factor queries over a finite prefix of a stream.

Every answer is relative to the horizon ``N``: "absent" means absent from
``x[0:N)``, never a statement about the whole infinite word.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from . import _kernels
from .words import WordStream


class HorizonTooSmall(ValueError):
    pass


class FactorAbsent(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of a horizon-relative property check.

    ``status`` names the outcome (``NoPowerFound``, ``Balanced``, ...);
    ``witness`` is ``None`` exactly when the property held on the horizon.
    """

    check: str
    status: str
    horizon: int
    params: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] | None = None

    @property
    def holds(self) -> bool:
        return self.witness is None


class FactorIndex:
    """Occurrence structure over ``x[0:N)``.

    Membership and first occurrence use the byte-string search of the
    prefix; per-length factor sets are built on demand and memoized.
    """

    def __init__(self, source: WordStream, horizon: int):
        if horizon < 1:
            raise ValueError("horizon must be at least 1")
        self.source = source
        self.horizon = horizon
        self.text = source.prefix(horizon)
        self._by_length: dict[int, frozenset[bytes]] = {}

    def __repr__(self):
        return f"FactorIndex({self.source.spec!r}, N={self.horizon})"

    @property
    def alphabet(self):
        return self.source.alphabet

    def contains(self, u: bytes) -> bool:
        return len(u) > 0 and u in self.text

    __contains__ = contains

    def first_occurrence(self, u: bytes) -> int | None:
        if not u:
            raise ValueError("first occurrence of the empty word is undefined")
        m = self.text.find(u)
        return None if m < 0 else m

    def occurrences(self, u: bytes) -> list[int]:
        out = []
        m = self.text.find(u)
        while m >= 0:
            out.append(m)
            m = self.text.find(u, m + 1)
        return out

    def factors(self, n: int) -> frozenset[bytes]:
        """All distinct length-``n`` factors of the prefix."""
        if n < 1 or n > self.horizon:
            raise HorizonTooSmall(f"length {n} outside 1..{self.horizon}")
        got = self._by_length.get(n)
        if got is None:
            t = self.text
            got = frozenset(t[i:i + n] for i in range(len(t) - n + 1))
            self._by_length[n] = got
        return got

    def complexity(self, n: int) -> int:
        # windows near the end are under-sampled; insist on N >= 4n
        if 4 * n > self.horizon:
            raise HorizonTooSmall(f"complexity({n}) needs horizon >= {4 * n}, have {self.horizon}")
        return len(self.factors(n))

    def _extensions(self, n: int, right: bool) -> dict[bytes, set[int]]:
        ext: dict[bytes, set[int]] = {}
        for w in self.factors(n + 1):
            if right:
                ext.setdefault(w[:-1], set()).add(w[-1])
            else:
                ext.setdefault(w[1:], set()).add(w[0])
        return ext

    def right_special_factors(self, n: int) -> frozenset[bytes]:
        if not 1 <= n < self.horizon:
            raise HorizonTooSmall(f"special factors of length {n} need 1 <= n < {self.horizon}")
        return frozenset(y for y, e in self._extensions(n, True).items() if len(e) >= 2)

    def left_special_factors(self, n: int) -> frozenset[bytes]:
        if not 1 <= n < self.horizon:
            raise HorizonTooSmall(f"special factors of length {n} need 1 <= n < {self.horizon}")
        return frozenset(y for y, e in self._extensions(n, False).items() if len(e) >= 2)

    def is_r_power_free(self, r: int) -> Verdict:
        if r < 2:
            raise ValueError("r must be at least 2")
        pos, period = _kernels.first_repetition(self.text, r - 1, 0)
        if pos < 0:
            return Verdict("power-free", "NoPowerFound", self.horizon, {"r": r})
        u = self.text[pos:pos + period]
        return Verdict("power-free", "PowerFound", self.horizon, {"r": r},
                       {"u": u, "position": pos})

    def is_overlap_free(self) -> Verdict:
        pos, period = _kernels.first_repetition(self.text, 1, 1)
        if pos < 0:
            return Verdict("overlap-free", "NoOverlapFound", self.horizon)
        u = self.text[pos:pos + period]
        return Verdict("overlap-free", "OverlapFound", self.horizon, {},
                       {"u": u, "u_prime": u[:1], "position": pos})

    @cached_property
    def _letter_counts(self) -> np.ndarray:
        a = np.frombuffer(self.text, dtype=np.uint8)
        k = self.alphabet.size
        cs = np.zeros((k, len(a) + 1), dtype=np.int64)
        for letter in range(k):
            cs[letter, 1:] = np.cumsum(a == letter)
        return cs

    def is_balanced(self, up_to: int) -> Verdict:
        if not 1 <= up_to <= self.horizon:
            raise HorizonTooSmall(f"balance up to {up_to} needs horizon >= {up_to}")
        cs = self._letter_counts
        for n in range(1, up_to + 1):
            for letter in range(self.alphabet.size):
                counts = cs[letter, n:] - cs[letter, :-n]
                hi, lo = int(np.argmax(counts)), int(np.argmin(counts))
                if counts[hi] - counts[lo] > 1:
                    t = self.text
                    return Verdict("balanced", "Unbalanced", self.horizon, {"up_to": up_to},
                                   {"u": t[hi:hi + n], "v": t[lo:lo + n], "letter": letter})
        return Verdict("balanced", "Balanced", self.horizon, {"up_to": up_to})

    def reversal_closed(self, up_to: int) -> Verdict:
        if up_to < 1 or 2 * up_to > self.horizon:
            raise HorizonTooSmall(f"reversal closure up to {up_to} needs horizon >= {2 * up_to}")
        for n in range(1, up_to + 1):
            fs = self.factors(n)
            for u in sorted(fs):
                if u[::-1] not in fs:
                    return Verdict("reversal", "NotClosed", self.horizon, {"up_to": up_to}, {"u": u})
        return Verdict("reversal", "Closed", self.horizon, {"up_to": up_to})

    def _window_bound(self, occ: list[int], length: int, limit: int) -> int:
        # smallest k such that every length-k window of x[0:limit) holds an occurrence
        occ = [o for o in occ if o + length <= limit]
        if not occ:
            return limit + 1
        k = occ[0] + length
        for a, b in zip(occ, occ[1:]):
            k = max(k, b - a + length - 1)
        return max(k, limit - occ[-1])

    def uniform_recurrence_bound(self, u: bytes) -> Verdict:
        """Window length guaranteeing an occurrence of ``u``.

        Reports ``NotUniformlyRecurrent`` when the bound measured on the whole
        horizon exceeds the bound measured on its first half, i.e. the gaps
        between occurrences are still growing at the horizon.
        """
        if not self.contains(u):
            raise FactorAbsent(f"{self.alphabet.decode(u)!r} does not occur within the horizon")
        occ = self.occurrences(u)
        full = self._window_bound(occ, len(u), self.horizon)
        half = self._window_bound(occ, len(u), self.horizon // 2)
        params = {"u": u}
        if full > half:
            return Verdict("recurrence", "NotUniformlyRecurrent", self.horizon, params,
                           {"bound_half": half, "bound_full": full})
        return Verdict("recurrence", "UniformlyRecurrent", self.horizon, dict(params, k=full))

    def full_complexity_check(self, n: int) -> Verdict:
        need = self.alphabet.size ** n
        if n < 1 or need + n - 1 > self.horizon:
            raise HorizonTooSmall(f"{need} factors of length {n} cannot fit in {self.horizon} letters")
        count = len(self.factors(n))
        params = {"n": n, "expected": need, "complexity": count}
        if count == need:
            return Verdict("full-complexity", "FullComplexity", self.horizon, params)
        missing = next(w for w in _all_words(self.alphabet.size, n) if w not in self.factors(n))
        return Verdict("full-complexity", "NotFull", self.horizon, params, {"missing": missing})


def _all_words(k: int, n: int):
    from itertools import product
    for t in product(range(k), repeat=n):
        yield bytes(t)


def build_index(x: WordStream, horizon: int) -> FactorIndex:
    return FactorIndex(x, horizon)
