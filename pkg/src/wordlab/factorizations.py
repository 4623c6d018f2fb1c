"""Factorizations as cut sequences, bounded verifiers and searches.

A factorization ``x = V0 V1 V2 ...`` is stored as the cut positions
``0 = c0 < c1 < ... < cm``; block ``Vi`` is re-read from the stream as
``x[ci:ci+1)``.  Verifiers look at the first ``m`` blocks only and every
certificate records the bounds it used.

Violations are reported in a fixed canonical order so that results are
reproducible: single blocks by index; consecutive runs by ``(i, j)``;
permuted concatenations by size ``k``, then subset in lexicographic order,
then permutation in lexicographic order.
"""
from __future__ import annotations

from itertools import accumulate, combinations, permutations
from math import comb, factorial
from typing import Iterable, Sequence

from .certificates import HOLDS, REFUTED, VIOLATED, Certificate
from .colorings import Coloring
from .factors import FactorIndex
from .words import WordStream

DEFAULT_BUDGET = 10**6


class FactorizationError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    def __init__(self, needed: int, budget: int):
        super().__init__(f"{needed} concatenation checks needed, budget is {budget}")
        self.needed = needed
        self.budget = budget


class ExtractionTooShort(RuntimeError):
    pass


class Factorization:
    def __init__(self, base: WordStream, cuts: Sequence[int]):
        cuts = tuple(int(c) for c in cuts)
        if len(cuts) < 2 or cuts[0] != 0:
            raise FactorizationError("cuts must start at 0 and define at least one block")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise FactorizationError(f"cuts must be strictly increasing: {cuts}")
        self.base = base
        self.cuts = cuts
        self._blocks: dict[int, bytes] = {}

    @classmethod
    def from_lengths(cls, base: WordStream, lengths: Iterable[int]) -> "Factorization":
        return cls(base, (0, *accumulate(lengths)))

    @property
    def num_blocks(self) -> int:
        return len(self.cuts) - 1

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.cuts, self.cuts[1:]))

    def block(self, i: int) -> bytes:
        w = self._blocks.get(i)
        if w is None:
            w = self.base.factor(self.cuts[i], self.cuts[i + 1])
            self._blocks[i] = w
        return w

    def blocks(self, m: int | None = None) -> list[bytes]:
        return [self.block(i) for i in range(self.num_blocks if m is None else m)]

    def concat(self, order: Sequence[int]) -> bytes:
        return b"".join(self.block(i) for i in order)

    def shifted(self, j: int) -> "Factorization":
        """Same block lengths laid over the shifted word ``T^j(x)``."""
        return Factorization(self.base.shift(j), self.cuts)

    def show(self, m: int | None = None) -> list[str]:
        return [self.base.decode(b) for b in self.blocks(m)]

    def __repr__(self):
        return f"Factorization({self.base.spec!r}, cuts={self.cuts})"


def coarsen(f: Factorization, group_sizes: Sequence[int]) -> Factorization:
    """Merge consecutive blocks: the k-th new block joins the next ``group_sizes[k]`` old ones."""
    if any(g < 1 for g in group_sizes):
        raise FactorizationError("group sizes must be positive")
    if sum(group_sizes) > f.num_blocks:
        raise FactorizationError(f"groups cover {sum(group_sizes)} blocks, only {f.num_blocks} available")
    idx = (0, *accumulate(group_sizes))
    return Factorization(f.base, [f.cuts[i] for i in idx])


def groups_by_letter_count(f: Factorization, letter: int, at_least: int, m: int | None = None) -> list[int]:
    """Greedy group sizes so every merged block holds ``at_least`` copies of ``letter``.

    Groups are formed from the first ``m`` blocks (all by default); an
    unfinished tail is dropped.
    """
    m = f.num_blocks if m is None else m
    sizes, size, count = [], 0, 0
    for i in range(m):
        size += 1
        count += f.block(i).count(letter)
        if count >= at_least:
            sizes.append(size)
            size = count = 0
    return sizes


def _need_blocks(f: Factorization, m: int):
    if m < 1 or m > f.num_blocks:
        raise FactorizationError(f"need 1 <= m <= {f.num_blocks} blocks, got {m}")


def _specs(phi: Coloring, f: Factorization) -> dict:
    return {"word": f.base.spec, "coloring": phi.spec, "cuts": list(f.cuts)}


def _scan(phi: Coloring, f: Factorization, orders: Iterable[tuple[int, ...]], index: FactorIndex | None = None):
    """Walk concatenations in order; return (reference color, first violation, exempt count, checked)."""
    ref = None
    exempt = checked = 0
    cache: dict[bytes, object] = {}
    for order in orders:
        w = f.concat(order)
        if index is not None and not index.contains(w):
            exempt += 1
            continue
        checked += 1
        c = cache.get(w)
        if c is None:
            c = cache[w] = phi(w)
        if ref is None:
            ref = c
        elif c != ref:
            return ref, (order, w, c), exempt, checked
    return ref, None, exempt, checked


def _violation(f: Factorization, order, word, color, expected) -> dict:
    return {
        "order": list(order),
        "subset": sorted(order),
        "word": f.base.decode(word),
        "color": color,
        "expected": expected,
    }


def verify_monochromatic(phi: Coloring, f: Factorization, m: int) -> Certificate:
    _need_blocks(f, m)
    ref, bad, _, checked = _scan(phi, f, ((i,) for i in range(m)))
    cert = Certificate("monochromatic", HOLDS, {"m": m}, ref, None, {"checked": checked}, _specs(phi, f))
    if bad:
        cert.verdict = VIOLATED
        cert.witness = dict(_violation(f, *bad, ref), index=bad[0][0])
    return cert


def verify_sequential(phi: Coloring, f: Factorization, m: int) -> Certificate:
    _need_blocks(f, m)
    # a run V_i..V_{i+j} is the slice x[c_i:c_{i+j+1}), so each i is one row query
    cuts = f.cuts
    text = f.base.prefix(cuts[m])
    ref, bad, checked = None, None, 0
    for i in range(m):
        row = phi.row(text, cuts[i], cuts[i + 1:m + 1])
        if ref is None:
            ref = row[0]
        for j, c in enumerate(row):
            checked += 1
            if c != ref:
                bad = (i, j, c)
                break
        if bad:
            break
    cert = Certificate("sequential", HOLDS, {"m": m}, ref, None, {"checked": checked}, _specs(phi, f))
    if bad:
        i, j, c = bad
        order = tuple(range(i, i + j + 1))
        cert.verdict = VIOLATED
        cert.witness = dict(_violation(f, order, f.concat(order), c, ref), i=i, j=j)
    return cert


def permutation_budget(m: int, k_max: int) -> int:
    return sum(comb(m, k) * factorial(k) for k in range(1, k_max + 1))


def permuted_orders(m: int, k_max: int):
    for k in range(1, k_max + 1):
        for subset in combinations(range(m), k):
            yield from permutations(subset)


def _check_budget(m: int, k_max: int, budget: int):
    if not 1 <= k_max <= m:
        raise FactorizationError(f"need 1 <= k_max <= m, got k_max={k_max}, m={m}")
    needed = permutation_budget(m, k_max)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    return needed


def verify_ultra(phi: Coloring, f: Factorization, m: int, k_max: int, *, budget: int = DEFAULT_BUDGET) -> Certificate:
    _need_blocks(f, m)
    needed = _check_budget(m, k_max, budget)
    ref, bad, _, checked = _scan(phi, f, permuted_orders(m, k_max))
    cert = Certificate("ultra", HOLDS, {"m": m, "k_max": k_max}, ref, None,
                       {"checked": checked, "enumerated": needed}, _specs(phi, f))
    if bad:
        cert.verdict = VIOLATED
        cert.witness = _violation(f, *bad, ref)
    return cert


def verify_conditional(phi: Coloring, f: Factorization, index: FactorIndex, m: int, k_max: int,
                       *, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Like :func:`verify_ultra`, but concatenations absent from ``index`` are exempt."""
    _need_blocks(f, m)
    needed = _check_budget(m, k_max, budget)
    ref, bad, exempt, checked = _scan(phi, f, permuted_orders(m, k_max), index)
    specs = dict(_specs(phi, f), index=f"{index.source.spec}:{index.horizon}")
    cert = Certificate("conditional", HOLDS, {"m": m, "k_max": k_max, "horizon": index.horizon}, ref, None,
                       {"checked": checked, "exempt": exempt, "enumerated": needed}, specs)
    if bad:
        cert.verdict = VIOLATED
        cert.witness = _violation(f, *bad, ref)
    return cert


NOTIONS = ("mono", "sequential", "ultra")


def verify_notion(phi: Coloring, f: Factorization, m: int, notion: str, k_max: int = 1,
                  *, budget: int = DEFAULT_BUDGET) -> Certificate:
    if notion == "mono":
        return verify_monochromatic(phi, f, m)
    if notion == "sequential":
        return verify_sequential(phi, f, m)
    if notion == "ultra":
        return verify_ultra(phi, f, m, k_max, budget=budget)
    raise FactorizationError(f"unknown notion {notion!r}; expected one of {NOTIONS}")


def verify_shift_invariant(phi: Coloring, f: Factorization, m: int, j_max: int, notion: str = "mono",
                           k_max: int = 1, *, budget: int = DEFAULT_BUDGET) -> Certificate:
    """Run the chosen verifier on ``T^j(x)`` with the same block lengths, ``j = 0..j_max``.

    The color may change with ``j`` but must be constant for each ``j``.
    """
    per_shift = []
    first_bad = None
    for j in range(j_max + 1):
        c = verify_notion(phi, f.shifted(j), m, notion, k_max, budget=budget)
        per_shift.append({"j": j, "verdict": c.verdict, "color": c.color})
        if c.violated and first_bad is None:
            first_bad = dict(c.witness, j=j)
    bounds = {"m": m, "j_max": j_max}
    if notion == "ultra":
        bounds["k_max"] = k_max
    cert = Certificate(f"shift-invariant-{notion}", HOLDS, bounds, [s["color"] for s in per_shift],
                       None, {"per_shift": per_shift}, _specs(phi, f))
    if first_bad is not None:
        cert.verdict = VIOLATED
        cert.witness = first_bad
    return cert


def find_monochromatic(phi: Coloring, x: WordStream, horizon: int, block_cap: int,
                       color=None) -> Certificate:
    """Dynamic reachability: positions reachable from 0 by color-c blocks of length <= L.

    Blocks start below ``N`` and may run up to ``N + L``.  Any factorization
    of the whole word into blocks of length <= L has a cut in ``[N, N + L)``
    reached this way, so a color that never gets to ``N`` is refuted for
    those bounds.  Holds (with the blocks) as soon as some color reaches
    ``N``; otherwise ``RefutedUpToBounds``.  Every color is reported in
    ``details["per_color"]`` with its reachable set.
    """
    n, cap = horizon, block_cap
    if n < 1 or cap < 1:
        raise FactorizationError("horizon and block cap must be positive")
    colors = list(phi.colors) if color is None else [color]
    text = x._fill(n + cap)
    goal = min(n, len(text))  # a finite word is covered once it is used up
    reach = {c: {0: -1} for c in colors}  # position -> predecessor
    for p in range(goal):
        if not any(p in reach[c] for c in colors):
            continue
        stops = range(p + 1, min(len(text), p + cap) + 1)
        for q, c in zip(stops, phi.row(text, p, stops)):
            r = reach.get(c)
            if r is not None and p in r and q not in r:
                r[q] = p
    per_color = {}
    winner = None
    for c in colors:
        top = max(reach[c])
        ok = top >= goal
        per_color[str(c)] = {"max_reach": top, "reached": ok, "reachable": sorted(reach[c])}
        if ok and winner is None:
            winner = c
    bounds = {"horizon": n, "block_cap": cap}
    specs = {"word": x.spec, "coloring": phi.spec}
    if color is not None:
        specs["color"] = color
    if winner is None:
        return Certificate("search-monochromatic", REFUTED, bounds, None, None, {"per_color": per_color}, specs)
    path = [min(p for p in reach[winner] if p >= goal)]
    while path[-1] != 0:
        path.append(reach[winner][path[-1]])
    cuts = path[::-1]
    f = Factorization(x, cuts)
    return Certificate("search-monochromatic", HOLDS, bounds, winner,
                       {"cuts": cuts, "blocks": f.show()}, {"per_color": per_color}, specs)


def refutation_is_sound(phi: Coloring, x: WordStream, cert: Certificate, color) -> bool:
    """Re-check a refuted color: no color-c block leaves the reported reachable set."""
    n, cap = cert.bounds["horizon"], cert.bounds["block_cap"]
    reachable = set(cert.details["per_color"][str(color)]["reachable"])
    text = x._fill(n + cap)
    if 0 not in reachable:
        return False
    for p in reachable:
        for q in range(p + 1, min(len(text), p + cap) + 1):
            if phi(text[p:q]) == color and q not in reachable:
                return False
    return max(reachable) < min(n, len(text))


def find_sequential(phi: Coloring, x: WordStream, horizon: int) -> Certificate:
    """Suffix factorization from monochromatic positions of ``{m<n} -> phi(x[m:n])``."""
    from .ramsey import PairColoring, extract_monochromatic_positions

    if horizon < 2:
        raise FactorizationError("horizon must be at least 2")
    pc = PairColoring.word_induced(phi, x, horizon)
    ext = extract_monochromatic_positions(pc, horizon, 3)
    positions, color = ext.positions, ext.color
    if len(positions) < 3:
        raise ExtractionTooShort(f"only {len(positions)} monochromatic positions below {horizon}")
    n0 = positions[0]
    f = Factorization(x.shift(n0) if n0 else x, [p - n0 for p in positions])
    check = verify_sequential(phi, f, f.num_blocks)
    return Certificate("search-sequential", check.verdict, {"horizon": horizon}, check.color,
                       {"offset": n0, "cuts": list(f.cuts), "blocks": f.num_blocks,
                        "positions": list(positions)},
                       {"pair_color": color, "checked": check.details["checked"]},
                       {"word": x.spec, "coloring": phi.spec})
