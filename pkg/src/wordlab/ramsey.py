"""Finite-scale Ramsey, Hindman and Milliken-Taylor searches.

The underlying theorems are infinitary; everything here works on bounded
fragments and reports ``Exhausted`` (with its bounds) instead of guessing
when a search runs out of room.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Collection, Hashable, Sequence

import numpy as np

from . import _kernels
from .certificates import EXHAUSTED, HOLDS, Certificate
from .colorings import Coloring
from .factorizations import Factorization, verify_shift_invariant
from .words import BINARY, Alphabet, Periodic, WordStream

IntColoring = Callable[[int], Hashable]


class PairColoring:
    """Coloring of pairs ``{m < n}`` of positions, as small integer codes.

    ``palette[code]`` gives the actual color.  Dense tables go through the
    compiled greedy kernel; word-induced colorings are evaluated row by row.
    """

    def __init__(self, row: Callable[[int, np.ndarray], np.ndarray], palette: Sequence[Hashable],
                 spec: str, matrix: np.ndarray | None = None):
        self._row = row
        self.palette = tuple(palette)
        self.spec = spec
        self.matrix = matrix

    def row(self, m: int, later: np.ndarray) -> np.ndarray:
        return self._row(m, later)

    def code(self, m: int, n: int) -> int:
        if m == n:
            raise ValueError("pairs need two distinct positions")
        m, n = min(m, n), max(m, n)
        return int(self._row(m, np.array([n]))[0])

    def color(self, m: int, n: int) -> Hashable:
        return self.palette[self.code(m, n)]

    @classmethod
    def explicit(cls, matrix: np.ndarray, palette: Sequence[Hashable] | None = None) -> "PairColoring":
        """Colors read from ``matrix[m, n]`` with ``m < n`` (the lower triangle is ignored)."""
        mat = np.ascontiguousarray(np.triu(np.asarray(matrix, dtype=np.uint8), 1))
        mat = mat + mat.T
        pal = tuple(range(int(mat.max()) + 1)) if palette is None else tuple(palette)
        return cls(lambda m, later: mat[m, later], pal, "explicit", mat)

    @classmethod
    def word_induced(cls, phi: Coloring, x: WordStream, horizon: int) -> "PairColoring":
        """``{m < n} -> phi(x[m:n])`` for positions below ``horizon``."""
        text = x.prefix(horizon)
        palette = tuple(phi.colors)
        code = {c: i for i, c in enumerate(palette)}

        def row(m, later):
            cols = phi.row(text, m, [int(n) for n in later])
            return np.fromiter((code[c] for c in cols), dtype=np.int64, count=len(cols))

        return cls(row, palette, f"word:{x.spec}|{phi.spec}")


@dataclass(frozen=True)
class Extraction:
    positions: tuple[int, ...]
    color: Hashable
    picks: tuple[int, ...]
    step_colors: tuple[Hashable, ...]
    target: int = 0

    @property
    def sufficient(self) -> bool:
        return len(self.positions) >= self.target

    @property
    def status(self) -> str:
        return "ok" if self.sufficient else "Insufficient"


def _greedy_rows(pc: PairColoring, candidates: np.ndarray):
    live = candidates
    picks, colors = [], []
    while live.size:
        v = int(live[0])
        rest = live[1:]
        picks.append(v)
        if not rest.size:
            colors.append(-1)
            break
        row = np.asarray(pc.row(v, rest))
        c = int(np.argmax(np.bincount(row)))
        colors.append(c)
        live = rest[row == c]
    return picks, colors


def extract_monochromatic_positions(pc: PairColoring, horizon: int, target_size: int = 0,
                                    candidates: Sequence[int] | None = None) -> Extraction:
    """Greedy pigeonhole extraction of a pair-monochromatic position set.

    Each step takes the least live position and keeps the majority color
    class among the later live positions; a final pigeonhole over the step
    colors picks the output color.  With ``|C|`` colors the result has at
    least ``floor(log_|C| N) / |C|`` positions.
    """
    if horizon < 2:
        raise ValueError("horizon must be at least 2")
    cand = np.arange(horizon, dtype=np.int64) if candidates is None else np.array(sorted(candidates), dtype=np.int64)
    if pc.matrix is not None:
        picks, codes = _kernels.greedy_extract(pc.matrix, cand)
    else:
        picks, codes = _greedy_rows(pc, cand)
    colored = [c for c in codes if c >= 0]
    if colored:
        counts = np.bincount(colored)
        best = int(np.argmax(counts))
        positions = [p for p, c in zip(picks, codes) if c == best or c < 0]
        color = pc.palette[best]
    else:
        positions, color = list(picks), None
    steps = tuple(pc.palette[c] if c >= 0 else None for c in codes)
    return Extraction(tuple(int(p) for p in positions), color, tuple(int(p) for p in picks), steps, target_size)


def is_pair_monochromatic(pc: PairColoring, positions: Sequence[int]) -> bool:
    cols = {pc.code(a, b) for a, b in combinations(positions, 2)}
    return len(cols) <= 1


def shifted_extract(phi: Coloring, x: WordStream, horizon: int, k: int) -> tuple[tuple[int, ...], list]:
    """Positions whose pairs are monochromatic for every shift ``0..k`` (one color per shift)."""
    x.prefix(horizon + k)
    cand: Sequence[int] = range(horizon)
    colors = []
    for i in range(k + 1):
        pc = PairColoring.word_induced(phi, x.shift(i), horizon)
        ext = extract_monochromatic_positions(pc, horizon, candidates=cand)
        cand = ext.positions
        colors.append(ext.color)
    return tuple(cand), colors


# --- Hindman finite sums -------------------------------------------------------

def finite_sums(seq: Sequence[int]) -> list[int]:
    """All ``2^q - 1`` non-empty subset sums, in subset-bitmask order."""
    sums = [0]
    for n in seq:
        sums += [s + n for s in sums]
    return sums[1:]


@dataclass(frozen=True)
class FSWitness:
    sequence: tuple[int, ...]
    color: Hashable
    sums: tuple[int, ...] = field(repr=False, default=())

    @property
    def fs_set(self) -> frozenset[int]:
        return frozenset(self.sums)


@dataclass(frozen=True)
class Exhausted:
    bounds: dict
    nodes: int

    verdict = EXHAUSTED


def validate_fs(psi: IntColoring, w: FSWitness) -> bool:
    sums = finite_sums(w.sequence)
    return len(sums) == 2 ** len(w.sequence) - 1 and all(psi(s) == w.color for s in sums)


def _cached(psi: IntColoring) -> IntColoring:
    memo: dict[int, Hashable] = {}

    def f(n):
        c = memo.get(n)
        if c is None:
            c = memo[n] = psi(n)
        return c
    return f


def hindman_search(psi: IntColoring, q: int, s_max: int, restrict_to: Collection[int] | None = None,
                   *, node_budget: int = 10**7) -> FSWitness | Exhausted:
    """Lexicographically least ``n1 < ... < nq`` whose finite sums share one color.

    The total ``n1 + ... + nq`` stays within ``s_max``.  With ``restrict_to``
    every finite sum must also lie in that set (sub-IP-set search).
    """
    if q < 1:
        raise ValueError("q must be positive")
    col = _cached(psi)
    allowed = None if restrict_to is None else frozenset(restrict_to)
    pool = None if allowed is None else sorted(allowed)
    nodes = 0

    def dfs(seq, sums, total, color):
        nonlocal nodes
        if len(seq) == q:
            return seq, color
        rest = q - len(seq) - 1
        lo = seq[-1] + 1 if seq else 1
        # n + (n+1) + ... + (n+rest) must fit
        hi = (s_max - total - rest * (rest + 1) // 2) // (rest + 1)
        options = range(lo, hi + 1) if pool is None else (n for n in pool if lo <= n <= hi)
        for n in options:
            nodes += 1
            if nodes > node_budget:
                return None
            c = col(n) if color is None else color
            new = [s + n for s in sums]
            if allowed is not None and any(s not in allowed for s in new):
                continue
            if all(col(s) == c for s in new):
                got = dfs(seq + [n], sums + new, total + n, c)
                if got is not None:
                    return got
            if nodes > node_budget:
                return None
        return None

    got = dfs([], [0], 0, None)
    if got is None:
        return Exhausted({"q": q, "s_max": s_max, "restricted": allowed is not None,
                          "node_budget": node_budget}, nodes)
    seq, color = got
    return FSWitness(tuple(seq), color, tuple(finite_sums(seq)))


def power_coloring(phi: Coloring, u: bytes) -> IntColoring:
    """``n -> phi(u^n)``."""
    return lambda n: phi(u * n)


def ultra_from_fs(u: bytes, w: FSWitness, alphabet: Alphabet = BINARY) -> Factorization:
    """Blocks ``u^{n1}, u^{n2}, ...`` of the periodic word ``u^omega``."""
    return Factorization.from_lengths(Periodic(u, alphabet), [len(u) * n for n in w.sequence])


# --- Milliken-Taylor -----------------------------------------------------------

class ComponentColoring:
    """Coloring of ``k``-sets ``{s1 < ... < sk}`` by ``(psi_1(s1), ..., psi_k(sk))``."""

    def __init__(self, parts: Sequence[IntColoring]):
        self.parts = [_cached(p) for p in parts]

    def __call__(self, sums: Sequence[int]):
        return tuple(p(s) for p, s in zip(self.parts, sums))


@dataclass(frozen=True)
class MTWitness:
    arity: int
    sequence: tuple[int, ...]
    color: Hashable
    families: int


def _subsets_with_max(d: int):
    """Non-empty subsets of ``{1..d}`` containing ``d``, as sorted tuples."""
    for r in range(d):
        for rest in combinations(range(1, d), r):
            yield rest + (d,)


def block_families(q: int, k: int, last: int | None = None):
    """All ``F1 < F2 < ... < Fk`` of non-empty subsets of ``{1..q}``.

    With ``last`` given, only families whose ``Fk`` has maximum ``last``.
    """
    def build(upto, slots):
        # families of `slots` blocks, every index below `upto`
        if slots == 0:
            yield ()
            return
        for top in range(slots, upto):
            for f in _subsets_with_max(top):
                for head in build(f[0], slots - 1):
                    yield head + (f,)

    tops = range(k, q + 1) if last is None else [last]
    for top in tops:
        for f in _subsets_with_max(top):
            for head in build(f[0], k - 1):
                yield head + (f,)


def _family_sums(seq: Sequence[int], fam) -> tuple[int, ...]:
    return tuple(sum(seq[i - 1] for i in f) for f in fam)


def validate_mt(psi: Callable, w: MTWitness) -> bool:
    seq = w.sequence
    if w.arity >= 2 and any(seq[i] <= sum(seq[:i]) for i in range(1, len(seq))):
        return False
    return all(psi(_family_sums(seq, fam)) == w.color for fam in block_families(len(seq), w.arity))


def milliken_taylor_search(psi: Callable, k: int, q: int, s_max: int,
                           *, node_budget: int = 10**7) -> MTWitness | Exhausted:
    """Lexicographically least ``n1 < ... < nq`` on which ``psi`` is constant over block-sum k-sets.

    For ``k >= 2`` the sequence is kept superincreasing (each term exceeds the
    sum of the earlier ones) so the sums over ``F1 < ... < Fk`` come out in
    increasing order and form a genuine k-set.  A :class:`ComponentColoring`
    is checked position by position, which prunes much earlier but accepts
    exactly the same sequences.
    """
    if q < k or k < 1:
        raise ValueError("need 1 <= k <= q")
    componentwise = isinstance(psi, ComponentColoring)
    nodes = 0
    families = 0

    def check(seq, target):
        """Check constraints introduced by the last index; return the (possibly new) target."""
        nonlocal families
        d = len(seq)
        if componentwise:
            target = list(target) if target is not None else [None] * k
            for f in _subsets_with_max(d):
                s = sum(seq[i - 1] for i in f)
                # F can sit in position p iff p-1 indices precede it and k-p follow
                for p in range(1, k + 1):
                    if f[0] >= p and d <= q - (k - p):
                        families += 1
                        c = psi.parts[p - 1](s)
                        if target[p - 1] is None:
                            target[p - 1] = c
                        elif target[p - 1] != c:
                            return False, None
            return True, tuple(target) if None not in target else target
        for fam in block_families(d, k, last=d):
            families += 1
            c = psi(_family_sums(seq, fam))
            if target is None:
                target = c
            elif c != target:
                return False, None
        return True, target

    def dfs(seq, total, target):
        nonlocal nodes
        if len(seq) == q:
            return seq, target
        rest = q - len(seq) - 1
        lo = seq[-1] + 1 if seq else 1
        if k >= 2 and seq:
            lo = max(lo, total + 1)
        hi = (s_max - total - rest * (rest + 1) // 2) // (rest + 1)
        for n in range(lo, hi + 1):
            nodes += 1
            if nodes > node_budget:
                return None
            ok, t = check(seq + [n], list(target) if isinstance(target, list) else target)
            if ok:
                got = dfs(seq + [n], total + n, t)
                if got is not None:
                    return got
            if nodes > node_budget:
                return None
        return None

    got = dfs([], 0, None)
    if got is None:
        return Exhausted({"k": k, "q": q, "s_max": s_max, "node_budget": node_budget}, nodes)
    seq, target = got
    color = tuple(target) if componentwise else target
    return MTWitness(k, tuple(seq), color, families)


# --- shift-invariant ultra monochromatic factorizations of u^omega ------------

def rotations(u: bytes) -> list[bytes]:
    return [u[i:] + u[:i] for i in range(len(u))]


def shift_invariant_ultra(u: bytes, phi: Coloring, q: int, s_max: int, method: str = "iterated-hindman",
                          alphabet: Alphabet = BINARY, *, k_max: int | None = None,
                          node_budget: int = 10**7) -> tuple[Factorization | None, Certificate]:
    """Build a shift-invariant ultra monochromatic factorization of ``u^omega`` with ``q`` blocks.

    ``iterated-hindman`` finds an FS-set for rotation 0 and then searches
    inside it for rotation 1, 2, ...; ``milliken-taylor`` colors k-sets by the
    rotation colors and starts the blocks at index ``k`` so that every block
    sum can sit in each of the ``k`` positions.  The result is checked with
    :func:`verify_shift_invariant` at ``j_max = |u|``.
    """
    k = len(u)
    if k < 1:
        raise ValueError("u must be non-empty")
    rots = rotations(u)
    psis = [power_coloring(phi, r) for r in rots]
    k_max = min(q, 4) if k_max is None else k_max
    specs = {"period": alphabet.decode(u), "coloring": phi.spec, "method": method}
    details: dict = {}
    if method in ("iterated-hindman", "ih"):
        restrict = None
        stages = []
        w = None
        for i, psi in enumerate(psis):
            w = hindman_search(psi, q, s_max, restrict, node_budget=node_budget)
            if isinstance(w, Exhausted):
                return None, Certificate("sif", EXHAUSTED, {"q": q, "s_max": s_max}, None,
                                         None, {"stage": i, "stages": stages, "nodes": w.nodes}, specs)
            stages.append({"rotation": i, "sequence": list(w.sequence), "color": w.color})
            restrict = w.fs_set
        sequence = list(w.sequence)
        details["stages"] = stages
    elif method in ("milliken-taylor", "mt"):
        q_total = q + 2 * (k - 1)
        psi = ComponentColoring(psis)
        w = milliken_taylor_search(psi, k, q_total, s_max, node_budget=node_budget)
        if isinstance(w, Exhausted):
            return None, Certificate("sif", EXHAUSTED, {"q": q, "s_max": s_max}, None,
                                     None, {"nodes": w.nodes, "q_total": q_total}, specs)
        seq = w.sequence
        sequence = list(seq[k - 1:k - 1 + q])
        # the families F_i = {i} (i < j), F_j = F, F_{j+i} = {M+i}, for F inside the used block range
        checked, failures = 0, []
        for j in range(1, k + 1):
            for r in range(1, q + 1):
                for sub in combinations(range(k, k + q), r):
                    m_ = max(sub)
                    fam = [(i,) for i in range(1, j)] + [sub] + [(m_ + i,) for i in range(1, k - j + 1)]
                    checked += 1
                    if psi(_family_sums(seq, fam))[j - 1] != w.color[j - 1]:
                        failures.append([list(f) for f in fam])
        details.update({"mt_sequence": list(seq), "mt_color": w.color, "mt_families": w.families,
                        "printed_families_checked": checked, "printed_family_failures": failures})
    else:
        raise ValueError(f"unknown method {method!r}")
    f = Factorization.from_lengths(Periodic(u, alphabet), [k * n for n in sequence])
    cert = verify_shift_invariant(phi, f, q, k, "ultra", k_max)
    cert.claim = "sif"
    cert.bounds.update({"q": q, "s_max": s_max})
    cert.details.update(details, sequence=sequence)
    cert.specs.update(specs)
    return f, cert


# --- integer colorings from text ------------------------------------------------

class IntColoringSpec:
    """Named coloring of the positive integers, e.g. ``mod:3`` or ``power:01:len-mod:2``."""

    def __init__(self, fn: IntColoring, spec: str):
        self.fn = fn
        self.spec = spec

    def __call__(self, n: int):
        return self.fn(n)

    def __repr__(self):
        return f"<IntColoring {self.spec}>"


def parse_int_coloring(spec: str) -> IntColoringSpec:
    """``mod:k[:table]``, ``const:c`` or ``power:<u>:<word coloring>`` (``n -> phi(u^n)``)."""
    from .colorings import parse_coloring

    kind, _, rest = spec.strip().partition(":")
    if kind == "mod":
        k, _, table = rest.partition(":")
        if not k.isdigit() or int(k) < 1:
            raise ValueError("mod:<k>[:c0,c1,...]")
        k = int(k)
        tab = [int(v) for v in table.split(",")] if table else list(range(k))
        if len(tab) != k:
            raise ValueError(f"mod table needs {k} entries")
        return IntColoringSpec(lambda n: tab[n % k], spec)
    if kind == "const":
        c = int(rest or 0)
        return IntColoringSpec(lambda n: c, spec)
    if kind == "power":
        u, sep, inner = rest.partition(":")
        if not sep or not u:
            raise ValueError("power:<u>:<word coloring>")
        word = Alphabet.from_text(u).encode(u)
        return IntColoringSpec(power_coloring(parse_coloring(inner), word), spec)
    raise ValueError(f"unknown integer coloring {spec!r}")
