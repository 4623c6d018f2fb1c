"""Permuted non-factor witnesses for blocks over a power-free Sturmian word.

Given blocks ``V0, V1, ...`` and an ``r``-power-free Sturmian word ``x``,
:func:`find_permuted_nonfactor` looks for distinct indices and an order
whose concatenation is absent from ``x``.  It works by induction on
``|V0 V1 ... Vr|``: each round either tests a handful of short
concatenations, or strips one layer of ``L0: 0 -> 0, 1 -> 01`` from the
blocks and the word and recurses on strictly shorter data.

Every answer is relative to a :class:`FactorIndex`.  A returned witness is
always re-checked against the caller's index; when the finite block list
or horizon is too small for a step, the result is ``Inconclusive`` with the
reason.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .certificates import INCONCLUSIVE, VIOLATED, Certificate
from .colorings import FactorOf
from .factorizations import Factorization
from .factors import FactorIndex, HorizonTooSmall
from .words import WordStream

SENTINEL = "sentinel-0"  # blocks are parsed as if a 0 followed them


class NotInImage(ValueError):
    pass


class NotSturmianInput(ValueError):
    pass


def desubstitute_L0(w: bytes) -> bytes:
    """Preimage under ``0 -> 0, 1 -> 01``: ``01`` reads as 1, a lone ``0`` as 0."""
    if not w or w[0] != 0:
        raise NotInImage("images under L0 start with 0")
    out = bytearray()
    i, n = 0, len(w)
    while i < n:
        if w[i] != 0:
            raise NotInImage(f"11 at position {i - 1}")
        if i + 1 < n and w[i + 1] == 1:
            out.append(1)
            i += 2
        else:
            out.append(0)
            i += 1
    return bytes(out)


@dataclass(frozen=True)
class BlockSequence:
    blocks: tuple[bytes, ...]
    provenance: str = ""

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(bytes(b) for b in self.blocks))
        if any(not b for b in self.blocks):
            raise ValueError("blocks must be non-empty")
        if any(c > 1 for b in self.blocks for c in b):
            raise ValueError("blocks must be binary")

    def __len__(self):
        return len(self.blocks)

    def measure(self, r: int) -> int:
        if len(self.blocks) <= r:
            raise ValueError(f"the measure needs more than {r} blocks")
        return sum(len(b) for b in self.blocks[:r + 1])

    def concat(self, order: Sequence[int]) -> bytes:
        return b"".join(self.blocks[i] for i in order)


@dataclass(frozen=True)
class PermutedWitness:
    indices: tuple[int, ...]  # n1 < ... < nk
    sigma: tuple[int, ...]  # 1-based; the word is V[n_sigma(1)] ... V[n_sigma(k)]
    word: bytes
    horizon: int
    trace: tuple[str, ...] = ()

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def order(self) -> tuple[int, ...]:
        return tuple(self.indices[s - 1] for s in self.sigma)

    @classmethod
    def from_order(cls, order: Sequence[int], word: bytes, horizon: int, trace=()) -> "PermutedWitness":
        indices = tuple(sorted(order))
        return cls(indices, tuple(indices.index(t) + 1 for t in order), word, horizon, tuple(trace))


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    trace: tuple[str, ...] = ()
    details: dict = field(default_factory=dict)

    verdict = INCONCLUSIVE


class _Stuck(Exception):
    def __init__(self, reason, **details):
        super().__init__(reason)
        self.reason = reason
        self.details = details


def _check_input(idx: FactorIndex):
    t = idx.text
    if b"\x00\x00" in t and b"\x01\x01" in t:
        raise NotSturmianInput("both 00 and 11 occur")
    if any(c > 1 for c in t):
        raise NotSturmianInput("word is not binary")
    if not idx.is_balanced(min(20, idx.horizon)).holds:
        raise NotSturmianInput("word is not balanced up to length 20")


def _normalize(blocks: list[bytes], text: bytes, trace: list[str]):
    """Relabel so that 11 is absent, then make the text start with 0."""
    if b"\x01\x01" in text:
        swap = bytes.maketrans(b"\x00\x01", b"\x01\x00")
        blocks = [b.translate(swap) for b in blocks]
        text = text.translate(swap)
        trace.append("relabel")
    if text[:1] == b"\x01":
        text = b"\x00" + text
        trace.append("prepend-0")
    return blocks, text


def _first_absent(blocks, text, orders):
    for order in orders:
        w = b"".join(blocks[i] for i in order)
        if w not in text:
            return list(order)
    return None


def _pairs(blocks, r):
    """Distinct ``(m, n)`` with ``|Vn| > r |Vm|``, in lexicographic order."""
    for m in range(len(blocks)):
        for n in range(len(blocks)):
            if n != m and len(blocks[n]) > r * len(blocks[m]):
                yield m, n


def _split(blocks, pick, avoid):
    """Least ``(i, j)`` outside ``avoid`` whose chosen end letters differ."""
    free = [t for t in range(len(blocks)) if t not in avoid]
    for j in free:
        for i in free:
            if i >= j:
                break
            if pick(blocks[i]) != pick(blocks[j]):
                return i, j
    return None


def _special_step(blocks, text, r, right: bool, trace):
    # if all four occur, VmVn and VnVm are special factors of equal length, so they
    # commute and Vm^r is a prefix of Vn, which r-power-freeness forbids
    pick = (lambda v: v[0]) if right else (lambda v: v[-1])
    for m, n in _pairs(blocks, r):
        ij = _split(blocks, pick, (m, n))
        if ij is None:
            continue
        i, j = ij
        if right:
            orders = [(m, n, i), (m, n, j), (n, m, i), (n, m, j)]
        else:
            orders = [(i, m, n), (j, m, n), (i, n, m), (j, n, m)]
        got = _first_absent(blocks, text, orders)
        if got is not None:
            trace.append(f"{'right' if right else 'left'}-special:i={i},j={j},m={m},n={n}")
            return got
        power = blocks[m] * r
        raise _Stuck("all four concatenations occur", m=m, n=n, commute=blocks[m] + blocks[n] == blocks[n] + blocks[m],
                     power_candidate=list(power), power_candidate_present=power in text)
    raise _Stuck(f"no distinct i, j, m, n with differing letters at i, j and |Vn| > {r}|Vm|")


def _mixed(blocks, pick):
    return len({pick(v) for v in blocks}) > 1


def _solve(blocks: list[bytes], text: bytes, r: int, trace: list[str], depth: int) -> list[int]:
    """Return a concatenation order absent from ``text`` (in the caller's labelling)."""
    blocks, text = _normalize(blocks, text, trace)
    lone = next((t for t, v in enumerate(blocks) if v not in text), None)
    if lone is not None:
        trace.append(f"single:{lone}")
        return [lone]
    head = blocks[:r + 1]
    if all(len(b) == 1 for b in head):
        ones = [i for i, b in enumerate(head) if b == b"\x01"]
        if len(ones) >= 2:
            trace.append("base:pair")
            order = ones[:2]
        else:
            trace.append("base:power")
            order = [i for i, b in enumerate(head) if b == b"\x00"][:r]
        if b"".join(blocks[i] for i in order) in text:
            raise _Stuck("base-case word occurs within the horizon", order=order)
        return order

    # mixed first (or last) letters: either special-factor step may apply
    stuck = None
    for right, pick in ((True, lambda v: v[0]), (False, lambda v: v[-1])):
        if not _mixed(blocks, pick):
            continue
        try:
            return _special_step(blocks, text, r, right, trace)
        except _Stuck as e:
            stuck = stuck or e
    if stuck is not None:
        # fall back to the blocks sharing the most common (first, last) letters;
        # a witness for a subsequence is a witness for the whole list
        ends = [(v[0], v[-1]) for v in blocks]
        best = max(sorted(set(ends)), key=ends.count)
        sub = [t for t, e in enumerate(ends) if e == best]
        if len(sub) <= r:
            raise stuck
        trace.append(f"subsequence:{len(sub)}")
        order = _solve([blocks[t] for t in sub], text, r, trace, depth + 1)
        return [sub[o] for o in order]

    a, b = blocks[0][0], blocks[0][-1]
    if a == 1 and b == 1:
        trace.append("junction-11")
        if blocks[0] + blocks[1] in text:
            raise _Stuck("V0 V1 contains 11 yet occurs")
        return [0, 1]
    if a == 1:
        # every block ends with 0: work with reversals, which keep the factor set
        trace.append("reverse")
        order = _solve([v[::-1] for v in blocks], text[::-1], r, trace, depth + 1)
        return order[::-1]

    if not any(1 in v for v in blocks[:r]):
        trace.append("zero-power")
        return list(range(r))

    # strip one L0 layer; drop a trailing 0 of the text, it may be the start of 01
    before = sum(len(v) for v in head)
    primed = [desubstitute_L0(v) for v in blocks]
    body = text[:-1] if text.endswith(b"\x00") else text
    x_primed = desubstitute_L0(body)
    after = sum(len(v) for v in primed[:r + 1])
    assert after < before, "L0 de-substitution must shrink the measure"
    trace.append(f"L0:{before}->{after}")
    order = _solve(primed, x_primed, r, trace, depth + 1)
    w = b"".join(blocks[i] for i in order)
    if w in text:
        # the deeper absence only says W0 is absent; any unused block starts with 0
        if w + b"\x00" in text:
            raise _Stuck("lifted witness occurs together with its 0 extension", order=order)
        spare = next((t for t in range(len(blocks)) if t not in order), None)
        if spare is None:
            raise _Stuck("no unused block to extend the lifted witness", order=order)
        trace.append(f"extend:{spare}")
        order = order + [spare]
    return order


def find_permuted_nonfactor(blocks: Sequence[bytes] | BlockSequence, x: WordStream, r: int,
                            idx: FactorIndex) -> PermutedWitness | Inconclusive:
    """Distinct block indices and an order whose concatenation is absent from ``idx``."""
    seq = blocks if isinstance(blocks, BlockSequence) else BlockSequence(tuple(blocks))
    if r < 1:
        raise ValueError("r must be positive")
    if idx.source is not x and idx.source.spec != x.spec:
        raise ValueError("index was built over a different word")
    _check_input(idx)
    total = sum(len(b) for b in seq.blocks)
    if idx.horizon < 2 * total:
        raise HorizonTooSmall(f"horizon {idx.horizon} is below twice the total block length {total}")
    absent = [t for t, v in enumerate(seq.blocks) if not idx.contains(v)]
    if absent:
        return Inconclusive("blocks must occur within the horizon", (), {"absent": absent})
    if len(seq) <= r:
        return Inconclusive(f"need more than {r} blocks, got {len(seq)}")
    trace: list[str] = []
    try:
        order = _solve(list(seq.blocks), idx.text, r, trace, 0)
    except _Stuck as e:
        return Inconclusive(e.reason, tuple(trace), e.details)
    word = seq.concat(order)
    if idx.contains(word) or len(set(order)) != len(order):
        return Inconclusive("mapped witness does not re-verify", tuple(trace), {"order": order})
    return PermutedWitness.from_order(order, word, idx.horizon, trace)


def refute_ultra_on_subshift(x: WordStream, r: int, y_offset: int, cuts: Sequence[int],
                             idx: FactorIndex) -> Certificate:
    """Violated ultra certificate for ``FactorOf(idx)`` on the suffix ``x[y_offset:]`` cut at ``cuts``."""
    y = x.shift(y_offset) if y_offset else x
    f = Factorization(y, cuts)
    phi = FactorOf(idx)
    blocks = f.blocks()
    specs = {"word": x.spec, "offset": y_offset, "cuts": list(f.cuts), "coloring": phi.spec,
             "convention": SENTINEL}
    bounds = {"m": f.num_blocks, "r": r, "horizon": idx.horizon}
    got = find_permuted_nonfactor(blocks, x, r, idx)
    if isinstance(got, Inconclusive):
        return Certificate("ultra", INCONCLUSIVE, bounds, None, None,
                           {"reason": got.reason, "trace": list(got.trace), **got.details}, specs)
    ref = phi(blocks[0])
    if ref != 0:
        return Certificate("ultra", INCONCLUSIVE, bounds, None, None,
                           {"reason": "V0 does not occur within the horizon"}, specs)
    witness = {"order": list(got.order), "indices": list(got.indices), "sigma": list(got.sigma),
               "word": x.decode(got.word), "color": phi(got.word), "expected": ref}
    return Certificate("ultra", VIOLATED, dict(bounds, k=got.k), ref, witness,
                       {"trace": list(got.trace)}, specs)
