"""Finite colorings of non-empty words.

A coloring is a callable ``u -> color`` with a declared finite color set.
Colors are ints, or tuples of ints for product colorings.
"""
from __future__ import annotations

from itertools import product as _product
from pathlib import Path
from typing import Hashable, Mapping, Sequence

from . import _kernels
from .factors import FactorIndex, build_index
from .words import WordStream, parse_word


class ColoringError(ValueError):
    pass


class Coloring:
    colors: tuple = ()

    def color(self, u: bytes) -> Hashable:
        raise NotImplementedError

    def __call__(self, u: bytes) -> Hashable:
        if not u:
            raise ColoringError("colorings are defined on non-empty words only")
        return self.color(u)

    def row(self, text: bytes, start: int, stops) -> list:
        """Colors of ``text[start:s]`` for each ``s`` in ``stops``."""
        return [self.color(text[start:s]) for s in stops]

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"


class _PrefixRule(Coloring):
    """Shared machinery for colorings that test "is a prefix of x"."""

    def __init__(self, x: WordStream):
        self.x = x
        self._agree: tuple[bytes, object] | None = None

    def _agreement(self, text: bytes):
        # lcp of text[p:] with x, for every p, via one Z-array pass
        cached = self._agree
        if cached is not None and cached[0] is text:
            return cached[1]
        ref = self.x._fill(len(text))
        if len(ref) < len(text):
            return None
        z = _kernels.z_array(ref + b"\xff" + text)[len(ref) + 1:]
        self._agree = (text, z)
        return z


class PrefixOf(_PrefixRule):
    """0 on prefixes of ``x``, 1 elsewhere."""

    colors = (0, 1)

    def color(self, u):
        return 0 if self.x.prefix(len(u)) == u else 1

    def row(self, text, start, stops):
        z = self._agreement(text)
        if z is None:
            return super().row(text, start, stops)
        a = int(z[start])
        return [0 if s - start <= a else 1 for s in stops]

    @property
    def spec(self):
        return f"prefix-of:{self.x.spec}"


class PrefixEndingLetter(_PrefixRule):
    """Prefixes of ``x`` colored by their last letter; everything else by ``|A|``."""

    def __init__(self, x: WordStream):
        super().__init__(x)
        self.colors = tuple(range(x.alphabet.size + 1))

    def color(self, u):
        if self.x.prefix(len(u)) == u:
            return u[-1]
        return self.x.alphabet.size

    def row(self, text, start, stops):
        z = self._agreement(text)
        if z is None:
            return super().row(text, start, stops)
        a, other = int(z[start]), self.x.alphabet.size
        return [text[s - 1] if s - start <= a else other for s in stops]

    @property
    def spec(self):
        return f"prefix-end:{self.x.spec}"


class FactorOf(Coloring):
    """0 on factors of the indexed prefix, 1 elsewhere (horizon-relative)."""

    colors = (0, 1)

    def __init__(self, index: FactorIndex):
        self.index = index

    @property
    def horizon(self) -> int:
        return self.index.horizon

    def color(self, u):
        return 0 if self.index.contains(u) else 1

    @property
    def spec(self):
        return f"factor-of:{self.index.source.spec}:{self.index.horizon}"


class LengthMod(Coloring):
    def __init__(self, k: int, table: Sequence[int] | None = None):
        if k < 1:
            raise ColoringError("modulus must be positive")
        self.k = k
        self.table = tuple(table) if table is not None else tuple(range(k))
        if len(self.table) != k:
            raise ColoringError(f"length table needs {k} entries, got {len(self.table)}")
        self.colors = tuple(sorted(set(self.table)))

    def color(self, u):
        return self.table[len(u) % self.k]

    def row(self, text, start, stops):
        return [self.table[(s - start) % self.k] for s in stops]

    @property
    def spec(self):
        if self.table == tuple(range(self.k)):
            return f"len-mod:{self.k}"
        return f"len-mod:{self.k}:{','.join(map(str, self.table))}"


class FirstLetter(Coloring):
    def __init__(self, table: Sequence[int]):
        self.table = tuple(table)
        self.colors = tuple(sorted(set(self.table)))

    def color(self, u):
        return self.table[u[0]]

    def row(self, text, start, stops):
        return [self.table[text[start]]] * len(stops)

    @property
    def spec(self):
        return f"first-letter:{','.join(map(str, self.table))}"


class Constant(Coloring):
    def __init__(self, c: int = 0):
        self.c = c
        self.colors = (c,)

    def color(self, u):
        return self.c

    @property
    def spec(self):
        return f"const:{self.c}"


class Product(Coloring):
    """Pairs (or tuples) of colors from several colorings."""

    def __init__(self, *parts: Coloring):
        if len(parts) < 2:
            raise ColoringError("a product needs at least two colorings")
        self.parts = parts
        self.colors = tuple(_product(*(p.colors for p in parts)))

    def color(self, u):
        return tuple(p.color(u) for p in self.parts)

    @property
    def spec(self):
        return "product:" + "+".join(p.spec for p in self.parts)


class ExplicitTable(Coloring):
    def __init__(self, table: Mapping[bytes, int], default: int):
        self.table = {bytes(k): v for k, v in table.items()}
        self.default = default
        self.colors = tuple(sorted(set(self.table.values()) | {default}))

    def color(self, u):
        return self.table.get(bytes(u), self.default)

    @property
    def spec(self):
        items = ",".join(f"{''.join(map(str, k))}={v}" for k, v in sorted(self.table.items()))
        return f"table:{self.default}" + (f":{items}" if items else "")


class FiniteSemigroup:
    """Elements ``0..n-1`` with a multiplication table; associativity is checked."""

    def __init__(self, table: Sequence[Sequence[int]]):
        t = tuple(tuple(int(v) for v in row) for row in table)
        n = len(t)
        if n == 0 or any(len(row) != n for row in t):
            raise ColoringError("semigroup table must be a non-empty square")
        if any(not 0 <= v < n for row in t for v in row):
            raise ColoringError("semigroup table entries must be elements")
        for a in range(n):
            for b in range(n):
                ab = t[a][b]
                for c in range(n):
                    if t[ab][c] != t[a][t[b][c]]:
                        raise ColoringError(f"not associative: ({a}{b}){c} != {a}({b}{c})")
        self.table = t

    @property
    def size(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def idempotents(self) -> frozenset[int]:
        return frozenset(e for e in range(self.size) if self.table[e][e] == e)

    @property
    def text(self) -> str:
        return "/".join(",".join(map(str, row)) for row in self.table)

    @classmethod
    def cyclic(cls, n: int) -> "FiniteSemigroup":
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])


def idempotents(s: FiniteSemigroup) -> frozenset[int]:
    return s.idempotents()


def semigroup_color(s: FiniteSemigroup, assign: Sequence[int], u: bytes) -> int:
    if not u:
        raise ColoringError("the empty word has no image in a semigroup")
    t = s.table
    acc = assign[u[0]]
    for c in u[1:]:
        acc = t[acc][assign[c]]
    return acc


class SemigroupMorphism(Coloring):
    def __init__(self, semigroup: FiniteSemigroup, assign: Sequence[int]):
        self.semigroup = semigroup
        self.assign = tuple(assign)
        if any(not 0 <= a < semigroup.size for a in self.assign):
            raise ColoringError("letter assignment must map into the semigroup")
        self.colors = tuple(range(semigroup.size))

    def color(self, u):
        return semigroup_color(self.semigroup, self.assign, u)

    def row(self, text, start, stops):
        # running products of text[start:s], one pass up to the last stop
        if not len(stops):
            return []
        t, assign = self.semigroup.table, self.assign
        top = max(stops)
        running = [0] * (top - start + 1)
        acc = assign[text[start]]
        running[1] = acc
        for i in range(start + 1, top):
            acc = t[acc][assign[text[i]]]
            running[i - start + 1] = acc
        return [running[s - start] for s in stops]

    @property
    def spec(self):
        return f"semigroup:{self.semigroup.text}:{','.join(map(str, self.assign))}"


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t != ""]
    except ValueError:
        raise ColoringError(f"expected comma-separated integers, got {text!r}") from None


def _read_semigroup(source: str) -> FiniteSemigroup:
    # inline rows look like "0,1/1,0"; anything else is a file of whitespace rows
    if "/" in source and not Path(source).exists():
        return FiniteSemigroup([_ints(row) for row in source.split("/")])
    rows = [line.replace(",", " ").split() for line in Path(source).read_text().splitlines()]
    return FiniteSemigroup([[int(v) for v in row] for row in rows if row])


def parse_coloring(spec: str) -> Coloring:
    """Build a coloring from text, e.g. ``prefix-of:thue-morse`` or ``len-mod:3``."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind == "prefix-of":
        return PrefixOf(parse_word(rest))
    if kind == "prefix-end":
        return PrefixEndingLetter(parse_word(rest))
    if kind == "factor-of":
        word, sep, horizon = rest.rpartition(":")
        if not sep or not horizon.isdigit():
            raise ColoringError("factor-of:<word spec>:<horizon>")
        return FactorOf(build_index(parse_word(word), int(horizon)))
    if kind == "len-mod":
        k, _, table = rest.partition(":")
        if not k.isdigit():
            raise ColoringError("len-mod:<k>[:c0,c1,...]")
        return LengthMod(int(k), _ints(table) if table else None)
    if kind == "first-letter":
        return FirstLetter(_ints(rest))
    if kind == "const":
        return Constant(int(rest or 0))
    if kind == "semigroup":
        source, sep, assign = rest.rpartition(":")
        if not sep:
            raise ColoringError("semigroup:<table file or rows a,b/c,d>:<assignment>")
        return SemigroupMorphism(_read_semigroup(source), _ints(assign))
    if kind == "product":
        return Product(*(parse_coloring(p) for p in rest.split("+")))
    if kind == "table":
        default, _, items = rest.partition(":")
        table = {}
        for item in filter(None, items.split(",")):
            w, _, c = item.partition("=")
            table[bytes(int(ch) for ch in w)] = int(c)
        return ExplicitTable(table, int(default))
    raise ColoringError(f"unknown coloring spec {spec!r}")
