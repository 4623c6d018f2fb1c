"""Lazily evaluated right-infinite words.

Finite words are ``bytes`` whose values are letter indices into an
:class:`Alphabet`; the alphabet only matters for display and for parsing
text.  Every stream memoizes the longest prefix computed so far, so
``letter`` and ``prefix`` are cheap after the first call and always agree.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence


class WordError(ValueError):
    pass


class IndexBeyondExplicitPrefix(WordError, IndexError):
    pass


class LetterOutsideDomain(WordError):
    pass


class NotProlongable(WordError):
    pass


class DirectiveExhausted(WordError):
    pass


class WordSpecError(WordError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered display symbols; letter ``i`` is shown as ``symbols[i]``."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise WordError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise WordError(f"duplicate symbols in alphabet {self.symbols!r}")
        if len(self.symbols) > 255:
            raise WordError("at most 255 letters are supported")

    @property
    def size(self) -> int:
        return len(self.symbols)

    def encode(self, text: str) -> bytes:
        index = {s: i for i, s in enumerate(self.symbols)}
        try:
            return bytes(index[ch] for ch in text)
        except KeyError as exc:
            raise LetterOutsideDomain(f"symbol {exc.args[0]!r} not in alphabet {self.symbols}") from None

    def decode(self, word: bytes) -> str:
        return "".join(self.symbols[c] for c in word)

    @classmethod
    def from_text(cls, *texts: str) -> "Alphabet":
        """Binary ``0/1`` whenever the text uses only those digits, else sorted symbols."""
        seen = set("".join(texts))
        if seen <= {"0", "1"}:
            return BINARY
        return cls(tuple(sorted(seen)))


BINARY = Alphabet(("0", "1"))


class Morphism:
    """A non-erasing morphism given by the image of each letter."""

    def __init__(self, images: Mapping[int, bytes], alphabet: Alphabet = BINARY):
        self.alphabet = alphabet
        imgs = {int(a): bytes(v) for a, v in images.items()}
        for a in range(alphabet.size):
            if a not in imgs:
                raise LetterOutsideDomain(f"no image for letter {alphabet.symbols[a]!r}")
            if not imgs[a]:
                raise WordError(f"image of {alphabet.symbols[a]!r} is empty")
            if max(imgs[a]) >= alphabet.size:
                raise LetterOutsideDomain(f"image of {alphabet.symbols[a]!r} leaves the alphabet")
        self.images = imgs
        self._table = [imgs[a] for a in range(alphabet.size)]

    def __call__(self, word: bytes) -> bytes:
        return apply_morphism(self, word)

    def __repr__(self):
        sym = self.alphabet.symbols
        parts = ",".join(f"{sym[a]}={self.alphabet.decode(self.images[a])}" for a in range(len(sym)))
        return f"Morphism({parts})"

    @property
    def text(self) -> str:
        sym = self.alphabet.symbols
        return ",".join(f"{sym[a]}={self.alphabet.decode(self.images[a])}" for a in range(len(sym)))

    @classmethod
    def parse(cls, text: str) -> "Morphism":
        """Parse ``a=img,b=img`` with single-character letters."""
        pairs = []
        for item in text.split(","):
            if "=" not in item:
                raise WordSpecError(f"bad morphism rule {item!r}; expected letter=image")
            a, img = item.split("=", 1)
            if len(a) != 1:
                raise WordSpecError(f"morphism letters are single characters, got {a!r}")
            pairs.append((a, img))
        alphabet = Alphabet.from_text(*(a + img for a, img in pairs))
        return cls({alphabet.encode(a)[0]: alphabet.encode(img) for a, img in pairs}, alphabet)

    def is_injective_on_letters(self) -> bool:
        return len(set(self._table)) == len(self._table)


def apply_morphism(m: Morphism, word: bytes) -> bytes:
    table = m._table
    try:
        return b"".join([table[c] for c in word])
    except IndexError:
        raise LetterOutsideDomain(f"letter outside the domain of {m!r}") from None


L0 = Morphism({0: b"\x00", 1: b"\x00\x01"})
L1 = Morphism({0: b"\x01\x00", 1: b"\x01"})
FIBONACCI_MORPHISM = Morphism({0: b"\x00\x01", 1: b"\x00"})
THUE_MORSE_MORPHISM = Morphism({0: b"\x00\x01", 1: b"\x01\x00"})


def thue_morse_letter(n: int) -> int:
    """Parity of the binary digit sum of ``n``."""
    if n < 0:
        raise ValueError("index must be non-negative")
    return bin(n).count("1") & 1


def stair_letter(n: int) -> int:
    # zeros sit at k(k+3)/2, i.e. where 8n+9 is an odd square
    if n < 0:
        raise ValueError("index must be non-negative")
    d = 8 * n + 9
    s = math.isqrt(d)
    return 0 if s * s == d else 1


def fixed_point_prefix(m: Morphism, seed: int, n: int) -> bytes:
    image = m.images.get(seed)
    if image is None:
        raise LetterOutsideDomain(f"seed {seed} outside the morphism domain")
    if len(image) < 2 or image[0] != seed:
        raise NotProlongable(f"{m!r} is not prolongable on {m.alphabet.symbols[seed]!r}")
    w = bytes([seed])
    while len(w) < n:
        w = apply_morphism(m, w)
    return w[:n]


def _standard_image(layers: Sequence[int]) -> bytes:
    w = b"\x00\x01"
    for a in reversed(layers):
        w = apply_morphism(L0 if a == 0 else L1, w)
    return w


def mechanical_sturmian_prefix(directive: Sequence[int], n: int, *, periodic: bool = False) -> bytes:
    """Length-``n`` prefix of the standard word ``lim L_{d0} L_{d1} ... L_{dk}(01)``.

    ``directive`` is repeated forever when ``periodic`` is true, otherwise it
    is a finite list and running past its end raises ``DirectiveExhausted``.
    Images of ``01`` and ``10`` differ only in their last two letters, so the
    first ``|image| - 2`` letters are already those of the limit.
    """
    seq = [int(a) for a in directive]
    if any(a not in (0, 1) for a in seq):
        raise WordError("directive letters must be 0 or 1")
    if not seq:
        raise DirectiveExhausted("empty directive")
    if periodic and len(set(seq)) < 2:
        raise DirectiveExhausted("periodic directive uses only one letter; the limit is not Sturmian")
    if n <= 0:
        return b""
    depth = 1
    while True:
        if not periodic and depth > len(seq):
            raise DirectiveExhausted(f"directive of length {len(seq)} too short for {n} letters")
        layers = [seq[i % len(seq)] for i in range(depth)]
        if len(set(layers)) == 2:
            w = _standard_image(layers)
            if len(w) - 2 >= n:
                return w[:n]
        depth += 1


class WordStream:
    """Base class of right-infinite words; subclasses implement ``_generate``."""

    alphabet: Alphabet = BINARY
    _shortfall: type[Exception] = IndexBeyondExplicitPrefix

    def __init__(self):
        self._cache = b""
        self._lock = threading.Lock()

    def _generate(self, n: int) -> bytes:
        raise NotImplementedError

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def _fill(self, n: int) -> bytes:
        """Prefix of length ``n``, or shorter when the stream is finite."""
        if len(self._cache) < n:
            with self._lock:
                if len(self._cache) < n:
                    w = self._generate(max(n, 2 * len(self._cache)))
                    if len(w) > len(self._cache):
                        self._cache = w
        return self._cache[:n]

    def prefix(self, n: int) -> bytes:
        if n < 0:
            raise ValueError("length must be non-negative")
        w = self._fill(n)
        if len(w) < n:
            raise self._shortfall(f"{self.spec} has only {len(w)} letters, {n} requested")
        return w

    def letter(self, i: int) -> int:
        if i < 0:
            raise ValueError("index must be non-negative")
        return self.prefix(i + 1)[i]

    def factor(self, start: int, stop: int) -> bytes:
        """``x[start:stop]``."""
        if not 0 <= start <= stop:
            raise ValueError(f"bad factor range [{start}, {stop})")
        return self.prefix(stop)[start:]

    def encode(self, text: str) -> bytes:
        return self.alphabet.encode(text)

    def decode(self, word: bytes) -> str:
        return self.alphabet.decode(word)

    def shift(self, k: int) -> "WordStream":
        return Shifted(self, k) if k else self

    def __repr__(self):
        return f"<{type(self).__name__} {self.spec}>"


class Periodic(WordStream):
    def __init__(self, period: bytes, alphabet: Alphabet = BINARY):
        super().__init__()
        if not period:
            raise WordError("period must be non-empty")
        self.period = bytes(period)
        self.alphabet = alphabet

    def _generate(self, n):
        reps = -(-n // len(self.period))
        return (self.period * reps)[:n]

    @property
    def spec(self):
        return f"periodic:{self.alphabet.decode(self.period)}"


class UltimatelyPeriodic(WordStream):
    def __init__(self, head: bytes, period: bytes, alphabet: Alphabet = BINARY):
        super().__init__()
        if not period:
            raise WordError("period must be non-empty")
        self.head = bytes(head)
        self.period = bytes(period)
        self.alphabet = alphabet

    def _generate(self, n):
        rest = max(0, n - len(self.head))
        reps = -(-rest // len(self.period))
        return (self.head + self.period * reps)[:n]

    @property
    def spec(self):
        return f"ultimately-periodic:{self.alphabet.decode(self.head)}:{self.alphabet.decode(self.period)}"


class ThueMorse(WordStream):
    def _generate(self, n):
        w = b"\x00"
        while len(w) < n:
            w = w + bytes(1 - c for c in w)
        return w[:n]

    @property
    def spec(self):
        return "thue-morse"


class MorphicFixedPoint(WordStream):
    def __init__(self, morphism: Morphism, seed: int):
        super().__init__()
        self.morphism = morphism
        self.seed = seed
        self.alphabet = morphism.alphabet
        fixed_point_prefix(morphism, seed, 1)  # prolongability check

    def _generate(self, n):
        return fixed_point_prefix(self.morphism, self.seed, n)

    @property
    def spec(self):
        return f"fixed-point:{self.morphism.text}:{self.alphabet.symbols[self.seed]}"


class Fibonacci(MorphicFixedPoint):
    def __init__(self):
        super().__init__(FIBONACCI_MORPHISM, 0)

    @property
    def spec(self):
        return "fibonacci"


class MechanicalSturmian(WordStream):
    """Standard Sturmian word driven by a directive of ``L0``/``L1`` layers."""

    _shortfall = DirectiveExhausted

    def __init__(self, directive: Iterable[int], *, periodic: bool = True):
        super().__init__()
        self.directive = tuple(int(a) for a in directive)
        self.periodic = periodic
        if periodic:
            mechanical_sturmian_prefix(self.directive, 1, periodic=True)

    def _generate(self, n):
        try:
            return mechanical_sturmian_prefix(self.directive, n, periodic=self.periodic)
        except DirectiveExhausted:
            if self.periodic:
                raise
            # return what the finite directive supports; prefix() reports the shortfall
            lo = 0
            for depth in range(1, len(self.directive) + 1):
                layers = list(self.directive[:depth])
                if len(set(layers)) == 2:
                    lo = max(lo, len(_standard_image(layers)) - 2)
            return mechanical_sturmian_prefix(self.directive, lo) if lo else b""

    @property
    def spec(self):
        body = ",".join(map(str, self.directive))
        return f"sturmian:{body}" if self.periodic else f"sturmian-finite:{body}"


class Stair(WordStream):
    """``0 1 0 11 0 111 0 1111 ...``"""

    def _generate(self, n):
        parts = []
        total = 0
        k = 1
        while total < n:
            parts.append(b"\x00" + b"\x01" * k)
            total += k + 1
            k += 1
        return b"".join(parts)[:n]

    @property
    def spec(self):
        return "stair"


class Shifted(WordStream):
    def __init__(self, inner: WordStream, offset: int):
        super().__init__()
        if offset < 0:
            raise WordError("shift offset must be non-negative")
        self.inner = inner
        self.offset = offset
        self.alphabet = inner.alphabet

    @property
    def _shortfall(self):
        return self.inner._shortfall

    def _generate(self, n):
        return self.inner._fill(self.offset + n)[self.offset:]

    @property
    def spec(self):
        return f"shift:{self.offset}:{self.inner.spec}"


class Explicit(WordStream):
    """A finite prefix treated as a stream; reading past its end is an error."""

    def __init__(self, word: bytes, alphabet: Alphabet = BINARY):
        super().__init__()
        self.word = bytes(word)
        self.alphabet = alphabet
        if self.word and max(self.word) >= alphabet.size:
            raise LetterOutsideDomain("explicit word uses letters outside its alphabet")

    def __len__(self):
        return len(self.word)

    def _generate(self, n):
        return self.word

    @property
    def spec(self):
        return f"explicit:{self.alphabet.decode(self.word)}"


def parse_word(spec: str) -> WordStream:
    """Build a stream from its text form (``periodic:ab``, ``shift:3:fibonacci``, ...)."""
    spec = spec.strip()
    kind, _, rest = spec.partition(":")
    if kind == "thue-morse" and not rest:
        return ThueMorse()
    if kind == "fibonacci" and not rest:
        return Fibonacci()
    if kind == "stair" and not rest:
        return Stair()
    if kind == "periodic":
        if not rest:
            raise WordSpecError("periodic needs a non-empty period")
        a = Alphabet.from_text(rest)
        return Periodic(a.encode(rest), a)
    if kind == "ultimately-periodic":
        head, sep, period = rest.partition(":")
        if not sep or not period:
            raise WordSpecError("ultimately-periodic:<head>:<period> with a non-empty period")
        a = Alphabet.from_text(head, period)
        return UltimatelyPeriodic(a.encode(head), a.encode(period), a)
    if kind == "explicit":
        if not rest:
            raise WordSpecError("explicit needs a non-empty word")
        a = Alphabet.from_text(rest)
        return Explicit(a.encode(rest), a)
    if kind == "shift":
        k, sep, inner = rest.partition(":")
        if not sep or not k.isdigit():
            raise WordSpecError("shift:<k>:<word spec>")
        return Shifted(parse_word(inner), int(k))
    if kind in ("sturmian", "sturmian-finite"):
        try:
            directive = [int(t) for t in rest.split(",")]
        except ValueError:
            raise WordSpecError(f"bad directive {rest!r}") from None
        return MechanicalSturmian(directive, periodic=kind == "sturmian")
    if kind == "fixed-point":
        rules, sep, seed = rest.rpartition(":")
        if not sep or len(seed) != 1:
            raise WordSpecError("fixed-point:<a=img,...>:<seed letter>")
        m = Morphism.parse(rules)
        return MorphicFixedPoint(m, m.alphabet.encode(seed)[0])
    raise WordSpecError(f"unknown word spec {spec!r}")
