"""Free-group words, homomorphisms and Fox calculus.

Words are stored run-length as ``(symbol, exponent)`` syllables and are
always freely reduced.  Text syntax: whitespace-separated tokens ``g`` or
``g^k`` (``k`` a nonzero integer), juxtaposition is the product, ``1``
is the identity and ``#`` starts a comment.

>>> w = parse_word("a b b^-1 a")
>>> str(w)
'a^2'
>>> str(fox_derivative(parse_word("a b a^-1 b^-1"), "a"))
'1 - a b a^-1'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from grouptool.errors import AlphabetMismatch, ParseError, UnknownGenerator

Generator = str

_SYMBOL = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"([A-Za-z_][A-Za-z0-9_]*)(?:\^([+-]?\d+))?\Z")


def check_symbol(symbol: str) -> str:
    if not isinstance(symbol, str) or not _SYMBOL.match(symbol):
        raise ValueError(f"invalid generator symbol {symbol!r}")
    return symbol


def check_alphabet(alphabet: Iterable[str]) -> tuple:
    alphabet = tuple(alphabet)
    for s in alphabet:
        check_symbol(s)
    if len(set(alphabet)) != len(alphabet):
        raise ValueError(f"repeated generator symbols in {alphabet}")
    return alphabet


def _reduce_syllables(raw) -> tuple:
    out: list = []
    for sym, e in raw:
        if e == 0:
            continue
        if out and out[-1][0] == sym:
            e += out[-1][1]
            out.pop()
            if e:
                out.append((sym, e))
        else:
            out.append((sym, e))
    return tuple(out)


@dataclass(frozen=True, order=False)
class Word:
    """A freely reduced word; the empty word is the identity."""

    syllables: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _reduce_syllables(self.syllables))

    @classmethod
    def gen(cls, symbol: str, exponent: int = 1) -> "Word":
        return cls(((symbol, exponent),))

    @classmethod
    def from_letters(cls, letters: Iterable[int], alphabet: Sequence[str]) -> "Word":
        return cls(tuple((alphabet[abs(x) - 1], 1 if x > 0 else -1) for x in letters))

    def letters(self, index: Mapping[str, int]) -> list:
        """Signed 1-based letter codes under ``index`` (symbol -> 0-based position)."""
        out = []
        for sym, e in self.syllables:
            try:
                code = index[sym] + 1
            except KeyError:
                raise UnknownGenerator(sym, index) from None
            out.extend([code] * e if e > 0 else [-code] * (-e))
        return out

    def __len__(self):
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self):
        return bool(self.syllables)

    def __iter__(self):
        for sym, e in self.syllables:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                yield sym, step

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.syllables + other.syllables)

    def inverse(self) -> "Word":
        return Word(tuple((s, -e) for s, e in reversed(self.syllables)))

    __invert__ = inverse

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        return Word(self.syllables * n)

    def symbols(self) -> set:
        return {s for s, _ in self.syllables}

    def exponent_sum(self, symbol: str) -> int:
        return sum(e for s, e in self.syllables if s == symbol)

    def check_alphabet(self, alphabet) -> "Word":
        alphabet = set(alphabet)
        for s, _ in self.syllables:
            if s not in alphabet:
                raise UnknownGenerator(s, sorted(alphabet))
        return self

    def sort_key(self):
        return (len(self), self.syllables)

    def __str__(self):
        if not self.syllables:
            return "1"
        return " ".join(s if e == 1 else f"{s}^{e}" for s, e in self.syllables)

    def __repr__(self):
        return f"Word({str(self)!r})"


IDENTITY = Word()


def free_reduce(raw: Iterable, alphabet: Optional[Sequence[str]] = None) -> Word:
    """Freely reduce a raw syllable sequence, checking symbols against ``alphabet``."""
    raw = tuple(raw)
    if alphabet is not None:
        known = set(alphabet)
        for sym, _ in raw:
            if sym not in known:
                raise UnknownGenerator(sym, alphabet)
    return Word(raw)


def word_multiply(u: Word, v: Word, alphabet: Optional[Sequence[str]] = None) -> Word:
    if alphabet is not None:
        for w in (u, v):
            bad = w.symbols() - set(alphabet)
            if bad:
                raise AlphabetMismatch(f"word {w} uses {sorted(bad)} outside {list(alphabet)}")
    return u * v


def word_invert(w: Word) -> Word:
    return w.inverse()


def commutator(u: Word, v: Word) -> Word:
    return u * v * u.inverse() * v.inverse()


def parse_word(text: str, alphabet: Optional[Sequence[str]] = None, *, line: int = None,
               column_offset: int = 0) -> Word:
    """Parse the whitespace token syntax into a reduced word."""
    return Word(parse_syllables(text, alphabet, line=line, column_offset=column_offset))


def parse_syllables(text: str, alphabet: Optional[Sequence[str]] = None, *, line: int = None,
                    column_offset: int = 0) -> tuple:
    """Parse the token syntax into raw ``(symbol, exponent)`` pairs without reducing."""
    text = text.split("#", 1)[0]
    raw = []
    for m in re.finditer(r"\S+", text):
        tok = m.group(0)
        col = column_offset + m.start() + 1
        if tok == "1":
            continue
        tm = _TOKEN.match(tok)
        if tm is None:
            raise ParseError(f"malformed token {tok!r}", line=line, column=col)
        sym, exp = tm.group(1), tm.group(2)
        e = 1 if exp is None else int(exp)
        if e == 0:
            raise ParseError(f"zero exponent in {tok!r}", line=line, column=col)
        if alphabet is not None and sym not in alphabet:
            raise ParseError(f"unknown generator {sym!r}", line=line, column=col)
        raw.append((sym, e))
    return tuple(raw)


class GroupRingElement:
    """Finite integral combination of reduced words (an element of Z[F])."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                if c:
                    acc[w] = acc.get(w, 0) + c
        self._terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def from_word(cls, w: Word, coefficient: int = 1) -> "GroupRingElement":
        return cls({w: coefficient})

    @classmethod
    def one(cls) -> "GroupRingElement":
        return cls({IDENTITY: 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Word):
            other = GroupRingElement.from_word(other)
        elif isinstance(other, int):
            other = GroupRingElement({IDENTITY: other})
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    @staticmethod
    def _coerce(x) -> "GroupRingElement":
        if isinstance(x, GroupRingElement):
            return x
        if isinstance(x, Word):
            return GroupRingElement.from_word(x)
        if isinstance(x, int):
            return GroupRingElement({IDENTITY: x})
        raise TypeError(f"cannot coerce {type(x).__name__} into the group ring")

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u * v
                out[w] = out.get(w, 0) + a * b
        return GroupRingElement(out)

    def __rmul__(self, other):
        return self._coerce(other) * self

    def augmentation(self) -> int:
        return sum(self._terms.values())

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for w, c in self.items():
            mag = abs(c)
            body = str(w)
            if w:
                body = body if mag == 1 else f"{mag}*{body}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"GroupRingElement({str(self)!r})"


def fox_derivative(w: Word, x: str, alphabet: Optional[Sequence[str]] = None) -> GroupRingElement:
    """Left Fox derivative d w / d x in Z[F].

    Uses d(uv) = du + u dv, so a letter ``x`` after prefix ``p`` contributes
    ``p`` and a letter ``x^-1`` contributes ``-p x^-1``.
    """
    if alphabet is not None:
        if x not in alphabet:
            raise UnknownGenerator(x, alphabet)
        w.check_alphabet(alphabet)
    out: dict = {}
    prefix: list = []
    for sym, e in w.syllables:
        if sym == x:
            if e > 0:
                for j in range(e):
                    p = Word(tuple(prefix) + ((sym, j),))
                    out[p] = out.get(p, 0) + 1
            else:
                for j in range(1, -e + 1):
                    p = Word(tuple(prefix) + ((sym, -j),))
                    out[p] = out.get(p, 0) - 1
        prefix.append((sym, e))
    return GroupRingElement(out)


@dataclass(frozen=True)
class Hom:
    """Homomorphism between free groups given by generator images.

    ``inverse_images`` (optional) gives the images of the target generators
    under a claimed two-sided inverse.
    """

    source: tuple
    target: tuple
    images: tuple
    inverse_images: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "source", check_alphabet(self.source))
        object.__setattr__(self, "target", check_alphabet(self.target))
        images = tuple(self.images)
        if len(images) != len(self.source):
            raise ValueError(f"{len(images)} images for {len(self.source)} source generators")
        for w in images:
            w.check_alphabet(self.target)
        object.__setattr__(self, "images", images)
        if self.inverse_images is not None:
            inv = tuple(self.inverse_images)
            if len(inv) != len(self.target):
                raise ValueError("inverse_images must have one word per target generator")
            for w in inv:
                w.check_alphabet(self.source)
            object.__setattr__(self, "inverse_images", inv)

    @classmethod
    def from_dict(cls, source, target, images: Mapping[str, Word], inverse: Mapping[str, Word] = None):
        source, target = tuple(source), tuple(target)
        missing = [g for g in source if g not in images]
        if missing:
            raise ValueError(f"no image given for {missing}")
        extra = set(images) - set(source)
        if extra:
            raise UnknownGenerator(sorted(extra)[0], source)
        inv = None
        if inverse is not None:
            missing = [g for g in target if g not in inverse]
            if missing:
                raise ValueError(f"no inverse image given for {missing}")
            inv = tuple(inverse[g] for g in target)
        return cls(source, target, tuple(images[g] for g in source), inv)

    @classmethod
    def identity(cls, alphabet) -> "Hom":
        alphabet = tuple(alphabet)
        ws = tuple(Word.gen(g) for g in alphabet)
        return cls(alphabet, alphabet, ws, ws)

    def image(self, symbol: str) -> Word:
        try:
            return self.images[self.source.index(symbol)]
        except ValueError:
            raise UnknownGenerator(symbol, self.source) from None

    def as_dict(self) -> dict:
        return dict(zip(self.source, self.images))

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            w == Word.gen(g) for g, w in zip(self.source, self.images))

    def inverse(self) -> "Hom":
        if self.inverse_images is None:
            raise ValueError("no inverse images supplied")
        return Hom(self.target, self.source, self.inverse_images, self.images)

    def __call__(self, w: Word) -> Word:
        return apply_hom(self, w)


def apply_hom(h: Hom, w: Word) -> Word:
    table = dict(zip(h.source, h.images))
    raw = []
    for sym, e in w.syllables:
        try:
            img = table[sym]
        except KeyError:
            raise UnknownGenerator(sym, h.source) from None
        if e < 0:
            img = img.inverse()
        raw.extend(img.syllables * abs(e))
    return Word(tuple(raw))


def compose(outer: Hom, inner: Hom) -> Hom:
    """``outer`` after ``inner``; inverse images compose when both are present."""
    if inner.target != outer.source:
        raise AlphabetMismatch("cannot compose: inner target differs from outer source")
    images = tuple(apply_hom(outer, w) for w in inner.images)
    inv = None
    if outer.inverse_images is not None and inner.inverse_images is not None:
        inv = tuple(apply_hom(inner.inverse(), w) for w in outer.inverse_images)
    return Hom(inner.source, outer.target, images, inv)


def exponent_vector(w: Word, alphabet: Sequence[str]) -> list:
    index = {g: i for i, g in enumerate(alphabet)}
    out = [0] * len(alphabet)
    for sym, e in w.syllables:
        try:
            out[index[sym]] += e
        except KeyError:
            raise UnknownGenerator(sym, alphabet) from None
    return out
