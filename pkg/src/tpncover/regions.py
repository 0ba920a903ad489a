"""Region abstraction of markings: symbols, words and simple expressions.

A *symbol* is a set of ``(place, integer age)`` pairs with integer ages capped
at ``cmax + 1``. Symbols are stored as ``int`` bitsets, place-major: the pair
``(P[i], c)`` is bit ``i * (cmax + 2) + c``. A *word* is a tuple of symbols
whose position 0 collects the tokens with integer age. A *simple expression*
is a tuple of :class:`Atom`, each an optionally starred symbol.

Textual syntax: ``{p:0,q:1}`` for a symbol, ``{}`` for the empty one, a
trailing ``*`` for a star, atoms separated by blanks.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from .errors import ParseError, RejectedInput, ShapeError
from .model import Marking, Net, cmax as net_cmax

Symbol = int
Word = tuple  # tuple[Symbol, ...]

EMPTY: Symbol = 0


class Atom(NamedTuple):
    symbol: Symbol
    starred: bool = False

    def __str__(self):
        return f"<{self.symbol:#x}{'*' if self.starred else ''}>"


Expr = tuple  # tuple[Atom, ...]


@dataclass(frozen=True)
class Alphabet:
    """The symbol alphabet of a net with largest guard constant ``cmax``."""

    places: tuple[str, ...]
    cmax: int

    @classmethod
    def of(cls, net: Net) -> Alphabet:
        return cls(tuple(net.places), net_cmax(net))

    @property
    def stride(self) -> int:
        return self.cmax + 2

    @cached_property
    def _index(self) -> dict[str, int]:
        return {p: i for i, p in enumerate(self.places)}

    @cached_property
    def _top(self) -> int:
        # bit of age cmax+1 in every place block
        return sum(1 << (i * self.stride + self.stride - 1) for i in range(len(self.places)))

    @cached_property
    def full(self) -> Symbol:
        return (1 << (len(self.places) * self.stride)) - 1

    def cap(self, age: int) -> int:
        return min(self.cmax + 1, age)

    def bit(self, place: str, age: int) -> Symbol:
        try:
            i = self._index[place]
        except KeyError:
            raise RejectedInput(f"unknown place {place!r}") from None
        if age < 0:
            raise RejectedInput("integer ages are nonnegative")
        return 1 << (i * self.stride + self.cap(age))

    def symbol(self, pairs: Iterable[tuple[str, int]] = ()) -> Symbol:
        x = EMPTY
        for place, age in pairs:
            x |= self.bit(place, age)
        return x

    def pairs(self, x: Symbol) -> list[tuple[str, int]]:
        out = []
        while x:
            low = x & -x
            n = low.bit_length() - 1
            out.append((self.places[n // self.stride], n % self.stride))
            x ^= low
        return out

    def plus_one(self, x: Symbol) -> Symbol:
        """``(x+1)``: every integer age grows by one, capped at ``cmax + 1``."""
        top = x & self._top
        return ((x & ~top) << 1) | top

    def expr(self, *atoms) -> Expr:
        """Build an expression from ``(pairs, starred)`` items or plain pair lists."""
        out = []
        for a in atoms:
            if isinstance(a, Atom):
                out.append(a)
            elif isinstance(a, tuple) and len(a) == 2 and isinstance(a[1], bool):
                out.append(Atom(self.symbol(a[0]), a[1]))
            else:
                out.append(Atom(self.symbol(a), False))
        return tuple(out)

    def word(self, *symbols) -> Word:
        return tuple(self.symbol(s) for s in symbols)

    # rendering and parsing

    def render_symbol(self, x: Symbol) -> str:
        return "{" + ",".join(f"{p}:{c}" for p, c in self.pairs(x)) + "}"

    def render(self, e: Sequence) -> str:
        """Render a word or an expression in the textual syntax."""
        parts = []
        for item in e:
            if isinstance(item, Atom):
                parts.append(self.render_symbol(item.symbol) + ("*" if item.starred else ""))
            else:
                parts.append(self.render_symbol(item))
        return " ".join(parts)

    def parse_expr(self, text: str) -> Expr:
        atoms = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _ATOM.match(text, pos)
            if not m:
                raise ParseError(f"malformed expression near {text[pos:pos + 12]!r}", 1, pos + 1)
            body, star = m.group(1), m.group(2)
            pairs = []
            for item in filter(None, (s.strip() for s in body.split(","))):
                place, _, age = item.rpartition(":")
                if not place or not age.isdigit():
                    raise ParseError(f"malformed symbol entry {item!r}", 1, m.start() + 1)
                if int(age) > self.cmax + 1:
                    raise ParseError(f"age {age} exceeds cmax+1 = {self.cmax + 1}", 1, m.start() + 1)
                pairs.append((place, int(age)))
            atoms.append(Atom(self.symbol(pairs), bool(star)))
            pos = m.end()
        if not atoms:
            raise ParseError("empty expression", 1, 1)
        return tuple(atoms)

    def parse_word(self, text: str) -> Word:
        e = self.parse_expr(text)
        if any(a.starred for a in e):
            raise ParseError("words carry no stars", 1, 1)
        return tuple(a.symbol for a in e)


_ATOM = re.compile(r"\s*\{([^{}]*)\}(\*?)\s*")


def symbols(e: Sequence) -> tuple[Symbol, ...]:
    """The symbols ``x̂_i`` of an expression, or the word itself."""
    return tuple(a.symbol if isinstance(a, Atom) else a for a in e)


def as_expr(w: Word) -> Expr:
    return tuple(Atom(x, False) for x in w)


def subset(x: Symbol, y: Symbol) -> bool:
    return x & ~y == 0


def pointwise_subset(e: Sequence, f: Sequence) -> bool:
    a, b = symbols(e), symbols(f)
    return len(a) == len(b) and all(subset(x, y) for x, y in zip(a, b))


# abstraction of markings

def _frac(age: Fraction) -> Fraction:
    return age - (age.numerator // age.denominator)


def fraction_set(values: Iterable) -> tuple[Fraction, ...]:
    s = sorted({Fraction(v) for v in values} | {Fraction(0)})
    if s[-1] >= 1 or s[0] < 0:
        raise RejectedInput("fraction sets live in [0, 1)")
    return tuple(s)


def abstract_marking(m: Marking, s: Iterable, ab: Alphabet) -> Word:
    """The S-abstraction of ``m``: one symbol per element of ``s``, in order."""
    fracs = tuple(sorted({Fraction(v) for v in s}))
    if not fracs or fracs[0] != 0 or fracs[-1] >= 1:
        raise RejectedInput("a fraction set is a finite subset of [0,1) containing 0")
    where = {f: i for i, f in enumerate(fracs)}
    out = [EMPTY] * len(fracs)
    for (place, age), _ in m.items():
        f = _frac(age)
        if f not in where:
            raise RejectedInput(f"fractional part {f} of token ({place},{age}) is missing from the set")
        out[where[f]] |= ab.bit(place, age.numerator // age.denominator)
    return tuple(out)


def shortest_abstraction(m: Marking, ab: Alphabet) -> Word:
    return abstract_marking(m, {Fraction(0)} | m.fractions(), ab)


# word-level time operations

def rotate(e: Sequence, ab: Alphabet):
    """``alpha z  ->  (z+1) alpha``; the rightmost atom must not carry a star."""
    if not e:
        raise ShapeError("cannot rotate an empty word")
    last = e[-1]
    if isinstance(last, Atom):
        if last.starred:
            raise ShapeError("rotation needs an unstarred rightmost atom")
        return (Atom(ab.plus_one(last.symbol), False),) + tuple(e[:-1])
    return (ab.plus_one(last),) + tuple(e[:-1])


def prepend_empty(e: Sequence):
    if e and isinstance(e[0], Atom):
        return (Atom(EMPTY, False),) + tuple(e)
    return (EMPTY,) + tuple(e)


def normalize_word(w: Word) -> Word:
    """Drop empty symbols after position 0; they do not change the denotation."""
    return (w[0],) + tuple(x for x in w[1:] if x)


# membership in denotations

def word_covered_by_expr(w: Word, e: Expr) -> bool:
    """Whether the markings abstracted by ``w`` all lie in the denotation of ``e``.

    ``w`` must be normalized. Its front symbol is matched against the first
    symbol of some word of ``L(e)``; the remaining symbols are embedded in
    order, with starred atoms able to absorb several of them and every unused
    position standing for an inserted empty symbol.
    """
    w = tuple(w)
    e = tuple(e)
    return _covered(w, e)


@lru_cache(maxsize=1 << 16)
def _covered(w: tuple, e: tuple) -> bool:
    n, k = len(w), len(e)
    if n == 0:
        return True
    # front: w[0] must be matched by the first letter actually produced
    j = 0
    while j < k:
        sym, star = e[j]
        if subset(w[0], sym) and _embed(w, e, 1, j if star else j + 1):
            return True
        if not star:
            return False
        j += 1  # starred front atom taken zero times
    return False


def _embed(w, e, i, j) -> bool:
    # greedy leftmost embedding is optimal: matching earlier never hurts later
    n, k = len(w), len(e)
    while i < n:
        while j < k and not subset(w[i], e[j][0]):
            j += 1
        if j == k:
            return False
        if not e[j][1]:
            j += 1
        i += 1
    return True


def marking_in_denotation(m: Marking, e: Expr, ab: Alphabet) -> bool:
    return word_covered_by_expr(normalize_word(shortest_abstraction(m, ab)), e)


def word_covered_by_word(w: Word, v: Word) -> bool:
    """Coverage by the star-free expression spelled by ``v``."""
    if len(w) > len(v) or w[0] & ~v[0]:
        return False
    j, k = 1, len(v)
    for x in w[1:]:
        while j < k and x & ~v[j]:
            j += 1
        if j == k:
            return False
        j += 1
    return True
