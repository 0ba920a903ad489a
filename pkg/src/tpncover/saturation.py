"""Abstract enabledness and saturation of words and simple expressions.

For a transition ``t`` and a pair ``(alpha, beta)`` -- the integer-age class
of a word and its fractional classes -- ``f_step`` and ``g_step`` add the
tokens one firing of ``t`` can produce in the integer class and in a
fractional class respectively. Iterating them over all transitions until
nothing changes gives the saturation ``SAT``.

``beta`` is either one symbol (treated as a single fractional class) or a
sequence of symbols, one per class. All tokens a variable reads must share one
age, so a variable with a positive fractional part has to find all of its
input places inside a single class.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import InvariantViolation, RejectedInput, ShapeError
from .model import RESET, Interval, Net, Transition, is_nonconsuming
from .regions import Alphabet, Atom, Symbol, subset

HALF = Fraction(1, 2)


class AbstractAge(NamedTuple):
    int_age: int
    positive: bool  # fractional part > 0

    def representative(self) -> Fraction:
        return self.int_age + (HALF if self.positive else 0)


def guard_admits(a: AbstractAge, interval: Interval, cmax: int | None = None) -> bool:
    """Evaluate the guard at the canonical value of an abstract age.

    Integer class -> the integer itself, fractional class -> integer + 1/2.
    Guard endpoints never exceed ``cmax`` so the answer is uniform above it.
    """
    if cmax is not None and a.int_age > cmax + 1:
        raise RejectedInput(f"abstract age {a.int_age} exceeds cmax+1")
    return a.representative() in interval


@dataclass(frozen=True)
class _Var:
    zero: tuple  # ((read mask, transfer bits), ...) per admissible integer age
    positive: tuple


@dataclass(frozen=True)
class _Compiled:
    name: str
    variables: tuple
    resets: Symbol


def _classes(beta) -> tuple:
    if isinstance(beta, int):
        return (beta,)
    return tuple(beta)


class Saturator:
    """Saturation operators of one non-consuming net.

    Immutable after construction; safe to share between threads.
    """

    def __init__(self, net: Net, alphabet: Alphabet | None = None):
        if not is_nonconsuming(net):
            raise RejectedInput("saturation is defined for non-consuming nets only")
        self.net = net
        self.alphabet = alphabet or Alphabet.of(net)
        if self.alphabet.places != tuple(net.places):
            raise RejectedInput("alphabet and net disagree on the places")
        self._compiled = tuple(self._compile(t) for t in net.transitions)
        self._by_name = {c.name: c for c in self._compiled}

    @property
    def cmax(self) -> int:
        return self.alphabet.cmax

    def _compile(self, t: Transition) -> _Compiled:
        ab = self.alphabet
        ages = range(ab.cmax + 2)
        variables = []
        for var in t.variables:
            reads = t.places_of(var)
            writes = [p for (p, arg) in t.post if arg == var]
            guard = t.guard[var]
            zero, positive = [], []
            for c in ages:
                mask = ab.symbol((p, c) for p in reads)
                out = ab.symbol((p, c) for p in writes)
                if guard_admits(AbstractAge(c, False), guard):
                    zero.append((mask, out))
                if guard_admits(AbstractAge(c, True), guard):
                    positive.append((mask, out))
            variables.append(_Var(tuple(zero), tuple(positive)))
        resets = ab.symbol((p, 0) for (p, arg) in t.post if arg == RESET)
        return _Compiled(t.name, tuple(variables), resets)

    def _get(self, t) -> _Compiled:
        if isinstance(t, Transition):
            t = t.name
        try:
            return self._by_name[t]
        except KeyError:
            raise RejectedInput(f"unknown transition {t!r}") from None

    # single-transition operators

    @staticmethod
    def _enables(c: _Compiled, alpha: Symbol, classes: tuple) -> bool:
        for v in c.variables:
            if any(alpha & m == m for m, _ in v.zero):
                continue
            if any(x & m == m for m, _ in v.positive for x in classes):
                continue
            return False
        return True

    def enables(self, alpha: Symbol, beta, t) -> bool:
        return self._enables(self._get(t), alpha, _classes(beta))

    def f_step(self, alpha: Symbol, beta, x: Symbol, t) -> Symbol:
        c = self._get(t)
        if not self._enables(c, alpha, _classes(beta)):
            return x
        return x | self._gain_zero(c, x)

    def g_step(self, alpha: Symbol, beta, x: Symbol, t) -> Symbol:
        c = self._get(t)
        if not self._enables(c, alpha, _classes(beta)):
            return x
        return x | self._gain_positive(c, x)

    @staticmethod
    def _gain_zero(c: _Compiled, x: Symbol) -> Symbol:
        gain = c.resets
        for v in c.variables:
            for m, out in v.zero:
                if x & m == m:
                    gain |= out
        return gain

    @staticmethod
    def _gain_positive(c: _Compiled, x: Symbol) -> Symbol:
        gain = 0
        for v in c.variables:
            for m, out in v.positive:
                if x & m == m:
                    gain |= out
        return gain

    # closure

    def fg_closure(self, alpha: Symbol, beta, x0: Symbol, rest: Sequence[Symbol],
                   order: Sequence | None = None) -> tuple[Symbol, list[Symbol]]:
        """Least fixpoint of all ``f_step``/``g_step`` applications.

        Growth of the front accumulator is folded into ``alpha`` and grown
        rest symbols join the fractional classes of ``beta``.
        """
        compiled = self._compiled if order is None else tuple(self._get(t) for t in order)
        extra = _classes(beta)
        front, rest = x0, list(rest)
        bound = (len(rest) + 1) * len(self.alphabet.places) * self.alphabet.stride + 1
        rounds = 0
        changed = True
        while changed:
            changed = False
            rounds += 1
            if rounds > bound + 1:
                raise InvariantViolation("saturation failed to converge within its bound")
            for c in compiled:
                if not self._enables(c, alpha | front, extra + tuple(rest)):
                    continue
                new = front | self._gain_zero(c, front)
                if new != front:
                    front, changed = new, True
                for i, x in enumerate(rest):
                    new = x | self._gain_positive(c, x)
                    if new != x:
                        rest[i], changed = new, True
        return front, rest

    def saturate_expr(self, e: Sequence[Atom]) -> tuple[Atom, ...]:
        if not e:
            raise ShapeError("cannot saturate an empty expression")
        if e[0].starred:
            raise ShapeError("saturation needs an unstarred front atom")
        front, rest = self.fg_closure(e[0].symbol, (), e[0].symbol, [a.symbol for a in e[1:]])
        return (Atom(front, False),) + tuple(Atom(x, a.starred) for x, a in zip(rest, e[1:]))

    def saturate_word(self, w: Sequence[Symbol]) -> tuple[Symbol, ...]:
        if not w:
            raise ShapeError("cannot saturate an empty word")
        front, rest = self.fg_closure(w[0], (), w[0], w[1:])
        return (front,) + tuple(rest)

    def enabled_in(self, e: Sequence, t) -> bool:
        """Whether some marking of the denotation of ``e`` (word or expression) enables ``t``."""
        syms = [a.symbol if isinstance(a, Atom) else a for a in e]
        return self.enables(syms[0], syms[1:], t)

    def transition_names(self) -> list[str]:
        return [c.name for c in self._compiled]


def is_saturated(sat: Saturator, e) -> bool:
    if isinstance(e[0], Atom):
        return sat.saturate_expr(e) == tuple(e)
    return sat.saturate_word(e) == tuple(e)


def extensive(before: Sequence[Symbol], after: Sequence[Symbol]) -> bool:
    return all(subset(x, y) for x, y in zip(before, after))
