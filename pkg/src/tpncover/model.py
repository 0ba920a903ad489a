"""Concrete timed-arc Petri nets: syntax, markings, discrete and time steps.

Ages are exact :class:`fractions.Fraction` values. Every guard endpoint is an
integer, so rational ages are enough to witness any behaviour the nets have.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator, Mapping

from .errors import RejectedInput

# Post-condition argument meaning "produce the token with age 0".
RESET = "0"


def as_age(value) -> Fraction:
    if isinstance(value, float):
        # floats like 2.1 are meant as the decimal they print as
        return Fraction(repr(value))
    return Fraction(value)


@dataclass(frozen=True)
class Interval:
    """Guard interval with natural endpoints; ``hi=None`` stands for infinity."""

    lo: int = 0
    lo_open: bool = False
    hi: int | None = None
    hi_open: bool = False

    def __post_init__(self):
        if self.lo < 0 or (self.hi is not None and self.hi < 0):
            raise RejectedInput(f"negative interval endpoint in {self}")
        if self.hi is None:
            object.__setattr__(self, "hi_open", False)
            return
        if self.hi < self.lo:
            raise RejectedInput(f"empty interval: upper bound {self.hi} below lower bound {self.lo}")
        if self.hi == self.lo and (self.lo_open or self.hi_open):
            raise RejectedInput(f"degenerate empty interval at {self.lo}")

    @classmethod
    def point(cls, c: int) -> Interval:
        return cls(c, False, c, False)

    def __contains__(self, value) -> bool:
        v = as_age(value)
        if v < self.lo or (self.lo_open and v == self.lo):
            return False
        if self.hi is None:
            return True
        return v < self.hi or (not self.hi_open and v == self.hi)

    def endpoints(self) -> tuple[int, ...]:
        return (self.lo,) if self.hi is None else (self.lo, self.hi)

    def __str__(self):
        left = "]" if self.lo_open else "["
        if self.hi is None:
            return f"{left}{self.lo},inf["
        right = "[" if self.hi_open else "]"
        return f"{left}{self.lo},{self.hi}{right}"


ANY_AGE = Interval()


@dataclass(frozen=True)
class Transition:
    """A guarded transition.

    ``pre`` maps ``(place, variable)`` to a multiplicity and ``post`` maps
    ``(place, variable or RESET)`` to a multiplicity. Variables of ``pre``
    without an explicit guard get ``[0, inf[``.
    """

    name: str
    guard: Mapping[str, Interval] = field(default_factory=dict)
    pre: Mapping[tuple[str, str], int] = field(default_factory=dict)
    post: Mapping[tuple[str, str], int] = field(default_factory=dict)

    def __post_init__(self):
        pre = {k: v for k, v in dict(self.pre).items() if v}
        post = {k: v for k, v in dict(self.post).items() if v}
        for (_, var), mult in list(pre.items()) + list(post.items()):
            if mult < 0:
                raise RejectedInput(f"negative multiplicity in transition {self.name}")
        if any(var == RESET for _, var in pre):
            raise RejectedInput(f"transition {self.name}: reset argument used in a precondition")
        pre_vars = {var for _, var in pre}
        for place, arg in post:
            if arg != RESET and arg not in pre_vars:
                raise RejectedInput(
                    f"transition {self.name}: post variable {arg!r} on place {place!r} "
                    "does not appear in the precondition"
                )
        guard = dict(self.guard)
        for var in self.variables:
            guard.setdefault(var, ANY_AGE)
        object.__setattr__(self, "pre", pre)
        object.__setattr__(self, "post", post)
        object.__setattr__(self, "guard", guard)

    def __hash__(self):
        return hash((self.name, tuple(sorted(self.guard.items())),
                     tuple(sorted(self.pre.items())), tuple(sorted(self.post.items()))))

    @property
    def variables(self) -> tuple[str, ...]:
        """Variables of the precondition, in order of first occurrence."""
        return tuple(dict.fromkeys(var for _, var in self.pre))

    def places_of(self, var: str) -> tuple[str, ...]:
        return tuple(p for p, v in self.pre if v == var)


@dataclass(frozen=True)
class Net:
    places: tuple[str, ...]
    variables: tuple[str, ...]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        for kind, names in (("place", self.places), ("variable", self.variables),
                            ("transition", [t.name for t in self.transitions])):
            if len(set(names)) != len(names):
                raise RejectedInput(f"duplicate {kind} name")
        if RESET in self.variables:
            raise RejectedInput(f"{RESET!r} is reserved and cannot name a variable")
        places, variables = set(self.places), set(self.variables)
        for t in self.transitions:
            for place, var in list(t.pre) + list(t.post):
                if place not in places:
                    raise RejectedInput(f"transition {t.name}: unknown place {place!r}")
                if var != RESET and var not in variables:
                    raise RejectedInput(f"transition {t.name}: unknown variable {var!r}")
            for var in t.guard:
                if var not in variables:
                    raise RejectedInput(f"transition {t.name}: guard on unknown variable {var!r}")

    def transition(self, name: str) -> Transition:
        for t in self.transitions:
            if t.name == name:
                return t
        raise RejectedInput(f"unknown transition {name!r}")


class Marking:
    """Finite multiset of ``(place, age)`` tokens. Immutable and hashable."""

    __slots__ = ("_items", "_hash")

    def __init__(self, tokens: Iterable[tuple[str, object]] | Mapping[tuple[str, object], int] = ()):
        counts: Counter = Counter()
        if isinstance(tokens, Mapping):
            for (place, age), mult in tokens.items():
                counts[(place, as_age(age))] += mult
        else:
            for place, age in tokens:
                counts[(place, as_age(age))] += 1
        for (_, age), mult in counts.items():
            if age < 0 or mult < 0:
                raise RejectedInput("markings hold nonnegative ages and multiplicities")
        self._items = tuple(sorted((k, v) for k, v in counts.items() if v))
        self._hash = hash(self._items)

    @classmethod
    def _from_counter(cls, counts: Counter) -> Marking:
        m = cls.__new__(cls)
        m._items = tuple(sorted((k, v) for k, v in counts.items() if v > 0))
        m._hash = hash(m._items)
        return m

    def counter(self) -> Counter:
        return Counter(dict(self._items))

    def items(self):
        return self._items

    def support(self) -> list[tuple[str, Fraction]]:
        return [k for k, _ in self._items]

    def count(self, place: str, age) -> int:
        return dict(self._items).get((place, as_age(age)), 0)

    def ages(self) -> list[Fraction]:
        return sorted({age for (_, age), _ in self._items})

    def fractions(self) -> set[Fraction]:
        return {age - (age.numerator // age.denominator) for (_, age), _ in self._items}

    def __iter__(self) -> Iterator[tuple[str, Fraction]]:
        for key, mult in self._items:
            for _ in range(mult):
                yield key

    def __len__(self):
        return sum(mult for _, mult in self._items)

    def __bool__(self):
        return bool(self._items)

    def __eq__(self, other):
        return isinstance(other, Marking) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __le__(self, other: Marking) -> bool:
        mine = other.counter()
        return all(mine[k] >= v for k, v in self._items)

    def __ge__(self, other: Marking) -> bool:
        return other <= self

    def __add__(self, other: Marking) -> Marking:
        return Marking._from_counter(self.counter() + other.counter())

    def __sub__(self, other: Marking) -> Marking:
        if not other <= self:
            raise RejectedInput("multiset difference needs the subtrahend to be covered")
        return Marking._from_counter(self.counter() - other.counter())

    def __mul__(self, k: int) -> Marking:
        return Marking._from_counter(Counter({key: v * k for key, v in self._items}))

    __rmul__ = __mul__

    def __repr__(self):
        inner = ", ".join(
            f"({p},{age})" + (f"^{m}" if m > 1 else "") for (p, age), m in self._items
        )
        return f"Marking{{{inner}}}"


def cmax(net: Net) -> int:
    """Largest finite guard endpoint of the net (0 if there is none)."""
    return max((e for t in net.transitions for g in t.guard.values() for e in g.endpoints()), default=0)


def instantiate(multiset: Mapping[tuple[str, str], int], valuation: Mapping[str, Fraction]) -> Marking:
    counts: Counter = Counter()
    for (place, arg), mult in multiset.items():
        age = Fraction(0) if arg == RESET else valuation[arg]
        counts[(place, age)] += mult
    return Marking._from_counter(counts)


def satisfies_guard(t: Transition, valuation: Mapping[str, Fraction]) -> bool:
    return all(var in valuation and valuation[var] in t.guard[var] for var in t.variables)


def enabled_valuations(m: Marking, t: Transition) -> Iterator[dict[str, Fraction]]:
    """All valuations over ages present in ``m`` that enable ``t``.

    Enumerated in ascending age order per variable, variables in order of
    first occurrence in the precondition.
    """
    tokens = m.counter()
    present = {}
    for (place, age) in tokens:
        present.setdefault(age, set()).add(place)
    ages = sorted(present)
    candidates = []
    for var in t.variables:
        needed = t.places_of(var)
        options = [a for a in ages if a in t.guard[var] and all(p in present[a] for p in needed)]
        if not options:
            return
        candidates.append(options)
    names = t.variables
    for choice in product(*candidates):
        valuation = dict(zip(names, choice))
        if instantiate(t.pre, valuation) <= m:
            yield valuation


def enabled_concrete(m: Marking, t: Transition) -> dict[str, Fraction] | None:
    return next(enabled_valuations(m, t), None)


def fire(m: Marking, t: Transition, valuation: Mapping[str, object]) -> Marking:
    pi = {var: as_age(v) for var, v in valuation.items()}
    if not satisfies_guard(t, pi):
        raise RejectedInput(f"valuation {pi} does not satisfy the guard of {t.name}")
    consumed = instantiate(t.pre, pi)
    if not consumed <= m:
        raise RejectedInput(f"marking does not cover the precondition of {t.name} under {pi}")
    return m - consumed + instantiate(t.post, pi)


def elapse(m: Marking, d) -> Marking:
    d = as_age(d)
    if d < 0:
        raise RejectedInput("time cannot run backwards")
    return Marking._from_counter(Counter({(p, age + d): k for (p, age), k in m.items()}))


def is_nonconsuming(net: Net) -> bool:
    for t in net.transitions:
        if any(mult > 1 for mult in t.pre.values()):
            return False
        if any(t.post.get(key, 0) < mult for key, mult in t.pre.items()):
            return False
    return True
