"""Deciding existential coverability through a finite symbolic cover set."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from .accelerate import accelerate
from .errors import BudgetExceeded, InvariantViolation, RejectedInput
from .model import Net, is_nonconsuming
from .regions import EMPTY, Alphabet, Atom
from .saturation import Saturator

DEFAULT_STREAMING_BUDGET = 10_000


def expression_count_bound(m: int, n_places: int, cmax: int) -> int:
    """Number of simple expressions of length ``m``: ``2^(|P|(cmax+2)m + m)``."""
    return 2 ** (n_places * (cmax + 2) * m + m)


@dataclass(frozen=True)
class CoverQuery:
    """Can some ``m`` tokens of age 0 on ``initial`` eventually enable ``target``?"""

    net: Net
    initial: str
    target: str | None = None  # not needed for compute_coverset

    def __post_init__(self):
        if self.initial not in self.net.places:
            raise RejectedInput(f"unknown initial place {self.initial!r}")
        if self.target is not None:
            self.net.transition(self.target)
        if not is_nonconsuming(self.net):
            raise RejectedInput("cover queries need a non-consuming net; apply make_nonconsuming first")

    @cached_property
    def saturator(self) -> Saturator:
        return Saturator(self.net)

    @property
    def alphabet(self) -> Alphabet:
        return self.saturator.alphabet

    def start(self) -> tuple:
        """``{(p,0)} {}*``, whose denotation is every ``m`` copies of ``(p,0)``."""
        return (Atom(self.alphabet.symbol([(self.initial, 0)]), False), Atom(EMPTY, True))

    def enabled_in(self, e) -> bool:
        if self.target is None:
            raise RejectedInput("this query has no target transition")
        return self.saturator.enabled_in(e, self.target)


@dataclass
class CoverSet:
    expressions: list = field(default_factory=list)
    rounds: int = 0


@dataclass
class CoverResult:
    answer: bool
    witness: tuple | None = None
    round: int | None = None
    coverset: CoverSet | None = None

    def __bool__(self):
        return self.answer


def _rounds(q: CoverQuery, check: bool) -> Iterator[tuple[int, tuple, bool]]:
    """Yield ``(round, expression, closed)`` in discovery order.

    ``closed`` is true on the last expression of the final round.
    """
    sat = q.saturator
    cap = expression_count_bound(2, len(q.net.places), sat.cmax)
    current = q.start()
    seen = {current}
    rnd = 0
    while True:
        rnd += 1
        if rnd > cap:
            raise InvariantViolation(f"more than B(2) = {cap} rounds")
        res = accelerate(current, sat, check=check)
        closed = res.r in seen
        yield rnd, res.s1, False
        yield rnd, res.sl, False
        yield rnd, res.r, closed
        if closed:
            return
        seen.add(res.r)
        current = res.r


def compute_coverset(q: CoverQuery, check: bool = True) -> CoverSet:
    """All expressions recorded until the continuation expression repeats.

    The union of their denotations is the set of markings coverable from
    ``N * {(initial, 0)}``.
    """
    cs = CoverSet()
    for rnd, e, _ in _rounds(q, check):
        cs.expressions.append(e)
        cs.rounds = rnd
    limit = 3 * expression_count_bound(2, len(q.net.places), q.saturator.cmax)
    if len(cs.expressions) > limit:
        raise InvariantViolation(f"{len(cs.expressions)} expressions exceed 3*B(2) = {limit}")
    if any(len(e) not in (2, 4) for e in cs.expressions):
        raise InvariantViolation("cover-set expressions must have length 2 or 4")
    return cs


def exists_cover(q: CoverQuery, check: bool = True) -> CoverResult:
    """Decide the query, stopping at the first expression that enables the target."""
    cs = CoverSet()
    for rnd, e, _ in _rounds(q, check):
        cs.expressions.append(e)
        cs.rounds = rnd
        if q.enabled_in(e):
            return CoverResult(True, e, rnd, cs)
    return CoverResult(False, None, None, cs)


def streaming_cap(q: CoverQuery) -> int:
    return 3 * expression_count_bound(2, len(q.net.places), q.saturator.cmax)


def exists_cover_streaming(q: CoverQuery, budget: int = DEFAULT_STREAMING_BUDGET,
                           force: bool = False) -> bool:
    """Same answer as :func:`exists_cover` without remembering past rounds.

    Only the current continuation expression is kept; the index advances by
    three per round and the search gives up once it reaches ``3*B(2)``.
    """
    cap = streaming_cap(q)
    if cap > budget and not force:
        raise BudgetExceeded(
            f"streaming needs up to 3*B(2) = {cap} index steps, above the budget of {budget}; "
            "pass force to run anyway"
        )
    sat = q.saturator
    current = q.start()
    index = 0
    while index < cap:
        res = accelerate(current, sat)
        if q.enabled_in(res.s1) or q.enabled_in(res.sl) or q.enabled_in(res.r):
            return True
        index += 3
        current = res.r
    return False
