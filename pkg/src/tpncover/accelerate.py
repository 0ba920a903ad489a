"""The unfold, saturate and collapse loop on expressions of shape ``a b*``.

Starting from ``x1 x0*`` the loop repeatedly lets the last (starred) class
reach the next integer, prepending a copy ``(x0+1)``, saturates, and keeps the
length at four by starring position 1 and dropping position 2. It stops when
the collapsed expression repeats and returns

* ``s1``  -- the saturation of the input,
* ``sl``  -- the stable length-4 expression ``a b* c d*``,
* ``r``   -- ``(c+1) b*``, the expression from which exploration continues.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvariantViolation, ShapeError
from .regions import Atom, pointwise_subset, subset
from .saturation import Saturator


@dataclass(frozen=True)
class AccelerateResult:
    s1: tuple
    sl: tuple
    r: tuple
    iterations: int
    history: tuple = field(default=(), compare=False, repr=False)


def claimed_iteration_bound(n_places: int, cmax: int) -> int:
    """The claimed termination bound ``4|P|(cmax+1)`` on the final counter."""
    return 4 * n_places * (cmax + 1)


def iteration_bound(n_places: int, cmax: int) -> int:
    """A bound the loop provably respects.

    From ``i = 4`` on, every non-final round adds at least one of the
    ``4|P|(cmax+2)`` bits of the collapsed expression, and the final round
    repeats the previous expression.
    """
    return 5 + 4 * n_places * (cmax + 2)


def _unfold(sat: Saturator, s: tuple) -> tuple:
    # (x0 + 1) s, then saturate
    x0 = s[-1].symbol
    return sat.saturate_expr((Atom(sat.alphabet.plus_one(x0), False),) + s)


def accelerate(s0, sat: Saturator, check: bool = True, keep_history: bool = False) -> AccelerateResult:
    """Run the acceleration loop on ``s0 = x1 x0*``.

    With ``check`` the symbol inclusions that guarantee termination are
    asserted at every step and :func:`iteration_bound` is enforced; a failure
    raises :class:`InvariantViolation`.
    """
    s0 = tuple(s0)
    if len(s0) != 2 or s0[0].starred or not s0[1].starred:
        raise ShapeError("accelerate expects an expression of shape a b*")

    s1 = sat.saturate_expr(s0)
    s2 = _unfold(sat, s1)
    s3 = _unfold(sat, s2)
    history = [s1, s2, s3]
    if check:
        # extensivity of saturation on the carried-over positions
        for before, after in ((s0, s1), (s1, s2[1:]), (s2, s3[1:])):
            if not pointwise_subset(before, after):
                raise InvariantViolation("saturation shrank a symbol")
        if not subset(s2[0].symbol, s3[0].symbol):
            raise InvariantViolation("front symbols are not increasing")

    bound = iteration_bound(len(sat.alphabet.places), sat.cmax)
    i = 3
    current, last_long = s3, s3
    while True:
        long = _unfold(sat, current)  # x_{i+1} x_i x_{i-1} x_1 x_0*
        nxt = (long[0], Atom(long[1].symbol, True), long[3], long[4])
        if check:
            if not pointwise_subset(current, long[1:]):
                raise InvariantViolation(f"saturation shrank a symbol at i={i}")
            if not (subset(current[0].symbol, long[0].symbol)
                    and subset(last_long[1].symbol, long[1].symbol)
                    and pointwise_subset(current, nxt)):
                raise InvariantViolation(f"collapsed expressions stopped growing at i={i}")
        if keep_history:
            history.append(nxt)
        last_long = long
        i += 1
        if check and i > bound:
            raise InvariantViolation(f"acceleration exceeded {bound} iterations")
        if nxt == current:
            break
        current = nxt

    sl = current
    r = (Atom(sat.alphabet.plus_one(sl[2].symbol), False), Atom(sl[1].symbol, True))
    return AccelerateResult(s1, sl, r, i, tuple(history) if keep_history else ())
