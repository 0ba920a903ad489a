"""Iterated depth-1 monotone Boolean circuits and their encoding as nets.

A circuit on ``n`` bits has one constraint ``i' = j AND k`` or ``i' = j OR k``
per bit. The question "is bit 0 set in some iterate ``F^m(v)``?" becomes an
existential-coverability query: tokens of age 1 encode the current vector and
the constraint transitions turn them into age-0 tokens encoding the next one.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Sequence

from .coverset import CoverQuery
from .errors import ParseError, RejectedInput
from .model import RESET, Interval, Net, Transition

AND = "AND"
OR = "OR"


@dataclass(frozen=True)
class Circuit:
    n: int
    constraints: tuple  # ((op, j, k), ...) indexed by the bit they update

    def __post_init__(self):
        object.__setattr__(self, "constraints", tuple(tuple(c) for c in self.constraints))
        if self.n < 1 or len(self.constraints) != self.n:
            raise RejectedInput("a circuit on n >= 1 bits needs exactly n constraints")
        for op, j, k in self.constraints:
            if op not in (AND, OR) or not (0 <= j < self.n and 0 <= k < self.n):
                raise RejectedInput(f"bad constraint {(op, j, k)}")

    def __str__(self):
        lines = [str(self.n)] + [f"{i}: {j} {op} {k}" for i, (op, j, k) in enumerate(self.constraints)]
        return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    """Read ``n`` on the first line, then ``i: j AND k`` / ``i: j OR k`` lines."""
    lines = [(no, line.strip()) for no, line in enumerate(text.splitlines(), 1)]
    lines = [(no, line) for no, line in lines if line and not line.startswith("#")]
    if not lines:
        raise ParseError("empty circuit description", 1, 1)
    no, first = lines[0]
    if not first.isdigit():
        raise ParseError("first line must be the number of bits", no, 1)
    n = int(first)
    constraints: dict[int, tuple] = {}
    for no, line in lines[1:]:
        m = re.fullmatch(r"(\d+)\s*:\s*(\d+)\s+(AND|OR)\s+(\d+)", line, re.IGNORECASE)
        if not m:
            raise ParseError(f"cannot read constraint {line!r}", no, 1)
        i, j, op, k = int(m.group(1)), int(m.group(2)), m.group(3).upper(), int(m.group(4))
        if i in constraints:
            raise ParseError(f"bit {i} constrained twice", no, 1)
        constraints[i] = (op, j, k)
    if sorted(constraints) != list(range(n)):
        raise ParseError(f"expected one constraint for each of the bits 0..{n - 1}", lines[-1][0], 1)
    return Circuit(n, tuple(constraints[i] for i in range(n)))


def parse_vector(bits: str, n: int | None = None) -> tuple[bool, ...]:
    bits = bits.strip()
    if not bits or set(bits) - {"0", "1"}:
        raise RejectedInput(f"not a bitstring: {bits!r}")
    if n is not None and len(bits) != n:
        raise RejectedInput(f"vector has {len(bits)} bits, circuit has {n}")
    return tuple(b == "1" for b in bits)


def eval_step(c: Circuit, v: Sequence[bool]) -> tuple[bool, ...]:
    if len(v) != c.n:
        raise RejectedInput(f"vector of length {len(v)} for a circuit on {c.n} bits")
    return tuple((v[j] and v[k]) if op == AND else (v[j] or v[k]) for op, j, k in c.constraints)


def iterate_decide(c: Circuit, v: Sequence[bool]) -> bool:
    """Whether bit 0 is set in some iterate ``F^m(v)``, ``m >= 0``."""
    v = tuple(bool(b) for b in v)
    seen = set()
    while v not in seen:
        if v[0]:
            return True
        seen.add(v)
        v = eval_step(c, v)
    return False


def circuit_to_tpn(c: Circuit, v: Sequence[bool], initial: str = "init", target: str = "goal") -> CoverQuery:
    one, zero = Interval.point(1), Interval.point(0)
    places = [f"{kind}_{i}" for i in range(c.n) for kind in ("True", "False")] + [initial]
    transitions = []
    for i, (op, j, k) in enumerate(c.constraints):
        # AND: both inputs true -> true, either input false -> false; OR swaps the roles
        both, either = ("True", "False") if op == AND else ("False", "True")
        pre = {(f"{both}_{j}", "x"): 1, (f"{both}_{k}", "y"): 1}
        transitions.append(Transition(f"{i}.B", {"x": one, "y": one}, pre, {**pre, (f"{both}_{i}", RESET): 1}))
        for side, src in (("L", j), ("R", k)):
            pre = {(f"{either}_{src}", "x"): 1}
            transitions.append(Transition(f"{i}.{side}", {"x": one}, pre, {**pre, (f"{either}_{i}", RESET): 1}))
    for i, bit in enumerate(v):
        pre = {(initial, "w"): 1}
        out = f"{'True' if bit else 'False'}_{i}"
        transitions.append(Transition(f"init_{i}", {"w": zero}, pre, {**pre, (out, RESET): 1}))
    goal = {("True_0", "z"): 1}
    transitions.append(Transition(target, {"z": zero}, goal, dict(goal)))
    net = Net(tuple(places), ("x", "y", "w", "z"), tuple(transitions))
    return CoverQuery(net, initial, target)


def random_circuit(n: int, rng: random.Random) -> Circuit:
    return Circuit(n, tuple((rng.choice((AND, OR)), rng.randrange(n), rng.randrange(n)) for _ in range(n)))
