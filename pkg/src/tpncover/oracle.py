"""Independent engines used to validate the symbolic decision procedure.

``word_bfs`` explores single words (no stars) with the elementary word-level
steps: saturation, a short delay (prepend an empty class) and a delay up to
the next integer (rotation). ``concrete_bfs`` simulates markings with exact
rational ages. Neither is a decision procedure; both may answer ``unknown``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from .coverset import CoverQuery, exists_cover
from .errors import InvariantViolation, RejectedInput
from .model import Marking, Net, elapse, enabled_concrete, enabled_valuations, fire, is_nonconsuming
from .regions import EMPTY, normalize_word, prepend_empty, rotate, word_covered_by_word

FOUND = "found"
EXHAUSTED = "exhausted"
UNKNOWN = "unknown"


@dataclass
class OracleVerdict:
    outcome: str
    states: int
    trace: list = field(default_factory=list)  # [(op, word or marking)]

    @property
    def found(self) -> bool:
        return self.outcome == FOUND


def populatable_places(net: Net, initial: str) -> set[str]:
    """Places that can ever hold a token, ignoring guards and ages."""
    marked = {initial}
    grew = True
    while grew:
        grew = False
        for t in net.transitions:
            if all(p in marked for p, _ in t.pre):
                for p, _ in t.post:
                    if p not in marked:
                        marked.add(p)
                        grew = True
    return marked


def _statically_dead(net: Net, initial: str, target: str) -> bool:
    live = populatable_places(net, initial)
    return any(p not in live for p, _ in net.transition(target).pre)


# word level

def _word_successors(q: CoverQuery, w):
    ab = q.alphabet
    if w[0] != EMPTY:
        yield "prepend", prepend_empty(w)
    yield "rotate", normalize_word(rotate(w, ab))


class _Kept:
    """A word with the summaries used to reject coverage checks early."""

    __slots__ = ("word", "front", "rest")

    def __init__(self, word):
        self.word = word
        self.front = word[0]
        rest = 0
        for x in word[1:]:
            rest |= x
        self.rest = rest

    def covers(self, other: _Kept) -> bool:
        if len(other.word) > len(self.word):
            return False
        if other.front & ~self.front or other.rest & ~self.rest:
            return False
        return word_covered_by_word(other.word, self.word)


def word_bfs(q: CoverQuery, max_depth: int = 20, max_states: int = 10_000) -> OracleVerdict:
    """Breadth-first search over words with coverage pruning.

    A new word is dropped when it is covered by a word already kept; words it
    covers are dropped from the pruning set. ``exhausted`` is reported only
    when the frontier empties without any depth or state cut-off.
    """
    sat = q.saturator
    ab = q.alphabet
    w0 = (ab.symbol([(q.initial, 0)]),)
    s0 = sat.saturate_word(w0)
    root = (("init", w0), ("saturate", s0))
    if q.enabled_in(s0):
        return OracleVerdict(FOUND, 1, list(root))
    kept = [_Kept(s0)]
    parents = {s0: (None, root)}
    frontier = deque([(s0, 0)])
    states = 1
    truncated = False
    while frontier:
        w, depth = frontier.popleft()
        if depth >= max_depth:
            truncated = True
            continue
        for op, moved in _word_successors(q, w):
            nxt = sat.saturate_word(moved)
            if nxt in parents:
                continue
            probe = _Kept(nxt)
            if any(v.covers(probe) for v in kept):
                continue
            if states >= max_states:
                return OracleVerdict(UNKNOWN, states)
            states += 1
            parents[nxt] = (w, ((op, moved), ("saturate", nxt)))
            if q.enabled_in(nxt):
                return OracleVerdict(FOUND, states, _unwind(parents, nxt))
            kept = [v for v in kept if not probe.covers(v)]
            kept.append(probe)
            frontier.append((nxt, depth + 1))
    return OracleVerdict(UNKNOWN if truncated else EXHAUSTED, states)


def _unwind(parents, w):
    steps = []
    while w is not None:
        parent, ops = parents[w]
        steps[:0] = ops
        w = parent
    return steps


def replay_word_trace(q: CoverQuery, trace) -> tuple:
    """Re-apply the operations of a word trace; returns the final word.

    Raises :class:`InvariantViolation` if a recorded word is not reproduced.
    """
    sat, ab = q.saturator, q.alphabet
    w = None
    for op, recorded in trace:
        if op == "init":
            w = tuple(recorded)
        elif op == "saturate":
            w = sat.saturate_word(w)
        elif op == "prepend":
            w = prepend_empty(w)
        elif op == "rotate":
            w = normalize_word(rotate(w, ab))
        else:
            raise RejectedInput(f"unknown trace operation {op!r}")
        if w != tuple(recorded):
            raise InvariantViolation(f"replay diverged at {op}: {ab.render(w)} != {ab.render(recorded)}")
    return w


# concrete level

def _cap_multiplicities(m: Marking, cap: int) -> Marking:
    return Marking({k: min(v, cap) for k, v in m.items()})


def concrete_bfs(net: Net, initial: str, target: str, m: int, max_depth: int = 8,
                 denominator: int = 8, max_states: int = 20_000) -> OracleVerdict:
    """Explicit search from ``m`` tokens of age 0 on ``initial``.

    Delays are the multiples ``k/denominator`` for ``k = 1..denominator``.
    On non-consuming nets token multiplicities beyond the largest precondition
    size cannot matter and are capped, which keeps markings finite.
    """
    if initial not in net.places:
        raise RejectedInput(f"unknown initial place {initial!r}")
    goal = net.transition(target)
    if m <= 0 or _statically_dead(net, initial, target):
        return OracleVerdict(EXHAUSTED, 1)
    cap = None
    if is_nonconsuming(net):
        cap = max([sum(t.pre.values()) for t in net.transitions] + [1])
    start = Marking([(initial, 0)] * m)
    if cap:
        start = _cap_multiplicities(start, cap)
    parents = {start: None}
    if enabled_concrete(start, goal) is not None:
        return OracleVerdict(FOUND, 1, [("init", start)])
    delays = [Fraction(k, denominator) for k in range(1, denominator + 1)]
    frontier = deque([(start, 0)])
    truncated = False
    while frontier:
        marking, depth = frontier.popleft()
        if depth >= max_depth:
            truncated = True
            continue
        succ = []
        for t in net.transitions:
            for pi in enabled_valuations(marking, t):
                succ.append((f"fire {t.name} " + _show_valuation(pi), fire(marking, t, pi)))
        for d in delays:
            succ.append((f"delay {d}", elapse(marking, d)))
        for label, nxt in succ:
            if cap:
                nxt = _cap_multiplicities(nxt, cap)
            if nxt in parents:
                continue
            if len(parents) >= max_states:
                return OracleVerdict(UNKNOWN, len(parents))
            parents[nxt] = (marking, label)
            if enabled_concrete(nxt, goal) is not None:
                return OracleVerdict(FOUND, len(parents), _unwind_concrete(parents, nxt))
            frontier.append((nxt, depth + 1))
    return OracleVerdict(UNKNOWN if truncated else EXHAUSTED, len(parents))


def _show_valuation(pi) -> str:
    return "{" + ",".join(f"{k}={v}" for k, v in pi.items()) + "}"


def _unwind_concrete(parents, marking):
    steps = []
    while parents[marking] is not None:
        prev, label = parents[marking]
        steps.append((label, marking))
        marking = prev
    steps.append(("init", marking))
    return steps[::-1]


# cross-checking

@dataclass
class CrossCheck:
    answer: bool
    word: OracleVerdict
    concrete: OracleVerdict | None
    divergences: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.divergences


def crosscheck(q: CoverQuery, original: Net | None = None, *, depth: int = 20, states: int = 10_000,
               m: int = 3, concrete_depth: int = 8, denominator: int = 4,
               concrete_states: int = 20_000) -> CrossCheck:
    """Run the decision procedure against both oracles.

    ``original`` is the net before the non-consuming reduction, if any; the
    concrete search runs on it. Oracle ``found`` with answer NO, or word
    oracle ``exhausted`` with answer YES, is a divergence.
    """
    result = exists_cover(q)
    word = word_bfs(q, depth, states)
    concrete = None
    if m > 0:
        concrete = concrete_bfs(original or q.net, q.initial, q.target, m, concrete_depth,
                                denominator, concrete_states)
    report = CrossCheck(result.answer, word, concrete)
    ab = q.alphabet
    if word.found and not result.answer:
        report.divergences.append(
            "word oracle enables the target but the cover set does not; last word "
            + ab.render(word.trace[-1][1]))
    if word.outcome == EXHAUSTED and result.answer:
        report.divergences.append(
            "word oracle closed without enabling the target but the cover set enables it in "
            + ab.render(result.witness))
    if concrete is not None and concrete.found and not result.answer:
        report.divergences.append(
            f"concrete run enables the target but the cover set does not; final marking {concrete.trace[-1][1]!r}")
    return report
