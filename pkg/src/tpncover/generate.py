"""Seeded random instances for tests and benchmarks."""
from __future__ import annotations

import random

from .coverset import CoverQuery
from .model import RESET, Interval, Net, Transition, cmax as net_cmax


def random_interval(rng: random.Random, cmax: int) -> Interval:
    lo = rng.randint(0, cmax)
    if rng.random() < 0.3:
        return Interval(lo, rng.random() < 0.3)
    hi = rng.randint(lo, cmax)
    if hi == lo:
        return Interval.point(lo)
    return Interval(lo, rng.random() < 0.4, hi, rng.random() < 0.4)


def random_net(rng: random.Random, max_places: int = 4, max_cmax: int = 3,
               max_transitions: int = 4, n_places: int | None = None,
               cmax: int | None = None) -> Net:
    """A random non-consuming net whose largest guard constant is exactly ``cmax``."""
    n_places = n_places or rng.randint(1, max_places)
    target_cmax = rng.randint(0, max_cmax) if cmax is None else cmax
    places = tuple(f"p{i}" for i in range(n_places))
    variables = ("x", "y")
    transitions = []
    for ti in range(rng.randint(1, max_transitions)):
        used = variables[: rng.randint(1, 2)]
        pre, guard = {}, {}
        for var in used:
            for p in rng.sample(places, rng.randint(1, min(2, n_places))):
                pre[(p, var)] = 1
            guard[var] = random_interval(rng, target_cmax)
        post = dict(pre)
        for _ in range(rng.randint(1, 2)):
            arg = rng.choice(used + (RESET,))
            post[(rng.choice(places), arg)] = post.get((rng.choice(places), arg), 0) + 1
        transitions.append(Transition(f"t{ti}", guard, pre, post))
    # the target only reads, so it never changes what is coverable
    goal_pre = {(p, "x"): 1 for p in rng.sample(places, rng.randint(1, min(2, n_places)))}
    transitions.append(Transition("goal", {"x": random_interval(rng, target_cmax)}, goal_pre, dict(goal_pre)))
    net = Net(places, variables, tuple(transitions))
    if net_cmax(net) < target_cmax:
        # pin the constant with an inert guard so cmax is exactly as requested
        t = transitions[0]
        var = t.variables[0]
        guard = dict(t.guard)
        guard[var] = Interval(guard[var].lo, guard[var].lo_open, target_cmax, False) \
            if guard[var].hi is not None else Interval(guard[var].lo, guard[var].lo_open, target_cmax, False)
        transitions[0] = Transition(t.name, guard, t.pre, t.post)
        net = Net(places, variables, tuple(transitions))
    return net


def random_query(rng: random.Random, **kw) -> CoverQuery:
    net = random_net(rng, **kw)
    return CoverQuery(net, rng.choice(net.places), "goal")
