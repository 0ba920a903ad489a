"""Reduction of arbitrary nets to non-consuming nets with the same answer."""
from __future__ import annotations

from collections import Counter

from .model import Net, Transition


def make_nonconsuming(net: Net) -> Net:
    """Return a non-consuming net with the same existential-coverability answers.

    Each transition reads at most one token per ``(place, variable)`` arc and
    gives back what it reads (``post' = post + pre'``). Starting from
    arbitrarily many initial tokens, one token of a given age is as good as any
    number of them, so the capped read does not change what is coverable.
    """
    transitions = []
    for t in net.transitions:
        pre = {key: 1 for key in t.pre}
        post = Counter(t.post)
        post.update(pre)
        transitions.append(Transition(t.name, dict(t.guard), pre, dict(post)))
    return Net(net.places, net.variables, tuple(transitions))
