import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tpncover.errors import RejectedInput
from tpncover.generate import random_net
from tpncover.model import (
    Interval, Marking, Net, cmax, elapse, enabled_concrete, enabled_valuations, fire, is_nonconsuming,
)


def test_cmax_examples(n_ex, n_tick):
    assert cmax(n_ex) == 5
    assert cmax(n_tick) == 2
    assert cmax(Net(("p",), (), ())) == 0


def test_interval_rejects_degenerate():
    with pytest.raises(RejectedInput):
        Interval(2, False, 1, False)
    with pytest.raises(RejectedInput):
        Interval(1, True, 1, False)
    assert Interval(3, False, None, True).hi_open is False
    assert 1.5 in Interval(1, True, 2, False)
    assert 1 not in Interval(1, True, 2, False)
    assert 2 in Interval(1, True, 2, False)


def test_enabled_concrete_ex(n_ex):
    t = n_ex.transition("t")
    m = Marking([("p", 1.0), ("p", 1.0), ("q", 1.5)])
    assert enabled_concrete(m, t) == {"x": F(1), "y": F(3, 2)}
    assert enabled_concrete(Marking(), t) is None
    assert enabled_concrete(Marking([("p", 1.0), ("q", 1.5)]), t) is None


def test_fire_ex(n_ex):
    t = n_ex.transition("t")
    m = Marking([("p", 1.0), ("p", 1.0), ("q", 1.5)])
    assert fire(m, t, {"x": 1, "y": F(3, 2)}) == Marking({("r", F(3, 2)): 3, ("s", 0): 1})


def test_fire_ex_prime(n_ex_prime):
    t = n_ex_prime.transition("t")
    m = Marking([("p", 0), ("q", 2)])
    assert fire(m, t, {"x": 0, "y": 2}) == Marking({("p", 0): 1, ("q", 2): 1, ("r", 2): 3, ("s", 0): 1})


def test_fire_rejects_bad_valuation(n_ex):
    t = n_ex.transition("t")
    with pytest.raises(RejectedInput):
        fire(Marking([("p", 1), ("q", 1.5)]), t, {"x": 1, "y": F(3, 2)})
    with pytest.raises(RejectedInput):
        fire(Marking([("p", 9), ("p", 9), ("q", 1.5)]), t, {"x": 9, "y": F(3, 2)})


def test_elapse():
    assert elapse(Marking([("p", 2.1), ("q", 2.2)]), F(9, 10)) == Marking([("p", 3), ("q", F(31, 10))])
    m = Marking([("p", F(1, 3))])
    assert elapse(m, 0) == m
    assert elapse(Marking(), 7) == Marking()


def test_is_nonconsuming(n_ex, n_ex_prime, n_tick):
    assert not is_nonconsuming(n_ex)
    assert is_nonconsuming(n_ex_prime)
    assert is_nonconsuming(n_tick)


ages = st.fractions(min_value=0, max_value=6, max_denominator=4)


@st.composite
def net_and_marking(draw):
    net = random_net(random.Random(draw(st.integers(0, 10 ** 6))), max_places=3, max_cmax=3)
    tokens = draw(st.lists(st.tuples(st.sampled_from(net.places), ages), max_size=6))
    return net, Marking(tokens)


@settings(max_examples=150, deadline=None)
@given(net_and_marking(), st.lists(st.tuples(st.sampled_from(["p0", "p1", "p2"]), ages), max_size=3))
def test_enabledness_is_monotone(nm, extra):
    net, m = nm
    bigger = m + Marking([(p, a) for p, a in extra if p in net.places])
    for t in net.transitions:
        if enabled_concrete(m, t) is not None:
            assert enabled_concrete(bigger, t) is not None


@settings(max_examples=150, deadline=None)
@given(net_and_marking())
def test_nonconsuming_fire_grows_and_keeps_ages(nm):
    net, m = nm
    for t in net.transitions:
        for pi in enabled_valuations(m, t):
            after = fire(m, t, pi)
            assert m <= after
            break


@given(st.lists(st.tuples(st.sampled_from("pq"), ages), max_size=5), ages, ages)
def test_elapse_is_additive(tokens, d1, d2):
    m = Marking(tokens)
    assert elapse(elapse(m, d1), d2) == elapse(m, d1 + d2)
    assert len(elapse(m, d1)) == len(m)


def test_fire_leaves_unconsumed_tokens_alone(n_ex):
    t = n_ex.transition("t")
    m = Marking([("p", 1), ("p", 1), ("q", 1.5), ("p", F(7, 3)), ("s", 4)])
    after = fire(m, t, {"x": 1, "y": F(3, 2)})
    assert after.count("p", F(7, 3)) == 1 and after.count("s", 4) == 1
