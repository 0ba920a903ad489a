import random

import pytest

from tpncover.accelerate import accelerate, iteration_bound, claimed_iteration_bound
from tpncover.errors import ShapeError
from tpncover.generate import random_net
from tpncover.model import Net
from tpncover.regions import Alphabet, Atom
from tpncover.saturation import Saturator


def test_tick(n_tick):
    sat = Saturator(n_tick)
    ab = sat.alphabet
    res = accelerate(ab.parse_expr("{p:0} {}*"), sat, keep_history=True)
    assert res.s1 == ab.parse_expr("{p:0} {}*")
    assert ab.render(res.sl) == "{} {}* {p:0} {}*"
    assert ab.render(res.r) == "{p:1} {}*"
    # S2 and S3 from the hand unfolding: {}+1 = {} in front, nothing enabled at age 0
    assert ab.render(res.history[1]) == "{} {p:0} {}*"
    assert ab.render(res.history[2]) == "{} {} {p:0} {}*"
    assert res.iterations == 5


def test_no_transitions_rotations_only():
    net = Net(("p", "q"), (), ())
    sat = Saturator(net)
    ab = sat.alphabet
    res = accelerate(ab.parse_expr("{p:0} {q:1}*"), sat)
    assert res.s1 == ab.parse_expr("{p:0} {q:1}*")
    assert ab.render(res.sl) == "{q:1} {q:1}* {p:0} {q:1}*"
    assert ab.render(res.r) == "{p:1} {q:1}*"


def test_shape_checked(n_tick):
    sat = Saturator(n_tick)
    ab = sat.alphabet
    for text in ("{p:0} {}", "{p:0}* {}*", "{p:0} {}* {}*"):
        with pytest.raises(ShapeError):
            accelerate(ab.parse_expr(text), sat)


def test_result_shapes_and_growth():
    rng = random.Random(2)
    for _ in range(100):
        sat = Saturator(random_net(rng))
        full = sat.alphabet.full
        s0 = (Atom(rng.randint(0, full) & rng.randint(0, full)), Atom(rng.randint(0, full) & rng.randint(0, full), True))
        res = accelerate(s0, sat, keep_history=True)
        assert [a.starred for a in res.s1] == [False, True]
        assert [a.starred for a in res.sl] == [False, True, False, True]
        assert [a.starred for a in res.r] == [False, True]
        assert 5 <= res.iterations <= iteration_bound(len(sat.alphabet.places), sat.cmax)
        collapsed = res.history[3:]
        for a, b in zip(collapsed[1:], collapsed[2:]):
            assert all(x.symbol & ~y.symbol == 0 for x, y in zip(a, b))


def test_bounds():
    assert claimed_iteration_bound(2, 1) == 16
    assert iteration_bound(1, 0) == 13
