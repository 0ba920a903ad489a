import pytest

from tpncover.model import RESET, Interval, Net, Transition
from tpncover.reduce import make_nonconsuming

# lines recorded by the acceptance suite, echoed after the run
ACCEPTANCE_LINES = []


def build_ex() -> Net:
    t = Transition(
        "t",
        {"x": Interval(0, False, 5, False), "y": Interval(1, True, 2, False)},
        {("p", "x"): 2, ("q", "y"): 1},
        {("r", "y"): 3, ("s", RESET): 1},
    )
    return Net(("p", "q", "r", "s"), ("x", "y"), (t,))


def build_tick(goal=Interval(2)) -> Net:
    t1 = Transition("t1", {"x": Interval.point(1)}, {("p", "x"): 1}, {("p", "x"): 1, ("p", RESET): 1})
    goal_t = Transition("t_goal", {"y": goal}, {("p", "y"): 1}, {("p", "y"): 1})
    return Net(("p",), ("x", "y"), (t1, goal_t))


@pytest.fixture
def n_ex():
    return build_ex()


@pytest.fixture
def n_ex_prime():
    return make_nonconsuming(build_ex())


@pytest.fixture
def n_tick():
    return build_tick()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
