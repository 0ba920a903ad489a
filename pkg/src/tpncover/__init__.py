"""Existential coverability for 1-clock timed-arc Petri nets."""

from .errors import (
    BudgetExceeded,
    InvariantViolation,
    ParseError,
    RejectedInput,
    ShapeError,
    TPNError,
)
from .model import (
    RESET,
    Interval,
    Marking,
    Net,
    Transition,
    cmax,
    elapse,
    enabled_concrete,
    fire,
    is_nonconsuming,
)
from .reduce import make_nonconsuming
from .regions import Alphabet, Atom
from .saturation import Saturator
from .accelerate import AccelerateResult, accelerate
from .coverset import (
    CoverQuery,
    CoverResult,
    CoverSet,
    compute_coverset,
    exists_cover,
    exists_cover_streaming,
    expression_count_bound,
)
from .netdoc import dump_net, parse_net

__version__ = "0.1.0"
