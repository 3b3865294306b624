"""Bounds and complete solution sets for S-unit values of linear recurrences over QQ(x)."""

from .bounds import (
    BoundParams,
    BoundReport,
    HypothesisError,
    bm_bound,
    lattice_gap,
    pair_sum_bound,
    single_term_bound,
)
from .exactalg import ParseError, Poly, RatFunc, parse_expr
from .places import PlaceSet, divisor, enlarge, height, is_s_unit, place_count
from .recurrence import Recurrence, RecurrenceError, validate
from .solver import solve_pair, solve_single, verify_sum, window_scan

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "BoundReport",
    "HypothesisError",
    "ParseError",
    "PlaceSet",
    "Poly",
    "RatFunc",
    "Recurrence",
    "RecurrenceError",
    "bm_bound",
    "divisor",
    "enlarge",
    "height",
    "is_s_unit",
    "lattice_gap",
    "pair_sum_bound",
    "parse_expr",
    "place_count",
    "single_term_bound",
    "solve_pair",
    "solve_single",
    "validate",
    "verify_sum",
    "window_scan",
]
