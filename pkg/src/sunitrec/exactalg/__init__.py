"""Exact arithmetic in QQ[x] and QQ(x)."""

from .parser import ParseError, parse_expr
from .poly import (
    ONE,
    X,
    ZERO,
    ZERO_DEGREE,
    Poly,
    gcd_free_basis,
    coprime_mod_prime,
    poly_gcd,
    poly_lcm,
    poly_product,
    squarefree_decomposition,
    squarefree_part,
    to_rational,
)
from .ratfunc import RatFunc, compose, rf_arith, rf_normalize, rf_pow

__all__ = [
    "ONE",
    "X",
    "ZERO",
    "ZERO_DEGREE",
    "ParseError",
    "Poly",
    "RatFunc",
    "compose",
    "gcd_free_basis",
    "parse_expr",
    "coprime_mod_prime",
    "poly_gcd",
    "poly_lcm",
    "poly_product",
    "rf_arith",
    "rf_normalize",
    "rf_pow",
    "squarefree_decomposition",
    "squarefree_part",
    "to_rational",
]
