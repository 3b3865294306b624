from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest
import sympy
from hypothesis import strategies as st

from sunitrec.exactalg import Poly, RatFunc, parse_expr
from sunitrec.places import EMPTY
from sunitrec.recurrence import validate

X = sympy.Symbol("x")


def P(text: str) -> Poly:
    f = parse_expr(text)
    assert f.is_polynomial(), text
    return f.num


def F(text: str) -> RatFunc:
    return parse_expr(text)


def to_sympy(f: RatFunc | Poly):
    if isinstance(f, Poly):
        return sum(sympy.Rational(int(c.numerator), int(c.denominator)) * X**i for i, c in enumerate(f.coeffs))
    return to_sympy(f.num) / to_sympy(f.den)


def poly_from_sympy(expr) -> Poly:
    coeffs = sympy.Poly(expr, X).all_coeffs()[::-1]
    return Poly(Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in coeffs)


@pytest.fixture
def E1():
    """G_n = x*(x+1)**n - (x+1)*x**n."""
    return validate([F("x"), F("-(x+1)")], [F("x+1"), F("x")])


@pytest.fixture
def E2():
    """G_n = x**n - (x+1)**n."""
    return validate([F("1"), F("-1")], [F("x"), F("x+1")])


@pytest.fixture
def empty():
    return EMPTY


small_rationals = st.builds(
    Fraction, st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=4)
)


@st.composite
def polys(draw, max_degree=8, nonzero=False):
    coeffs = draw(st.lists(small_rationals, max_size=max_degree + 1))
    p = Poly(coeffs)
    if nonzero and p.is_zero():
        p = Poly.constant(draw(st.integers(min_value=1, max_value=5)))
    return p


@st.composite
def ratfuncs(draw, max_degree=5, nonzero=False):
    num = draw(polys(max_degree, nonzero=nonzero))
    den = draw(polys(max_degree, nonzero=True))
    return RatFunc(num, den)


def random_poly(rng: random.Random, max_degree: int = 5, nonzero: bool = True) -> Poly:
    while True:
        deg = rng.randint(0, max_degree)
        p = Poly(Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(deg + 1))
        if p or not nonzero:
            return p


def random_ratfunc(rng: random.Random, max_degree: int = 5) -> RatFunc:
    """Nonzero rational function, often with repeated and shared factors."""
    num = random_poly(rng, max_degree)
    den = random_poly(rng, max_degree)
    if rng.random() < 0.5:
        num = num * random_poly(rng, 2) ** rng.randint(1, 3)
    if rng.random() < 0.3:
        den = den * Poly((rng.randint(-3, 3), 1)) ** rng.randint(1, 3)
    return RatFunc(num, den)


@pytest.fixture(scope="session")
def E2_timed():
    """Full pair solve of E2 with S_user empty, plus its wall time in seconds.
    Session-scoped because it takes several seconds."""
    from sunitrec.solver import solve_pair

    r = validate([F("1"), F("-1")], [F("x"), F("x+1")])
    start = time.perf_counter()
    report = solve_pair(r, EMPTY)
    return report, time.perf_counter() - start


@pytest.fixture(scope="session")
def E2_solved(E2_timed):
    return E2_timed[0]


def oracle_is_s_unit(expr, S) -> bool:
    """Independent S-unit test on a sympy expression: clear denominators,
    factor over QQ, and check each irreducible factor and the degree balance."""
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))
    if num == 0:
        return False
    if sympy.degree(num, X) != sympy.degree(den, X) and not S.has_infinity:
        return False
    prod = sympy.prod([to_sympy(p) for p in S.finite]) if S.finite else sympy.Integer(1)
    _, factors = sympy.factor_list(sympy.expand(num * den), X)
    return all(sympy.rem(prod, fac, X) == 0 for fac, _ in factors)


def oracle_terms(coeffs, roots, top):
    """G_0..G_top as sympy expressions, powers built by repeated multiplication."""
    cs = [to_sympy(c) for c in coeffs]
    rs = [to_sympy(a) for a in roots]
    powers = [sympy.Integer(1)] * len(rs)
    out = []
    for _ in range(top + 1):
        out.append(sympy.cancel(sum(c * p for c, p in zip(cs, powers))))
        powers = [sympy.cancel(p * a) for p, a in zip(powers, rs)]
    return out
