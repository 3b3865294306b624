import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sunitrec.exactalg import RatFunc
from sunitrec.places import height
from sunitrec.recurrence import (
    RecurrenceError,
    is_nondegenerate,
    mult_independent,
    pairwise_mult_independent,
    roots_nonconstant,
    sum_terms,
    term,
    terms_upto,
    validate,
)

from conftest import F, random_ratfunc


def R(coeffs, roots):
    return validate([F(c) for c in coeffs], [F(a) for a in roots])


def test_validate_accepts():
    r = R(["x", "-(x+1)"], ["x+1", "x"])
    assert r.order == 2


@pytest.mark.parametrize(
    "coeffs, roots, reason, message",
    [
        (["1", "0"], ["x", "x+1"], "nonzero_data", "degenerate datum"),
        (["1", "1"], ["x", "x"], "distinct_roots", "roots not distinct"),
        (["1"], ["x"], "order", "order too small"),
        (["1", "1"], ["x", "0"], "nonzero_data", "degenerate datum"),
        (["1", "1"], ["x"], "length_mismatch", "differ in length"),
    ],
)
def test_validate_rejects(coeffs, roots, reason, message):
    with pytest.raises(RecurrenceError, match=message) as exc:
        R(coeffs, roots)
    assert exc.value.reason == reason


@pytest.mark.parametrize(
    "roots, expected", [(["x", "x+1"], True), (["x", "2*x"], False), (["x^2", "x^2+x"], True)]
)
def test_is_nondegenerate(roots, expected):
    assert is_nondegenerate(R(["1", "1"], roots)) is expected


@pytest.mark.parametrize(
    "roots, expected", [(["x", "x+1"], True), (["2", "x"], False), (["(x+1)/x", "x^2"], True)]
)
def test_roots_nonconstant(roots, expected):
    assert roots_nonconstant(R(["1", "1"], roots)) is expected


@pytest.mark.parametrize(
    "roots, expected",
    [
        (["x", "x+1"], True),
        (["x^2", "x^3"], False),
        (["x/(x+1)", "x*(x+1)"], True),
        (["x/(x+1)", "(x+1)^2/x^2"], False),
        (["2*x", "x"], False),  # ratio constant: 2x / x = 2
        (["3", "x"], False),  # a constant root is dependent with anything
    ],
)
def test_pairwise_mult_independent(roots, expected):
    assert pairwise_mult_independent(R(["1", "1"], roots)) is expected


def test_terms_examples():
    r = R(["x", "-(x+1)"], ["x+1", "x"])
    assert term(r, 2) == F("x^2+x")
    assert term(r, 1).is_zero()
    r2 = R(["1", "-1"], ["x", "x+1"])
    assert sum_terms(r2, [2, 1]) == F("-2*x-2")


@pytest.mark.parametrize("indices", [[2, 2], [1, 2], [], [3, -1]])
def test_sum_terms_rejects_bad_indices(indices):
    r = R(["1", "-1"], ["x", "x+1"])
    with pytest.raises(ValueError):
        sum_terms(r, indices)


def _random_recurrence(rng):
    d = rng.randint(2, 3)
    while True:
        try:
            return validate(
                [random_ratfunc(rng, 2) for _ in range(d)], [random_ratfunc(rng, 2) for _ in range(d)]
            )
        except RecurrenceError:
            continue


SAMPLE_POINTS = [Fraction(p, q) for p, q in [(7, 3), (-11, 5), (13, 2), (101, 7)]]


def _eval(f: RatFunc, t: Fraction) -> Fraction:
    """Plain Horner on Fraction coefficients, bypassing the library's arithmetic."""
    def horner(p):
        acc = Fraction(0)
        for c in reversed(p.coeffs):
            acc = acc * t + Fraction(int(c.numerator), int(c.denominator))
        return acc
    return horner(f.num) / horner(f.den)


def test_term_invariants_random():
    rng = random.Random(7)
    for _ in range(25):
        r = _random_recurrence(rng)
        assert term(r, 0) == sum(r.coeffs, RatFunc())
        incremental = terms_upto(r, 6)
        for n in range(7):
            g = term(r, n)
            assert incremental[n] == g
            assert sum_terms(r, [n]) == g
            for t in SAMPLE_POINTS:
                assert _eval(g, t) == sum(_eval(c, t) * _eval(a, t) ** n for c, a in zip(r.coeffs, r.roots))
        assert sum_terms(r, [5, 2]) == term(r, 5) + term(r, 2)


def _dependent_by_heights(a: RatFunc, b: RatFunc) -> bool:
    """a**r * b**s constant forces |r|*H(a) = |s|*H(b): only one exponent pair to try."""
    ha, hb = height(a), height(b)
    if ha == 0 or hb == 0:
        return True
    g = gcd(ha, hb)
    p, q = hb // g, ha // g
    return (a ** p * b ** q).is_constant() or (a ** p / b ** q).is_constant()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_independence_properties(seed):
    rng = random.Random(seed)
    r = _random_recurrence(rng)
    a, b = r.roots[0], r.roots[1]
    ind = mult_independent(a, b)
    assert ind == mult_independent(b, a)
    assert ind == mult_independent(a.inverse(), b)
    assert ind == mult_independent(a, b.inverse())
    assert ind == (not _dependent_by_heights(a, b))
    if pairwise_mult_independent(r) and roots_nonconstant(r):
        assert is_nondegenerate(r)


def test_dependent_pair_detected():
    a, b = F("x^2/(x+1)"), F("(x+1)^3/x^6")
    assert a ** 3 * b == F("1")
    assert not mult_independent(a, b)
    assert _dependent_by_heights(a, b)
