"""Effective index bounds for S-unit values of a recurrence.

Two chains of constants are produced:

* ``single_term_bound``: every ``n`` with ``G_n`` an S-unit satisfies
  ``n <= C3``.
* ``pair_sum_bound``: every ``n > m`` with ``G_n + G_m`` an S-unit satisfies
  ``n <= max(C4, C5, C8, C11, C13)``.

Both start from ``S`` enlarged so that every coefficient and root is an
S-unit.  Constants stay exact rationals and only the final bound is floored.
The step bounding ``max(n, m)`` through ``H(a**n / b**m)`` uses
:func:`lattice_gap`, a constant computed directly from the two divisors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import comb
from typing import Sequence

from gmpy2 import mpq

from .exactalg import RatFunc
from .places import PlaceSet, common_divisors, enlarge, height, place_count
from .recurrence import (
    Recurrence,
    is_nondegenerate,
    mult_independent,
    pairwise_mult_independent,
    roots_nonconstant,
)


class HypothesisError(ValueError):
    """A bound was requested for data violating one of its hypotheses.

    ``hypothesis`` is one of ``"nondegeneracy"``, ``"roots_nonconstant"`` or
    ``"mult_independence"``.
    """

    def __init__(self, hypothesis: str, message: str):
        super().__init__(message)
        self.hypothesis = hypothesis


@dataclass(frozen=True)
class BoundParams:
    genus: int = 0

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")


@dataclass(frozen=True)
class ShiftData:
    """Coefficients after substituting ``n = m + b`` in the pair equation."""

    b: int
    coeffs: tuple[RatFunc, ...]
    coeff_ratio_height: int
    bound: mpq


@dataclass
class BoundReport:
    kind: str
    genus: int
    user_S: PlaceSet
    enlarged_S: PlaceSet
    s_count: int
    constants: dict[str, mpq]
    governing: tuple[str, ...]
    final_bound: int
    heights: dict[str, int] = field(default_factory=dict)
    gaps: dict[tuple[int, int], mpq] = field(default_factory=dict)
    s_prime: PlaceSet | None = None
    s_prime_count: int | None = None
    shifts: list[ShiftData] = field(default_factory=list)

    def recomputed_final_bound(self) -> int:
        return floor_q(max(self.constants[k] for k in self.governing))


def floor_q(q) -> int:
    q = mpq(q)
    return int(q.numerator // q.denominator)


def bm_bound(k: int, s_count: int, genus: int = 0) -> int:
    """``binom(k, 2) * (|S| + max(0, 2g - 2))``: height cap for the terms of a
    non-degenerate vanishing sum ``1 + u_1 + ... + u_k = 0`` of S-units."""
    if k < 1:
        raise ValueError("k must be positive")
    if s_count < 0 or genus < 0:
        raise ValueError("place count and genus must be nonnegative")
    return comb(k, 2) * (s_count + max(0, 2 * genus - 2))


def _phi(weights: Sequence[int], v: Sequence[int], w: Sequence[int], s, t) -> mpq:
    return sum((c * abs(s * a - t * b) for c, a, b in zip(weights, v, w)), mpq(0)) / 2


def lattice_gap(gamma: RatFunc, delta: RatFunc) -> mpq:
    """Largest ``c`` with ``H(gamma**n / delta**m) >= c * max(n, m)``.

    With ``v``, ``w`` the divisors of ``gamma`` and ``delta`` over a common
    basis and weights the place degrees,
    ``phi(s, t) = 1/2 * sum weight_i * |s*v_i - t*w_i|`` equals the height
    of ``gamma**s / delta**t`` at integer points.  ``phi`` is convex and
    homogeneous, so its minimum over ``max(s, t) = 1`` is attained at an
    endpoint or breakpoint of the two edges ``s = 1`` and ``t = 1``.
    """
    if height(gamma) < 1 or height(delta) < 1:
        raise HypothesisError("roots_nonconstant", "hypothesis violated: gamma and delta must be nonconstant")
    if not mult_independent(gamma, delta):
        raise HypothesisError("mult_independence", "multiplicatively dependent")
    basis, (dg, dd) = common_divisors([gamma, delta])
    weights = [b.degree for b in basis] + [1]
    v = dg.vector(basis)
    w = dd.vector(basis)

    candidates = {(mpq(1), mpq(0)), (mpq(1), mpq(1)), (mpq(0), mpq(1))}
    for a, b in zip(v, w):
        if b:
            t = mpq(a, b)
            if 0 <= t <= 1:
                candidates.add((mpq(1), t))
        if a:
            s = mpq(b, a)
            if 0 <= s <= 1:
                candidates.add((s, mpq(1)))
    gap = min(_phi(weights, v, w, s, t) for s, t in candidates)
    assert gap > 0, "independence forces a positive gap"
    return gap


def _max_ratio_height(fs: Sequence[RatFunc]) -> int:
    return max(height(a / b) for a, b in permutations(fs, 2))


def _min_root_ratio_height(roots: Sequence[RatFunc]) -> int:
    return min(height(a / b) for a, b in combinations(roots, 2))


def _enlarged(r: Recurrence, S_user: PlaceSet) -> PlaceSet:
    return enlarge(S_user, [*r.coeffs, *r.roots])


def single_term_bound(r: Recurrence, S_user: PlaceSet, params: BoundParams = BoundParams()) -> BoundReport:
    """Bound on ``n`` such that ``G_n`` is an S-unit.

    Constants: ``C1 = bm_bound(d, |S|, g)``,
    ``C2 = C1 + max H(f_k/f_l)``, ``C3 = C2 / min H(a_k/a_l)``.
    """
    if not is_nondegenerate(r):
        raise HypothesisError(
            "nondegeneracy", "hypothesis violated: the recurrence is degenerate (a root ratio is constant)"
        )
    S = _enlarged(r, S_user)
    s_count = place_count(S)
    coeff_ratio = _max_ratio_height(r.coeffs)
    h_min = _min_root_ratio_height(r.roots)

    c1 = mpq(bm_bound(r.order, s_count, params.genus))
    c2 = c1 + coeff_ratio
    c3 = c2 / h_min
    constants = {"C1": c1, "C2": c2, "C3": c3}
    return BoundReport(
        kind="single",
        genus=params.genus,
        user_S=S_user,
        enlarged_S=S,
        s_count=s_count,
        constants=constants,
        governing=("C3",),
        final_bound=floor_q(c3),
        heights={"max_coeff_ratio": coeff_ratio, "min_root_ratio": h_min},
    )


def pair_hypotheses(r: Recurrence) -> None:
    """Raise :class:`HypothesisError` for the first failed pair-sum hypothesis."""
    if not is_nondegenerate(r):
        raise HypothesisError(
            "nondegeneracy", "hypothesis violated: the recurrence is degenerate (a root ratio is constant)"
        )
    if not roots_nonconstant(r):
        raise HypothesisError("roots_nonconstant", "hypothesis violated: a root is constant")
    if not pairwise_mult_independent(r):
        raise HypothesisError("mult_independence", "multiplicatively dependent roots")


def pair_sum_bound(r: Recurrence, S_user: PlaceSet, params: BoundParams = BoundParams()) -> BoundReport:
    """Bound on ``n > m`` such that ``G_n + G_m`` is an S-unit.

    The vanishing sum behind ``G_n + G_m = s`` has ``2d + 1`` terms, so the
    height cap uses ``k = 2d``.  Cases:

    * two ``m``-terms (or two ``n``-terms) in one minimal vanishing subsum:
      ``C4 = C5``; then an ``n``-term against an ``m``-term gives ``C7, C8``;
    * same root in both: ``n - m <= C9``; substituting ``n = m + b`` and
      enlarging ``S`` once to ``S'`` reduces to a single-term problem with
      coefficients ``f_r * (1 + a_r**b)``, bounded by ``C10``; ``C11 = C10 + C9``;
    * different roots: ``H(a_i**n / a_j**m) <= C12``, so
      ``max(n, m) <= C12 / min gap = C13``.
    """
    pair_hypotheses(r)
    g = params.genus
    d = r.order
    S = _enlarged(r, S_user)
    s_count = place_count(S)

    h_f = max(height(f) for f in r.coeffs)
    h_alpha = max(height(a) for a in r.roots)
    h_min = _min_root_ratio_height(r.roots)
    a_min = min(height(a) for a in r.roots)
    coeff_ratio = _max_ratio_height(r.coeffs)

    c6 = mpq(bm_bound(2 * d, s_count, g))
    c4 = (c6 + coeff_ratio) / h_min
    c5 = c4
    c7 = c6 + 2 * h_f + c4 * h_alpha
    c8 = c7 / a_min
    c9 = c6 / a_min

    b_max = floor_q(c9)
    shifted: dict[int, list[RatFunc]] = {}
    gens: list[RatFunc] = []
    for b in range(1, b_max + 1):
        ones = [1 + a ** b for a in r.roots]
        assert all(not u.is_zero() for u in ones), "1 + a**b vanishes only for constant a"
        gens += ones
        shifted[b] = [f * u for f, u in zip(r.coeffs, ones)]
    s_prime = enlarge(S, gens)
    s_prime_count = place_count(s_prime)
    bm_prime = bm_bound(d, s_prime_count, g)

    shifts: list[ShiftData] = []
    c10 = mpq(0)
    for b, coeffs in shifted.items():
        ratio = _max_ratio_height(coeffs)
        bound_b = (bm_prime + ratio) / mpq(h_min)
        shifts.append(ShiftData(b, tuple(coeffs), ratio, bound_b))
        c10 = max(c10, bound_b)
    c11 = c10 + c9

    c12 = c6 + 2 * h_f
    gaps = {(i, j): lattice_gap(r.roots[i], r.roots[j]) for i, j in permutations(range(d), 2)}
    c13 = c12 / min(gaps.values())

    constants = {
        "C4": c4, "C5": c5, "C6": c6, "C7": c7, "C8": c8, "C9": c9,
        "C10": c10, "C11": c11, "C12": c12, "C13": c13,
    }
    governing = ("C4", "C5", "C8", "C11", "C13")
    return BoundReport(
        kind="pair",
        genus=g,
        user_S=S_user,
        enlarged_S=S,
        s_count=s_count,
        constants=constants,
        governing=governing,
        final_bound=floor_q(max(constants[k] for k in governing)),
        heights={
            "max_coeff": h_f,
            "max_root": h_alpha,
            "min_root": a_min,
            "min_root_ratio": h_min,
            "max_coeff_ratio": coeff_ratio,
        },
        gaps=gaps,
        s_prime=s_prime,
        s_prime_count=s_prime_count,
        shifts=shifts,
    )
