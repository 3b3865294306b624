"""Simple linear recurrences ``G_n = f_1*a_1**n + ... + f_d*a_d**n`` over QQ(x)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Sequence

from .exactalg import RatFunc
from .places import common_divisors, height


class RecurrenceError(ValueError):
    """Invalid Binet data.  ``reason`` is a stable machine-readable tag."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


@dataclass(frozen=True)
class Recurrence:
    coeffs: tuple[RatFunc, ...]
    roots: tuple[RatFunc, ...]

    @property
    def order(self) -> int:
        return len(self.roots)

    def __str__(self) -> str:
        return " + ".join(
            f"({c.render()})*({a.render()})^n" for c, a in zip(self.coeffs, self.roots)
        )


def validate(coeffs: Sequence[RatFunc], roots: Sequence[RatFunc]) -> Recurrence:
    coeffs, roots = tuple(coeffs), tuple(roots)
    if len(coeffs) != len(roots):
        raise RecurrenceError("length_mismatch", "coefficient and root lists differ in length")
    if len(roots) < 2:
        raise RecurrenceError("order", "order too small: at least two terms are required")
    if any(c.is_zero() for c in coeffs) or any(a.is_zero() for a in roots):
        raise RecurrenceError("nonzero_data", "degenerate datum: coefficients and roots must be nonzero")
    if len(set(roots)) != len(roots):
        raise RecurrenceError("distinct_roots", "roots not distinct")
    return Recurrence(coeffs, roots)


def is_nondegenerate(r: Recurrence) -> bool:
    """No quotient of two distinct roots is constant."""
    return all(height(a / b) >= 1 for a, b in combinations(r.roots, 2))


def roots_nonconstant(r: Recurrence) -> bool:
    return all(height(a) >= 1 for a in r.roots)


def mult_independent(a: RatFunc, b: RatFunc) -> bool:
    """``a**r * b**s`` constant only for ``r = s = 0``.

    Over QQ(x) a function is constant iff its divisor vanishes, so this is
    linear independence of the two valuation vectors: some 2x2 minor is
    nonzero.
    """
    _, (da, db) = common_divisors([a, b])
    places = set(da.entries) | set(db.entries)
    u = [da[p] for p in places] + [da.at_infinity]
    v = [db[p] for p in places] + [db.at_infinity]
    n = len(u)
    return any(u[i] * v[j] - u[j] * v[i] for i in range(n) for j in range(i + 1, n))


def pairwise_mult_independent(r: Recurrence) -> bool:
    return all(mult_independent(a, b) for a, b in combinations(r.roots, 2))


def term(r: Recurrence, n: int) -> RatFunc:
    if n < 0:
        raise ValueError("indices must be nonnegative")
    total = RatFunc()
    for c, a in zip(r.coeffs, r.roots):
        total = total + c * a ** n
    return total


def sum_terms(r: Recurrence, indices: Sequence[int]) -> RatFunc:
    """``G_{n_1} + ... + G_{n_t}`` for strictly decreasing nonnegative indices."""
    check_indices(indices)
    total = RatFunc()
    for n in indices:
        total = total + term(r, n)
    return total


def check_indices(indices: Sequence[int]) -> None:
    if not indices:
        raise ValueError("at least one index is required")
    if any(i < 0 for i in indices):
        raise ValueError("indices must be nonnegative")
    if any(a <= b for a, b in zip(indices, indices[1:])):
        raise ValueError("indices must be strictly decreasing")


def iter_terms(r: Recurrence, start: int = 0) -> Iterator[tuple[int, RatFunc]]:
    """Yield ``(n, G_n)`` for ``n = start, start+1, ...``.

    Each step multiplies every running power by its root once.
    """
    powers = [a ** start for a in r.roots]
    n = start
    while True:
        total = RatFunc()
        for c, p in zip(r.coeffs, powers):
            total = total + c * p
        yield n, total
        powers = [p * a for p, a in zip(powers, r.roots)]
        n += 1


def terms_upto(r: Recurrence, hi: int, lo: int = 0) -> list[RatFunc]:
    """``[G_lo, ..., G_hi]`` by incremental multiplication."""
    out: list[RatFunc] = []
    if hi < lo:
        return out
    for n, g in iter_terms(r, lo):
        out.append(g)
        if n >= hi:
            break
    return out
