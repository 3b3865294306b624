"""Places, divisors, heights and S-units of the rational function field.

A finite place over QQ is a monic squarefree polynomial ``b`` standing for
the ``deg b`` conjugate points of C where it vanishes.  Every count and
height weights such a bundle by its degree, so the numbers agree with the
per-point counts over C.  Valuations are uniform across a bundle because
bases are always refined against the squarefree decomposition of the
function being measured.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .exactalg import (
    ParseError,
    Poly,
    RatFunc,
    gcd_free_basis,
    parse_expr,
    poly_gcd,
    poly_product,
    squarefree_decomposition,
)

INFINITY_TOKEN = "inf"

# Height of the zero function.
HEIGHT_OF_ZERO = math.inf


@dataclass(frozen=True)
class PlaceSet:
    """Finite set of places: refined finite part plus a flag for infinity.

    The finite part is canonicalized on construction (made monic,
    squarefree, pairwise coprime and sorted), so any list of nonzero
    polynomials is accepted; constants are dropped.
    """

    finite: tuple[Poly, ...] = ()
    has_infinity: bool = False

    def __post_init__(self):
        object.__setattr__(self, "finite", tuple(gcd_free_basis(list(self.finite))))
        object.__setattr__(self, "has_infinity", bool(self.has_infinity))

    @classmethod
    def from_tokens(cls, tokens: Iterable[str]) -> "PlaceSet":
        polys: list[Poly] = []
        inf = False
        for tok in tokens:
            if tok.strip() == INFINITY_TOKEN:
                inf = True
                continue
            f = parse_expr(tok)
            if not f.is_polynomial():
                raise ParseError("places must be polynomials", 0, tok)
            if f.is_zero():
                raise ParseError("the zero polynomial is not a place", 0, tok)
            polys.append(f.num)
        return cls(tuple(polys), inf)

    def tokens(self) -> list[str]:
        out = [p.render() for p in self.finite]
        if self.has_infinity:
            out.append(INFINITY_TOKEN)
        return out

    @cached_property
    def product(self) -> Poly:
        return poly_product(self.finite)

    def __len__(self) -> int:
        return place_count(self)

    def __str__(self) -> str:
        return "{" + ", ".join(self.tokens()) + "}"


EMPTY = PlaceSet()


def place_count(S: PlaceSet) -> int:
    """Number of places over C: bundle degrees plus one for infinity."""
    return sum(p.degree for p in S.finite) + (1 if S.has_infinity else 0)


@dataclass(frozen=True)
class Divisor:
    entries: Mapping[Poly, int] = field(default_factory=dict)
    at_infinity: int = 0

    def __post_init__(self):
        clean = {b: v for b, v in self.entries.items() if v}
        object.__setattr__(self, "entries", dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key())))

    def __getitem__(self, b: Poly) -> int:
        return self.entries.get(b, 0)

    def weighted_total(self) -> int:
        return sum(b.degree * v for b, v in self.entries.items()) + self.at_infinity

    def height(self) -> int:
        neg = sum(b.degree * v for b, v in self.entries.items() if v < 0)
        if self.at_infinity < 0:
            neg += self.at_infinity
        return -neg

    def vector(self, basis: Sequence[Poly]) -> list[int]:
        """Valuations on ``basis`` followed by the valuation at infinity."""
        return [self[b] for b in basis] + [self.at_infinity]

    def is_trivial(self) -> bool:
        return not self.entries and self.at_infinity == 0


def valuation_at_infinity(f: RatFunc) -> int:
    if f.is_zero():
        raise ValueError("valuation of zero undefined")
    return f.den.degree - f.num.degree


def _multiplicity(b: Poly, a: Poly) -> int:
    k = 0
    while True:
        q, r = divmod(a, b)
        if r:
            break
        a = q
        k += 1
    if not poly_gcd(a, b).is_one():
        raise ArithmeticError(f"valuation not uniform across the place {b.render()}")
    return k


def _refined_basis(polys: Iterable[Poly]) -> list[Poly]:
    pieces: list[Poly] = []
    for p in polys:
        if p.is_zero():
            continue
        pieces.extend(s for s, _ in squarefree_decomposition(p))
    return gcd_free_basis(pieces)


def _divisor_on(f: RatFunc, basis: Sequence[Poly]) -> Divisor:
    entries: dict[Poly, int] = {}
    for b in basis:
        v = _multiplicity(b, f.num) - _multiplicity(b, f.den)
        if v:
            entries[b] = v
    return Divisor(entries, valuation_at_infinity(f))


def divisor(f: RatFunc, context: Sequence[Poly] = ()) -> tuple[Divisor, PlaceSet]:
    """Divisor of ``f`` over a basis refining ``f``'s support and ``context``.

    Returns the divisor and the basis used (as a place set whose infinity
    flag records whether ``f`` has a zero or pole at infinity).
    """
    if f.is_zero():
        raise ValueError("valuation of zero undefined")
    basis = _refined_basis([f.num, f.den, *context])
    d = _divisor_on(f, basis)
    return d, PlaceSet(tuple(basis), d.at_infinity != 0)


def common_divisors(fs: Sequence[RatFunc]) -> tuple[list[Poly], list[Divisor]]:
    """Divisors of several nonzero functions over one shared refined basis."""
    polys: list[Poly] = []
    for f in fs:
        if f.is_zero():
            raise ValueError("valuation of zero undefined")
        polys += [f.num, f.den]
    basis = _refined_basis(polys)
    return basis, [_divisor_on(f, basis) for f in fs]


def height(f: RatFunc) -> int | float:
    """Height as ``max(deg num, deg den)``; ``HEIGHT_OF_ZERO`` for zero."""
    if f.is_zero():
        return HEIGHT_OF_ZERO
    return max(f.num.degree, f.den.degree)


def height_by_divisor(f: RatFunc) -> int | float:
    """Height as minus the weighted sum of negative valuations."""
    if f.is_zero():
        return HEIGHT_OF_ZERO
    return divisor(f)[0].height()


def _strip(a: Poly, P: Poly) -> Poly:
    # divide out every factor shared with P; constant result <=> rad(a) | P
    g = P
    while not a.is_constant():
        g = poly_gcd(a, g)
        if g.is_one():
            break
        a = a.exquo(g)
    return a


def is_s_unit(f: RatFunc, S: PlaceSet) -> bool:
    """Gcd-divisibility membership test.

    Equivalent to: ``f != 0``, ``squarefree_part(num*den)`` divides the
    product of ``S.finite``, and infinity is in ``S`` if ``f`` has a zero or
    pole there.  Implemented by stripping common factors with the product
    so no radical of a large polynomial is ever formed.
    """
    if f.is_zero():
        return False
    if f.num.degree != f.den.degree and not S.has_infinity:
        return False
    if f.is_constant():
        return True
    P = S.product
    if P.is_one():
        return False
    return _strip(f.num, P).is_constant() and _strip(f.den, P).is_constant()


def is_s_unit_by_divisor(f: RatFunc, S: PlaceSet) -> tuple[bool, Divisor | None]:
    """Membership read off the divisor of ``f``; also returns that divisor."""
    if f.is_zero():
        return False, None
    d, _ = divisor(f, S.finite)
    if d.at_infinity and not S.has_infinity:
        return False, d
    P = S.product
    for b in d.entries:
        if P % b:
            return False, d
    return True, d


def enlarge(S: PlaceSet, gens: Iterable[RatFunc]) -> PlaceSet:
    """Smallest place set containing ``S`` making every generator an S-unit."""
    polys = list(S.finite)
    inf = S.has_infinity
    for g in gens:
        if g.is_zero():
            raise ValueError("cannot enlarge by the zero function")
        polys += [g.num, g.den]
        if valuation_at_infinity(g) != 0:
            inf = True
    return PlaceSet(tuple(p for p in polys if not p.is_constant()), inf)
