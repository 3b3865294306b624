"""Elements of QQ(x): reduced fractions of polynomials with monic denominator."""

from __future__ import annotations

from typing import Union

from .poly import ONE, ZERO, Poly, Rational, poly_gcd, to_rational


class RatFunc:
    """A rational function ``num/den`` in lowest terms with monic ``den``.

    Zero is ``0/1``.  Instances are immutable and hashable.  Products and
    sums use cross-cancellation so that a small factor never forces a gcd
    between two large polynomials.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[Poly, Rational] = ZERO, den: Union[Poly, Rational] = ONE):
        if not isinstance(num, Poly):
            num = Poly.constant(num)
        if not isinstance(den, Poly):
            den = Poly.constant(den)
        n, d = _normalize(num, den)
        self.num: Poly = n
        self.den: Poly = d

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        f = object.__new__(cls)
        f.num = num
        f.den = den
        return f

    @classmethod
    def x(cls) -> "RatFunc":
        return cls._raw(Poly.x(), ONE)

    @classmethod
    def constant(cls, c: Rational) -> "RatFunc":
        return cls._raw(Poly.constant(c), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __neg__(self) -> "RatFunc":
        return RatFunc._raw(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = _coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero():
            return other
        if c.is_zero():
            return self
        if b.is_one() and d.is_one():
            return RatFunc._raw(a + c, ONE)
        if b == d:
            t = a + c
            if t.is_zero():
                return RatFunc._raw(ZERO, ONE)
            g = poly_gcd(t, b)
            if g.is_one():
                return RatFunc._raw(t, b)
            return RatFunc._raw(t.exquo(g), b.exquo(g))
        g = poly_gcd(b, d)
        if g.is_one():
            return RatFunc._raw(a * d + c * b, b * d)
        b1, d1 = b.exquo(g), d.exquo(g)
        t = a * d1 + c * b1
        if t.is_zero():
            return RatFunc._raw(ZERO, ONE)
        g2 = poly_gcd(t, g)
        if g2.is_one():
            return RatFunc._raw(t, b1 * d)
        return RatFunc._raw(t.exquo(g2), b1 * d.exquo(g2))

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return _coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        other = _coerce(other)
        a, b, c, d = self.num, self.den, other.num, other.den
        if a.is_zero() or c.is_zero():
            return RatFunc._raw(ZERO, ONE)
        g1 = ONE if d.is_one() else poly_gcd(a, d)
        g2 = ONE if b.is_one() else poly_gcd(c, b)
        if not g1.is_one():
            a, d = a.exquo(g1), d.exquo(g1)
        if not g2.is_one():
            c, b = c.exquo(g2), b.exquo(g2)
        num, den = a * c, b * d
        lc = den.lc
        if lc != 1:
            num, den = num * (1 / lc), den.monic()
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero")
        lc = self.num.lc
        return RatFunc._raw(self.den * (1 / lc), self.num.monic())

    def __truediv__(self, other) -> "RatFunc":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        # coprimality and monic denominator survive powers
        return RatFunc._raw(self.num ** k, self.den ** k)

    def render(self) -> str:
        """Expression-grammar text; ``(num)/(den)`` unless the denominator is 1."""
        if self.den.is_one():
            return self.num.render()
        return f"({self.num.render()})/({self.den.render()})"

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"RatFunc({self.render()!r})"


def _coerce(value) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, Poly):
        return RatFunc._raw(value, ONE)
    try:
        return RatFunc.constant(to_rational(value))
    except (TypeError, ValueError):
        raise TypeError(f"cannot interpret {value!r} as a rational function") from None


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    if num.is_zero():
        return ZERO, ONE
    g = poly_gcd(num, den)
    if not g.is_one():
        num, den = num.exquo(g), den.exquo(g)
    lc = den.lc
    if lc != 1:
        num, den = num * (1 / lc), den.monic()
    return num, den


def rf_normalize(num: Poly, den: Poly) -> RatFunc:
    """Reduce ``num/den`` to lowest terms with monic denominator."""
    return RatFunc(num, den)


def rf_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def rf_pow(a: RatFunc, k: int) -> RatFunc:
    return a ** k


def compose(poly: Poly, f: RatFunc) -> RatFunc:
    """Evaluate ``poly`` at the rational function ``f`` (Horner)."""
    acc = RatFunc()
    for c in reversed(poly.coeffs):
        acc = acc * f + RatFunc.constant(c)
    return acc
