"""Dense univariate polynomials over QQ, plus the gcd machinery built on them.

Coefficients are ``gmpy2.mpq`` values stored in ascending degree order.  The
zero polynomial has an empty coefficient tuple and degree ``ZERO_DEGREE``.

Nothing here factors into irreducibles: supports are handled with gcds,
squarefree parts and gcd-free bases only.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from gmpy2 import mpq

Rational = Union[int, Fraction, "mpq"]

# Degree reported for the zero polynomial.  Never valid input to degree arithmetic.
ZERO_DEGREE = -1

_ZERO = mpq(0)
_ONE = mpq(1)


def to_rational(value) -> mpq:
    """Coerce ints, Fractions, mpq or ``"p/q"`` strings to an exact ``mpq``."""
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted")
    return mpq(value)


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [to_rational(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: list) -> "Poly":
        # caller guarantees mpq entries; only trailing zeros are stripped
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = object.__new__(cls)
        p.coeffs = tuple(coeffs)
        return p

    @classmethod
    def constant(cls, c: Rational) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    # -- basic queries ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> mpq:
        if not self.coeffs:
            return _ZERO
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) or type(other) is type(_ONE):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def sort_key(self) -> tuple:
        """Canonical order: ascending degree, then coefficients lexicographically."""
        return (self.degree, self.coeffs)

    # -- ring operations -------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly._raw([-c for c in self.coeffs])

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.constant(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = to_rational(other)
            if not c:
                return Poly()
            return Poly._raw([a * c for a in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        if len(b) == 1:
            c = b[0]
            return Poly._raw([t * c for t in a])
        if len(a) == 1:
            c = a[0]
            return Poly._raw([t * c for t in b])
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca:
                continue
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.one(), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift_mul(self, c: Rational) -> "Poly":
        """Return ``self * (x + c)``; one pass, used for incremental powers."""
        c = to_rational(c)
        a = self.coeffs
        if not a:
            return Poly()
        out = [_ZERO] * (len(a) + 1)
        for i, ca in enumerate(a):
            out[i + 1] += ca
            if c:
                out[i] += ca * c
        return Poly._raw(out)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            other = Poly.constant(other)
        b = other.coeffs
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        db = len(b) - 1
        r = list(self.coeffs)
        if len(r) <= db:
            return Poly(), self
        inv = 1 / b[-1]
        if db == 0:
            return Poly._raw([c * inv for c in r]), Poly()
        if db == 1:
            # synthetic division by x - root
            root = -b[0] * inv
            q = [_ZERO] * (len(r) - 1)
            acc = _ZERO
            for i in range(len(r) - 1, 0, -1):
                acc = r[i] + root * acc if acc else r[i]
                q[i - 1] = acc
            rem = r[0] + root * acc
            if inv != 1:
                q = [c * inv for c in q]
            return Poly._raw(q), Poly._raw([rem])
        q = [_ZERO] * (len(r) - db)
        low = b[:-1]
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if not c:
                continue
            c = c * inv
            q[i - db] = c
            base = i - db
            for j, cb in enumerate(low):
                if cb:
                    r[base + j] -= c * cb
        return Poly._raw(q), Poly._raw(r[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exquo(self, other: "Poly") -> "Poly":
        """Exact quotient; raises ``ArithmeticError`` if ``other`` does not divide."""
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other: "Poly") -> bool:
        return not (other % self)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        if lc == 1:
            return self
        inv = 1 / lc
        return Poly._raw([c * inv for c in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly._raw([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, value: Rational) -> mpq:
        value = to_rational(value)
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def content_integer_form(self) -> tuple[list[int], int]:
        """Return ``(ints, den)`` with ``self == Poly(ints) / den`` and ``den > 0``."""
        den = 1
        for c in self.coeffs:
            d = int(c.denominator)
            den = den * d // gcd(den, d)
        return [int(c * den) for c in self.coeffs], den

    # -- text -------------------------------------------------------------
    def render(self) -> str:
        """Render in the expression grammar, highest degree first."""
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            neg = c < 0
            a = -c if neg else c
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"


# Word-sized prime for the coprimality pre-check in ``poly_gcd``.
_PRIME = (1 << 61) - 1


def _image_mod_prime(p: Poly) -> list[int] | None:
    """Coefficients of the integer form of ``p`` mod ``_PRIME``; ``None`` if the
    leading coefficient vanishes there (the image would drop degree)."""
    ints, _ = p.content_integer_form()
    image = [c % _PRIME for c in ints]
    return image if image[-1] else None


def _gcd_degree_mod_prime(a: list[int], b: list[int]) -> int:
    if len(a) < len(b):
        a, b = b, a
    a, b = a[:], b[:]
    while b:
        inv = pow(b[-1], -1, _PRIME)
        db = len(b) - 1
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i] * inv % _PRIME
            if c:
                base = i - db
                for j in range(db):
                    a[base + j] = (a[base + j] - c * b[j]) % _PRIME
        a = a[:db]
        while a and not a[-1]:
            a.pop()
        a, b = b, a
    return len(a) - 1


def coprime_mod_prime(a: Poly, b: Poly) -> bool:
    """Sound but incomplete coprimality test.

    A common factor over QQ keeps its degree modulo any prime not dividing the
    leading coefficients, so a constant gcd of the images proves ``gcd == 1``.
    ``False`` means "undecided".
    """
    ia, ib = _image_mod_prime(a), _image_mod_prime(b)
    if ia is None or ib is None:
        return False
    return _gcd_degree_mod_prime(ia, ib) == 0


X = Poly.x()
ONE = Poly.one()
ZERO = Poly.zero()


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm with monic remainders."""
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd undefined for two zero polynomials")
    if a.degree < b.degree:
        a, b = b, a
    if b.is_zero():
        return a.monic()
    if b.is_constant():
        return ONE
    if b.degree > 2 and coprime_mod_prime(a, b):
        return ONE
    b = b.monic()
    while b:
        r = a % b
        a, b = b, r.monic()
        if b.is_constant() and b:
            return ONE
    return a.monic()


def poly_lcm(a: Poly, b: Poly) -> Poly:
    if a.is_zero() or b.is_zero():
        return ZERO
    return (a * b.exquo(poly_gcd(a, b))).monic()


def poly_product(polys: Iterable[Poly]) -> Poly:
    out = ONE
    for p in polys:
        out = out * p
    return out


def squarefree_part(a: Poly) -> Poly:
    """Monic radical ``a / gcd(a, a')``; a nonzero constant maps to 1."""
    if a.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if a.is_constant():
        return ONE
    return a.exquo(poly_gcd(a, a.derivative())).monic()


def squarefree_decomposition(a: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm.

    Returns ``[(s_i, i), ...]`` with monic, squarefree, pairwise coprime
    nonconstant ``s_i`` such that ``a = lc(a) * prod s_i**i``.
    """
    if a.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    a = a.monic()
    if a.is_constant():
        return []
    out: list[tuple[Poly, int]] = []
    da = a.derivative()
    c = poly_gcd(a, da)
    w = a.exquo(c)
    y = da.exquo(c)
    z = y - w.derivative()
    i = 1
    while not w.is_constant():
        g = poly_gcd(w, z) if z else w.monic()
        if not g.is_constant():
            out.append((g, i))
        w = w.exquo(g)
        y = z.exquo(g)
        z = y - w.derivative()
        i += 1
    return out


def gcd_free_basis(inputs: Sequence[Poly]) -> list[Poly]:
    """Coarsest pairwise-coprime monic squarefree refinement of ``inputs``.

    Every ``squarefree_part(p)`` for nonconstant ``p`` in ``inputs`` is a
    product of returned elements.  Output is sorted by ``Poly.sort_key``.
    """
    pending: list[Poly] = []
    for p in inputs:
        if p.is_zero():
            raise ValueError("gcd-free basis of a zero polynomial")
        if not p.is_constant():
            pending.append(squarefree_part(p))

    basis: list[Poly] = []
    while pending:
        a = pending.pop()
        if a.is_constant():
            continue
        i = 0
        while i < len(basis):
            b = basis[i]
            g = poly_gcd(a, b)
            if g.is_constant():
                i += 1
                continue
            # split b into g and b/g, carry a/g forward; all pieces stay squarefree
            basis.pop(i)
            rest_b = b.exquo(g)
            if not rest_b.is_constant():
                pending.append(rest_b.monic())
            pending.append(g)
            a = a.exquo(g)
            if a.is_constant():
                break
        else:
            basis.append(a.monic())
            continue
        if not a.is_constant():
            pending.append(a.monic())

    uniq = {p.coeffs: p for p in basis}
    return sorted(uniq.values(), key=Poly.sort_key)
