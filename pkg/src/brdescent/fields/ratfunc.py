"""Rational functions GF(2^k)(t_1, ..., t_n) in normalized fraction form."""

from __future__ import annotations

from ..errors import DivisionByZero
from .poly import Poly, poly_gcd


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic (grlex).  Zero is 0/1."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, normalized: bool = False):
        if den is None:
            den = num.one()
        if not normalized:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @property
    def field(self):
        return self.num.field

    @property
    def nvars(self):
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def zero(self) -> "RatFunc":
        return RatFunc(self.num.zero(), self.num.one(), normalized=True)

    def one(self) -> "RatFunc":
        one = self.num.one()
        return RatFunc(one, one, normalized=True)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            if self.den.is_one():
                return RatFunc(self.num + other.num, self.den, normalized=True)
            return RatFunc(self.num + other.num, self.den)
        if self.den.is_one():
            return RatFunc(self.num * other.den + other.num, other.den, normalized=True)
        if other.den.is_one():
            return RatFunc(self.num + other.num * self.den, self.den, normalized=True)
        # Henrici: with g = gcd(b, d), only g can share factors with the new numerator
        g = poly_gcd(self.den, other.den)
        bq, dq = self.den.exact_div(g), other.den.exact_div(g)
        n = self.num * dq + other.num * bq
        if n.is_zero():
            return self.zero()
        if not g.is_one():
            h = poly_gcd(n, g)
            if not h.is_one():
                n, g = n.exact_div(h), g.exact_div(h)
        return _monic_den(n, g * bq * dq)

    __sub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.num.is_zero() or other.num.is_zero():
            return self.zero()
        if self.den.is_one() and other.den.is_one():
            return RatFunc(self.num * other.num, self.den, normalized=True)
        # cross cancellation keeps both fractions reduced
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        n = self.num.exact_div(g1) * other.num.exact_div(g2)
        d = self.den.exact_div(g2) * other.den.exact_div(g1)
        return _monic_den(n, d)

    def square(self) -> "RatFunc":
        return RatFunc(self.num.square(), self.den.square(), normalized=True)

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return _monic_den(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inv()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, normalized=True)

    def __repr__(self):
        return f"RatFunc({self.num!r}, {self.den!r})"


def _monic_den(num: Poly, den: Poly) -> RatFunc:
    _, c = den.leading()
    if c != 1:
        ci = den.field.inv(c)
        num, den = num.scale(ci), den.scale(ci)
    return RatFunc(num, den, normalized=True)


def _normalize(num: Poly, den: Poly):
    if den.is_zero():
        raise DivisionByZero("zero denominator")
    if num.is_zero():
        return num, den.one()
    if not den.is_constant():
        g = poly_gcd(num, den)
        if not g.is_one():
            num, den = num.exact_div(g), den.exact_div(g)
    _, c = den.leading()
    if c != 1:
        ci = den.field.inv(c)
        num, den = num.scale(ci), den.scale(ci)
    return num, den
