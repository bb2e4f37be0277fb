"""GF(2^k) with elements packed into Python ints.

Bit i of an element is the coefficient of w^i, where w is a root of the
field modulus.  The modulus is the smallest irreducible polynomial of
degree k when polynomials are compared as integers.
"""

from __future__ import annotations

from functools import lru_cache

from ..errors import DivisionByZero


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit polynomials."""
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        b >>= 1
    return out


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def is_irreducible(m: int) -> bool:
    """Trial division by every GF(2) polynomial of degree 1..deg(m)//2."""
    k = m.bit_length() - 1
    if k < 1:
        return False
    for d in range(1, k // 2 + 1):
        for f in range(1 << d, 1 << (d + 1)):
            if poly_mod(m, f) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(k: int) -> int:
    for m in range(1 << k, 1 << (k + 1)):
        if is_irreducible(m):
            return m
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FiniteField:
    """GF(2^k).  Instances are cached per k, so ``is`` comparison is safe."""

    _cache: dict[int, "FiniteField"] = {}

    def __new__(cls, k: int = 1):
        if k < 1:
            raise ValueError("extension degree must be >= 1")
        if k not in cls._cache:
            self = super().__new__(cls)
            self.k = k
            self.modulus = smallest_irreducible(k)
            self.order = 1 << k
            cls._cache[k] = self
        return cls._cache[k]

    def __getnewargs__(self):
        return (self.k,)

    def __repr__(self):
        return f"GF(2^{self.k})"

    def reduce(self, a: int) -> int:
        return poly_mod(a, self.modulus)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        return poly_mod(clmul(a, b), self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def sqrt(self, a: int) -> int:
        """Inverse Frobenius: a^(2^(k-1))."""
        for _ in range(self.k - 1):
            a = self.mul(a, a)
        return a

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in " + repr(self))
        if a == 1:
            return 1
        return self.pow(a, self.order - 2)

    def elements(self):
        return range(self.order)
