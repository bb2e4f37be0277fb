"""Sparse multivariate polynomials over GF(2^k).

A polynomial is a dict mapping exponent tuples to nonzero field elements.
Terms are ordered graded-lexicographically with the first declared
variable most significant; "monic" refers to the leading term under that
order.  GCDs use a recursive primitive pseudo-remainder sequence.
"""

from __future__ import annotations

from ..errors import DivisionByZero
from .finite import FiniteField, poly_mod


def grlex_key(e: tuple) -> tuple:
    return (sum(e), e)


class Poly:
    __slots__ = ("field", "nvars", "terms", "_hash")

    def __init__(self, field: FiniteField, nvars: int, terms: dict | None = None):
        self.field = field
        self.nvars = nvars
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def const(cls, field, nvars, c: int) -> "Poly":
        c = field.reduce(c)
        return cls(field, nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, field, nvars, i: int, exp: int = 1) -> "Poly":
        e = [0] * nvars
        e[i] = exp
        return cls(field, nvars, {tuple(e): 1})

    def _new(self, terms: dict) -> "Poly":
        return Poly(self.field, self.nvars, terms)

    def zero(self) -> "Poly":
        return self._new({})

    def one(self) -> "Poly":
        return self._new({(0,) * self.nvars: 1})

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * self.nvars) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.field is other.field and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.k, self.nvars, frozenset(self.terms.items())))
        return self._hash

    # structure --------------------------------------------------------

    def leading(self) -> tuple:
        """(exponents, coefficient) of the grlex-largest term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def variables(self) -> set:
        out = set()
        for e in self.terms:
            for i, x in enumerate(e):
                if x:
                    out.add(i)
        return out

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    # arithmetic -------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) ^ c
            if v:
                out[e] = v
            else:
                del out[e]
        return self._new(out)

    __sub__ = __add__

    def __neg__(self):
        return self

    def scale(self, c: int) -> "Poly":
        if c == 0:
            return self.zero()
        if c == 1:
            return self
        mul = self.field.mul
        return self._new({e: mul(v, c) for e, v in self.terms.items()})

    def mul_term(self, exps: tuple, c: int) -> "Poly":
        mul = self.field.mul
        out = {}
        for e, v in self.terms.items():
            out[tuple(a + b for a, b in zip(e, exps))] = mul(v, c)
        return self._new(out)

    def __mul__(self, other: "Poly") -> "Poly":
        if not self.terms or not other.terms:
            return self.zero()
        if len(other.terms) == 1:
            (e, c), = other.terms.items()
            return self.mul_term(e, c)
        if len(self.terms) == 1:
            (e, c), = self.terms.items()
            return other.mul_term(e, c)
        mul = self.field.mul
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) ^ mul(c1, c2)
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return self._new(out)

    def square(self) -> "Poly":
        # Frobenius: cross terms vanish in characteristic 2
        mul = self.field.mul
        return self._new({tuple(2 * a for a in e): mul(c, c) for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base.square()
        return out

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(self.field.inv(c))

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient of an exact division; raises ValueError if a remainder is left."""
        if not other.terms:
            raise DivisionByZero("polynomial division by zero")
        if other.is_one():
            return self
        ge, gc = other.leading()
        ginv = self.field.inv(gc)
        mul = self.field.mul
        r = dict(self.terms)
        q: dict = {}
        gterms = list(other.terms.items())
        while r:
            e = max(r, key=grlex_key)
            c = r[e]
            d = tuple(a - b for a, b in zip(e, ge))
            if min(d) < 0:
                raise ValueError("inexact polynomial division")
            qc = mul(c, ginv)
            q[d] = qc
            for ge2, gc2 in gterms:
                e2 = tuple(a + b for a, b in zip(ge2, d))
                v = r.get(e2, 0) ^ mul(gc2, qc)
                if v:
                    r[e2] = v
                else:
                    r.pop(e2, None)
        return self._new(q)

    def divides(self, other: "Poly") -> bool:
        try:
            other.exact_div(self)
        except ValueError:
            return False
        return True

    # GCD --------------------------------------------------------------

    def gcd(self, other: "Poly") -> "Poly":
        return poly_gcd(self, other)

    def __repr__(self):
        return f"Poly({self.sorted_terms()!r})"


def _coeffs_in(f: Poly, i: int) -> dict:
    """View f as a polynomial in variable i: {degree: coefficient free of variable i}."""
    out: dict = {}
    for e, c in f.terms.items():
        d = e[i]
        e2 = e[:i] + (0,) + e[i + 1:]
        out.setdefault(d, {})[e2] = c
    return {d: Poly(f.field, f.nvars, t) for d, t in out.items()}


def _from_coeffs(template: Poly, coeffs: dict, i: int) -> Poly:
    out: dict = {}
    for d, p in coeffs.items():
        for e, c in p.terms.items():
            out[e[:i] + (d,) + e[i + 1:]] = c
    return template._new(out)


def _monomial_gcd(f: Poly, g: Poly) -> Poly:
    # f is a single term; a monomial divides g iff it divides every term
    (fe, _), = f.terms.items()
    m = list(fe)
    for e in g.terms:
        m = [min(a, b) for a, b in zip(m, e)]
    return f._new({tuple(m): 1})


def content_in(f: Poly, i: int) -> Poly:
    g = None
    for p in _coeffs_in(f, i).values():
        g = p.monic() if g is None else poly_gcd(g, p)
        if g.is_one():
            break
    return g


def _prem(a: Poly, b: Poly, i: int) -> Poly:
    db = b.degree_in(i)
    bc = _coeffs_in(b, i)
    lcb = bc[db]
    r = a
    while not r.is_zero():
        dr = r.degree_in(i)
        if dr < db:
            break
        lcr = _coeffs_in(r, i)[dr]
        shift = [0] * r.nvars
        shift[i] = dr - db
        r = r * lcb + (b * lcr).mul_term(tuple(shift), 1)
    return r


def _primitive_part(f: Poly, i: int) -> Poly:
    return f.exact_div(content_in(f, i))


# Kronecker substitution x_j -> x^(B^j) with B above every exponent is
# injective on monomials, so a univariate gcd of 1 proves coprimality.
# Decoded divisors of the univariate gcd (up to powers of x and x+1, the
# usual spurious factors over tiny fields) that divide both inputs are
# peeled off, since gcd(f, g) = c * gcd(f/c, g/c) for any common divisor c.
KRONECKER_MAX_BITS = 1 << 14
KRONECKER_MAX_DENSE = 1 << 11
MAX_CANDIDATES = 64


def _kronecker_reduce(f: Poly, g: Poly, tries: int = 4):
    """(acc, f', g', done): f = acc*f', g = acc*g'; done means gcd(f', g') = 1."""
    acc = f.one()
    limit = KRONECKER_MAX_BITS if f.field.k == 1 else KRONECKER_MAX_DENSE
    while True:
        vs = sorted(f.variables() | g.variables())
        if not vs or f.is_constant() or g.is_constant():
            return acc, f, g, True
        B0 = 1 + max(e[i] for p in (f, g) for e in p.terms for i in vs)
        progress = False
        maps = [(o, B, ()) for B in range(B0, B0 + 2) if B ** len(vs) <= limit for o in _orders(vs, tries)]
        if maps:
            maps[2:2] = [(tuple(vs), B0, sh) for sh in _shifts(vs)]
        for order, B, shift in maps:
            w = [0] * f.nvars
            for j, i in enumerate(order):
                w[i] = B ** j
            fs, gs = (_shift(f, shift), _shift(g, shift)) if shift else (f, g)
            G = _uni_gcd(_encode(fs, w), _encode(gs, w), f.field)
            if G == {0: 1}:
                return acc, f, g, True
            for cand in _candidates(G):
                c = _decode(f, cand, order, B)
                if c.is_constant():
                    continue
                if shift:
                    c = _shift(c, shift).monic()
                try:
                    fq, gq = f.exact_div(c), g.exact_div(c)
                except ValueError:
                    continue
                acc, f, g = acc * c, fq, gq
                progress = True
                break
            if progress:
                break
        if not progress:
            break
    return acc, f, g, False


def _shifts(vs):
    """Variable subsets to translate by 1 (an automorphism, and an involution)."""
    out = [(vs[0],), tuple(vs[::2]), tuple(vs[1::2]), tuple(vs)]
    seen = []
    for sh in out:
        if sh and sh not in seen:
            seen.append(sh)
    return seen


def _shift(p: Poly, shift) -> Poly:
    """p with x_i replaced by x_i + 1 for i in shift."""
    out = p.zero()
    lin = {i: Poly.var(p.field, p.nvars, i) + p.one() for i in shift}
    pows: dict = {}
    for e, c in p.terms.items():
        rest = list(e)
        t = p.one()
        for i in shift:
            if e[i]:
                key = (i, e[i])
                if key not in pows:
                    pows[key] = lin[i] ** e[i]
                t = t * pows[key]
                rest[i] = 0
        out = out + t.mul_term(tuple(rest), c)
    return out


def _orders(vs, n):
    """Up to n variable orders: identity, reversal, then rotations."""
    out = [tuple(vs)]
    if len(vs) > 1:
        out.append(tuple(reversed(vs)))
    for r in range(1, len(vs)):
        out.append(tuple(vs[r:] + vs[:r]))
    seen = []
    for o in out:
        if o not in seen:
            seen.append(o)
    return seen[:n]


def _candidates(G: dict):
    """G divided by x^a (x+1)^b, largest degree first."""
    d = _dense(G)
    A = 0
    while d[A] == 0:
        A += 1
    core = d[A:]
    Bm = 0
    while len(core) > 1:
        q = _div_x1(core)
        if q is None:
            break
        core, Bm = q, Bm + 1
    out = []
    for tot in range(A + Bm + 1):
        for a in range(min(tot, A) + 1):
            b = tot - a
            if b > Bm:
                continue
            c = core
            for _ in range(Bm - b):
                c = _mul_x1(c)
            out.append({i + A - a: v for i, v in enumerate(c) if v})
            if len(out) >= MAX_CANDIDATES:
                return out
    return out


def _mul_x1(c: list) -> list:
    return [c[0]] + [c[i] ^ c[i - 1] for i in range(1, len(c))] + [c[-1]]


def _div_x1(c: list):
    """c / (x+1) for dense c, or None if 1 is not a root."""
    n = len(c) - 1
    q = [0] * n
    acc = 0
    for i in range(n, 0, -1):
        acc ^= c[i]
        q[i - 1] = acc
    return q if acc ^ c[0] == 0 else None


def _encode(p: Poly, w) -> dict:
    return {sum(a * b for a, b in zip(e, w)): c for e, c in p.terms.items()}


def _decode(template: Poly, G: dict, vs, B) -> Poly:
    out = {}
    for d, c in G.items():
        e = [0] * template.nvars
        for i in vs:
            d, e[i] = divmod(d, B)
        out[tuple(e)] = c
    return template._new(out)


def _uni_gcd(a: dict, b: dict, field) -> dict:
    """Monic gcd of sparse univariate polynomials {degree: coeff}."""
    if field.k == 1:
        x = sum(1 << d for d in a)
        y = sum(1 << d for d in b)
        while y:
            x, y = y, poly_mod(x, y)
        return {d: 1 for d in range(x.bit_length()) if x >> d & 1}
    x = _dense(a)
    y = _dense(b)
    mul, inv = field.mul, field.inv
    while y:
        r = x[:]
        ly = len(y) - 1
        q = inv(y[-1])
        for i in range(len(r) - 1, ly - 1, -1):
            c = r[i]
            if c:
                c = mul(c, q)
                s = i - ly
                for j, yc in enumerate(y):
                    if yc:
                        r[s + j] ^= mul(yc, c)
        while r and not r[-1]:
            r.pop()
        x, y = y, r
    q = inv(x[-1])
    return {d: mul(c, q) for d, c in enumerate(x) if c}


def _dense(a: dict) -> list:
    out = [0] * (max(a) + 1)
    for d, c in a.items():
        out[d] = c
    return out


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic GCD of two polynomials."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return f.one()
    if len(f.terms) == 1:
        return _monomial_gcd(f, g)
    if len(g.terms) == 1:
        return _monomial_gcd(g, f)
    if f == g:
        return f.monic()
    vf, vg = f.variables(), g.variables()
    for i in sorted(vf - vg):
        f = content_in(f, i)
        if f.is_one():
            return f
    for i in sorted(vg - vf):
        g = content_in(g, i)
        if g.is_one():
            return g
    common = f.variables() & g.variables()
    if not common:
        return f.one()
    if f.is_constant() or g.is_constant():
        return f.one()
    acc, f, g, done = _kronecker_reduce(f, g)
    if done:
        return acc.monic()
    if not acc.is_one():
        return (acc * poly_gcd(f, g)).monic()
    i = min(common, key=lambda v: (min(f.degree_in(v), g.degree_in(v)), v))
    cf, cg = content_in(f, i), content_in(g, i)
    c = poly_gcd(cf, cg)
    a, b = f.exact_div(cf), g.exact_div(cg)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while True:
        if b.degree_in(i) == 0:
            h = f.one()
            break
        r = _prem(a, b, i)
        if r.is_zero():
            h = b
            break
        a, b = b, _primitive_part(r, i)
    return (c * h).monic()


def square_part(p: Poly) -> Poly:
    """Monic q with q^2 | p and p/q^2 free of square factors.

    Over a perfect field of characteristic 2, p = sum_e m_e * p_e^2 with
    m_e the squarefree monomials; q = gcd of the p_e.
    """
    if p.is_zero():
        raise ValueError("square part of 0")
    F = p.field
    parts: dict = {}
    for e, c in p.terms.items():
        par = tuple(x & 1 for x in e)
        half = tuple(x >> 1 for x in e)
        parts.setdefault(par, {})[half] = F.sqrt(c)
    q = None
    for terms in parts.values():
        r = Poly(F, p.nvars, terms)
        q = r if q is None else poly_gcd(q, r)
        if q.is_constant():
            return p.one()
    return q.monic()
