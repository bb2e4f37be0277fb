"""Field towers GF(2^k)(t_1..t_n)[mu_1][mu_2]... with mu_i^2 + mu_i = alpha_i.

Elements are stored as raw recursive values: a ``RatFunc`` at level 0 and a
pair ``(e0, e1)`` meaning e0 + e1*mu at each quadratic layer above it.
``TowerElem`` wraps a raw value together with its tower.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import (
    DegenerateLayer,
    DivisionByZero,
    NameCollision,
    NoQuadraticLayer,
    NotAnExtension,
    TowerMismatch,
)
from .finite import FiniteField
from .poly import Poly
from .ratfunc import RatFunc

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# bound used by the degenerate-layer guard unless the caller overrides it
GUARD_BOUND = 2


@dataclass(frozen=True)
class ArtinSchreierLayer:
    generator_name: str
    alpha: "TowerElem"  # element of the tower below this layer

    def key(self):
        return (self.generator_name, self.alpha.raw)


class FieldTower:
    def __init__(self, base: FiniteField, variables=(), layers=()):
        self.base = base
        self.variables = tuple(variables)
        self.layers = tuple(layers)
        self.level = len(self.layers)
        names = list(self.variables) + [l.generator_name for l in self.layers]
        if len(set(names)) != len(names):
            raise NameCollision(f"duplicate generator names in {names}")
        for n in names:
            if not IDENT.match(n):
                raise ValueError(f"bad generator name {n!r}")
        nv = len(self.variables)
        z = Poly(base, nv, {})
        one = Poly.const(base, nv, 1)
        self._zeros = [RatFunc(z, one, normalized=True)]
        self._ones = [RatFunc(one, one, normalized=True)]
        for _ in self.layers:
            z0 = self._zeros[-1]
            self._zeros.append((z0, z0))
            self._ones.append((self._ones[-1], z0))
        self._key = (base.k, self.variables, tuple(l.key() for l in self.layers))
        self._hash = hash(self._key)

    # construction -----------------------------------------------------

    @classmethod
    def rational(cls, k: int = 1, variables=()) -> "FieldTower":
        return cls(FiniteField(k), variables)

    def extend(self, alpha, name: str, guard_bound: int | None = GUARD_BOUND) -> "FieldTower":
        """Adjoin a root of mu^2 + mu = alpha; the old tower embeds as (e0, 0)."""
        alpha = self.coerce(alpha)
        if name in self.variables or name in self.generator_names():
            raise NameCollision(f"generator name {name!r} already used")
        if guard_bound is not None:
            from ..oracle import artin_schreier_preimage

            c = artin_schreier_preimage(alpha, guard_bound)
            if c is not None:
                raise DegenerateLayer(f"{alpha} = wp({c}); layer {name} would not be a field")
        return FieldTower(self.base, self.variables, self.layers + (ArtinSchreierLayer(name, alpha),))

    def add_variables(self, names) -> "FieldTower":
        """Purely transcendental extension; allowed only below any quadratic layer."""
        if self.layers:
            new_vars = self.variables + tuple(names)
            out = FieldTower(self.base, new_vars)
            for l in self.layers:
                out = FieldTower(out.base, out.variables, out.layers + (ArtinSchreierLayer(l.generator_name, out.embed(l.alpha)),))
            return out
        return FieldTower(self.base, self.variables + tuple(names))

    def sub(self, level: int) -> "FieldTower":
        if level == self.level:
            return self
        return FieldTower(self.base, self.variables, self.layers[:level])

    def below(self) -> "FieldTower":
        if not self.layers:
            raise NoQuadraticLayer("tower has no quadratic layer")
        return self.sub(self.level - 1)

    def generator_names(self):
        return tuple(l.generator_name for l in self.layers)

    def top_layer(self) -> ArtinSchreierLayer:
        if not self.layers:
            raise NoQuadraticLayer("tower has no quadratic layer")
        return self.layers[-1]

    # identity ---------------------------------------------------------

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldTower):
            return NotImplemented
        return self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def descriptor(self) -> str:
        from .grammar import format_tower

        return format_tower(self)

    def __repr__(self):
        return f"FieldTower({self.descriptor()!r})"

    # elements ---------------------------------------------------------

    def zero(self) -> "TowerElem":
        return TowerElem(self, self._zeros[self.level])

    def one(self) -> "TowerElem":
        return TowerElem(self, self._ones[self.level])

    def const(self, c: int) -> "TowerElem":
        nv = len(self.variables)
        return self.from_ratfunc(RatFunc(Poly.const(self.base, nv, c), normalized=False))

    def from_ratfunc(self, r: RatFunc) -> "TowerElem":
        return TowerElem(self, self._pad(r, 0))

    def from_poly(self, p: Poly) -> "TowerElem":
        return self.from_ratfunc(RatFunc(p))

    def gen(self, name: str) -> "TowerElem":
        if name in self.variables:
            i = self.variables.index(name)
            p = Poly.var(self.base, len(self.variables), i)
            return self.from_poly(p)
        names = self.generator_names()
        if name in names:
            j = names.index(name) + 1
            raw = (self._zeros[j - 1], self._ones[j - 1])
            return TowerElem(self, self._pad(raw, j))
        raise KeyError(name)

    def gens(self, *names):
        return tuple(self.gen(n) for n in names)

    def parse(self, text: str) -> "TowerElem":
        from .grammar import parse_element

        return parse_element(self, text)

    def coerce(self, x) -> "TowerElem":
        if isinstance(x, TowerElem):
            return self.embed(x)
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, int) and x in (0, 1):
            return self.one() if x else self.zero()
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def _pad(self, raw, level: int):
        while level < self.level:
            raw = (raw, self._zeros[level])
            level += 1
        return raw

    # embeddings -------------------------------------------------------

    def contains(self, other: "FieldTower") -> bool:
        """True if ``other`` is a subfield of self in the sense of the tower structure."""
        if other == self:
            return True
        if other.base is not self.base:
            return False
        if not set(other.variables) <= set(self.variables):
            return False
        if other.level > self.level:
            return False
        for i, l in enumerate(other.layers):
            mine = self.layers[i]
            if mine.generator_name != l.generator_name:
                return False
            if self.sub(i).embed(l.alpha, _checked=True).raw != mine.alpha.raw:
                return False
        return True

    def embed(self, e: "TowerElem", _checked: bool = False) -> "TowerElem":
        if e.tower == self:
            return e if e.tower is self else TowerElem(self, e.raw)
        if not _checked and not self.contains(e.tower):
            raise TowerMismatch(f"{e.tower!r} does not embed into {self!r}")
        src = e.tower
        if src.variables == self.variables[: len(src.variables)] and len(src.variables) == len(self.variables):
            raw = e.raw
        else:
            idx = [self.variables.index(v) for v in src.variables]
            raw = _map_raw(e.raw, src.level, lambda r: _remap_ratfunc(r, idx, len(self.variables)))
        return TowerElem(self, self._pad(raw, src.level) if src.level < self.level else raw)

    def pullback(self, e: "TowerElem") -> "TowerElem":
        """Inverse of ``embed``: express an element of a bigger tower in self."""
        big = e.tower
        if big == self:
            return TowerElem(self, e.raw)
        if not big.contains(self):
            raise NotAnExtension(f"{big!r} does not extend {self!r}")
        raw = e.raw
        lvl = big.level
        while lvl > self.level:
            e0, e1 = raw
            if not _raw_is_zero(e1, lvl - 1):
                raise TowerMismatch(f"{e} does not lie in {self!r}")
            raw = e0
            lvl -= 1
        if big.variables != self.variables:
            idx = [big.variables.index(v) for v in self.variables]
            extra = set(range(len(big.variables))) - set(idx)

            def back(r: RatFunc) -> RatFunc:
                for p in (r.num, r.den):
                    if any(p.degree_in(i) > 0 for i in extra):
                        raise TowerMismatch(f"{e} involves variables outside {self!r}")
                return _remap_ratfunc_back(r, idx, len(self.variables))

            raw = _map_raw(raw, self.level, back)
        return TowerElem(self, raw)

    # component access -------------------------------------------------

    def flatten(self, e: "TowerElem") -> list:
        return _flatten(e.raw, self.level)

    def unflatten(self, comps: list) -> "TowerElem":
        return TowerElem(self, _unflatten(list(comps), self.level))

    # raw arithmetic ---------------------------------------------------

    def _alpha_raw(self, level: int):
        return self.layers[level - 1].alpha.raw

    def r_add(self, level, a, b):
        if level == 0:
            return a + b
        return (self.r_add(level - 1, a[0], b[0]), self.r_add(level - 1, a[1], b[1]))

    def r_mul(self, level, a, b):
        if level == 0:
            return a * b
        lv = level - 1
        a0, a1 = a
        b0, b1 = b
        z = self._zeros[lv]
        a1z = _raw_is_zero(a1, lv)
        b1z = _raw_is_zero(b1, lv)
        if a1z and b1z:
            return (self.r_mul(lv, a0, b0), z)
        if a1z:
            return (self.r_mul(lv, a0, b0), self.r_mul(lv, a0, b1))
        if b1z:
            return (self.r_mul(lv, a0, b0), self.r_mul(lv, a1, b0))
        p00 = self.r_mul(lv, a0, b0)
        p11 = self.r_mul(lv, a1, b1)
        mid = self.r_mul(lv, self.r_add(lv, a0, a1), self.r_add(lv, b0, b1))
        cross = self.r_add(lv, mid, self.r_add(lv, p00, p11))
        low = self.r_add(lv, p00, self.r_mul(lv, p11, self._alpha_raw(level)))
        return (low, self.r_add(lv, cross, p11))

    def r_square(self, level, a):
        if level == 0:
            return a.square()
        lv = level - 1
        a0, a1 = a
        if _raw_is_zero(a1, lv):
            return (self.r_square(lv, a0), a1)
        s1 = self.r_square(lv, a1)
        return (self.r_add(lv, self.r_square(lv, a0), self.r_mul(lv, s1, self._alpha_raw(level))), s1)

    def r_norm(self, level, a):
        lv = level - 1
        a0, a1 = a
        if _raw_is_zero(a1, lv):
            return self.r_square(lv, a0)
        t = self.r_add(lv, self.r_square(lv, a0), self.r_mul(lv, a0, a1))
        return self.r_add(lv, t, self.r_mul(lv, self.r_square(lv, a1), self._alpha_raw(level)))

    def r_inv(self, level, a):
        if level == 0:
            return a.inv()
        lv = level - 1
        a0, a1 = a
        if _raw_is_zero(a1, lv):
            return (self.r_inv(lv, a0), a1)
        n = self.r_norm(level, a)
        if _raw_is_zero(n, lv):
            raise DivisionByZero("norm vanished: layer is not a field")
        ni = self.r_inv(lv, n)
        return (self.r_mul(lv, self.r_add(lv, a0, a1), ni), self.r_mul(lv, a1, ni))


def _raw_is_zero(raw, level) -> bool:
    if level == 0:
        return raw.num.is_zero()
    return _raw_is_zero(raw[0], level - 1) and _raw_is_zero(raw[1], level - 1)


def _flatten(raw, level):
    if level == 0:
        return [raw]
    return _flatten(raw[0], level - 1) + _flatten(raw[1], level - 1)


def _unflatten(comps, level):
    if level == 0:
        return comps[0]
    h = len(comps) // 2
    return (_unflatten(comps[:h], level - 1), _unflatten(comps[h:], level - 1))


def _map_raw(raw, level, fn):
    if level == 0:
        return fn(raw)
    return (_map_raw(raw[0], level - 1, fn), _map_raw(raw[1], level - 1, fn))


def _remap_poly(p: Poly, idx, nv) -> Poly:
    out = {}
    for e, c in p.terms.items():
        ne = [0] * nv
        for i, x in enumerate(e):
            ne[idx[i]] = x
        out[tuple(ne)] = c
    return Poly(p.field, nv, out)


def _remap_ratfunc(r: RatFunc, idx, nv) -> RatFunc:
    n, d = _remap_poly(r.num, idx, nv), _remap_poly(r.den, idx, nv)
    # grlex order may change under a permutation of variables, so renormalize
    return RatFunc(n, d)


def _remap_ratfunc_back(r: RatFunc, idx, nv) -> RatFunc:
    def back(p):
        out = {}
        for e, c in p.terms.items():
            out[tuple(e[i] for i in idx)] = c
        return Poly(p.field, nv, out)

    return RatFunc(back(r.num), back(r.den))


class TowerElem:
    __slots__ = ("tower", "raw", "_hash")

    def __init__(self, tower: FieldTower, raw):
        self.tower = tower
        self.raw = raw
        self._hash = None

    def _other(self, other) -> "TowerElem":
        if isinstance(other, TowerElem):
            if other.tower is self.tower or other.tower == self.tower:
                return other
            raise TowerMismatch(f"{self.tower!r} vs {other.tower!r}")
        if isinstance(other, int) and other in (0, 1):
            return self.tower.one() if other else self.tower.zero()
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return TowerElem(self.tower, self.tower.r_add(self.tower.level, self.raw, o.raw))

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return TowerElem(self.tower, self.tower.r_mul(self.tower.level, self.raw, o.raw))

    __rmul__ = __mul__

    def square(self) -> "TowerElem":
        return TowerElem(self.tower, self.tower.r_square(self.tower.level, self.raw))

    def inv(self) -> "TowerElem":
        if self.is_zero():
            raise DivisionByZero(f"division by zero in {self.tower!r}")
        return TowerElem(self.tower, self.tower.r_inv(self.tower.level, self.raw))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = self.tower.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base.square()
        return out

    def is_zero(self) -> bool:
        return _raw_is_zero(self.raw, self.tower.level)

    def is_one(self) -> bool:
        return self.raw == self.tower._ones[self.tower.level]

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int) and other in (0, 1):
            return self.is_one() if other else self.is_zero()
        if not isinstance(other, TowerElem):
            return NotImplemented
        return self.tower == other.tower and self.raw == other.raw

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.tower, self.raw))
        return self._hash

    def __str__(self):
        from .grammar import format_element

        return format_element(self)

    def __repr__(self):
        return f"TowerElem({str(self)!r})"

    def components(self):
        """(e0, e1) over the tower below the top layer."""
        below = self.tower.below()
        return TowerElem(below, self.raw[0]), TowerElem(below, self.raw[1])

    def in_below(self) -> bool:
        if not self.tower.layers:
            return True
        return _raw_is_zero(self.raw[1], self.tower.level - 1)


def wp(x: TowerElem) -> TowerElem:
    """Artin-Schreier map x -> x^2 + x."""
    return x.square() + x


def rf_arith(a: TowerElem, b: TowerElem, op: str) -> TowerElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown op {op!r}")


def tower_extend(tower: FieldTower, alpha, name: str, guard_bound: int | None = GUARD_BOUND) -> FieldTower:
    return tower.extend(alpha, name, guard_bound=guard_bound)


def tower_conj(e: TowerElem) -> TowerElem:
    """The automorphism mu -> mu + 1 of the top layer."""
    t = e.tower
    if not t.layers:
        raise NoQuadraticLayer("conjugation needs a quadratic layer")
    lv = t.level - 1
    e0, e1 = e.raw
    return TowerElem(t, (t.r_add(lv, e0, e1), e1))


def tower_norm(e: TowerElem) -> TowerElem:
    """b0^2 + b0*b1 + b1^2*alpha for e = b0 + b1*mu, as an element of the tower below."""
    t = e.tower
    if not t.layers:
        raise NoQuadraticLayer("norm needs a quadratic layer")
    return TowerElem(t.below(), t.r_norm(t.level, e.raw))
