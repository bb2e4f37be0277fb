"""Bounded witness search.

Every search runs over the same finite space: tower elements whose
base-level components are X/d with X a polynomial of total degree <= D
and d a fixed denominator.  Since characteristic is 2, x -> x^2 + x and
y -> b*y^2 are additive, so splitting and chain conditions become GF(2)
linear systems in the coefficient bits of the unknowns.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import gf2
from .brauer import SplitWitness
from .errors import NoSolutionUpToBound, SearchSpaceTooLarge, WitnessFails, ZeroSecondSlot
from .fields import FieldTower, Poly, RatFunc, TowerElem, wp

MAX_BRUTE_CANDIDATES = 1 << 24


@dataclass(frozen=True)
class DegreeBound:
    D: int = 8
    denom: TowerElem | None = None  # a base-level polynomial

    def __post_init__(self):
        if self.D < 0:
            raise ValueError("degree bound must be >= 0")


@dataclass(frozen=True)
class SplitResult:
    witness: SplitWitness | None
    bound: DegreeBound

    @property
    def found(self) -> bool:
        return self.witness is not None

    @property
    def verdict(self) -> str:
        return "Witness" if self.found else f"NoWitnessUpTo({self.bound.D})"


@dataclass(frozen=True)
class ChainData:
    beta: TowerElem
    Nb: TowerElem
    gamma: TowerElem
    Nc: TowerElem
    delta: TowerElem
    u: TowerElem
    x: TowerElem
    y: TowerElem
    z: TowerElem
    lam: TowerElem
    t: TowerElem

    def residuals(self):
        b, g, d = self.beta, self.gamma, self.delta
        return (
            d + b + wp(self.u) + self.x.square() * self.Nb,
            d + g + wp(self.y) + self.z.square() * self.Nc,
            d + wp(self.lam) + self.t.square() * self.Nb * self.Nc,
        )

    def verifies(self) -> bool:
        return all(r.is_zero() for r in self.residuals())


# search space ---------------------------------------------------------------


def _bottom_dens(*elems: TowerElem) -> list[Poly]:
    seen = []
    for e in elems:
        for r in e.tower.flatten(e):
            if not r.den.is_one() and r.den not in seen:
                seen.append(r.den)
    return seen


def default_denominator(*elems: TowerElem) -> Poly:
    """Product of the distinct base-level denominators of the inputs."""
    out = None
    for d in _bottom_dens(*elems):
        out = d if out is None else out * d
    if out is None:
        t = elems[0].tower
        return Poly.const(t.base, len(t.variables), 1)
    return out


def _monomials(nvars: int, D: int, allowed=None):
    idx = list(range(nvars)) if allowed is None else sorted(allowed)
    out = []
    for deg in range(D + 1):
        for combo in itertools.combinations_with_replacement(idx, deg):
            e = [0] * nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def search_basis(tower: FieldTower, D: int, denom: Poly, variables=None) -> list[TowerElem]:
    """GF(2)-basis of the bounded search space, ordered (component, degree, monomial, bit)."""
    nv = len(tower.variables)
    k = tower.base.k
    allowed = None if variables is None else {tower.variables.index(v) for v in variables}
    monos = _monomials(nv, D, allowed)
    ncomp = 1 << tower.level
    zero = tower.zero()
    zc = tower.flatten(zero)[0]
    out = []
    for c in range(ncomp):
        for e in monos:
            for b in range(k):
                num = Poly(tower.base, nv, {e: 1 << b})
                comps = [zc] * ncomp
                comps[c] = RatFunc(num, denom)
                out.append(tower.unflatten(comps))
    return out


def _combine(basis, bits: int, tower) -> TowerElem:
    acc = tower.zero()
    j = 0
    while bits:
        if bits & 1:
            acc = acc + basis[j]
        bits >>= 1
        j += 1
    return acc


class AdditiveSystem:
    """Linearization of sum_j f_j(unknown_j) = target for additive maps f_j.

    ``blocks`` is a list of (basis, f) where f maps a tower element to a
    tuple of tower elements, one per equation.
    """

    def __init__(self, tower: FieldTower, blocks, target: tuple):
        self.tower = tower
        self.blocks = blocks
        self.target = target
        self.columns = []  # (block index, basis index)
        images = []
        for bi, (basis, fn) in enumerate(blocks):
            for j, e in enumerate(basis):
                self.columns.append((bi, j))
                images.append(tuple(fn(e)))
        self.ncols = len(self.columns)
        dens = []
        for img in images + [tuple(target)]:
            for v in img:
                for r in v.tower.flatten(v):
                    if not r.den.is_one() and r.den not in dens:
                        dens.append(r.den)
        scale = None
        for d in dens:
            if scale is None:
                scale = d
            else:
                scale = scale * d.exact_div(scale.gcd(d))
        self.scale = scale
        rowmap: dict = {}
        for j, img in enumerate(images):
            bit = 1 << j
            for key in self.coords(img):
                rowmap[key] = rowmap.get(key, 0) ^ bit
        rhs = 1 << self.ncols
        for key in self.coords(tuple(target)):
            rowmap[key] = rowmap.get(key, 0) ^ rhs
        self.row_keys = sorted(rowmap)
        self.rows = [rowmap[k] for k in self.row_keys]

    def coords(self, values: tuple) -> set:
        """Keys (equation, component, monomial, bit) of the nonzero bits of scale*values."""
        out = set()
        for i, v in enumerate(values):
            for c, r in enumerate(v.tower.flatten(v)):
                if r.num.is_zero():
                    continue
                if self.scale is None:
                    p = r.num
                elif r.den == self.scale:
                    p = r.num
                else:
                    p = r.num * self.scale.exact_div(r.den)
                for e, coef in p.terms.items():
                    b = 0
                    while coef:
                        if coef & 1:
                            out.add((i, c, e, b))
                        coef >>= 1
                        b += 1
        return out

    def solve(self):
        x = gf2.solve(self.rows, self.ncols)
        if x is None:
            return None
        return self.unpack(x)

    def unpack(self, x: int) -> list[TowerElem]:
        out = [self.tower.zero() for _ in self.blocks]
        for j, (bi, idx) in enumerate(self.columns):
            if x >> j & 1:
                out[bi] = out[bi] + self.blocks[bi][0][idx]
        return out

    def apply(self, x: int) -> set:
        """Row keys whose bit is set in (matrix * x); rhs excluded."""
        bits = gf2.apply(self.rows, self.ncols, x)
        return {k for k, b in zip(self.row_keys, bits) if b}


# splitting ------------------------------------------------------------------


def _space(alpha: TowerElem, beta: TowerElem, bound: DegreeBound):
    t = alpha.tower
    if bound.denom is not None:
        d = bound.denom
        rs = d.tower.flatten(d)
        if not rs[0].den.is_one() or any(not r.is_zero() for r in rs[1:]):
            raise ValueError("denominator must be a base-level polynomial")
        dpoly = rs[0].num.monic()
    else:
        dpoly = default_denominator(alpha, beta)
    return search_basis(t, bound.D, dpoly)


def split_system(alpha: TowerElem, beta: TowerElem, bound: DegreeBound) -> AdditiveSystem:
    t = alpha.tower
    beta = t.coerce(beta)
    basis = _space(alpha, beta, bound)
    return AdditiveSystem(
        t,
        [(basis, lambda e: (wp(e),)), (basis, lambda e: (beta * e.square(),))],
        (alpha,),
    )


def split_search(alpha: TowerElem, beta: TowerElem, bound: DegreeBound = DegreeBound()) -> SplitResult:
    """Look for (x, y) with alpha = x^2 + x + y^2*beta by one linear solve."""
    t = alpha.tower
    beta = t.coerce(beta)
    if beta.is_zero():
        raise ZeroSecondSlot("second slot must be nonzero")
    sol = split_system(alpha, beta, bound).solve()
    if sol is None:
        return SplitResult(None, bound)
    x, y = sol
    if alpha != wp(x) + y.square() * beta:
        raise WitnessFails("linear solve produced a non-witness")
    return SplitResult(SplitWitness(x, y), bound)


def brute_force_split(alpha: TowerElem, beta: TowerElem, bound: DegreeBound = DegreeBound(2)) -> SplitResult:
    """Exhaustive check of every (x, y) in the bounded space by direct substitution."""
    t = alpha.tower
    beta = t.coerce(beta)
    if beta.is_zero():
        raise ZeroSecondSlot("second slot must be nonzero")
    basis = _space(alpha, beta, bound)
    n = len(basis)
    if 2 * n > MAX_BRUTE_CANDIDATES.bit_length() - 1:
        raise SearchSpaceTooLarge(f"2^{2 * n} candidate pairs")
    xs = _all_combinations(basis, t)
    table = {}
    for x in xs:
        table.setdefault(x.square() + x, x)
    for y in xs:
        x = table.get(alpha + beta * y * y)
        if x is not None and alpha == x * x + x + y * y * beta:
            return SplitResult(SplitWitness(x, y), bound)
    return SplitResult(None, bound)


def _all_combinations(basis, tower) -> list[TowerElem]:
    out = [tower.zero()]
    for e in basis:
        out = out + [v + e for v in out]
    return out


def norm_eq_search(alpha: TowerElem, beta: TowerElem, bound: DegreeBound = DegreeBound(2)):
    """Exhaustive search for (x, y) with beta = x^2 + x*y + y^2*alpha; None if absent."""
    t = alpha.tower
    beta = t.coerce(beta)
    basis = _space(alpha, beta, bound)
    if 2 * len(basis) > MAX_BRUTE_CANDIDATES.bit_length() - 1:
        raise SearchSpaceTooLarge(f"2^{2 * len(basis)} candidate pairs")
    xs = _all_combinations(basis, t)
    for y in xs:
        rest = beta + y * y * alpha
        for x in xs:
            if x * x + x * y == rest:
                return x, y
    return None


def artin_schreier_preimage(alpha: TowerElem, D: int):
    """Some c with c^2 + c = alpha in a small search space, or None.

    Unknown components range over polynomials in the variables that occur
    in alpha, of degree <= D, over the product of alpha's denominators.
    """
    t = alpha.tower
    used = set()
    for r in t.flatten(alpha):
        used |= r.num.variables() | r.den.variables()
    names = [t.variables[i] for i in sorted(used)]
    basis = search_basis(t, D, default_denominator(alpha), names)
    sol = AdditiveSystem(t, [(basis, lambda e: (wp(e),))], (alpha,)).solve()
    if sol is None:
        return None
    (c,) = sol
    return c if wp(c) == alpha else None


# chain lemma ----------------------------------------------------------------


def chain_delta(beta, Nb, gamma, Nc, bound: DegreeBound = DegreeBound()) -> ChainData:
    """Common slot delta linking [beta, Nb) = [delta, Nb) = [delta, Nc) = [gamma, Nc).

    Solves for (u, x, y, z, lam, t) jointly, then shifts by u so that u = 0:
    delta = beta + x^2*Nb = gamma + wp(y) + z^2*Nc = wp(lam) + t^2*Nb*Nc.
    """
    T = beta.tower
    Nb, gamma, Nc = T.coerce(Nb), T.coerce(gamma), T.coerce(Nc)
    if Nb.is_zero() or Nc.is_zero():
        raise ZeroSecondSlot("norms must be nonzero")
    basis = _space(beta, gamma, bound) if bound.denom is not None else search_basis(
        T, bound.D, default_denominator(beta, Nb, gamma, Nc)
    )
    z0 = T.zero()
    NbNc = Nb * Nc
    blocks = [
        (basis, lambda e: (wp(e), wp(e))),  # u
        (basis, lambda e: (e.square() * Nb,) * 2),  # x
        (basis, lambda e: (wp(e), z0)),  # y
        (basis, lambda e: (e.square() * Nc, z0)),  # z
        (basis, lambda e: (z0, wp(e))),  # lam
        (basis, lambda e: (z0, e.square() * NbNc)),  # t
    ]
    sol = AdditiveSystem(T, blocks, (beta + gamma, beta)).solve()
    if sol is None:
        raise NoSolutionUpToBound(f"no chain data with degree <= {bound.D}", bound)
    u, x, y, z, lam, t = sol
    raw = ChainData(beta, Nb, gamma, Nc, beta + wp(u) + x.square() * Nb, u, x, y, z, lam, t)
    if not raw.verifies():
        raise WitnessFails("chain solve produced a non-solution")
    return normalize_chain(raw)


def normalize_chain(c: ChainData) -> ChainData:
    """(delta, y, lam) -> (delta + wp(u), y + u, lam + u), making u = 0."""
    out = ChainData(
        c.beta, c.Nb, c.gamma, c.Nc,
        c.delta + wp(c.u), c.u.tower.zero(), c.x, c.y + c.u, c.z, c.lam + c.u, c.t,
    )
    if not out.verifies():
        raise WitnessFails("normalized chain data does not verify")
    return out


def chain_symbolic(beta, Nb, gamma, Nc, x, y, z, lam, t) -> ChainData:
    """Chain data with delta := beta + x^2*Nb, where y and lam are Artin-Schreier roots."""
    T = beta.tower
    args = [T.coerce(v) for v in (Nb, gamma, Nc, x, y, z, lam, t)]
    Nb, gamma, Nc, x, y, z, lam, t = args
    out = ChainData(beta, Nb, gamma, Nc, beta + x.square() * Nb, T.zero(), x, y, z, lam, t)
    if not out.verifies():
        raise WitnessFails("symbolic chain data does not satisfy its defining equations")
    return out
