"""Descent of a degree-8 exponent-2 presentation to transcendence degree <= 9.

Starting from A_E ~ [beta, b) + [gamma, c) over E = F[mu], mu^2 + mu = alpha,
the pipeline

1. certifies that the corestriction to F is trivial via chain data
   delta = beta + x^2 N_b = gamma + wp(y) + z^2 N_c = wp(lam) + t^2 N_b N_c;
2. stops at a decomposable outcome when x, z or t vanishes;
3. rewrites to [beta+delta, b) + [gamma+delta, c) + [delta, bc);
4. replaces each second slot by an element of F with the lemma identity
   [B, p + q*mu) = [B, q + v) (hypothesis p^2+pq+q^2 alpha = u^2+uv+v^2 B);
5. adds [alpha, a), which is split over E.

The result is a 4-symbol class over F (or over the generic field
T = L(a, b0, b1, c0, c1, x, z, t)[y][lam]) together with certificates.
"""

from __future__ import annotations

from dataclasses import dataclass

from .brauer import (
    BrauerClass,
    QuaternionSymbol,
    R1,
    R1inv,
    R2,
    R2inv,
    R3,
    R3inv,
    SplitWitness,
    restrict,
)
from .certlang import DescentCertificate, Step
from .errors import (
    ChainFailed,
    HypothesisFails,
    NoSolutionUpToBound,
    NotGeneric,
    StepReplayFails,
    TowerMismatch,
    TrdegDiscrepancy,
    WitnessFails,
    WitnessGap,
    ZeroSlot,
)
from .fields import FieldTower, RatFunc, TowerElem, tower_norm, wp
from .fields.poly import square_part
from .oracle import ChainData, DegreeBound, SplitResult, chain_delta, chain_symbolic, split_search

GENERIC_VARIABLES = ("a", "b0", "b1", "c0", "c1", "x", "z", "t")
DECOMPOSABLE_NOTE = "decomposable: A is a product of three quaternion algebras and descends to trdeg <= 4 (cited, not computed)"


@dataclass
class DescentInstance:
    L: FieldTower
    alpha: TowerElem
    beta: TowerElem
    gamma: TowerElem
    F: FieldTower
    a: TowerElem
    b: TowerElem
    c: TowerElem
    E: FieldTower
    chain: ChainData | None = None

    def __post_init__(self):
        for v in (self.alpha, self.beta, self.gamma):
            if v.tower != self.L:
                raise TowerMismatch("alpha, beta, gamma must lie in L")
        if self.b.is_zero() or self.c.is_zero():
            raise ZeroSlot("b and c must be nonzero")


def make_instance(L, alpha, beta, gamma, F, a, b0, b1, c0, c1, chain=None, mu="mu", guard_bound=2) -> DescentInstance:
    alpha, beta, gamma = (L.coerce(v) for v in (alpha, beta, gamma))
    E = F.extend(F.embed(alpha), mu, guard_bound=guard_bound)
    m = E.gen(mu)
    b = E.coerce(b0) + E.coerce(b1) * m
    c = E.coerce(c0) + E.coerce(c1) * m
    return DescentInstance(L, alpha, beta, gamma, F, F.coerce(a), b, c, E, chain)


@dataclass(frozen=True)
class GenericSpec:
    L: FieldTower
    alpha: TowerElem
    beta: TowerElem
    gamma: TowerElem


def default_generic_spec() -> GenericSpec:
    L = FieldTower.rational(1, ("s",))
    s = L.gen("s")
    return GenericSpec(L, s, s ** 3, s ** 5)


@dataclass
class Generic:
    presentation: BrauerClass
    cert: DescentCertificate
    T: FieldTower
    E: FieldTower
    chain: ChainData
    lemmas: list
    alpha: TowerElem
    beta: TowerElem
    gamma: TowerElem
    a: TowerElem
    b: TowerElem
    c: TowerElem
    base_trdeg: int
    algebraic: tuple = ()

    kind = "Generic"


@dataclass
class Decomposable:
    which: str
    chain: ChainData
    note: str = DECOMPOSABLE_NOTE

    kind = "Decomposable"


# lemma ----------------------------------------------------------------------


@dataclass(frozen=True)
class LemmaIdentity:
    """[beta, x + y*mu)_E = [beta, y + v)_E with its split obligation."""

    beta: TowerElem
    x: TowerElem
    y: TowerElem
    u: TowerElem
    v: TowerElem
    left: TowerElem
    right: TowerElem
    witness: SplitWitness | None

    @property
    def pending(self) -> bool:
        return self.witness is None

    def obligation(self) -> QuaternionSymbol:
        return QuaternionSymbol(self.beta, self.left * self.right)

    def step(self, tower_id: str, direction: str = "fwd") -> Step:
        src, dst = (self.left, self.right) if direction == "fwd" else (self.right, self.left)
        w = {"x": self.x, "y": self.y, "u": self.u, "v": self.v}
        if self.witness is not None:
            w["X"], w["Y"] = self.witness.x, self.witness.y
        return Step(
            "Lemma33", tower_id,
            (QuaternionSymbol(self.beta, src),), (QuaternionSymbol(self.beta, dst),),
            {"direction": direction}, w,
        )


def lemma33_transform(alpha, beta, x, y, u, v, E: FieldTower, oracle_bound: DegreeBound | None = None) -> LemmaIdentity:
    """Build the identity [beta, x+y*mu) = [beta, y+v) over E = F[mu].

    With v != 0 the obligation [beta, (x+y*mu)(y+v)) is split in closed
    form: (x+y*mu)(y+v) is the norm of (x+u+y*mu) + v*theta from
    E[theta], theta^2 + theta = beta, which gives the witness
    ((x+u+y*mu)/v, 1/v).  With v = 0 the oracle is tried if a bound is
    given; otherwise the identity is returned oracle-pending.
    """
    layer = E.top_layer()
    mu = E.gen(layer.generator_name)
    alpha_E = E.embed(layer.alpha)
    if E.coerce(alpha) != alpha_E:
        raise TowerMismatch("alpha does not define the top layer of E")
    beta, x, y, u, v = (E.coerce(e) for e in (beta, x, y, u, v))
    for name, e in (("x", x), ("y", y), ("u", u), ("v", v)):
        if not e.in_below():
            raise TowerMismatch(f"{name} must lie below the top layer")
    if x * x + x * y + y * y * alpha_E != u * u + u * v + v * v * beta:
        raise HypothesisFails("x^2 + xy + y^2 alpha != u^2 + uv + v^2 beta")
    left, right = x + y * mu, y + v
    if left.is_zero() or right.is_zero():
        raise ZeroSlot("x + y*mu and y + v must be nonzero")
    prod = left * right
    witness = None
    if not v.is_zero():
        X, Y = (x + u + y * mu) / v, 1 / v
        if beta != wp(X) + Y.square() * prod:
            raise WitnessFails("closed-form lemma witness does not balance")
        witness = SplitWitness(X, Y)
    elif oracle_bound is not None:
        witness = split_search(beta, prod, oracle_bound).witness
        den = _norm_denominator(E, prod)
        if witness is None and oracle_bound.denom is None and den is not None:
            witness = split_search(beta, prod, DegreeBound(oracle_bound.D, den)).witness
    return LemmaIdentity(beta, x, y, u, v, left, right, witness)


def _norm_denominator(E: FieldTower, e: TowerElem):
    """Denominator hint for witnesses of [beta, e): from the numerator of N(e).

    Y^2 * e must clear e's inverse, whose denominator is N(e); when N(e)
    has a square factor q^2, Y only needs q.  None if N(e) is constant.
    """
    comps = E.flatten(E.embed(tower_norm(e)))
    if any(not r.is_zero() for r in comps[1:]) or comps[0].num.is_constant():
        return None
    num = comps[0].num.monic()
    sq = square_part(num)
    num = sq if not sq.is_constant() else num
    return E.unflatten([RatFunc(num, num.one())] + [r.zero() for r in comps[1:]])


# three-term rewrite -----------------------------------------------------------


def decompose_step(beta, gamma, delta, b, c, E: FieldTower, tower_id: str = "E"):
    """Steps taking {[beta,b), [gamma,c)} to {[beta+delta,b), [gamma+delta,c), [delta,bc)}.

    Returns (steps, resulting class).
    """
    beta, gamma, delta, b, c = (E.coerce(e) for e in (beta, gamma, delta, b, c))
    if b.is_zero() or c.is_zero():
        raise ZeroSlot("b and c must be nonzero")
    sb, sc = QuaternionSymbol(beta, b), QuaternionSymbol(gamma, c)
    A = BrauerClass(E, [sb, sc])
    db, dc = QuaternionSymbol(delta, b), QuaternionSymbol(delta, c)
    steps = [
        Step("R1inv", tower_id, (sb,), (QuaternionSymbol(beta + delta, b), db), {"addend": delta}),
        Step("R1inv", tower_id, (sc,), (QuaternionSymbol(gamma + delta, c), dc), {"addend": delta}),
        Step("R2", tower_id, (db, dc), (QuaternionSymbol(delta, b * c),)),
    ]
    A = R1inv(sb, delta).apply(A)
    A = R1inv(sc, delta).apply(A)
    A = R2(db, dc).apply(A)
    return steps, A


# pipeline ---------------------------------------------------------------------


def _chain_step(tower_id, base_id, sb, sc, chain: ChainData) -> Step:
    cors = (QuaternionSymbol(chain.beta, chain.Nb), QuaternionSymbol(chain.gamma, chain.Nc))
    w = {"delta": chain.delta, "x": chain.x, "y": chain.y, "z": chain.z, "lambda": chain.lam, "t": chain.t}
    return Step("Corestrict", tower_id, (sb, sc), cors, {"base": base_id}, w)


def _assemble(T, E, alpha, beta, gamma, a, b, c, chain, ids, strictness, base_trdeg, algebraic, oracle_bound):
    tid, eid = ids
    mu = E.gen(E.top_layer().generator_name)
    aE, bE, gE, dE = (E.embed(v) for v in (alpha, beta, gamma, chain.delta))
    sb, sc = QuaternionSymbol(bE, b), QuaternionSymbol(gE, c)
    initial = BrauerClass(E, [sb, sc])
    steps = [
        _chain_step(eid, tid, sb, sc, chain),
        Step("Branch", eid, (), (), {"branch": "generic"}, {"x": E.embed(chain.x), "z": E.embed(chain.z), "t": E.embed(chain.t)}),
    ]
    dsteps, A = decompose_step(bE, gE, dE, b, c, E, eid)
    steps += dsteps
    b0, b1 = b.components()
    c0, c1 = c.components()
    p0, p1 = (b * c).components()
    x, y, z, lam, t = chain.x, chain.y, chain.z, chain.lam, chain.t
    one = T.one()
    lemmas = [
        lemma33_transform(aE, bE + dE, b0, b1, T.zero(), one / x, E, oracle_bound),
        lemma33_transform(aE, gE + dE, c0, c1, y / z, one / z, E, oracle_bound),
        lemma33_transform(aE, dE, p0, p1, lam / t, one / t, E, oracle_bound),
    ]
    if strictness == "strict" and any(l.pending for l in lemmas):
        raise WitnessGap("a lemma split witness is oracle-pending in strict mode")
    for lem in lemmas:
        st = lem.step(eid, "fwd")
        steps.append(st)
        A = A.toggle(add=st.results, remove=st.operands)
    sa = QuaternionSymbol(aE, E.embed(a))
    wa = SplitWitness(mu, E.zero())
    steps.append(Step("R3inv", eid, (sa,), (), {}, {"x": wa.x, "y": wa.y}))
    A = R3inv(sa, wa).apply(A)
    cert = DescentCertificate([(tid, T), (eid, E)], initial, steps, A, strictness)
    presentation = BrauerClass(T, [QuaternionSymbol(T.pullback(s.first), T.pullback(s.second)) for s in A.symbols])
    return Generic(presentation, cert, T, E, chain, lemmas, alpha, beta, gamma, a, b, c, base_trdeg, algebraic)


def generic_towers(spec: GenericSpec):
    """T = L(a, b0, b1, c0, c1, x, z, t)[y][lam] and R = T[mu]."""
    L = spec.L
    T0 = L.add_variables(GENERIC_VARIABLES)
    alpha, beta, gamma = (T0.embed(v) for v in (spec.alpha, spec.beta, spec.gamma))
    a, b0, b1, c0, c1, x, z, t = T0.gens(*GENERIC_VARIABLES)
    Nb = b0 * b0 + b0 * b1 + b1 * b1 * alpha
    Nc = c0 * c0 + c0 * c1 + c1 * c1 * alpha
    T1 = T0.extend(beta + gamma + x * x * Nb + z * z * Nc, "y")
    T = T1.extend(beta + x * x * Nb + t * t * Nb * Nc, "lam")
    R = T.extend(alpha, "mu")
    return T, R


def descend(inst=None, bound: DegreeBound = DegreeBound(), mode: str = "instance", strictness: str | None = None):
    """Run the pipeline; returns ``Generic`` or ``Decomposable``."""
    if mode == "generic":
        spec = inst if isinstance(inst, GenericSpec) else default_generic_spec()
        T, R = generic_towers(spec)
        alpha, beta, gamma = (T.embed(v) for v in (spec.alpha, spec.beta, spec.gamma))
        mu = R.gen("mu")
        g = {n: R.embed(T.gen(n)) for n in GENERIC_VARIABLES}
        b = g["b0"] + g["b1"] * mu
        c = g["c0"] + g["c1"] * mu
        Nb, Nc = tower_norm(b), tower_norm(c)
        x, z, t, y, lam = T.gens("x", "z", "t", "y", "lam")
        chain = chain_symbolic(beta, Nb, gamma, Nc, x, y, z, lam, t)
        return _assemble(
            T, R, alpha, beta, gamma, T.gen("a"), b, c, chain, ("T", "R"),
            strictness or "strict", len(spec.L.variables), ("y", "lam"), None,
        )
    if mode != "instance":
        raise ValueError(f"unknown mode {mode!r}")
    F, E = inst.F, inst.E
    beta, gamma, alpha = (F.embed(v) for v in (inst.beta, inst.gamma, inst.alpha))
    Nb, Nc = tower_norm(inst.b), tower_norm(inst.c)
    if inst.chain is not None:
        chain = inst.chain
        if not (chain.beta == beta and chain.gamma == gamma and chain.Nb == Nb and chain.Nc == Nc and chain.verifies()):
            raise ChainFailed("supplied chain data does not match the instance", bound)
    else:
        try:
            chain = chain_delta(beta, Nb, gamma, Nc, bound)
        except NoSolutionUpToBound:
            raise ChainFailed(f"chain solve failed at degree bound {bound.D}", bound) from None
    for which in ("x", "z", "t"):
        if getattr(chain, which).is_zero():
            return Decomposable(which, chain)
    return _assemble(
        F, E, alpha, beta, gamma, inst.a, inst.b, inst.c, chain, ("F", "E"),
        strictness or "permissive", len(inst.L.variables), (), bound,
    )


# index and transcendence degree ---------------------------------------------------


@dataclass
class IndexCheck:
    cert: DescentCertificate
    recovered: BrauerClass
    K: FieldTower
    conclusion: str = "index <= 8"


def index_bound_check(outcome: Generic, guard_bound: int | None = 2, names=("th_b", "th_g")) -> IndexCheck:
    """Certificate that the presentation is split by T[wp^-1(alpha), wp^-1(beta), wp^-1(gamma)]."""
    if not isinstance(outcome, Generic):
        raise NotGeneric("index check needs a generic outcome")
    T, E = outcome.T, outcome.E
    tid, eid = outcome.cert.towers[0][0], outcome.cert.towers[1][0]
    K = E.extend(E.embed(outcome.beta), names[0], guard_bound=guard_bound)
    K = K.extend(K.embed(outcome.gamma), names[1], guard_bound=guard_bound)
    kid = "K"
    mu = E.gen(E.top_layer().generator_name)
    aE, bE, gE = (E.embed(v) for v in (outcome.alpha, outcome.beta, outcome.gamma))
    dE = E.embed(outcome.chain.delta)
    b, c = outcome.b, outcome.c
    try:
        A = restrict(outcome.presentation, E)
        steps = [Step("Restrict", tid, (), (), {"to": eid})]
        sa = QuaternionSymbol(aE, E.embed(outcome.a))
        w = SplitWitness(mu, E.zero())
        steps.append(Step("R3", eid, (sa,), (), {}, {"x": w.x, "y": w.y}))
        A = R3(sa, w).apply(A)
        for lem in outcome.lemmas:
            st = lem.step(eid, "inv")
            steps.append(st)
            A = A.toggle(add=st.results, remove=st.operands)
        sbc = QuaternionSymbol(dE, b * c)
        db, dc = QuaternionSymbol(dE, b), QuaternionSymbol(dE, c)
        steps.append(Step("R2inv", eid, (sbc,), (db, dc), {"factor": b}))
        A = R2inv(sbc, b).apply(A)
        for first, sym_d, slot in ((bE, db, b), (gE, dc, c)):
            s1 = QuaternionSymbol(first + dE, slot)
            steps.append(Step("R1", eid, (s1, sym_d), (QuaternionSymbol(first, slot),)))
            A = R1(s1, sym_d).apply(A)
        recovered = A
        steps.append(Step("Restrict", eid, (), (), {"to": kid}))
        A = restrict(A, K)
        for first, slot, gen in ((bE, b, names[0]), (gE, c, names[1])):
            s = QuaternionSymbol(K.embed(first), K.embed(slot))
            w = SplitWitness(K.gen(gen), K.zero())
            steps.append(Step("R3", kid, (s,), (), {}, {"x": w.x, "y": w.y}))
            A = R3(s, w).apply(A)
    except Exception as exc:
        raise StepReplayFails(str(exc)) from exc
    cert = DescentCertificate(
        [(tid, T), (eid, E), (kid, K)], outcome.presentation, steps, A, outcome.cert.strictness,
    )
    return IndexCheck(cert, recovered, K)


def trdeg_account(outcome) -> int:
    """Transcendence degree of the field carrying the presentation over the base."""
    if not isinstance(outcome, Generic):
        raise NotGeneric("only generic outcomes carry a presentation field")
    T = outcome.T
    for name in outcome.algebraic:
        if name in T.variables:
            raise TrdegDiscrepancy(f"{name} is algebraic but listed as transcendental")
        if name not in T.generator_names():
            raise TrdegDiscrepancy(f"{name} is not adjoined as an Artin-Schreier root")
    return len(T.variables)


# remark probe -------------------------------------------------------------------


@dataclass(frozen=True)
class RemarkReport:
    symbol: QuaternionSymbol
    result: SplitResult

    @property
    def verdict(self) -> str:
        return self.result.verdict

    def summary(self) -> str:
        if self.result.found:
            return f"{self.symbol} split at D={self.result.bound.D}: the two classes agree"
        return f"{self.symbol}: no witness up to D={self.result.bound.D} (no claim either way)"


def strip_squares(x: TowerElem) -> TowerElem:
    """x divided by the largest polynomial squares in its numerator and denominator.

    Only base-level x is reduced; [beta, 1/x) depends on x modulo squares,
    so this makes the probe's search space independent of square factors.
    """
    T = x.tower
    comps = T.flatten(x)
    if any(not r.is_zero() for r in comps[1:]):
        return x
    r = comps[0]
    qn, qd = square_part(r.num), square_part(r.den)
    if qn.is_one() and qd.is_one():
        return x
    k = RatFunc(qd, qn)
    return x * T.unflatten([k * k] + [k.zero()] * (len(comps) - 1))


def remark_probe(beta, b, x, E: FieldTower, bound: DegreeBound = DegreeBound(4)) -> RemarkReport:
    """Does [beta, b)_E = [beta, b/x)_E?  Equivalent to [beta, 1/x)_E being split."""
    beta, b, x = (E.coerce(v) for v in (beta, b, x))
    if x.is_zero() or b.is_zero():
        raise ZeroSlot("x and b must be nonzero")
    x0 = strip_squares(x)
    sym = QuaternionSymbol(beta, 1 / x0)
    return RemarkReport(sym, split_search(beta, 1 / x0, bound))
