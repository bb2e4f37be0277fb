"""Seeded descent instances built backwards from their chain data.

Chosen first: alpha, b, c, x, y, z, lam, t.  Then
delta = wp(lam) + t^2 Nb Nc, beta = delta + x^2 Nb, gamma = delta + wp(y) + z^2 Nc,
so the chain equations hold by construction and no oracle is needed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .certlang import CHAIN_KEYS, InstanceDoc
from .descent import DescentInstance, make_instance
from .errors import DescentError
from .fields import FieldTower, wp
from .oracle import ChainData

BRANCHES = ("generic", "x", "z", "t")


@dataclass(frozen=True)
class GenConfig:
    seed: int = 1
    branch: str = "generic"
    k: int = 1
    coeff_deg: int = 1  # b0, b1, c0, c1, x, z, t
    root_deg: int = 2  # y, lam
    alpha_degs: tuple = (1, 3)
    max_tries: int = 200


def _rand_poly(rng: random.Random, L: FieldTower, deg: int, nonzero=False):
    s = L.gen(L.variables[0])
    q = L.base.order
    while True:
        e = L.zero()
        for i in range(deg + 1):
            e = e + L.const(rng.randrange(q)) * s ** i
        if not nonzero or not e.is_zero():
            return e


def _rand_alpha(rng, L, degs):
    s = L.gen(L.variables[0])
    d = rng.choice(degs)
    return s ** d + _rand_poly(rng, L, d - 1) if d > 0 else L.one()


def generate(cfg: GenConfig = GenConfig()) -> DescentInstance:
    if cfg.branch not in BRANCHES:
        raise ValueError(f"branch must be one of {BRANCHES}")
    rng = random.Random(cfg.seed)
    L = FieldTower.rational(cfg.k, ("s",))
    for _ in range(cfg.max_tries):
        inst = _attempt(rng, L, cfg)
        if inst is not None:
            return inst
    raise DescentError(f"no usable instance after {cfg.max_tries} tries")


def _attempt(rng, L, cfg):
    d = cfg.coeff_deg
    alpha = _rand_alpha(rng, L, cfg.alpha_degs)
    b0, b1, c0, c1 = (_rand_poly(rng, L, d) for _ in range(4))
    a = _rand_poly(rng, L, d, nonzero=True)
    x, z, t = (_rand_poly(rng, L, d, nonzero=True) for _ in range(3))
    if cfg.branch != "generic":
        x, z, t = (L.zero() if n == cfg.branch else v for n, v in (("x", x), ("z", z), ("t", t)))
    y, lam = (_rand_poly(rng, L, cfg.root_deg) for _ in range(2))
    if (b0.is_zero() and b1.is_zero()) or (c0.is_zero() and c1.is_zero()):
        return None
    Nb = b0 * b0 + b0 * b1 + b1 * b1 * alpha
    Nc = c0 * c0 + c0 * c1 + c1 * c1 * alpha
    delta = wp(lam) + t * t * Nb * Nc
    beta = delta + x * x * Nb
    gamma = delta + wp(y) + z * z * Nc
    chain = ChainData(beta, Nb, gamma, Nc, delta, L.zero(), x, y, z, lam, t)
    try:
        inst = make_instance(L, alpha, beta, gamma, L, a, b0, b1, c0, c1, chain=chain)
    except DescentError:
        return None  # degenerate layer or zero slot
    if not _usable(inst):
        return None
    return inst


def _usable(inst) -> bool:
    """Reject instances whose rewrite would make distinct symbols collide."""
    from .descent import Generic, descend
    from .certlang import verify_certificate

    if inst.beta == inst.gamma and inst.b == inst.c:
        return False
    try:
        out = descend(inst)
    except DescentError:
        return False
    if not isinstance(out, Generic):
        return True
    return len(out.presentation) == 4 and verify_certificate(out.cert).accepted


def doc_from_instance(inst: DescentInstance, meta=None, with_chain=True) -> InstanceDoc:
    b0, b1 = inst.b.components()
    c0, c1 = inst.c.components()
    els = {"alpha": inst.alpha, "beta": inst.beta, "gamma": inst.gamma, "a": inst.a, "b0": b0, "b1": b1, "c0": c0, "c1": c1}
    chain = None
    if with_chain and inst.chain is not None:
        ch = inst.chain
        chain = dict(zip(CHAIN_KEYS, (ch.delta, ch.x, ch.y, ch.z, ch.lam, ch.t)))
    return InstanceDoc([("L", inst.L), ("F", inst.F)], els, chain, dict(meta or {}))


def instance_from_doc(doc: InstanceDoc) -> DescentInstance:
    L, F = doc.tower("L"), doc.tower("F")
    e = doc.elements
    chain = None
    alpha = e["alpha"]
    if doc.chain is not None:
        beta, gamma = F.embed(e["beta"]), F.embed(e["gamma"])
        b0, b1, c0, c1 = (F.coerce(e[n]) for n in ("b0", "b1", "c0", "c1"))
        al = F.embed(alpha)
        Nb = b0 * b0 + b0 * b1 + b1 * b1 * al
        Nc = c0 * c0 + c0 * c1 + c1 * c1 * al
        ch = doc.chain
        chain = ChainData(beta, Nb, gamma, Nc, ch["delta"], F.zero(), ch["x"], ch["y"], ch["z"], ch["lambda"], ch["t"])
    return make_instance(L, alpha, e["beta"], e["gamma"], F, e["a"], e["b0"], e["b1"], e["c0"], e["c1"], chain=chain)
