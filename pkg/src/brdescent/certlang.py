"""Certificates: witnessed rewrite chains between Brauer classes.

A certificate lists named towers, an initial class, a sequence of steps
and the claimed final class.  ``verify_certificate`` replays the steps
using only the field, Brauer-class and oracle primitives, so a bug in the
code that produced a certificate cannot vouch for itself.

Documents are canonical JSON: fixed key order, two-space indentation,
symbols of a class sorted by their text.  Step kinds:

========== ==========================================================
R1 / R1inv  first-slot additivity (R1inv carries ``params.addend``)
R2 / R2inv  second-slot multiplicativity (R2inv carries ``params.factor``)
R3 / R3inv  delete / insert a symbol split by ``witness.x, witness.y``
Restrict    move the whole class to ``params.to``
Corestrict  side condition: corestriction of the class to ``params.base``
            is trivial, certified by chain data in ``witness``
Branch      side condition: the chain's x, z, t are all nonzero
Lemma33     [b, x + y*mu) = [b, y + v) given x^2+xy+y^2*a = u^2+uv+v^2*b
========== ==========================================================
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

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
    corestrict_symbol,
    restrict,
)
from .errors import (
    BadElementGrammar,
    CertificateSyntaxError,
    DescentError,
    ElementSyntaxError,
    UnknownStepKind,
)
from .fields import FieldTower, TowerElem, parse_element, parse_tower, wp
from .oracle import ChainData, DegreeBound, split_search

FORMAT_VERSION = 1
STEP_KINDS = ("R1", "R1inv", "R2", "R2inv", "R3", "R3inv", "Restrict", "Corestrict", "Lemma33", "Branch")
CHAIN_KEYS = ("delta", "x", "y", "z", "lambda", "t")
LEMMA_KEYS = ("x", "y", "u", "v", "X", "Y")


@dataclass
class Step:
    kind: str
    tower: str
    operands: tuple = ()
    results: tuple = ()
    params: dict = field(default_factory=dict)
    witness: dict = field(default_factory=dict)


@dataclass
class DescentCertificate:
    towers: list  # [(id, FieldTower)]
    initial: BrauerClass
    steps: list
    final: BrauerClass
    strictness: str = "strict"

    def tower(self, tid: str) -> FieldTower:
        for i, t in self.towers:
            if i == tid:
                return t
        raise KeyError(tid)

    def tower_id(self, t: FieldTower) -> str:
        for i, u in self.towers:
            if u == t:
                return i
        raise KeyError(t.descriptor())


# serialization ----------------------------------------------------------------


def _sym_text(s: QuaternionSymbol, cert: DescentCertificate) -> str:
    return f"{s.text()}@{cert.tower_id(s.tower)}"


def _class_doc(A: BrauerClass, cert) -> dict:
    return {"tower": cert.tower_id(A.tower), "symbols": sorted(_sym_text(s, cert) for s in A.symbols)}


def _value_text(v) -> str:
    return str(v)


def certificate_to_dict(cert: DescentCertificate) -> dict:
    steps = []
    for st in cert.steps:
        steps.append({
            "kind": st.kind,
            "tower": st.tower,
            "operands": [_sym_text(s, cert) for s in st.operands],
            "results": [_sym_text(s, cert) for s in st.results],
            "params": {k: _value_text(st.params[k]) for k in sorted(st.params)},
            "witness": {k: _value_text(v) for k, v in _ordered_witness(st.witness)},
        })
    return {
        "format-version": FORMAT_VERSION,
        "kind": "descent-cert",
        "strictness": cert.strictness,
        "towers": [{"id": i, "descriptor": t.descriptor()} for i, t in cert.towers],
        "initial": _class_doc(cert.initial, cert),
        "steps": steps,
        "final": _class_doc(cert.final, cert),
    }


def _ordered_witness(w: dict):
    order: dict = {}
    for k in CHAIN_KEYS + LEMMA_KEYS:
        order.setdefault(k, len(order))
    return sorted(w.items(), key=lambda kv: (order.get(kv[0], 99), kv[0]))


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def serialize(cert: DescentCertificate) -> str:
    return dump_document(certificate_to_dict(cert))


def load_document(text: str, kind: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(doc, dict):
        raise CertificateSyntaxError("document must be a JSON object", 1, 1)
    if doc.get("format-version") != FORMAT_VERSION:
        raise CertificateSyntaxError(f"unsupported format-version {doc.get('format-version')!r}")
    if doc.get("kind") != kind:
        raise CertificateSyntaxError(f"expected kind {kind!r}, got {doc.get('kind')!r}")
    return doc


def _need(d: dict, key: str, typ, where: str):
    if not isinstance(d, dict) or key not in d:
        raise CertificateSyntaxError(f"{where}: missing key {key!r}")
    v = d[key]
    if not isinstance(v, typ):
        raise CertificateSyntaxError(f"{where}: {key!r} has the wrong type")
    return v


def parse_towers(entries, where="towers") -> list:
    out = []
    for n, t in enumerate(entries):
        tid = _need(t, "id", str, f"{where}[{n}]")
        desc = _need(t, "descriptor", str, f"{where}[{n}]")
        if any(tid == i for i, _ in out):
            raise CertificateSyntaxError(f"duplicate tower id {tid!r}")
        out.append((tid, parse_tower(desc)))
    return out


def parse_symbol(text: str, towers: dict) -> QuaternionSymbol:
    if not isinstance(text, str) or not text.startswith("[") or ")@" not in text:
        raise BadElementGrammar("symbol must look like [first,second)@tower", 1, str(text))
    body, tid = text[1:].rsplit(")@", 1)
    if tid not in towers:
        raise BadElementGrammar(f"unknown tower id {tid!r}", len(body) + 3, text)
    depth = 0
    split_at = None
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            split_at = i
            break
    if split_at is None:
        raise BadElementGrammar("symbol needs two slots", 2, text)
    t = towers[tid]
    a = parse_element(t, body[:split_at], 1)
    b = parse_element(t, body[split_at + 1:], split_at + 2)
    return QuaternionSymbol(a, b)


def _parse_class(d, towers, where) -> BrauerClass:
    tid = _need(d, "tower", str, where)
    if tid not in towers:
        raise CertificateSyntaxError(f"{where}: unknown tower {tid!r}")
    syms = [parse_symbol(s, towers) for s in _need(d, "symbols", list, where)]
    return BrauerClass(towers[tid], syms)


def parse(text: str) -> DescentCertificate:
    doc = load_document(text, "descent-cert")
    return certificate_from_dict(doc)


def certificate_from_dict(doc: dict) -> DescentCertificate:
    towers = parse_towers(_need(doc, "towers", list, "document"))
    tmap = dict(towers)
    initial = _parse_class(_need(doc, "initial", dict, "document"), tmap, "initial")
    final = _parse_class(_need(doc, "final", dict, "document"), tmap, "final")
    strictness = _need(doc, "strictness", str, "document")
    steps = []
    for n, sd in enumerate(_need(doc, "steps", list, "document")):
        where = f"steps[{n}]"
        kind = _need(sd, "kind", str, where)
        if kind not in STEP_KINDS:
            raise UnknownStepKind(f"{where}: unknown step kind {kind!r}")
        tid = _need(sd, "tower", str, where)
        if tid not in tmap:
            raise CertificateSyntaxError(f"{where}: unknown tower {tid!r}")
        operands = tuple(parse_symbol(s, tmap) for s in _need(sd, "operands", list, where))
        results = tuple(parse_symbol(s, tmap) for s in _need(sd, "results", list, where))
        params = dict(_need(sd, "params", dict, where))
        wdoc = _need(sd, "witness", dict, where)
        wt = tmap[tid]
        if kind == "Corestrict":
            base = params.get("base")
            if base not in tmap:
                raise CertificateSyntaxError(f"{where}: unknown base tower {base!r}")
            wt = tmap[base]
        witness = {}
        for k, v in wdoc.items():
            if not isinstance(v, str):
                raise CertificateSyntaxError(f"{where}: witness {k!r} must be a string")
            witness[k] = parse_element(wt, v)
        for key in ("addend", "factor"):
            if key in params:
                params[key] = parse_element(wt, params[key])
        steps.append(Step(kind, tid, operands, results, params, witness))
    return DescentCertificate(towers, initial, steps, final, strictness)


# verification -------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    step: int | None = None
    reason: str = ""
    detail: str = ""
    oracle_calls: int = 0

    def __str__(self):
        if self.accepted:
            return f"Accept (oracle calls: {self.oracle_calls})"
        where = "final class" if self.step is None else f"step {self.step}"
        return f"Reject at {where}: {self.reason} ({self.detail})"


class _Reject(Exception):
    def __init__(self, reason, detail=""):
        super().__init__(detail)
        self.reason = reason
        self.detail = detail


_ERROR_REASONS = {
    "SymbolNotPresent": "SymbolNotPresent",
    "WitnessFails": "WitnessFails",
    "RelationShape": "RelationShape",
    "ZeroSecondSlot": "ZeroSecondSlot",
    "TowerMismatch": "TowerMismatch",
    "NotAnExtension": "NotAnExtension",
    "FirstSlotNotInBase": "SideCondition",
    "NoQuadraticLayer": "SideCondition",
    "DivisionByZero": "Arithmetic",
}


class _Replayer:
    def __init__(self, cert: DescentCertificate, strictness: str, bound: DegreeBound | None):
        self.cert = cert
        self.strict = strictness == "strict"
        self.bound = bound or DegreeBound(4)
        self.oracle_calls = 0
        self.chain = None
        self.cls = cert.initial

    def expect_results(self, st: Step, computed):
        if [s for s in st.results] != list(computed):
            raise _Reject("ResultMismatch", "listed results differ from the recomputed ones")

    def step(self, st: Step):
        cert = self.cert
        if cert.tower(st.tower) != self.cls.tower:
            raise _Reject("TowerMismatch", f"step runs in {st.tower} but the class lives elsewhere")
        for s in st.operands:
            if s.tower != self.cls.tower:
                raise _Reject("TowerMismatch", f"operand {s} not over the class tower")
        getattr(self, "do_" + st.kind)(st)

    def _ops(self, st, n):
        if len(st.operands) != n:
            raise _Reject("RelationShape", f"{st.kind} takes {n} operand(s)")
        return st.operands

    def do_R1(self, st):
        a, b = self._ops(st, 2)
        if a.second != b.second:
            raise _Reject("RelationShape", "R1 needs equal second slots")
        self.expect_results(st, [QuaternionSymbol(a.first + b.first, a.second)])
        self.cls = R1(a, b).apply(self.cls)

    def do_R1inv(self, st):
        (a,) = self._ops(st, 1)
        e = self._param(st, "addend")
        self.expect_results(st, [QuaternionSymbol(a.first + e, a.second), QuaternionSymbol(e, a.second)])
        self.cls = R1inv(a, e).apply(self.cls)

    def do_R2(self, st):
        a, b = self._ops(st, 2)
        if a.first != b.first:
            raise _Reject("RelationShape", "R2 needs equal first slots")
        self.expect_results(st, [QuaternionSymbol(a.first, a.second * b.second)])
        self.cls = R2(a, b).apply(self.cls)

    def do_R2inv(self, st):
        (a,) = self._ops(st, 1)
        f = self._param(st, "factor")
        if f.is_zero():
            raise _Reject("ZeroSecondSlot", "factor is zero")
        self.expect_results(st, [QuaternionSymbol(a.first, f), QuaternionSymbol(a.first, a.second / f)])
        self.cls = R2inv(a, f).apply(self.cls)

    def _split_witness(self, st):
        w = st.witness
        if set(w) != {"x", "y"}:
            raise _Reject("WitnessFails", "split witness needs exactly x and y")
        return SplitWitness(w["x"], w["y"])

    def do_R3(self, st):
        (a,) = self._ops(st, 1)
        self.expect_results(st, [])
        self.cls = R3(a, self._split_witness(st)).apply(self.cls)

    def do_R3inv(self, st):
        (a,) = self._ops(st, 1)
        self.expect_results(st, [])
        self.cls = R3inv(a, self._split_witness(st)).apply(self.cls)

    def do_Restrict(self, st):
        self._ops(st, 0)
        self.expect_results(st, [])
        to = st.params.get("to")
        try:
            big = self.cert.tower(to)
        except KeyError:
            raise _Reject("TowerMismatch", f"unknown target tower {to!r}") from None
        self.cls = restrict(self.cls, big)

    def do_Corestrict(self, st):
        ops = st.operands
        if set(ops) != set(self.cls.symbols) or len(ops) != 2:
            raise _Reject("SideCondition", "corestriction must cover the two-symbol class")
        base = self.cert.tower(st.params.get("base"))
        if base != self.cls.tower.below():
            raise _Reject("SideCondition", "base is not the tower below the top layer")
        cors = [corestrict_symbol(s) for s in ops]
        self.expect_results(st, cors)
        w = st.witness
        if set(w) != set(CHAIN_KEYS):
            raise _Reject("WitnessFails", "chain witness needs delta, x, y, z, lambda, t")
        (beta, Nb), (gamma, Nc) = [(c.first, c.second) for c in cors]
        zero = base.zero()
        chain = ChainData(beta, Nb, gamma, Nc, w["delta"], zero, w["x"], w["y"], w["z"], w["lambda"], w["t"])
        if not chain.verifies():
            raise _Reject("WitnessFails", "chain equations do not balance")
        self.chain = chain

    def do_Branch(self, st):
        self._ops(st, 0)
        self.expect_results(st, [])
        if st.params.get("branch") != "generic":
            raise _Reject("SideCondition", f"unsupported branch {st.params.get('branch')!r}")
        if self.chain is None:
            raise _Reject("SideCondition", "branch step before any chain data")
        w = st.witness
        if set(w) != {"x", "z", "t"}:
            raise _Reject("WitnessFails", "branch witness needs x, z, t")
        T = self.cls.tower
        for k, v in (("x", self.chain.x), ("z", self.chain.z), ("t", self.chain.t)):
            if w[k] != T.embed(v):
                raise _Reject("SideCondition", f"branch {k} differs from the chain data")
            if w[k].is_zero():
                raise _Reject("SideCondition", f"{k} = 0 is not the generic branch")

    def do_Lemma33(self, st):
        (s,) = self._ops(st, 1)
        T = self.cls.tower
        layer = T.top_layer()
        alpha = T.embed(layer.alpha)
        mu = T.gen(layer.generator_name)
        w = st.witness
        if not {"x", "y", "u", "v"} <= set(w) or not set(w) <= set(LEMMA_KEYS):
            raise _Reject("WitnessFails", "lemma witness needs x, y, u, v (and optionally X, Y)")
        x, y, u, v = w["x"], w["y"], w["u"], w["v"]
        if not all(e.in_below() for e in (x, y, u, v)):
            raise _Reject("SideCondition", "x, y, u, v must lie below the top layer")
        beta = s.first
        if x * x + x * y + y * y * alpha != u * u + u * v + v * v * beta:
            raise _Reject("HypothesisFails", "x^2+xy+y^2*alpha != u^2+uv+v^2*beta")
        left, right = x + y * mu, y + v
        if left.is_zero() or right.is_zero():
            raise _Reject("ZeroSlot", "degenerate lemma slots")
        direction = st.params.get("direction", "fwd")
        if direction == "fwd":
            if s.second != left:
                raise _Reject("RelationShape", "operand is not [beta, x+y*mu)")
            out = QuaternionSymbol(beta, right)
        elif direction == "inv":
            if s.second != right:
                raise _Reject("RelationShape", "operand is not [beta, y+v)")
            out = QuaternionSymbol(beta, left)
        else:
            raise _Reject("RelationShape", f"unknown direction {direction!r}")
        self.expect_results(st, [out])
        prod = left * right
        if "X" in w and "Y" in w:
            if beta != wp(w["X"]) + w["Y"].square() * prod:
                raise _Reject("WitnessFails", "lemma split witness does not balance")
        elif self.strict:
            raise _Reject("OraclePending", "strict mode needs an explicit split witness")
        else:
            self.oracle_calls += 1
            if not split_search(beta, prod, self.bound).found:
                raise _Reject("WitnessGap", f"no split witness up to degree {self.bound.D}")
        self.cls = self.cls.toggle(add=[out], remove=[s])

    def _param(self, st, key):
        v = st.params.get(key)
        if not isinstance(v, TowerElem):
            raise _Reject("RelationShape", f"missing parameter {key!r}")
        return self.cls.tower.coerce(v)


def verify_certificate(cert: DescentCertificate, strictness: str | None = None, bound: DegreeBound | None = None) -> Verdict:
    """Replay every step; Accept or Reject(step index, reason)."""
    rp = _Replayer(cert, strictness or cert.strictness, bound)
    for i, st in enumerate(cert.steps):
        try:
            rp.step(st)
        except _Reject as r:
            return Verdict(False, i, r.reason, r.detail, rp.oracle_calls)
        except DescentError as exc:
            reason = _ERROR_REASONS.get(type(exc).__name__, type(exc).__name__)
            return Verdict(False, i, reason, str(exc), rp.oracle_calls)
        except KeyError as exc:
            return Verdict(False, i, "TowerMismatch", f"unknown tower {exc}", rp.oracle_calls)
    if rp.cls != cert.final:
        return Verdict(False, None, "FinalMismatch", "replayed class differs from the claimed final class", rp.oracle_calls)
    return Verdict(True, oracle_calls=rp.oracle_calls)


def verify_document(text: str, strictness: str | None = None, bound: DegreeBound | None = None) -> Verdict:
    """Parse and verify; syntax errors become rejections."""
    try:
        cert = parse(text)
    except (CertificateSyntaxError, ElementSyntaxError, DescentError) as exc:
        return Verdict(False, None, "ParseError", str(exc))
    return verify_certificate(cert, strictness, bound)


# instance files -----------------------------------------------------------------


@dataclass
class InstanceDoc:
    towers: list
    elements: dict  # name -> TowerElem, in the tower named by element_towers
    chain: dict | None
    meta: dict

    def tower(self, tid):
        return dict(self.towers)[tid]


INSTANCE_ELEMENTS = (("alpha", "L"), ("beta", "L"), ("gamma", "L"), ("a", "F"), ("b0", "F"), ("b1", "F"), ("c0", "F"), ("c1", "F"))


def serialize_instance(inst: InstanceDoc) -> str:
    doc = {
        "format-version": FORMAT_VERSION,
        "kind": "descent-instance",
        "meta": {k: inst.meta[k] for k in sorted(inst.meta)},
        "towers": [{"id": i, "descriptor": t.descriptor()} for i, t in inst.towers],
        "elements": {k: str(inst.elements[k]) for k, _ in INSTANCE_ELEMENTS},
    }
    if inst.chain is not None:
        doc["chain"] = {k: str(inst.chain[k]) for k in CHAIN_KEYS}
    return dump_document(doc)


def parse_instance(text: str) -> InstanceDoc:
    doc = load_document(text, "descent-instance")
    towers = parse_towers(_need(doc, "towers", list, "document"))
    tmap = dict(towers)
    for tid in ("L", "F"):
        if tid not in tmap:
            raise CertificateSyntaxError(f"instance needs tower {tid!r}")
    ed = _need(doc, "elements", dict, "document")
    elements = {}
    for name, tid in INSTANCE_ELEMENTS:
        elements[name] = parse_element(tmap[tid], _need(ed, name, str, "elements"))
    chain = None
    if "chain" in doc:
        cd = _need(doc, "chain", dict, "document")
        chain = {k: parse_element(tmap["F"], _need(cd, k, str, "chain")) for k in CHAIN_KEYS}
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise CertificateSyntaxError("meta must be an object")
    return InstanceDoc(towers, elements, chain, meta)
