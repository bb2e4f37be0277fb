"""Text grammar for tower elements and tower descriptors.

Canonical element output:

* coefficients of GF(2^k) as hex bitstrings (``0x3`` is w+1 in GF(4)),
  with a coefficient of 1 left implicit on non-constant monomials;
* monomials ``t1^2*t2`` in declared variable order, terms joined by ``+``
  in decreasing grlex order, ``0`` for the zero polynomial;
* fractions ``(num)/(den)`` with a monic denominator;
* quadratic-layer elements ``(e0)+(e1)*mu``, dropping a zero part.

The parser accepts any arithmetic expression in ``+ - * / ^`` and
parentheses over the tower's generators, so every canonical string parses
back to the element it came from.

Tower descriptors look like ``GF2^3(s,t)[mu: s][nu: mu*t]``.
"""

from __future__ import annotations

import re

from ..errors import BadElementGrammar, ElementSyntaxError
from .finite import FiniteField
from .poly import Poly
from .ratfunc import RatFunc

_TOKEN = re.compile(r"\s*(?:(0x[0-9a-fA-F]+)|(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _format_coeff(c: int) -> str:
    return "1" if c == 1 else f"0x{c:x}"


def format_poly(p: Poly, names) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            (n if x == 1 else f"{n}^{x}") for n, x in zip(names, e) if x
        )
        if not mono:
            parts.append(_format_coeff(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{_format_coeff(c)}*{mono}")
    return "+".join(parts)


def format_ratfunc(r: RatFunc, names) -> str:
    if r.den.is_one():
        return format_poly(r.num, names)
    return f"({format_poly(r.num, names)})/({format_poly(r.den, names)})"


def _format_raw(tower, raw, level) -> str:
    if level == 0:
        return format_ratfunc(raw, tower.variables)
    from .tower import _raw_is_zero

    e0, e1 = raw
    lv = level - 1
    gen = tower.layers[lv].generator_name
    if _raw_is_zero(e1, lv):
        return _format_raw(tower, e0, lv)
    s1 = _format_raw(tower, e1, lv)
    if _raw_is_zero(e0, lv):
        return f"({s1})*{gen}"
    return f"({_format_raw(tower, e0, lv)})+({s1})*{gen}"


def format_element(e) -> str:
    return _format_raw(e.tower, e.raw, e.tower.level)


def format_tower(t) -> str:
    out = "GF2" if t.base.k == 1 else f"GF2^{t.base.k}"
    if t.variables:
        out += "(" + ",".join(t.variables) + ")"
    for l in t.layers:
        out += f"[{l.generator_name}: {format_element(l.alpha)}]"
    return out


class _Parser:
    def __init__(self, tower, text: str, offset: int = 0):
        self.tower = tower
        self.text = text
        self.offset = offset
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                break
            hexv, dec, ident, other = m.groups()
            start = m.start(m.lastindex)
            if hexv:
                self.toks.append(("num", int(hexv, 16), start))
            elif dec:
                self.toks.append(("int", int(dec), start))
            elif ident:
                self.toks.append(("id", ident, start))
            elif other.strip():
                self.toks.append(("op", other, start))
            pos = m.end()
        self.toks.append(("end", None, len(text.rstrip())))
        self.i = 0

    def err(self, msg, pos, cls=ElementSyntaxError):
        raise cls(msg, self.offset + pos + 1, self.text)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        if self.peek()[0] == "end":
            self.err("empty element", 0)
        v = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            self.err(f"unexpected {val!r}", pos)
        return v

    def expr(self):
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            self.take()
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            self.take()
            v = v + self.term()
        return v

    def term(self):
        v = self.factor()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            _, op, pos = self.take()
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    self.err("division by zero", pos)
                v = v / w
        return v

    def factor(self):
        v = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            kind, n, pos = self.take()
            if kind != "int":
                self.err("expected integer exponent", pos)
            if neg:
                if v.is_zero():
                    self.err("division by zero", pos)
                n = -n
            v = v ** n
        return v

    def atom(self):
        kind, val, pos = self.take()
        t = self.tower
        if kind == "num":
            if val >= t.base.order:
                self.err(f"coefficient 0x{val:x} outside {t.base!r}", pos, BadElementGrammar)
            return t.const(val)
        if kind == "int":
            return t.one() if val % 2 else t.zero()
        if kind == "id":
            try:
                return t.gen(val)
            except KeyError:
                self.err(f"unknown generator {val!r}", pos, BadElementGrammar)
        if kind == "op" and val == "(":
            v = self.expr()
            k2, v2, p2 = self.take()
            if (k2, v2) != ("op", ")"):
                self.err("expected ')'", p2)
            return v
        if kind == "end":
            self.err("unexpected end of input", pos)
        self.err(f"unexpected {val!r}", pos)


def parse_element(tower, text: str, offset: int = 0):
    if not isinstance(text, str):
        raise BadElementGrammar("element must be a string", 1, str(text))
    return _Parser(tower, text, offset).parse()


_TOWER_HEAD = re.compile(r"\s*GF(?:2|\(2\))(?:\^(\d+))?\s*(?:\(([^)]*)\))?")


def parse_tower(text: str, guard_bound=None):
    """Parse a descriptor.  ``guard_bound`` is passed to each layer extension."""
    from .tower import FieldTower

    m = _TOWER_HEAD.match(text)
    if m is None:
        raise ElementSyntaxError("tower must start with GF2", 1, text)
    k = int(m.group(1) or 1)
    if k < 1:
        raise ElementSyntaxError("extension degree must be >= 1", m.start(1) + 1, text)
    names = [v.strip() for v in m.group(2).split(",")] if m.group(2) else []
    if any(not n for n in names):
        raise ElementSyntaxError("empty variable name", m.start(2) + 1, text)
    try:
        tower = FieldTower(FiniteField(k), names)
    except ValueError as exc:
        raise ElementSyntaxError(str(exc), m.start(2) + 1, text) from None
    pos = m.end()
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return tower
        if text[pos] != "[":
            raise ElementSyntaxError(f"unexpected {text[pos]!r}", pos + 1, text)
        close = text.find("]", pos)
        if close < 0:
            raise ElementSyntaxError("unterminated layer", pos + 1, text)
        body = text[pos + 1:close]
        if ":" not in body:
            raise ElementSyntaxError("layer needs 'name: alpha'", pos + 2, text)
        name, alpha = body.split(":", 1)
        name = name.strip()
        astart = pos + 1 + len(body) - len(alpha)
        a = parse_element(tower, alpha, astart)
        try:
            tower = tower.extend(a, name, guard_bound=guard_bound)
        except ValueError as exc:
            raise ElementSyntaxError(str(exc), pos + 2, text) from None
        pos = close + 1
