"""Quaternion symbols [a, b) and formal sums of them in the 2-torsion Brauer group.

Classes are only ever transformed by explicit relations; equality of two
arbitrary classes is never decided.

* R1  [a, b) + [a', b)   <-> [a + a', b)
* R2  [a, b) + [a, b')   <-> [a, b*b')
* R3  [a, b) deleted when a = x^2 + x + y^2*b for a supplied (x, y)
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .errors import (
    FirstSlotNotInBase,
    NotAnExtension,
    RelationShape,
    SymbolNotPresent,
    TowerMismatch,
    WitnessFails,
    ZeroSecondSlot,
)
from .fields import FieldTower, TowerElem, tower_norm, wp


@dataclass(frozen=True)
class QuaternionSymbol:
    first: TowerElem
    second: TowerElem

    def __post_init__(self):
        if self.first.tower != self.second.tower:
            raise TowerMismatch("symbol slots live in different towers")
        if self.second.is_zero():
            raise ZeroSecondSlot(f"[{self.first},0) is not a quaternion algebra")

    @property
    def tower(self) -> FieldTower:
        return self.first.tower

    def text(self) -> str:
        return f"[{self.first},{self.second})"

    def __str__(self):
        return self.text()

    def embed(self, tower: FieldTower) -> "QuaternionSymbol":
        return QuaternionSymbol(tower.embed(self.first), tower.embed(self.second))


@dataclass(frozen=True)
class SplitWitness:
    x: TowerElem
    y: TowerElem

    def verifies(self, sym: QuaternionSymbol) -> bool:
        t = sym.tower
        x, y = t.coerce(self.x), t.coerce(self.y)
        return sym.first == wp(x) + y.square() * sym.second


def symbol(first, second) -> QuaternionSymbol:
    if isinstance(first, TowerElem) and not isinstance(second, TowerElem):
        second = first.tower.coerce(second)
    elif isinstance(second, TowerElem) and not isinstance(first, TowerElem):
        first = second.tower.coerce(first)
    return QuaternionSymbol(first, second)


class BrauerClass:
    """A mod-2 reduced set of symbols over one tower."""

    __slots__ = ("tower", "symbols")

    def __init__(self, tower: FieldTower, symbols=()):
        counts = Counter()
        for s in symbols:
            if s.tower != tower:
                raise TowerMismatch(f"symbol {s} is not over {tower!r}")
            counts[s] += 1
        self.tower = tower
        self.symbols = frozenset(s for s, n in counts.items() if n % 2)

    def __eq__(self, other):
        if not isinstance(other, BrauerClass):
            return NotImplemented
        return self.tower == other.tower and self.symbols == other.symbols

    def __hash__(self):
        return hash((self.tower, self.symbols))

    def __len__(self):
        return len(self.symbols)

    def __contains__(self, s):
        return s in self.symbols

    def __iter__(self):
        return iter(self.sorted())

    def sorted(self) -> list[QuaternionSymbol]:
        return sorted(self.symbols, key=QuaternionSymbol.text)

    def texts(self) -> list[str]:
        return sorted(s.text() for s in self.symbols)

    def is_empty(self) -> bool:
        return not self.symbols

    def toggle(self, add=(), remove=()) -> "BrauerClass":
        """Remove symbols that must be present, then add others with mod-2 cancellation."""
        cur = set(self.symbols)
        for s in remove:
            if s not in cur:
                raise SymbolNotPresent(f"{s} not in class")
            cur.discard(s)
        for s in add:
            if s.tower != self.tower:
                raise TowerMismatch(f"symbol {s} is not over {self.tower!r}")
            cur ^= {s}
        out = BrauerClass.__new__(BrauerClass)
        out.tower = self.tower
        out.symbols = frozenset(cur)
        return out

    def __repr__(self):
        return f"BrauerClass({self.texts()})"


def class_add(A: BrauerClass, B: BrauerClass) -> BrauerClass:
    if A.tower != B.tower:
        raise TowerMismatch("classes over different towers")
    return A.toggle(add=B.symbols)


# rewrite steps ------------------------------------------------------------


@dataclass(frozen=True)
class R1:
    left: QuaternionSymbol
    right: QuaternionSymbol

    def apply(self, A):
        if self.left.second != self.right.second:
            raise RelationShape("R1 needs equal second slots")
        if self.left == self.right:
            raise RelationShape("R1 operands must be distinct symbols")
        out = QuaternionSymbol(self.left.first + self.right.first, self.left.second)
        return A.toggle(add=[out], remove=[self.left, self.right])


@dataclass(frozen=True)
class R1inv:
    sym: QuaternionSymbol
    addend: TowerElem

    def apply(self, A):
        s = self.sym
        a = s.tower.coerce(self.addend)
        return A.toggle(
            add=[QuaternionSymbol(s.first + a, s.second), QuaternionSymbol(a, s.second)],
            remove=[s],
        )


@dataclass(frozen=True)
class R2:
    left: QuaternionSymbol
    right: QuaternionSymbol

    def apply(self, A):
        if self.left.first != self.right.first:
            raise RelationShape("R2 needs equal first slots")
        if self.left == self.right:
            raise RelationShape("R2 operands must be distinct symbols")
        out = QuaternionSymbol(self.left.first, self.left.second * self.right.second)
        return A.toggle(add=[out], remove=[self.left, self.right])


@dataclass(frozen=True)
class R2inv:
    sym: QuaternionSymbol
    factor: TowerElem

    def apply(self, A):
        s = self.sym
        f = s.tower.coerce(self.factor)
        if f.is_zero():
            raise ZeroSecondSlot("R2inv factor must be nonzero")
        return A.toggle(
            add=[QuaternionSymbol(s.first, f), QuaternionSymbol(s.first, s.second / f)],
            remove=[s],
        )


@dataclass(frozen=True)
class R3:
    sym: QuaternionSymbol
    witness: SplitWitness

    def apply(self, A):
        if not self.witness.verifies(self.sym):
            raise WitnessFails(f"witness does not split {self.sym}")
        return A.toggle(remove=[self.sym])


@dataclass(frozen=True)
class R3inv:
    sym: QuaternionSymbol
    witness: SplitWitness

    def apply(self, A):
        if not self.witness.verifies(self.sym):
            raise WitnessFails(f"witness does not split {self.sym}")
        return A.toggle(add=[self.sym])


def rewrite(A: BrauerClass, step) -> BrauerClass:
    return step.apply(A)


def restrict(A: BrauerClass, bigger: FieldTower) -> BrauerClass:
    if not bigger.contains(A.tower):
        raise NotAnExtension(f"{bigger!r} does not extend {A.tower!r}")
    return BrauerClass(bigger, [s.embed(bigger) for s in A.symbols])


def corestrict_symbol(s: QuaternionSymbol) -> QuaternionSymbol:
    """[b, e)_E -> [b, N(e))_F for E = F[mu] and b in F (projection formula)."""
    t = s.tower
    below = t.below()
    if not s.first.in_below():
        raise FirstSlotNotInBase(f"first slot of {s} is not in {below!r}")
    return QuaternionSymbol(below.pullback(s.first), tower_norm(s.second))
