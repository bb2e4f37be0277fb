"""Exact arithmetic over characteristic-2 field towers."""

from .finite import FiniteField, is_irreducible, smallest_irreducible
from .grammar import format_element, format_tower, parse_element, parse_tower
from .poly import Poly, poly_gcd
from .ratfunc import RatFunc
from .tower import (
    ArtinSchreierLayer,
    FieldTower,
    TowerElem,
    rf_arith,
    tower_conj,
    tower_extend,
    tower_norm,
    wp,
)

__all__ = [
    "ArtinSchreierLayer",
    "FieldTower",
    "FiniteField",
    "Poly",
    "RatFunc",
    "TowerElem",
    "format_element",
    "format_tower",
    "is_irreducible",
    "parse_element",
    "parse_tower",
    "poly_gcd",
    "rf_arith",
    "smallest_irreducible",
    "tower_conj",
    "tower_extend",
    "tower_norm",
    "wp",
]
