"""Quaternion symbols and 2-torsion Brauer classes over characteristic-2 towers,
with witness-certified descent of degree-8 exponent-2 presentations."""

__version__ = "0.1.0"
