"""
Finite base rings with involution.

Builds rings from a RingSpec, attaches standard involutions and validates
odd quadruples (ring, bar, lambda, mu). Matrix arithmetic over these rings
lives in ``rings.linalg``.
"""

from .spec import RingSpec, integers_mod, prime_field, matrix_ring, product_opposite
from .finite_ring import FiniteRing, build_ring
from .involution import Involution, standard_involution, involution_from_table
from .quadruple import (
    OddQuadruple,
    make_odd_quadruple,
    inverse_quadruple,
    quadruple_violations,
)

__all__ = [
    # Specs
    "RingSpec",
    "integers_mod",
    "prime_field",
    "matrix_ring",
    "product_opposite",
    # Rings
    "FiniteRing",
    "build_ring",
    # Involutions
    "Involution",
    "standard_involution",
    "involution_from_table",
    # Quadruples
    "OddQuadruple",
    "make_odd_quadruple",
    "inverse_quadruple",
    "quadruple_violations",
]
