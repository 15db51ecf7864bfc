"""Exact computation in invariant skew group rings ``(L * M)^G``.

Subpackages: :mod:`.arith` (polynomials and rational functions over Q),
:mod:`.autgroup` (affine automorphisms, finite groups, shift monoids),
:mod:`.skewring` (settings and elements), :mod:`.bimodhecke` (bimodule
classes and Hecke products), :mod:`.presets` and :mod:`.cli`.
"""

from .arith import Poly, RatFunc
from .autgroup import AffineAut, FiniteGroup, ShiftMonoid
from .skewring import InvariantElement, Setting, SkewElement, make_invariant, skew_mul

__version__ = "0.1.0"

__all__ = [
    "AffineAut",
    "FiniteGroup",
    "InvariantElement",
    "Poly",
    "RatFunc",
    "Setting",
    "ShiftMonoid",
    "SkewElement",
    "make_invariant",
    "skew_mul",
]
