"""Affine Deligne-Lusztig varieties in the affine flag variety: combinatorics.

Root data, finite and extended affine Weyl groups, the Demazure product,
the reduction calculus and nonemptiness/dimension predictions.
"""

from .roots import CartanType, NotDominantError, RootSystem, UnsupportedTypeError, build
from .weyl import WeylElt, WeylGroup, weyl_group
from .affine import AffineRoot, AffineWeylElt, AffineWeylGroup, CanonicalDecomposition, affine_group
from .demazure import star

__version__ = "0.1.0"

__all__ = [
    "CartanType", "RootSystem", "UnsupportedTypeError", "NotDominantError", "build",
    "WeylElt", "WeylGroup", "weyl_group",
    "AffineRoot", "AffineWeylElt", "AffineWeylGroup", "CanonicalDecomposition", "affine_group",
    "star",
]
