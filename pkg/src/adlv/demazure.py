"""Demazure product on finite and extended affine Weyl groups.

Computed by folding: for each letter s of a reduced word of the right
factor, t -> t*s if that is longer, else t stays.  Length-zero parts are
pulled out to the right first (y = y_a * tau), which is harmless because
conjugation by tau is an automorphism of the Coxeter system.
"""

from __future__ import annotations

from .affine import AffineWeylElt
from .weyl import WeylElt


def star(x, y):
    """The Demazure product x * y."""
    if isinstance(x, WeylElt) and isinstance(y, WeylElt):
        return star_fold(x, y.word)
    if isinstance(x, AffineWeylElt) and isinstance(y, AffineWeylElt):
        G = x.group
        ya, tau = G.split_omega(y)
        return star_fold(x, G.word(ya)[0]) * tau
    raise TypeError("star needs two finite or two affine Weyl group elements")


def star_fold(x, word):
    """Left fold of x over any word (reduced or not)."""
    if isinstance(x, WeylElt):
        W = x.group
        for i in word:
            if not W.is_right_descent(x, i):
                x = x * W.s(i)
        return x
    G = x.group
    for i in word:
        y = x * G.s(i)
        if y.length > x.length:
            x = y
    return x
