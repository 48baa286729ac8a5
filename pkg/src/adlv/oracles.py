"""Slow, independent reference computations used to check the fast paths.

Nothing here calls the descent-based Bruhat recursion, the folding Demazure
product or the coset-based canonical decomposition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product

from .affine import AffineWeylElt, AffineWeylGroup, bfs_word_lengths
from .weyl import WeylElt, WeylGroup

__all__ = [
    "bfs_word_lengths", "bfs_finite_lengths", "subword_products", "bruhat_leq_subword",
    "demazure_max", "all_reduced_words", "eta2_geometric", "decompositions_bruteforce",
    "length_zero_bruteforce",
]


def bfs_finite_lengths(W: WeylGroup) -> dict[WeylElt, int]:
    dist = {W.identity: 0}
    frontier = [W.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for i in W.rs.S:
                y = x * W.s(i)
                if y not in dist:
                    dist[y] = dist[x] + 1
                    nxt.append(y)
        frontier = nxt
    return dist


def _gens(x):
    if isinstance(x, WeylElt):
        W = x.group
        return W.identity, (lambda i: W.s(i)), x.word
    G = x.group
    ya, tau = G.split_omega(x)
    return G.identity, G.s, G.word(ya)[0]


@lru_cache(maxsize=None)
def subword_products(x) -> frozenset:
    """Products of all subwords of one reduced word of x (the lower interval)."""
    one, gen, word = _gens(x)
    out = set()
    for mask in product((0, 1), repeat=len(word)):
        y = one
        for keep, i in zip(mask, word):
            if keep:
                y = y * gen(i)
        out.add(y)
    if isinstance(x, AffineWeylElt):
        tau = x.group.split_omega(x)[1]
        out = {y * tau for y in out}
    return frozenset(out)


def bruhat_leq_subword(u, v) -> bool:
    return u in subword_products(v)


def demazure_max(x, y):
    """Unique Bruhat-maximal element of {u u' : u <= x, u' <= y}."""
    lx, ly = subword_products(x), subword_products(y)
    prods = {u * w for u in lx for w in ly}
    top = max(p.length for p in prods)
    cands = [p for p in prods if p.length == top]
    for c in cands:
        if prods <= subword_products(c):
            return c
    raise AssertionError("no maximum in product set")


def all_reduced_words(x) -> list[tuple[int, ...]]:
    """Every reduced word, found by peeling off right descents."""
    if isinstance(x, WeylElt):
        W = x.group
        if x.length == 0:
            return [()]
        out = []
        for i in sorted(W.rs.S):
            y = x * W.s(i)
            if y.length < x.length:
                out += [w + (i,) for w in all_reduced_words(y)]
        return out
    G = x.group
    ya, _ = G.split_omega(x)
    return _affine_words(G, ya)


def _affine_words(G, y):
    if y.length == 0:
        return [()]
    out = []
    for i in G.S_tilde:
        z = y * G.s(i)
        if z.length < y.length:
            out += [w + (i,) for w in _affine_words(G, z)]
    return out


def _alcove_point(G: AffineWeylGroup):
    rs = G.rs
    h = sum(rs.highest_root) + 1
    return tuple(Fraction(1, h) for _ in range(rs.rank))


def eta2_geometric(x: AffineWeylElt) -> list[WeylElt]:
    """All v in W such that the alcove of v^{-1} x lies in the dominant chamber."""
    G = x.group
    p = _alcove_point(G)
    out = []
    for v in G.W:
        q = (G.from_finite(v.inverse()) * x).act_on_point(p)
        if all(c > 0 for c in q):
            out.append(v)
    return out


def decompositions_bruteforce(x: AffineWeylElt) -> list[tuple]:
    """Every triple (v, mu, w) with x = v t^mu w, mu dominant, w in {}^{I(mu)}W."""
    G = x.group
    rs, W = G.rs, G.W
    out = []
    for v in W:
        mu = v.inverse().act_cw(x.transl)
        if not rs.is_dominant(mu):
            continue
        w = v.inverse() * x.finite
        walls = rs.wall_set(mu)
        if all((W.s(i) * w).length > w.length for i in walls):
            out.append((v, mu, w))
    return out


def length_zero_bruteforce(G: AffineWeylGroup) -> dict:
    """kappa class -> length-zero elements, from the inversion count over a box."""
    rs = G.rs
    out: dict = {}
    box = range(-1, 2)
    for lam in product(box, repeat=rs.rank):
        for u in G.W:
            x = G.elt(lam, u)
            if len(G.inversion_set(x)) == 0:
                out.setdefault(rs.kappa(lam), set()).add(x)
    return out
