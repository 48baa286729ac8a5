"""The extended affine Weyl group W~ = W x| Y of an adjoint group.

Elements are kept in the normal form t^lam * u (translation first, then a
finite Weyl element u).  Points of the apartment are acted on by
p -> u(p) + lam, and an affine root (alpha, k) is the affine function
p -> <p, alpha> + k, so that x.(alpha, k) = (u alpha, k - <lam, u alpha>).

The base alcove is chosen between the dominant and the antidominant
fundamental alcove; :func:`select_positivity_convention` decides which by
comparing the inversion-count length against breadth-first word length over
the simple affine reflections, and ``POSITIVITY`` records the winner.
"""

from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import add, mul

from .roots import RootSystem, Vec, build, delta, is_positive
from .weyl import WeylElt, WeylGroup, weyl_group

POSITIVITY = "dominant"
CONVENTIONS = ("dominant", "antidominant")


def _vadd(u: Vec, v: Vec) -> Vec:
    return tuple(map(add, u, v))


def _vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


@dataclass(frozen=True)
class AffineRoot:
    """The affine function p -> <p, finite_root> + level."""

    finite_root: Vec
    level: int

    def is_positive(self, convention: str = POSITIVITY) -> bool:
        if self.level != 0:
            return self.level > 0
        if convention == "dominant":
            return is_positive(self.finite_root)
        return not is_positive(self.finite_root)


@dataclass(frozen=True)
class CanonicalDecomposition:
    """x = v t^mu w with mu dominant and w in {}^{I(mu)}W."""

    v: WeylElt
    mu: Vec
    w: WeylElt

    def __str__(self):
        mu = ",".join(str(c) for c in self.mu)
        return f"({self.v}) t[{mu}] ({self.w})"


class AffineWeylElt:
    __slots__ = ("group", "transl", "finite", "_hash", "_len")

    def __init__(self, group: "AffineWeylGroup", transl: Vec, finite: WeylElt):
        self.group = group
        self.transl = tuple(transl)
        self.finite = finite
        self._hash = hash((self.transl, finite.idx))
        self._len = None

    def __mul__(self, other):
        if isinstance(other, WeylElt):
            other = self.group.from_finite(other)
        if not isinstance(other, AffineWeylElt):
            return NotImplemented
        u = self.finite
        return AffineWeylElt(self.group, _vadd(self.transl, u.act_cw(other.transl)), u * other.finite)

    def __rmul__(self, other):
        if isinstance(other, WeylElt):
            return self.group.from_finite(other) * self
        return NotImplemented

    def __eq__(self, other):
        return (isinstance(other, AffineWeylElt) and self._hash == other._hash
                and self.transl == other.transl and self.finite == other.finite)

    def __hash__(self):
        return self._hash

    def inverse(self) -> "AffineWeylElt":
        ui = self.finite.inverse()
        return AffineWeylElt(self.group, tuple(-c for c in ui.act_cw(self.transl)), ui)

    @property
    def length(self) -> int:
        if self._len is None:
            self._len = self.group.length(self)
        return self._len

    def act_on_affine_root(self, a: AffineRoot) -> AffineRoot:
        beta = self.finite.act(a.finite_root)
        return AffineRoot(beta, a.level - self.group.rs.pairing(self.transl, beta))

    def act_on_point(self, p):
        return tuple(a + b for a, b in zip(self.finite.act_cw(p), self.transl))

    def is_identity(self) -> bool:
        return self.finite.idx == 0 and not any(self.transl)

    def sort_key(self):
        return self.group.sort_key(self)

    def __repr__(self):
        return f"AffineWeylElt({self})"

    def __str__(self):
        if not any(self.transl):
            return str(self.finite)
        head = "t[" + ",".join(str(c) for c in self.transl) + "]"
        return head if self.finite.idx == 0 else f"{head} {self.finite}"


class AffineWeylGroup:
    """Extended affine Weyl group attached to a root system."""

    def __init__(self, rs: RootSystem, positivity: str = POSITIVITY):
        if positivity not in CONVENTIONS:
            raise ValueError(f"unknown positivity convention {positivity!r}")
        self.rs = rs
        self.W: WeylGroup = weyl_group(rs)
        self.positivity = positivity
        self._shift = -1 if positivity == "dominant" else 1
        self._dec_cache = {}
        npos = self.W.npos
        self._pos = [rs.roots[j] for j in range(npos)]
        # for each finite u, which positive alpha have u^{-1}(alpha) < 0
        self._flip = [tuple(self.W._perm[self.W._inv[k]][j] >= npos for j in range(npos))
                      for k in range(len(self.W))]
        self.identity = self.elt(rs.zero(), self.W.identity)
        theta = rs.highest_root
        self.s0 = self.elt(rs.coroot(theta), self.W.reflection(theta))
        self._omega = None
        self._word_cache: dict = {}

    # construction ------------------------------------------------------
    def elt(self, transl, finite: WeylElt | None = None) -> AffineWeylElt:
        if finite is None:
            finite = self.W.identity
        if len(transl) != self.rs.rank:
            raise ValueError(f"translation {transl} has wrong rank for {self.rs}")
        return AffineWeylElt(self, tuple(transl), finite)

    def t(self, lam) -> AffineWeylElt:
        return self.elt(lam)

    def from_finite(self, u: WeylElt) -> AffineWeylElt:
        return AffineWeylElt(self, self.rs.zero(), u)

    def s(self, i: int) -> AffineWeylElt:
        """Simple affine reflection s_i, i in {0, 1, ..., n}."""
        if i == 0:
            return self.s0
        return self.from_finite(self.W.s(i))

    @property
    def S_tilde(self) -> tuple[int, ...]:
        return tuple(range(self.rs.rank + 1))

    def from_word(self, word, omega: int = 0) -> AffineWeylElt:
        x = self.identity
        for i in word:
            if not 0 <= i <= self.rs.rank:
                raise ValueError(f"s{i} is not a simple affine reflection of {self.rs}")
            x = x * self.s(i)
        return x * self.omega_elements()[omega]

    def canonical(self, v: WeylElt, mu: Vec, w: WeylElt) -> AffineWeylElt:
        """The element v t^mu w."""
        return self.from_finite(v) * self.t(mu) * self.from_finite(w)

    # length ------------------------------------------------------------
    def length(self, x: AffineWeylElt) -> int:
        lam = x.transl
        flips = self._flip[x.finite.idx]
        c = self._shift
        total = 0
        for alpha, f in zip(self._pos, flips):
            p = sum(map(mul, lam, alpha))
            total += abs(p + c) if f else abs(p)
        return total

    def inversion_set(self, x: AffineWeylElt, convention: str | None = None) -> list[AffineRoot]:
        """Positive affine roots sent to negative ones, by direct enumeration."""
        convention = convention or self.positivity
        rs = self.rs
        bound = max([abs(rs.pairing(x.transl, a)) for a in rs.roots] + [0]) + 2
        out = []
        for alpha in rs.roots:
            for k in range(-bound, bound + 1):
                a = AffineRoot(alpha, k)
                if a.is_positive(convention) and not x.act_on_affine_root(a).is_positive(convention):
                    out.append(a)
        return out

    # Omega and kappa ---------------------------------------------------
    def kappa(self, x: AffineWeylElt):
        return self.rs.kappa(x.transl)

    def omega_elements(self) -> list[AffineWeylElt]:
        """Length-zero elements, one per class of Y/X, identity first.

        When Omega is cyclic the list is ordered as powers of a generator,
        so that index k is pi^k.
        """
        if self._omega is None:
            self._omega = self._find_omega()
        return self._omega

    def _find_omega(self) -> list[AffineWeylElt]:
        rs = self.rs
        n = rs.rank
        found = {}
        boxes = [()]
        for _ in range(n):
            boxes = [b + (c,) for b in boxes for c in (-1, 0, 1)]
        for lam in boxes:
            for u in self.W:
                x = self.elt(lam, u)
                if x.length == 0:
                    found.setdefault(rs.kappa(lam), x)
        order = rs.fundamental_group_order
        if len(found) != order:
            raise AssertionError(f"found {len(found)} length-zero elements, expected {order}")
        ident = found[rs.kappa(rs.zero())]
        # first fundamental coweight whose class generates, if any
        gen = None
        for i in range(n):
            k = rs.kappa(rs.fundamental_coweights[i])
            x = found[k]
            if self._order(x) == order:
                gen = x
                break
        if gen is not None:
            out, y = [ident], gen
            while y != ident:
                out.append(y)
                y = y * gen
            return out

        def first_cw(x):
            kx = rs.kappa(x.transl)
            return next(i for i in range(n) if rs.kappa(rs.fundamental_coweights[i]) == kx)
        rest = sorted((x for x in found.values() if x != ident), key=first_cw)
        return [ident] + rest

    def _order(self, x: AffineWeylElt) -> int:
        k, y = 1, x
        while y != self.identity:
            y = y * x
            k += 1
        return k

    def omega_index(self, tau: AffineWeylElt) -> int:
        return self.omega_elements().index(tau)

    def omega_for(self, x: AffineWeylElt) -> AffineWeylElt:
        kx = self.kappa(x)
        for tau in self.omega_elements():
            if self.kappa(tau) == kx:
                return tau
        raise AssertionError("no length-zero element in this class")

    def split_omega(self, x: AffineWeylElt) -> tuple[AffineWeylElt, AffineWeylElt]:
        """x = y * tau with y in W_a and tau of length zero."""
        tau = self.omega_for(x)
        return x * tau.inverse(), tau

    def in_affine_weyl(self, x: AffineWeylElt) -> bool:
        return self.rs.in_coroot_lattice(x.transl)

    def omega_permutation(self, tau: AffineWeylElt) -> dict[int, int]:
        """i -> j with tau s_i tau^{-1} = s_j."""
        ti = tau.inverse()
        perm = {}
        for i in self.S_tilde:
            c = tau * self.s(i) * ti
            perm[i] = next(j for j in self.S_tilde if self.s(j) == c)
        return perm

    # descents, words, Bruhat ------------------------------------------
    def is_left_descent(self, x: AffineWeylElt, i: int) -> bool:
        return (self.s(i) * x).length < x.length

    def is_right_descent(self, x: AffineWeylElt, i: int) -> bool:
        return (x * self.s(i)).length < x.length

    def left_descents(self, x) -> frozenset:
        return frozenset(i for i in self.S_tilde if self.is_left_descent(x, i))

    def right_descents(self, x) -> frozenset:
        return frozenset(i for i in self.S_tilde if self.is_right_descent(x, i))

    def word(self, x: AffineWeylElt) -> tuple[tuple[int, ...], int]:
        """(lex-smallest reduced word over S~ of the W_a part, Omega index)."""
        r = self._word_cache.get(x)
        if r is None:
            y, tau = self.split_omega(x)
            word = []
            while y.length:
                i = next(i for i in self.S_tilde if self.is_left_descent(y, i))
                word.append(i)
                y = self.s(i) * y
            r = (tuple(word), self.omega_index(tau))
            self._word_cache[x] = r
        return r

    def word_str(self, x: AffineWeylElt) -> str:
        word, k = self.word(x)
        parts = [f"s{i}" for i in word]
        if k:
            parts.append(f"pi^{k}")
        return " ".join(parts) or "e"

    def sort_key(self, x: AffineWeylElt):
        word, k = self.word(x)
        return (x.length, word, k)

    def bruhat_leq(self, x: AffineWeylElt, y: AffineWeylElt) -> bool:
        xa, tx = self.split_omega(x)
        ya, ty = self.split_omega(y)
        if tx != ty:
            return False
        return self._bruhat_a(xa, ya)

    def _bruhat_a(self, x, y) -> bool:
        if x.length > y.length:
            return False
        if y.length == 0:
            return x.length == 0
        i = self.word(y)[0][0]
        s = self.s(i)
        if self.is_left_descent(x, i):
            return self._bruhat_a(s * x, s * y)
        return self._bruhat_a(x, s * y)

    def support(self, x: AffineWeylElt) -> frozenset:
        """Simple affine reflections in a reduced word of the W_a part."""
        return frozenset(self.word(x)[0])

    def is_min_in_coset(self, x: AffineWeylElt, J, side: str) -> bool:
        """side="left": x in {}^J W~ (minimal in W_J x); "right": x in W~^J."""
        if side == "left":
            return not any(self.is_left_descent(x, j) for j in J)
        if side == "right":
            return not any(self.is_right_descent(x, j) for j in J)
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    # canonical decomposition and eta ----------------------------------
    def canonical_decomposition(self, x: AffineWeylElt) -> CanonicalDecomposition:
        d = self._dec_cache.get(x)
        if d is None:
            if len(self._dec_cache) > 200_000:
                self._dec_cache.clear()
            d = self._dec_cache[x] = self._decompose(x)
        return d

    def _decompose(self, x: AffineWeylElt) -> CanonicalDecomposition:
        rs, W = self.rs, self.W
        mu, v1 = x.transl, W.identity
        while True:
            i = next((k for k, c in enumerate(mu) if c < 0), None)
            if i is None:
                break
            mu = rs.reflect_coweight(i + 1, mu)
            v1 = v1 * W.s(i + 1)
        z, w = W.coset_decompose(v1.inverse() * x.finite, rs.wall_set(mu), "left")
        return CanonicalDecomposition(v1 * z, mu, w)

    def eta1(self, x: AffineWeylElt) -> WeylElt:
        return x.finite

    def eta2(self, x: AffineWeylElt) -> WeylElt:
        return self.canonical_decomposition(x).v

    def eta(self, x: AffineWeylElt) -> WeylElt:
        d = self.canonical_decomposition(x)
        return d.w * d.v

    def in_dominant_chamber(self, x: AffineWeylElt) -> bool:
        """x in {}^S W~."""
        return self.is_min_in_coset(x, self.rs.S, "left")

    def is_shrunken(self, x: AffineWeylElt) -> bool:
        """Membership in the lowest two-sided cell W~'."""
        d = self.canonical_decomposition(x)
        rs = self.rs
        winv = d.w.inverse()
        for i in range(1, rs.rank + 1):
            a = rs.simple_root(i)
            if d.mu[i - 1] + delta(d.v.act(a)) - delta(winv.act(a)) == 0:
                return False
        return True

    def virtual_dim(self, x: AffineWeylElt, b=None) -> Fraction:
        """d(x) = (l(x) + l(eta(x)) - defect(b)) / 2; b=None means b = 1."""
        defect = 0
        if b is not None:
            defect = b.defect
            if b.kappa != self.kappa(x):
                warnings.warn(f"{x} and b lie in different components", stacklevel=2)
        return Fraction(x.length + self.eta(x).length - defect, 2)

    # enumeration -------------------------------------------------------
    def enumerate_affine(self, max_length: int) -> list[AffineWeylElt]:
        """All of W_a with length <= max_length, in sweep order."""
        layers = [[self.identity]]
        seen = {self.identity}
        for k in range(max_length):
            nxt = []
            for x in layers[-1]:
                for i in self.S_tilde:
                    y = x * self.s(i)
                    if y not in seen and y.length == k + 1:
                        seen.add(y)
                        nxt.append(y)
            layers.append(nxt)
        out = [x for layer in layers for x in layer]
        out.sort(key=self.sort_key)
        return out

    def enumerate(self, max_length: int) -> list[AffineWeylElt]:
        """All of W~ with length <= max_length, in sweep order."""
        base = self.enumerate_affine(max_length)
        out = [y * tau for tau in self.omega_elements() for y in base]
        out.sort(key=self.sort_key)
        return out


def affine_group(rs, positivity: str = POSITIVITY) -> AffineWeylGroup:
    if isinstance(rs, str):
        rs = build(rs)
    return _affine_group(rs, positivity)


@lru_cache(maxsize=None)
def _affine_group(rs, positivity) -> AffineWeylGroup:
    return AffineWeylGroup(rs, positivity)


def bfs_word_lengths(G: AffineWeylGroup, max_length: int) -> dict[AffineWeylElt, int]:
    """Word length over the simple affine reflections, by breadth-first search.

    The group law alone is used here, never a length function.
    """
    dist = {G.identity: 0}
    queue = deque([G.identity])
    gens = [G.s(i) for i in G.S_tilde]
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d == max_length:
            continue
        for g in gens:
            y = x * g
            if y not in dist:
                dist[y] = d + 1
                queue.append(y)
    return dist


def select_positivity_convention(rs, max_length: int = 6) -> str:
    """Pick the base-alcove convention whose inversion count matches word length."""
    if isinstance(rs, str):
        rs = build(rs)
    winners = []
    for conv in CONVENTIONS:
        G = AffineWeylGroup(rs, conv)
        dist = bfs_word_lengths(G, max_length)
        if all(len(G.inversion_set(x)) == d for x, d in dist.items()):
            winners.append(conv)
    if len(winners) != 1:
        raise AssertionError(f"ambiguous length convention: {winners}")
    return winners[0]
