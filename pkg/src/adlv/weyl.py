"""The finite Weyl group W of a root system.

Every element is interned: :class:`WeylGroup` enumerates W once as
permutations of the root list, and a :class:`WeylElt` is a light handle
(group, index).  Products, inverses and lengths are table lookups after
first use, which keeps the affine enumerations fast.
"""

from __future__ import annotations

import re
from functools import lru_cache
from operator import mul

from .roots import RootSystem, Vec, build


class WeylElt:
    __slots__ = ("group", "idx")

    def __init__(self, group: "WeylGroup", idx: int):
        self.group = group
        self.idx = idx

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.group.multiply(self, other)

    def __eq__(self, other):
        return isinstance(other, WeylElt) and other.idx == self.idx and other.group is self.group

    def __hash__(self):
        return self.idx

    def __lt__(self, other):
        return (self.length, self.word) < (other.length, other.word)

    def inverse(self) -> "WeylElt":
        return self.group.elements[self.group._inv[self.idx]]

    @property
    def length(self) -> int:
        return self.group._len[self.idx]

    @property
    def word(self) -> tuple[int, ...]:
        """Lexicographically smallest reduced word."""
        return self.group._word[self.idx]

    def act(self, alpha: Vec) -> Vec:
        rs = self.group.rs
        return rs.roots[self.group._perm[self.idx][rs.index[alpha]]]

    def act_cw(self, lam: Vec) -> Vec:
        m = self.group._cw_matrix(self.idx)
        return tuple(sum(map(mul, r, lam)) for r in m)

    @property
    def support(self) -> frozenset:
        return frozenset(self.word)

    def is_identity(self) -> bool:
        return self.idx == 0

    def __repr__(self):
        return f"WeylElt({self})"

    def __str__(self):
        return " ".join(f"s{i}" for i in self.word) or "e"


class WeylGroup:
    def __init__(self, rs: RootSystem):
        self.rs = rs
        n = rs.rank
        nroots = len(rs.roots)
        self.npos = nroots // 2
        gens = []
        for i in range(1, n + 1):
            gens.append(tuple(rs.index[rs.reflect_root(i, r)] for r in rs.roots))
        ident = tuple(range(nroots))
        perms = [ident]
        where = {ident: 0}
        words = [()]
        # BFS by word length gives length-ordered enumeration; the word
        # recorded here is replaced by the lex-smallest one below.
        frontier = [0]
        while frontier:
            nxt = []
            for k in frontier:
                p = perms[k]
                for i, g in enumerate(gens):
                    q = tuple(p[g[j]] for j in range(nroots))  # p * s_i
                    if q not in where:
                        where[q] = len(perms)
                        perms.append(q)
                        words.append(words[k] + (i + 1,))
                        nxt.append(where[q])
            frontier = nxt
        self._perm = perms
        self._where = where
        self._gens = gens
        npos = self.npos
        self._len = [sum(1 for j in range(npos) if p[j] >= npos) for p in perms]
        self._inv = []
        for p in perms:
            q = [0] * nroots
            for j, pj in enumerate(p):
                q[pj] = j
            self._inv.append(where[tuple(q)])
        self.elements = [WeylElt(self, k) for k in range(len(perms))]
        self._mul: dict = {}
        self._cw: dict = {}
        self._word = [None] * len(perms)
        for k in sorted(range(len(perms)), key=lambda k: self._len[k]):
            self._word[k] = self._lex_word(k)

    def _lex_word(self, k: int) -> tuple[int, ...]:
        if k == 0:
            return ()
        # smallest left descent s_i; then s_i w has a known word
        for i in range(1, self.rs.rank + 1):
            if self._perm[self._inv[k]][i - 1] >= self.npos:
                rest = self._word[self.simple(i).idx_mul_left(k)]
                return (i,) + rest
        raise AssertionError("non-identity element without descent")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def identity(self) -> WeylElt:
        return self.elements[0]

    def simple(self, i: int) -> "_Simple":
        return _Simple(self, i)

    def s(self, i: int) -> WeylElt:
        """Simple reflection s_i (1-based)."""
        return self.elements[self._where[self._gens[i - 1]]]

    def multiply(self, u: WeylElt, v: WeylElt) -> WeylElt:
        key = (u.idx, v.idx)
        r = self._mul.get(key)
        if r is None:
            pu, pv = self._perm[u.idx], self._perm[v.idx]
            r = self._where[tuple(pu[j] for j in pv)]
            self._mul[key] = r
        return self.elements[r]

    def from_word(self, word) -> WeylElt:
        x = self.identity
        for i in word:
            if not 1 <= i <= self.rs.rank:
                raise ValueError(f"s{i} is not a simple reflection of {self.rs}")
            x = x * self.s(i)
        return x

    def reflection(self, alpha: Vec) -> WeylElt:
        """s_alpha for an arbitrary root alpha."""
        rs = self.rs
        ac = rs.coroot(alpha)
        perm = tuple(rs.index[tuple(b - rs.pairing(ac, beta) * a for a, b in zip(alpha, beta))]
                     for beta in rs.roots)
        return self.elements[self._where[perm]]

    def _cw_matrix(self, k: int):
        m = self._cw.get(k)
        if m is None:
            # (w lam)_j = <lam, w^{-1} alpha_j>
            rs = self.rs
            pinv = self._perm[self._inv[k]]
            m = tuple(rs.roots[pinv[j]] for j in range(rs.rank))
            self._cw[k] = m
        return m

    @property
    def longest(self) -> WeylElt:
        return self.longest_element(self.rs.S)

    def longest_element(self, J) -> WeylElt:
        """w0_J, the longest element of the parabolic subgroup W_J."""
        J = sorted(J)
        x = self.identity
        while True:
            for j in J:
                y = x * self.s(j)
                if y.length > x.length:
                    x = y
                    break
            else:
                return x

    def parabolic(self, J) -> list[WeylElt]:
        J = frozenset(J)
        return [u for u in self.elements if u.support <= J]

    def is_right_descent(self, u: WeylElt, i: int) -> bool:
        """u s_i < u, i.e. u(alpha_i) < 0."""
        return self._perm[u.idx][i - 1] >= self.npos

    def is_left_descent(self, u: WeylElt, i: int) -> bool:
        return self._perm[self._inv[u.idx]][i - 1] >= self.npos

    def right_descents(self, u: WeylElt) -> frozenset:
        return frozenset(i for i in self.rs.S if self.is_right_descent(u, i))

    def left_descents(self, u: WeylElt) -> frozenset:
        return frozenset(i for i in self.rs.S if self.is_left_descent(u, i))

    def coset_decompose(self, u: WeylElt, J, side: str = "right") -> tuple[WeylElt, WeylElt]:
        """Split u along W_J.

        side="right": u = u^J * u_J with u^J minimal in u W_J (returns (u^J, u_J)).
        side="left":  u = u_J * {}^J u with {}^J u minimal in W_J u (returns (u_J, {}^J u)).
        """
        J = sorted(J)
        if side == "right":
            m, part = u, self.identity
            while True:
                for j in J:
                    if self.is_right_descent(m, j):
                        m = m * self.s(j)
                        part = self.s(j) * part
                        break
                else:
                    return m, part
        if side == "left":
            m, part = u, self.identity
            while True:
                for j in J:
                    if self.is_left_descent(m, j):
                        m = self.s(j) * m
                        part = part * self.s(j)
                        break
                else:
                    return part, m
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")

    def is_min_right(self, u: WeylElt, J) -> bool:
        """u in W^J."""
        return not any(self.is_right_descent(u, j) for j in J)

    def is_min_left(self, u: WeylElt, J) -> bool:
        """u in {}^J W."""
        return not any(self.is_left_descent(u, j) for j in J)

    def bruhat_leq(self, u: WeylElt, v: WeylElt) -> bool:
        return self._bruhat(u.idx, v.idx)

    @lru_cache(maxsize=None)
    def _bruhat(self, a: int, b: int) -> bool:
        u, v = self.elements[a], self.elements[b]
        if u.length > v.length:
            return False
        if v.length == 0:
            return u.length == 0
        i = v.word[0]
        s = self.s(i)
        sv = s * v
        if self.is_left_descent(u, i):
            return self._bruhat((s * u).idx, sv.idx)
        return self._bruhat(a, sv.idx)

    def conjugacy_class(self, u: WeylElt) -> set[WeylElt]:
        return {g * u * g.inverse() for g in self.elements}

    def is_coxeter(self, u: WeylElt) -> bool:
        return u.length == self.rs.rank and u.support == self.rs.S

    def is_cuspidal(self, u: WeylElt) -> bool:
        S = self.rs.S
        return all(c.support == S for c in self.conjugacy_class(u))

    def coxeter_elements(self) -> list[WeylElt]:
        return [u for u in self.elements if self.is_coxeter(u)]

    def parse(self, text: str) -> WeylElt:
        return parse_word(self, text)


class _Simple:
    __slots__ = ("g", "i")

    def __init__(self, g, i):
        self.g, self.i = g, i

    def idx_mul_left(self, k: int) -> int:
        g = self.g
        gen = g._gens[self.i - 1]
        p = g._perm[k]
        return g._where[tuple(gen[p[j]] for j in range(len(p)))]


def parse_word(W: WeylGroup, text: str) -> WeylElt:
    """Parse "s1 s2 s1", "s1*s2*s1" or "e"."""
    t = text.strip()
    if t in ("e", "1", ""):
        return W.identity
    tokens = [x for x in re.split(r"[\s*]+", t) if x]
    word = []
    for tok in tokens:
        if tok == "e":
            continue
        m = re.fullmatch(r"s(\d+)", tok)
        if not m:
            raise ValueError(f"bad token {tok!r} in {text!r}")
        word.append(int(m.group(1)))
    return W.from_word(word)


def weyl_group(rs) -> WeylGroup:
    if isinstance(rs, str):
        rs = build(rs)
    return _weyl_group(rs)


@lru_cache(maxsize=None)
def _weyl_group(rs) -> WeylGroup:
    return WeylGroup(rs)
