"""Root data for the split adjoint groups of type A, B, C, D and G2.

Roots are stored as integer vectors in the basis of simple roots and
coweights as integer vectors in the basis of fundamental coweights, so the
pairing is the plain dot product of coordinates.  The coroot lattice X sits
inside the coweight lattice Y of the adjoint torus with index det(Cartan).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

Vec = tuple[int, ...]


class UnsupportedTypeError(ValueError):
    pass


class NotDominantError(ValueError):
    pass


@dataclass(frozen=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in "ABCDG" or len(self.family) != 1:
            raise UnsupportedTypeError(f"unsupported type {self.family}{self.rank}")
        if self.rank < 1:
            raise UnsupportedTypeError("rank must be positive")
        if self.family == "G" and self.rank != 2:
            raise UnsupportedTypeError("family G only exists in rank 2")
        if self.family in "BC" and self.rank < 2:
            raise UnsupportedTypeError(f"{self.family}{self.rank}: use A1")
        if self.family == "D" and self.rank < 3:
            raise UnsupportedTypeError(f"D{self.rank} is not quasi-simple")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Za-z])\s*_?(\d+)\s*", text)
        if not m:
            raise UnsupportedTypeError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def is_classical(self) -> bool:
        return self.family in "ABCD"

    def __str__(self):
        return f"{self.family}{self.rank}"


def cartan_matrix(ct: CartanType) -> tuple[Vec, ...]:
    """Cartan matrix with entries a[i][j] = <alpha_i^vee, alpha_j>."""
    n = ct.rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
    if ct.family == "G":
        # alpha_1 short, alpha_2 long
        a[0][1], a[1][0] = -3, -1
        return tuple(tuple(r) for r in a)
    chain = n - 1 if ct.family != "D" else n - 2
    for i in range(chain):
        a[i][i + 1] = a[i + 1][i] = -1
    if ct.family == "B":
        a[n - 1][n - 2] = -2
    elif ct.family == "C":
        a[n - 2][n - 1] = -2
    elif ct.family == "D":
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
    return tuple(tuple(r) for r in a)


def _add(u: Vec, v: Vec, c: int = 1) -> Vec:
    return tuple(x + c * y for x, y in zip(u, v))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Immutable root datum; build it with :func:`build`."""

    type: CartanType
    cartan: tuple[Vec, ...]
    roots: tuple[Vec, ...]
    coroots: tuple[Vec, ...]
    index: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return self.type.rank

    @property
    def S(self) -> frozenset:
        return frozenset(range(1, self.rank + 1))

    def simple_root(self, i: int) -> Vec:
        """Simple root alpha_i, 1-based as in the notation s_1, ..., s_n."""
        return tuple(int(k == i - 1) for k in range(self.rank))

    @property
    def simple_roots(self) -> list[Vec]:
        return [self.simple_root(i) for i in range(1, self.rank + 1)]

    @property
    def positive_roots(self) -> list[Vec]:
        return [r for r in self.roots if is_positive(r)]

    @property
    def highest_root(self) -> Vec:
        return max(self.roots, key=sum)

    def coroot(self, alpha: Vec) -> Vec:
        return self.coroots[self.index[alpha]]

    @property
    def coroot_lattice_basis(self) -> list[Vec]:
        return [tuple(r) for r in self.cartan]

    @property
    def fundamental_coweights(self) -> list[Vec]:
        return [self.simple_root(i) for i in range(1, self.rank + 1)]

    def zero(self) -> Vec:
        return (0,) * self.rank

    def pairing(self, lam: Vec, alpha: Vec) -> int:
        return sum(x * y for x, y in zip(lam, alpha))

    def rho_check(self, J=None) -> Vec:
        """The dominant coweight pairing to 1 with alpha_j for j in J, else 0."""
        J = self.S if J is None else set(J)
        if not J <= self.S:
            raise ValueError(f"{sorted(J)} is not a subset of S")
        return tuple(int(i + 1 in J) for i in range(self.rank))

    def rho_pairing(self, lam: Vec) -> Fraction:
        """<rho, lam> with rho the half sum of positive roots."""
        return Fraction(sum(self.pairing(lam, a) for a in self.positive_roots), 2)

    def is_dominant(self, lam: Vec) -> bool:
        return all(c >= 0 for c in lam)

    def is_regular(self, lam: Vec) -> bool:
        return all(self.pairing(lam, a) != 0 for a in self.positive_roots)

    def wall_set(self, lam: Vec) -> frozenset:
        """I(lam): the simple indices whose walls contain the dominant lam."""
        if not self.is_dominant(lam):
            raise NotDominantError(f"{lam} is not dominant")
        return frozenset(i + 1 for i, c in enumerate(lam) if c == 0)

    def reflect_root(self, i: int, beta: Vec) -> Vec:
        c = sum(x * y for x, y in zip(self.cartan[i - 1], beta))
        return _add(beta, self.simple_root(i), -c)

    def reflect_coweight(self, i: int, lam: Vec) -> Vec:
        return _add(lam, self.cartan[i - 1], -lam[i - 1])

    def kappa(self, lam: Vec) -> tuple[Fraction, ...]:
        """Class of lam in Y/X, as lam written in coroot coordinates mod 1."""
        return _kappa(self.cartan, tuple(lam))

    def in_coroot_lattice(self, lam: Vec) -> bool:
        return all(c == 0 for c in self.kappa(lam))

    @property
    def fundamental_group_order(self) -> int:
        return _det(self.cartan)

    def __str__(self):
        return str(self.type)


def delta(alpha: Vec) -> int:
    """1 for a negative root, 0 for a positive one."""
    return 0 if is_positive(alpha) else 1


def is_positive(alpha: Vec) -> bool:
    return all(c >= 0 for c in alpha) and any(alpha)


def neg(v: Vec) -> Vec:
    return tuple(-c for c in v)


def _det(m) -> int:
    m = [[Fraction(x) for x in row] for row in m]
    n, d = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return int(d)


def _solve_rational(rows, lam) -> list[Fraction]:
    """Solve x . rows = lam (x a row vector) exactly."""
    n = len(rows)
    # columns of the transposed system: sum_i x_i rows[i][j] = lam[j]
    m = [[Fraction(rows[i][j]) for i in range(n)] + [Fraction(lam[j])] for j in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if m[r][c] != 0)
        m[c], m[p] = m[p], m[c]
        piv = m[c][c]
        m[c] = [a / piv for a in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def _scaled_inverse(cartan) -> tuple[int, tuple]:
    """(D, M) with M = D * cartan^-1 integral."""
    n = len(cartan)
    inv = [_solve_rational(cartan, [int(i == j) for i in range(n)]) for j in range(n)]
    d = 1
    for row in inv:
        for c in row:
            d = d * c.denominator // math.gcd(d, c.denominator)
    return d, tuple(tuple(int(c * d) for c in row) for row in inv)


@lru_cache(maxsize=65536)
def _kappa(cartan, lam) -> tuple[Fraction, ...]:
    d, m = _scaled_inverse(cartan)
    n = len(lam)
    return tuple(Fraction(sum(lam[j] * m[j][k] for j in range(n)) % d, d) for k in range(n))


def build(ct) -> RootSystem:
    """Build the root system of the given type (a CartanType or a string like "A2")."""
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    return _build(ct)


@lru_cache(maxsize=None)
def _build(ct: CartanType) -> RootSystem:
    cartan = cartan_matrix(ct)
    n = ct.rank
    simple = [tuple(int(k == i) for k in range(n)) for i in range(n)]
    pairs = {s: tuple(cartan[i]) for i, s in enumerate(simple)}
    frontier = list(pairs)
    while frontier:
        new = []
        for beta in frontier:
            bcheck = pairs[beta]
            for i in range(n):
                c = sum(x * y for x, y in zip(cartan[i], beta))
                img = _add(beta, simple[i], -c)
                if img not in pairs:
                    pairs[img] = _add(bcheck, cartan[i], -bcheck[i])
                    new.append(img)
        frontier = new
    # deterministic order: positive roots by height then coords, then negatives
    pos = sorted((r for r in pairs if is_positive(r)), key=lambda r: (sum(r), tuple(-c for c in r)))
    order = pos + [neg(r) for r in pos]
    roots = tuple(order)
    coroots = tuple(pairs[r] for r in roots)
    return RootSystem(ct, cartan, roots, coroots, {r: i for i, r in enumerate(roots)})
