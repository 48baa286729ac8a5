"""Exhaustive verification suites behind `adlv verify`.

Each suite takes an affine Weyl group, a length bound and a seed, and
returns a SuiteResult listing counterexamples in element syntax.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import oracles
from .affine import POSITIVITY, AffineWeylGroup, affine_group, select_positivity_convention
from .demazure import star
from .predict import (EMPTY, NONEMPTY, BasicClassData, conjugate_contained, find_non_equidim_triples,
                      grassmannian_dim, is_p_alcove, non_equidim_witness, p_alcove_window,
                      pgl_chain_target, predict, very_regular_bound)
from .reduction import (HypothesisError, build_reduction_tree, coxeter_search, implies_step_X2,
                        lemma35_base_dim, lower_bound_dim, thm3_1_witness, thm3_2_search,
                        thm3_3_construction, thm3_4_witness, tilde_path, tilde_reachable)

DEFAULT_SEED = 20240101


@dataclass
class SuiteResult:
    name: str
    type: str
    bound: int
    checked: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, msg: str):
        self.failures.append(msg)

    def check(self, cond: bool, msg: str):
        self.checked += 1
        if not cond:
            self.failures.append(msg)

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"{status} {self.name} {self.type} bound={self.bound} checks={self.checked} ({self.seconds:.2f}s)"
        if self.failures:
            line += f"\n  first counterexample: {self.failures[0]}"
            if len(self.failures) > 1:
                line += f"\n  ({len(self.failures) - 1} more)"
        for n in self.notes:
            line += f"\n  note: {n}"
        return line


def _dominant_box(rs, top, nonzero=False, regular=False):
    lo = 1 if regular else 0
    for mu in itertools.product(range(lo, top + 1), repeat=rs.rank):
        if nonzero and not any(mu):
            continue
        yield mu


# suites --------------------------------------------------------------

def suite_lengths(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs = G.rs
    res.check(select_positivity_convention(rs, min(bound, 6)) == POSITIVITY,
              "inversion count disagrees with word length under the chosen base alcove")
    dist = oracles.bfs_word_lengths(G, bound)
    for x, d in sorted(dist.items(), key=lambda kv: kv[0].sort_key()):
        res.check(x.length == d, f"{x}: length {x.length} != word length {d}")
        res.check(len(G.inversion_set(x)) == d, f"{x}: {len(G.inversion_set(x))} inversions != {d}")
    res.check(set(G.enumerate_affine(bound)) == set(dist), "enumeration disagrees with BFS")
    for x, d in oracles.bfs_finite_lengths(G.W).items():
        res.check(x.length == d, f"finite {x}: length {x.length} != {d}")
    omega = G.omega_elements()
    res.check(len(omega) == rs.fundamental_group_order, "wrong number of length-zero elements")
    bf = oracles.length_zero_bruteforce(G)
    for tau in omega:
        res.check(tau.length == 0 and bf[G.kappa(tau)] == {tau}, f"{tau}: not the unique length-zero element")


def _check_star_pair(res, x, y, z, support, oracle=True):
    if oracle:
        res.check(z == oracles.demazure_max(x, y), f"star({x}, {y}) = {z} is not the Bruhat max")
    res.check(z.length == x.length + (x.inverse() * z).length == (z * y.inverse()).length + y.length,
              f"star({x}, {y}): length identities fail")
    res.check(support(z) == support(x) | support(y), f"star({x}, {y}): support is not the union")


def suite_demazure(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    W = G.W
    for x, y in itertools.product(W, W):
        _check_star_pair(res, x, y, star(x, y), lambda u: u.support)
    cap = min(bound, 4)
    E = G.enumerate_affine(cap)
    res.notes.append(f"finite pairs: {len(W) ** 2}; affine pairs with l <= {cap}: {len(E) ** 2}")
    for x, y in itertools.product(E, E):
        _check_star_pair(res, x, y, star(x, y), G.support)
    rng = random.Random(seed)
    pool = G.enumerate(bound)
    for _ in range(200):
        a, b, c = (rng.choice(pool) for _ in range(3))
        res.check(star(star(a, b), c) == star(a, star(b, c)), f"star not associative on {a}, {b}, {c}")


def lemma_2_8_failures(W) -> tuple[int, list]:
    """Exhaustive check: w(alpha) < 0 whenever y^-1(alpha) < 0 implies l(wy) = l(w) - l(y)."""
    rs = W.rs
    from .roots import is_positive
    n, bad = 0, []
    for w, y in itertools.product(W, W):
        yi = y.inverse()
        if all(not is_positive(w.act(a)) for a in rs.positive_roots if not is_positive(yi.act(a))):
            n += 1
            if (w * y).length != w.length - y.length:
                bad.append(f"w = {w}, y = {y}")
    return n, bad


def suite_decomposition(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs = G.rs
    b1 = BasicClassData.trivial(rs)
    for x in G.enumerate(bound):
        d = G.canonical_decomposition(x)
        triples = oracles.decompositions_bruteforce(x)
        res.check(triples == [(d.v, d.mu, d.w)], f"{x}: decompositions {len(triples)} / mismatch")
        res.check(x.length == d.v.length + G.t(d.mu).length - d.w.length, f"{x}: length formula fails")
        res.check(oracles.eta2_geometric(x) == [d.v], f"{x}: eta2 disagrees with the alcove test")
        # second path to eta: v^-1 x is the unique element of Wx in the dominant chamber
        mins = [G.from_finite(u) * x for u in G.W if G.in_dominant_chamber(G.from_finite(u) * x)]
        res.check(len(mins) == 1 and mins[0] == G.from_finite(d.v.inverse()) * x, f"{x}: Wx meets ^S W~ badly")
        if len(mins) == 1:
            m = mins[0]
            w2 = m.finite
            v2 = x.finite * w2.inverse()
            res.check(w2 * v2 == G.eta(x), f"{x}: eta recomputed differently")
        if G.is_shrunken(x) and G.kappa(x) == b1.kappa:
            st = predict(x, b1).status
            full = G.eta(x).support == rs.S
            res.check((st == NONEMPTY) == full and st in (NONEMPTY, EMPTY), f"{x}: predicted {st}")
    for tau in G.omega_elements()[1:]:
        for x in G.enumerate(min(bound, 6)):
            y = tau * x * tau.inverse()
            p, q = predict(x), predict(y)
            if {p.status, q.status} <= {NONEMPTY, EMPTY}:
                res.check(p.status == q.status, f"{x} and its Omega-conjugate {y} predicted differently")
    n, bad = lemma_2_8_failures(G.W)
    res.checked += n
    for b in bad:
        res.fail(f"Lemma 2.8 fails for {b}")


def suite_virtual_dim(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs, W = G.rs, G.W
    eta, d = G.eta, G.virtual_dim
    for x in G.enumerate(bound):
        dec = G.canonical_decomposition(x)
        for i in sorted(rs.S):
            s = G.s(i)
            if (s * x * s).length != x.length - 2:
                continue
            sx, xs = s * x, x * s
            eq = eta(sx).length == eta(x).length - 1
            res.check(d(x) >= d(sx) + 1 and (d(x) == d(sx) + 1) == eq, f"{x}, s{i}: left inequality")
            tmws = G.t(dec.mu) * G.from_finite(dec.w) * s
            if G.in_dominant_chamber(tmws) or dec.w.is_identity():
                eq = eta(xs).length == eta(x).length - 1
                res.check(d(x) >= d(xs) + 1 and (d(x) == d(xs) + 1) == eq, f"{x}, s{i}: right inequality")
            for side in ("left", "right"):
                wit = implies_step_X2(x, i, side)
                if wit is not None:
                    res.check(d(x) == d(wit.target) + 1, f"{x} => {wit.target}: d drops by != 1")
    w0 = W.longest
    for mu in _dominant_box(rs, 3):
        top = G.from_finite(w0) * G.t(mu)
        res.check(2 * d(top) == top.length + w0.length, f"2 d(w0 t^{mu}) != l + l(w0)")
        res.check(grassmannian_dim(rs, mu) + w0.length == d(top), f"grassmannian bound mismatch at {mu}")
        res.check(grassmannian_dim(rs, mu) == rs.rho_pairing(mu), f"<rho, {mu}> mismatch")


def suite_thm3(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs, W = G.rs, G.W
    n_gamma = 0
    for x in G.enumerate_affine(bound):
        if not (G.is_shrunken(x) and G.eta(x).support == rs.S):
            continue
        c = thm3_3_construction(x)
        res.check(all(c.claims.values()), f"{x}: construction claims {c.claims}")
        res.check(c.witness.valid, f"{x}: construction step rejected")
        if c.v.is_identity():
            res.check(not c.J_prime and c.w_prime == c.w and c.z.is_identity() and c.y.is_identity()
                      and c.a == c.w, f"{x}: v = e special case")
            n_gamma += c.gamma != c.mu
    if n_gamma:
        res.notes.append(f"v = e: gamma differs from mu in {n_gamma} cases (gamma = mu - rho_J + w^-1 rho_J)")
    vr = very_regular_bound(rs)
    for mu in _dominant_box(rs, vr + 1):
        if min(mu) < vr:
            continue
        for v, w in itertools.product(W, W):
            x = G.canonical(v, mu, w)
            if G.eta(x).support != rs.S:
                continue
            c = thm3_3_construction(x)
            res.check(c.a == w * v == c.w_prime and not c.J_prime, f"{x}: very regular case, a = {c.a}")
    w0 = W.longest
    # every (v, w) pair per mu: keep the box small past rank 2
    for mu in _dominant_box(rs, 3 if rs.rank <= 2 else 2):
        for v, w in itertools.product(W, W):
            if not W.is_min_left(w, rs.wall_set(mu)):
                continue
            if v != w0 and not rs.is_regular(mu):
                continue
            wit = thm3_1_witness(G, mu, v, w)
            res.check(wit.valid and wit.target == G.canonical(v, mu, w), f"w0 t^{mu} => {G.canonical(v, mu, w)}")
    for a in W:
        if a.support != rs.S:
            continue
        for mu in _dominant_box(rs, 2, nonzero=True):
            r = thm3_2_search(G, a, mu)
            res.check(r.found and r.witness.valid, f"no chain {a} t^{mu} => t^{mu} c")
    for v, w in itertools.product(W, W):
        J = v.support
        if not _coxeter_in(w, rs.S - J):
            continue
        for mu in _dominant_box(rs, 2, nonzero=True):
            tw = G.t(mu) * G.from_finite(w)
            if not G.in_dominant_chamber(tw):
                continue
            r = coxeter_search(G.from_finite(v) * tw, mu)
            res.check(r.found and r.witness.valid, f"stronger form: {G.from_finite(v) * tw}")
    for x in G.enumerate_affine(bound):
        if W.is_coxeter(G.eta(x)):
            wit = thm3_4_witness(x)
            res.check(wit is not None and wit.valid, f"{x}: no lemma-checked chain to eta(x)")


def _coxeter_in(w, J) -> bool:
    return w.support == frozenset(J) and w.length == len(J)


def suite_p_alcove(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs, W = G.rs, G.W
    hits = 0
    for x, alpha, j, datum, ok in p_alcove_window(G, bound):
        hits += 1
        res.check(ok, f"{x}, alpha = {alpha}, j = {j}: hypotheses hold but not a P-alcove for {datum}")
    res.notes.append(f"{hits} (x, alpha, j) with all hypotheses satisfied")
    for x in G.enumerate(bound):
        if G.in_dominant_chamber(x):
            res.check(all(conjugate_contained(x, a) for a in rs.positive_roots),
                      f"{x}: dominant alcove but ^x I cap U not in I")
        res.check(is_p_alcove(x, W.identity, rs.S), f"{x}: J = S must always give a P-alcove")
    for mu in _dominant_box(rs, 2):
        for k in range(rs.rank + 1):
            for J in itertools.combinations(sorted(rs.S), k):
                res.check(is_p_alcove(G.t(mu), W.identity, J), f"t^{mu} with J = {J}")


def suite_non_equidim(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs = G.rs
    triples = find_non_equidim_triples(G, bound)
    res.notes.append(f"{len(triples)} witness triples with l(v) + l(w) <= {bound}")
    for v, w, s in triples[:12]:
        res.notes.append(f"v = {v}, w = {w}, s = s{s}")
    mu2 = (2,) * rs.rank
    for v, w, s in triples:
        rep = non_equidim_witness(G, v, w, s, mu2, tree=False)
        res.check(rep.ok, f"v = {v}, w = {w}, s = s{s}: {rep.failures}")


def suite_reachability(G: AffineWeylGroup, bound: int, seed: int, res: SuiteResult):
    rs, W = G.rs, G.W
    for x in G.enumerate_affine(bound):
        c = G.eta(x)
        if W.is_coxeter(c):
            res.check(tilde_path(x, G.from_finite(c)) is not None, f"{x} does not ~> eta(x) = {c}")
    if rs.type.family == "A":
        n = rs.rank + 1
        for r in range(1, n):
            m = math.gcd(n, r)
            b = BasicClassData.pgl(n, r)
            tgt = pgl_chain_target(n, r)
            base = lemma35_base_dim(tgt)
            res.check(base == m - 1, f"Lemma 3.5 base at {tgt}")
            for c in W.coxeter_elements():
                for lam in _dominant_box(rs, 2):
                    x = G.t(lam) * G.from_finite(c)
                    if G.kappa(x) != b.kappa:
                        continue
                    res.check(tilde_path(x, tgt) is not None, f"pgl {n},{r}: {x} does not ~> {tgt}")
                    res.check(G.virtual_dim(x, b) == Fraction(x.length + m - 1, 2), f"pgl {n},{r}: d({x})")
                    res.check(lower_bound_dim(x, {tgt: base}) == Fraction(x.length + m - 1, 2),
                              f"pgl {n},{r}: lower bound at {x}")
    rng = random.Random(seed)
    pool = G.enumerate(bound)
    for x in sorted(rng.sample(pool, min(25, len(pool))), key=lambda y: y.sort_key()):
        tree = build_reduction_tree(x)
        for node in tree.nodes.values():
            for m in node.edges:
                res.check(m.check() is None, f"tree of {x}: bad move {m.label} at {node.element}")
            if node.minimal:
                floor = tilde_reachable(node.element).minimal_length()
                res.check(floor == node.length, f"tree of {x}: leaf {node.element} is not minimal")
        for path in tree.paths():
            leaf = path[-1].target if path else x
            inc = sum(m.increment for m in path)
            drop = sum(2 if m.kind == "closed" else 1 if m.kind == "open" else 0 for m in path)
            res.check(x.length - leaf.length == drop and Fraction(drop, 2) <= inc,
                      f"tree of {x}: path bookkeeping to {leaf}")


SUITES = {
    "lengths": (suite_lengths, 8),
    "demazure": (suite_demazure, 4),
    "decomposition": (suite_decomposition, 8),
    "virtual-dim": (suite_virtual_dim, 10),
    "thm3": (suite_thm3, 12),
    "p-alcove": (suite_p_alcove, 8),
    "non-equidim": (suite_non_equidim, 8),
    "reachability": (suite_reachability, 10),
}


def run_suite(name: str, type_: str, bound: int | None = None, seed: int = DEFAULT_SEED) -> list[SuiteResult]:
    if name == "all":
        return [r for n in SUITES for r in run_suite(n, type_, bound, seed)]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    fn, default = SUITES[name]
    G = affine_group(type_)
    b = default if bound is None else bound
    res = SuiteResult(name, str(G.rs.type), b)
    t0 = time.perf_counter()
    try:
        fn(G, b, seed, res)
    except (HypothesisError, AssertionError) as e:
        res.fail(f"raised {type(e).__name__}: {e}")
    res.seconds = time.perf_counter() - t0
    return [res]
