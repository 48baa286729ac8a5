"""Emptiness and dimension predictions for basic b, plus the P-alcove and
non-equidimensionality checkers."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .affine import AffineWeylElt, AffineWeylGroup, affine_group
from .reduction import build_reduction_tree, classify_move, DROP2
from .roots import RootSystem, is_positive, neg
from .weyl import WeylElt

NONEMPTY, EMPTY, OUTSIDE = "Nonempty", "Empty", "OutsideTheoremScope"
UPPER, LOWER, EXACT = "upper-bound-proven", "lower-bound-proven", "exact"


class ComponentMismatch(ValueError):
    """x and b do not lie in the same connected component of the flag variety."""


@dataclass(frozen=True)
class BasicClassData:
    """Combinatorial data of a basic sigma-conjugacy class b."""

    kappa: tuple
    defect: int
    newton: tuple
    label: str = "1"

    @classmethod
    def trivial(cls, rs: RootSystem) -> "BasicClassData":
        return cls(rs.kappa(rs.zero()), 0, tuple(Fraction(0) for _ in range(rs.rank)), "1")

    @classmethod
    def pgl(cls, n: int, r: int) -> "BasicClassData":
        """The class of the length-zero element tau_r of PGL_n (type A_{n-1})."""
        if n < 2 or not 0 <= r < n:
            raise ValueError(f"need n >= 2 and 0 <= r < n, got n={n}, r={r}")
        from .roots import build
        rs = build(f"A{n - 1}")
        lam = rs.zero() if r == 0 else rs.fundamental_coweights[r - 1]
        return cls(rs.kappa(lam), defect_pgl(n, r), tuple(Fraction(0) for _ in range(n - 1)),
                   "1" if r == 0 else f"pgl:{n}:{r}")

    @property
    def is_trivial(self) -> bool:
        return self.defect == 0 and all(k == 0 for k in self.kappa)


def defect_pgl(n: int, r: int) -> int:
    if not 0 <= r < n:
        raise ValueError(f"need 0 <= r < n, got n={n}, r={r}")
    return n - math.gcd(n, r)


def parse_b(text: str, rs: RootSystem) -> BasicClassData:
    """"1" or "pgl:n:r"."""
    t = text.strip().lower()
    if t in ("1", "e", "trivial"):
        return BasicClassData.trivial(rs)
    parts = t.split(":")
    if len(parts) == 3 and parts[0] == "pgl":
        n, r = int(parts[1]), int(parts[2])
        if str(rs.type) != f"A{n - 1}":
            raise ValueError(f"b = pgl:{n}:{r} needs type A{n - 1}, not {rs.type}")
        return BasicClassData.pgl(n, r)
    raise ValueError(f"cannot parse b = {text!r}; use '1' or 'pgl:n:r'")


@dataclass(frozen=True)
class Prediction:
    status: str
    dim: Fraction | None = None
    flags: frozenset = frozenset()
    reason: str = ""


def _thm1_hypotheses(G: AffineWeylGroup, x) -> bool:
    d = G.canonical_decomposition(x)
    return d.v == G.W.longest or G.rs.is_regular(d.mu)


def _thm2_hypotheses(G: AffineWeylGroup, x, b: BasicClassData) -> bool:
    ct = G.rs.type
    if ct.family == "A":
        return True
    return ct.is_classical and b.is_trivial and G.in_affine_weyl(x)


def predict(x: AffineWeylElt, b: BasicClassData | None = None) -> Prediction:
    G = x.group
    rs = G.rs
    if b is None:
        b = BasicClassData.trivial(rs)
    if G.kappa(x) != b.kappa:
        return Prediction(EMPTY, reason="kappa(x) != kappa(b): b and x are not in the same connected component")
    eta = G.eta(x)
    full = eta.support == rs.S
    mu = G.canonical_decomposition(x).mu
    shrunken = G.is_shrunken(x)
    if not full and any(mu):
        return Prediction(EMPTY, reason="supp(eta(x)) != S with nontrivial translation part")
    if shrunken and full:
        flags = set()
        if _thm1_hypotheses(G, x):
            flags.add(UPPER)
        if _thm2_hypotheses(G, x, b):
            flags.add(LOWER)
        if flags == {UPPER, LOWER}:
            flags.add(EXACT)
        return Prediction(NONEMPTY, G.virtual_dim(x, b), frozenset(flags), "shrunken with supp(eta(x)) = S")
    if full and G.W.is_coxeter(eta) and _thm2_hypotheses(G, x, b):
        return Prediction(NONEMPTY, G.virtual_dim(x, b), frozenset({LOWER}),
                          "eta(x) is a Coxeter element; dim >= d(x)")
    return Prediction(OUTSIDE, reason="not in the shrunken chambers")


def prediction_record(x: AffineWeylElt, b: BasicClassData | None = None,
                      pred: Prediction | None = None) -> dict:
    """Flat record with the fixed column set used by JSON and TSV output."""
    G = x.group
    if b is None:
        b = BasicClassData.trivial(G.rs)
    if pred is None:
        pred = predict(x, b)
    eta = G.eta(x)
    return {
        "element": str(x),
        "type": str(G.rs.type),
        "kappa": ",".join(str(k) for k in G.kappa(x)),
        "shrunken": G.is_shrunken(x),
        "eta": str(eta),
        "eta_length": eta.length,
        "defect": b.defect,
        "status": pred.status,
        "dim_times_2": None if pred.dim is None else int(2 * pred.dim),
        "flags": sorted(pred.flags),
    }


RECORD_COLUMNS = ("element", "type", "kappa", "shrunken", "eta", "eta_length",
                  "defect", "status", "dim_times_2", "flags")


def grassmannian_dim(rs: RootSystem, mu, b: BasicClassData | None = None) -> Fraction:
    """<rho, mu - nu_b> - defect/2 for dominant mu; nu_b is central, so drops out."""
    if not rs.is_dominant(mu):
        raise ValueError(f"{mu} is not dominant")
    defect = 0 if b is None else b.defect
    return rs.rho_pairing(mu) - Fraction(defect, 2)


def cuspidal_base_case(G: AffineWeylGroup, mu, w: WeylElt, b: BasicClassData | None = None) -> bool | None:
    """True (nonempty) when w is cuspidal; None when inconclusive."""
    if b is None:
        b = BasicClassData.trivial(G.rs)
    x = G.t(mu) * G.from_finite(w)
    if G.kappa(x) != b.kappa:
        raise ComponentMismatch("b and x are not in the same connected component")
    return True if G.W.is_cuspidal(w) else None


def is_very_regular(rs: RootSystem, mu, threshold: int = 2) -> bool:
    return rs.is_dominant(mu) and all(c >= threshold for c in mu)


def very_regular_bound(rs: RootSystem) -> int:
    """Smallest threshold making mu - rho_J + u rho_J dominant and regular for all J, u."""
    return 1 + max(rs.pairing(rs.rho_check(), a) for a in rs.positive_roots)


# Iwahori containment via affine-root levels ------------------------------

def iwahori_level(alpha) -> int:
    """Least k with U_alpha(eps^k O) inside I (I the preimage of the opposite Borel)."""
    return 1 if is_positive(alpha) else 0


def conjugate_level(x: AffineWeylElt, alpha) -> int:
    """Least k with U_alpha(eps^k O) inside xIx^{-1}."""
    beta = x.finite.inverse().act(alpha)
    return iwahori_level(beta) + x.group.rs.pairing(x.transl, alpha)


def conjugate_contained(x: AffineWeylElt, alpha) -> bool:
    """{}^x I cap U_alpha is contained in I cap U_alpha."""
    return conjugate_level(x, alpha) >= iwahori_level(alpha)


def p_alcove_hypothesis_check(x: AffineWeylElt, alpha, j: int):
    """Check the three hypotheses; return (ok, (v', J)) with the P-alcove datum on success."""
    G = x.group
    rs, W = G.rs, G.W
    if j not in rs.S:
        raise ValueError(f"j = {j} is not in S")
    if alpha not in rs.index:
        raise ValueError(f"{alpha} is not a root")
    if not conjugate_contained(x, alpha):
        return False, None
    v = G.canonical_decomposition(x).v
    if neg(v.inverse().act(alpha)) not in rs.simple_roots:
        return False, None
    vp = W.reflection(alpha) * v
    J = rs.S - {j}
    if not (vp.inverse() * x.finite * vp).support <= J:
        return False, None
    return True, (vp, frozenset(J))


def is_p_alcove(x: AffineWeylElt, v: WeylElt, J) -> bool:
    """Direct check: x in W~_M and conjugation by x shrinks every N-root group."""
    G = x.group
    rs = G.rs
    J = frozenset(J)
    if not (v.inverse() * x.finite * v).support <= J:
        return False
    for g in rs.positive_roots:
        if _in_span(g, J):
            continue
        if not conjugate_contained(x, v.act(g)):
            return False
    return True


def _in_span(root, J) -> bool:
    return all(c == 0 for i, c in enumerate(root) if i + 1 not in J)


def p_alcove_window(G: AffineWeylGroup, max_length: int):
    """Yield (x, alpha, j, datum, oracle) wherever the hypotheses hold."""
    rs = G.rs
    for x in G.enumerate(max_length):
        for alpha in rs.roots:
            for j in sorted(rs.S):
                ok, datum = p_alcove_hypothesis_check(x, alpha, j)
                if ok:
                    yield x, alpha, j, datum, is_p_alcove(x, *datum)


# non-equidimensionality -------------------------------------------------

@dataclass
class NonEquidimReport:
    v: WeylElt
    w: WeylElt
    s: int
    mu: tuple
    conditions: dict
    x: AffineWeylElt | None = None
    wv: WeylElt | None = None
    wsv: WeylElt | None = None
    d_x: Fraction | None = None
    d_sx: Fraction | None = None
    split: tuple = ()
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def non_equidim_witness(G: AffineWeylGroup, v: WeylElt, w: WeylElt, s: int, mu,
                        threshold: int = 2, tree: bool = True) -> NonEquidimReport:
    rs, W = G.rs, G.W
    mu = tuple(mu)
    if not is_very_regular(rs, mu, threshold):
        raise ValueError(f"mu = {mu} is not dominant with all <mu, alpha_i> >= {threshold}")
    si = W.s(s)
    wv, wsv = w * v, w * si * v
    cond = {
        "1": (si * v).length < v.length and (w * si).length > w.length,
        "2": wsv.length < wv.length - 1,
        "3": wv.support == rs.S and wsv.support == rs.S,
    }
    rep = NonEquidimReport(v, w, s, mu, cond, wv=wv, wsv=wsv)
    rep.failures = [f"condition ({k}) fails" for k, ok in cond.items() if not ok]
    x = G.canonical(v, mu, w)
    rep.x = x
    sx = G.s(s) * x
    rep.d_x, rep.d_sx = G.virtual_dim(x), G.virtual_dim(sx)
    if not rep.d_sx + 1 < rep.d_x:
        rep.failures.append("d(sx) + 1 < d(x) fails")
    if classify_move(x, s) != DROP2:
        rep.failures.append("l(sxs) != l(x) - 2")
    if G.eta(x) != wv or G.eta(sx) != wsv:
        rep.failures.append("eta(x) != wv or eta(sx) != wsv")
    if tree:
        t = build_reduction_tree(x)
        rep.split = tuple(m.label for m in t.children(x))
    return rep


def find_non_equidim_triples(G: AffineWeylGroup, max_total_length: int, mu=None) -> list[tuple]:
    """All (v, w, s) with l(v) + l(w) <= bound satisfying conditions (1)-(3)."""
    rs, W = G.rs, G.W
    out = []
    for v, w in itertools.product(W, W):
        if v.length + w.length > max_total_length:
            continue
        for s in sorted(rs.S):
            si = W.s(s)
            if not ((si * v).length < v.length and (w * si).length > w.length):
                continue
            wv, wsv = w * v, w * si * v
            if wsv.length < wv.length - 1 and wv.support == rs.S and wsv.support == rs.S:
                out.append((v, w, s))
    out.sort(key=lambda t: (t[0].length + t[1].length, t[0].word, t[1].word, t[2]))
    return out


def pgl_chain_target(n: int, r: int) -> AffineWeylElt:
    """(1 2 ... m) tau_r with m = gcd(n, r): s1 s2 ... s_{m-1} times pi^r."""
    G = affine_group(f"A{n - 1}")
    m = math.gcd(n, r)
    return G.from_word(range(1, m), r)
