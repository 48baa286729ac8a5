"""Deligne-Lusztig reduction calculus on the extended affine Weyl group.

Three layers:

* single conjugation moves and their classification (raise / equal / drop2),
* ``~>`` reachability and reduction trees with per-edge dimension increments,
* lemma-checked chains for the relation x => y, together with the
  constructive procedures that produce them.
"""

from __future__ import annotations

import json
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .affine import AffineWeylElt, AffineWeylGroup
from .demazure import star
from .weyl import WeylElt

DEFAULT_BUDGET = 10**6

RAISE, EQUAL, DROP2 = "raise", "equal", "drop2"


class BudgetExceeded(RuntimeError):
    pass


class HypothesisError(ValueError):
    """Input violates the hypotheses of the requested construction."""


def classify_move(x: AffineWeylElt, i: int) -> str:
    G = x.group
    s = G.s(i)
    d = (s * x * s).length - x.length
    return {2: RAISE, 0: EQUAL, -2: DROP2}[d]


@dataclass(frozen=True)
class Move:
    """One reduction move.

    kind is "equal" (s_i x s_i, same length), "omega" (tau x tau^-1),
    "closed" (s_i x s_i after a drop by 2) or "open" (s_i x after a drop by 2).
    index is i in S~ for simple moves and the Omega index for "omega".
    """

    kind: str
    index: int
    source: AffineWeylElt
    target: AffineWeylElt

    @property
    def increment(self) -> int:
        return 1 if self.kind in ("closed", "open") else 0

    @property
    def label(self) -> str:
        if self.kind == "omega":
            return f"omega(pi^{self.index})"
        return f"{self.kind}(s{self.index})"

    def check(self) -> str | None:
        x, y = self.source, self.target
        G = x.group
        if self.kind == "omega":
            tau = G.omega_elements()[self.index]
            if y != tau * x * tau.inverse():
                return "target is not the Omega-conjugate"
            return None
        s = G.s(self.index)
        if self.kind == "equal":
            if y != s * x * s or y.length != x.length:
                return "not an equal-length simple conjugation"
        elif self.kind == "closed":
            if y != s * x * s or y.length != x.length - 2:
                return "closed branch must drop length by 2"
        elif self.kind == "open":
            if y != s * x or y.length != x.length - 1 or (s * x * s).length != x.length - 2:
                return "open branch must come from a drop by 2 and lose length 1"
        else:
            return f"unknown move kind {self.kind}"
        return None


def conjugation_moves(x: AffineWeylElt) -> Iterator[Move]:
    """Moves x -> x' generating ~>: simple conjugations not raising length, then Omega."""
    G = x.group
    for i in G.S_tilde:
        s = G.s(i)
        y = s * x * s
        if y.length == x.length:
            yield Move("equal", i, x, y)
        elif y.length < x.length:
            yield Move("closed", i, x, y)
    omega = G.omega_elements()
    for k in range(1, len(omega)):
        tau = omega[k]
        yield Move("omega", k, x, tau * x * tau.inverse())


@dataclass
class Reachable:
    root: AffineWeylElt
    parent: dict
    partial: bool

    @property
    def elements(self) -> list[AffineWeylElt]:
        return sorted(self.parent, key=lambda y: y.sort_key())

    def __contains__(self, y):
        return y in self.parent

    def path_to(self, y) -> list[Move] | None:
        if y not in self.parent:
            return None
        path = []
        while self.parent[y] is not None:
            m = self.parent[y]
            path.append(m)
            y = m.source
        return path[::-1]

    def minimal_length(self) -> int:
        return min(y.length for y in self.parent)


def tilde_reachable(x: AffineWeylElt, length_floor: int = 0, budget: int = DEFAULT_BUDGET,
                    stop_at=None) -> Reachable:
    """Breadth-first closure of x under ~> moves.

    Elements shorter than length_floor are recorded but not expanded.
    """
    parent = {x: None}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        if stop_at is not None and y == stop_at:
            break
        if y.length < length_floor:
            continue
        for m in conjugation_moves(y):
            if m.target not in parent:
                if len(parent) >= budget:
                    return Reachable(x, parent, True)
                parent[m.target] = m
                queue.append(m.target)
    return Reachable(x, parent, False)


def tilde_path(x: AffineWeylElt, y: AffineWeylElt, budget: int = DEFAULT_BUDGET) -> list[Move] | None:
    """A shortest ~> path from x to y, or None when y is not reachable."""
    if y.length > x.length:
        return None
    r = tilde_reachable(x, length_floor=y.length, budget=budget, stop_at=y)
    if y not in r and r.partial:
        raise BudgetExceeded(f"~> search from {x} exhausted {budget} nodes")
    return r.path_to(y)


# reduction trees --------------------------------------------------------

@dataclass
class TreeNode:
    element: AffineWeylElt
    length: int
    eta_length: int
    minimal: bool = False
    edges: list = field(default_factory=list)


@dataclass
class ReductionTree:
    root: AffineWeylElt
    nodes: dict
    partial: bool = False

    @property
    def leaves(self) -> list[AffineWeylElt]:
        return [e for e, n in self.nodes.items() if n.minimal]

    def children(self, x) -> list[Move]:
        return self.nodes[x].edges

    def paths(self) -> Iterator[list[Move]]:
        """Every root-to-leaf path (the DAG unrolled)."""
        def walk(x, acc):
            node = self.nodes[x]
            if not node.edges:
                yield list(acc)
                return
            for m in node.edges:
                acc.append(m)
                yield from walk(m.target, acc)
                acc.pop()
        yield from walk(self.root, [])

    def lower_bound(self, base_dims: dict) -> Fraction | float:
        """Best bound dim(root) >= base + sum of increments along a path to a known node."""
        best: dict = {}

        def go(x):
            if x in best:
                return best[x]
            vals = []
            if x in base_dims:
                vals.append(Fraction(base_dims[x]))
            for m in self.nodes[x].edges:
                sub = go(m.target)
                if sub != -math.inf:
                    vals.append(sub + m.increment)
            best[x] = max(vals) if vals else -math.inf
            return best[x]
        return go(self.root)

    def to_dict(self) -> dict:
        seen = set()

        def node(x, move=None):
            n = self.nodes[x]
            d = {
                "element": str(x),
                "length": n.length,
                "eta_length": n.eta_length,
                "move": move.label if move else None,
                "increment": move.increment if move else 0,
                "minimal": n.minimal,
                "children": [],
            }
            if x in seen:
                d["ref"] = True
                return d
            seen.add(x)
            d["children"] = [node(m.target, m) for m in n.edges]
            return d
        out = node(self.root)
        out["type"] = str(self.root.group.rs)
        out["partial"] = self.partial
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_dot(self) -> str:
        ids = {x: f"n{k}" for k, x in enumerate(self.nodes)}
        lines = ["digraph reduction {", "  node [shape=box];"]
        for x, n in self.nodes.items():
            style = ", style=bold" if n.minimal else ""
            lines.append(f'  {ids[x]} [label="{x}\\nl={n.length}"{style}];')
        for x, n in self.nodes.items():
            for m in n.edges:
                lines.append(f'  {ids[x]} -> {ids[m.target]} [label="{m.label} +{m.increment}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def tree_order(G: AffineWeylGroup) -> tuple[int, ...]:
    """Index order used by the tree builder: s1..sn, then s0."""
    return tuple(sorted(G.rs.S)) + (0,)


def tree_from_dict(G: AffineWeylGroup, data: dict) -> ReductionTree:
    """Rebuild a tree from its JSON form; moves are re-derived from labels."""
    from .parse import parse_element

    nodes: dict = {}

    def build(d):
        x = parse_element(G, d["element"])
        if d.get("ref"):
            return x
        node = nodes.setdefault(x, TreeNode(x, d["length"], d["eta_length"], d.get("minimal", False)))
        for c in d["children"]:
            y = build(c)
            kind, idx = re.fullmatch(r"(\w+)\((?:s|pi\^)(\d+)\)", c["move"]).groups()
            node.edges.append(Move(kind, int(idx), x, y))
        return x

    root = build(data)
    return ReductionTree(root, nodes, data.get("partial", False))


def tree_from_json(G: AffineWeylGroup, text: str) -> ReductionTree:
    return tree_from_dict(G, json.loads(text))


def _find_drop(x: AffineWeylElt) -> int | None:
    for i in tree_order(x.group):
        if classify_move(x, i) == DROP2:
            return i
    return None


def _equal_step(x: AffineWeylElt, budget: int) -> Move | None:
    """First move of a shortest equal-length path to an element admitting a drop."""
    parent = {x: None}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        if y != x and _find_drop(y) is not None:
            while parent[y].source != x:
                y = parent[y].source
            return parent[y]
        for m in conjugation_moves(y):
            if m.kind in ("equal", "omega") and m.target not in parent:
                if len(parent) >= budget:
                    raise BudgetExceeded("equal-length search exhausted its budget")
                parent[m.target] = m
                queue.append(m.target)
    return None


def build_reduction_tree(x: AffineWeylElt, budget: int = DEFAULT_BUDGET) -> ReductionTree:
    """Reduction DAG under a fixed policy.

    Drops before equal moves; indices tried as s1..sn then s0; equal moves
    follow a shortest path (breadth-first, visited set) to the nearest
    element admitting a drop.
    """
    G = x.group
    nodes: dict = {}
    todo = [x]
    partial = False
    while todo:
        y = todo.pop()
        if y in nodes:
            continue
        if len(nodes) >= budget:
            partial = True
            break
        node = TreeNode(y, y.length, G.eta(y).length)
        nodes[y] = node
        i = _find_drop(y)
        if i is not None:
            s = G.s(i)
            node.edges = [Move("closed", i, y, s * y * s), Move("open", i, y, s * y)]
        else:
            try:
                m = _equal_step(y, budget)
            except BudgetExceeded:
                partial = True
                m = None
            if m is None:
                node.minimal = True
            else:
                node.edges = [m]
        for m in reversed(node.edges):
            if m.target not in nodes:
                todo.append(m.target)
    if partial:
        for n in nodes.values():
            n.edges = [m for m in n.edges if m.target in nodes]
    return ReductionTree(x, nodes, partial)


def lower_bound_dim(x: AffineWeylElt, base_dims: dict, budget: int = DEFAULT_BUDGET):
    """max over known y with x ~> y of base_dims[y] + (l(x) - l(y)) / 2."""
    if not base_dims:
        return -math.inf
    r = tilde_reachable(x, budget=budget)
    vals = [Fraction(d) + Fraction(x.length - y.length, 2) for y, d in base_dims.items() if y in r]
    return max(vals) if vals else -math.inf


def lemma35_base_dim(x: AffineWeylElt) -> int | None:
    """dim X_{w tau}(tau) = l(w) for w in W_J, J a tau-stable subset of S.

    Returns None when x is not of that shape.
    """
    G = x.group
    w, tau = G.split_omega(x)
    perm = G.omega_permutation(tau)
    J = set(G.support(w))
    grow = True
    while grow:
        nxt = J | {perm[j] for j in J}
        grow = nxt != J
        J = nxt
    if 0 in J:
        return None
    return w.length


# the relation x => y ----------------------------------------------------

X3, X2_LEFT, X2_RIGHT, CONJ_EQUAL, CONSTRUCTION = "X3", "X2(1)", "X2(2)", "conj-equal", "construction"


@dataclass(frozen=True)
class Step:
    lemma: str
    source: AffineWeylElt
    target: AffineWeylElt
    detail: tuple = ()

    def check(self) -> str | None:
        """None when every side condition of the cited lemma holds, else the reason."""
        x, y = self.source, self.target
        G = x.group
        if G.kappa(x) != G.kappa(y):
            return "source and target in different W_a-cosets"
        eta = G.eta
        if self.lemma == X3:
            path = list(self.detail)
            cur = x
            for m in path:
                if m.source != cur:
                    return "broken ~> path"
                if m.kind == "open":
                    return "open branch is not a conjugation"
                bad = m.check()
                if bad:
                    return bad
                cur = m.target
            if cur != y:
                return "path does not end at target"
            if eta(x).length != eta(y).length:
                return "l(eta) differs"
            return None
        if self.lemma == CONJ_EQUAL:
            (m,) = self.detail
            if m.source != x or m.target != y or m.kind not in ("equal", "omega") or m.check():
                return "not an equal-length conjugation"
            if eta(x).length != eta(y).length:
                return "l(eta) differs"
            return None
        if self.lemma in (X2_LEFT, X2_RIGHT):
            (i,) = self.detail
            if i not in G.rs.S:
                return "X2 needs a finite simple reflection"
            s = G.s(i)
            if not (s * x * s).length < x.length:
                return "l(sxs) < l(x) fails"
            expect = s * x if self.lemma == X2_LEFT else x * s
            if y != expect:
                return "target is not sx / xs"
            if eta(y).length != eta(x).length - 1:
                return "l(eta) does not drop by one"
            return None
        if self.lemma == CONSTRUCTION:
            c = thm3_3_construction(x)
            if c.target != y:
                return "construction yields a different element"
            if not all(c.claims.values()):
                return f"construction claims fail: {c.claims}"
            return None
        return f"unknown lemma {self.lemma}"


@dataclass
class ImpliesWitness:
    source: AffineWeylElt
    target: AffineWeylElt
    steps: list

    def check(self) -> str | None:
        cur = self.source
        for k, st in enumerate(self.steps):
            if st.source != cur:
                return f"step {k} does not start where the previous ended"
            bad = st.check()
            if bad:
                return f"step {k} ({st.lemma}): {bad}"
            cur = st.target
        if cur != self.target:
            return "chain does not reach target"
        return None

    @property
    def valid(self) -> bool:
        return self.check() is None

    def then(self, other: "ImpliesWitness") -> "ImpliesWitness":
        if other.source != self.target:
            raise ValueError("chains do not compose")
        return ImpliesWitness(self.source, other.target, self.steps + other.steps)

    def __str__(self):
        if not self.steps:
            return f"{self.source} (trivial)"
        parts = [str(self.source)]
        for st in self.steps:
            parts.append(f"=[{st.lemma}]=> {st.target}")
        return " ".join(parts)


def trivial_witness(x) -> ImpliesWitness:
    return ImpliesWitness(x, x, [])


def implies_step_X3(x, y, budget: int = DEFAULT_BUDGET) -> ImpliesWitness | None:
    G = x.group
    if G.eta(x).length != G.eta(y).length:
        return None
    if x == y:
        return trivial_witness(x)
    path = tilde_path(x, y, budget)
    if path is None:
        return None
    w = ImpliesWitness(x, y, [Step(X3, x, y, tuple(path))])
    return w if w.valid else None


def implies_step_X2(x, i: int, side: str = "left") -> ImpliesWitness | None:
    G = x.group
    s = G.s(i)
    y = s * x if side == "left" else x * s
    st = Step(X2_LEFT if side == "left" else X2_RIGHT, x, y, (i,))
    if st.check() is not None:
        return None
    return ImpliesWitness(x, y, [st])


# the constructive proofs ---------------------------------------------------

def thm3_1_witness(G: AffineWeylGroup, mu, v: WeylElt, w: WeylElt,
                   budget: int = DEFAULT_BUDGET) -> ImpliesWitness:
    """Chain w0 t^mu => v t^mu w, for v = w0 or mu regular."""
    rs, W = G.rs, G.W
    if not rs.is_dominant(mu):
        raise HypothesisError("mu must be dominant")
    if not W.is_min_left(w, rs.wall_set(mu)):
        raise HypothesisError("w must lie in {}^{I(mu)}W")
    w0 = W.longest
    if v != w0 and not rs.is_regular(mu):
        raise HypothesisError("need v = w0 or mu regular")
    target = G.canonical(v, mu, w)
    if v == w0:
        return _right_chain(G, mu, w)
    first = _right_chain(G, mu, w * v * w0)
    path = tilde_path(first.target, target, budget)
    if path is None:
        raise AssertionError(f"no ~> path from {first.target} to {target}")
    last = ImpliesWitness(first.target, target, [Step(X3, first.target, target, tuple(path))])
    return first.then(last)


def _right_chain(G, mu, u: WeylElt) -> ImpliesWitness:
    w0 = G.W.longest
    x = G.canonical(w0, mu, G.W.identity)
    start, steps = x, []
    for i in u.word:
        y = x * G.s(i)
        steps.append(Step(X2_RIGHT, x, y, (i,)))
        x = y
    return ImpliesWitness(start, x, steps)


@dataclass
class SearchResult:
    witness: ImpliesWitness | None
    coxeters: list
    explored: int
    partial: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


def _lemma_moves(x) -> Iterator[Step]:
    """X2(1), X2(2) and single X3 conjugations by finite simple reflections."""
    G = x.group
    for i in sorted(G.rs.S):
        s = G.s(i)
        for st in (Step(X2_LEFT, x, s * x, (i,)), Step(X2_RIGHT, x, x * s, (i,))):
            if st.check() is None:
                yield st
        y = s * x * s
        if y.length <= x.length and y != x:
            kind = "equal" if y.length == x.length else "closed"
            st = Step(X3, x, y, (Move(kind, i, x, y),))
            if st.check() is None:
                yield st


def implies_search(x: AffineWeylElt, is_target, budget: int = DEFAULT_BUDGET,
                   exhaustive: bool = False) -> SearchResult:
    """Breadth-first search over lemma-checked => steps; first hit in BFS order wins.

    With exhaustive=True the whole reachable set is explored and every target
    found is listed in `coxeters`; otherwise the search stops at the first hit.
    """
    parent = {x: None}
    queue = deque([x])
    hits = []
    partial = False
    while queue:
        y = queue.popleft()
        if is_target(y):
            hits.append(y)
            if not exhaustive:
                break
        for st in _lemma_moves(y):
            if st.target not in parent:
                if len(parent) >= budget:
                    partial = True
                    queue.clear()
                    break
                parent[st.target] = st
                queue.append(st.target)
    if not hits:
        return SearchResult(None, [], len(parent), partial)
    end = hits[0]
    steps, y = [], end
    while parent[y] is not None:
        steps.append(parent[y])
        y = parent[y].source
    return SearchResult(ImpliesWitness(x, end, steps[::-1]), [h.finite for h in hits], len(parent), partial)


def thm3_2_search(G: AffineWeylGroup, a: WeylElt, mu, budget: int = DEFAULT_BUDGET,
                  exhaustive: bool = False) -> SearchResult:
    """Find a Coxeter c and a chain a t^mu => t^mu c."""
    rs, W = G.rs, G.W
    if a.support != rs.S:
        raise HypothesisError("supp(a) must be S")
    if not rs.is_dominant(mu) or not any(mu):
        raise HypothesisError("mu must be dominant and nonzero")
    x = G.from_finite(a) * G.t(mu)
    return coxeter_search(x, mu, budget, exhaustive)


def coxeter_search(x: AffineWeylElt, mu, budget: int = DEFAULT_BUDGET, exhaustive: bool = False) -> SearchResult:
    W = x.group.W
    mu = tuple(mu)
    return implies_search(x, lambda y: y.transl == mu and W.is_coxeter(y.finite), budget, exhaustive)


def thm3_4_witness(x: AffineWeylElt, budget: int = DEFAULT_BUDGET) -> ImpliesWitness | None:
    """x => eta(x) through a single ~> path, when eta(x) is a Coxeter element."""
    G = x.group
    c = G.eta(x)
    if not G.W.is_coxeter(c):
        raise HypothesisError("eta(x) must be a Coxeter element")
    target = G.from_finite(c)
    if x == target:
        return trivial_witness(x)
    path = tilde_path(x, target, budget)
    if path is None:
        return None
    return ImpliesWitness(x, target, [Step(X3, x, target, tuple(path))])


@dataclass
class Construction:
    """Intermediate data of the shrunken-to-a t^gamma construction."""

    x: AffineWeylElt
    v: WeylElt
    mu: tuple
    w: WeylElt
    J: frozenset
    J_prime: frozenset
    v_prime: WeylElt
    w_prime: WeylElt
    z: WeylElt
    y: WeylElt
    gamma: tuple
    a: WeylElt
    x1: AffineWeylElt
    x2: AffineWeylElt
    claims: dict

    @property
    def target(self) -> AffineWeylElt:
        G = self.x.group
        return G.from_finite(self.a) * G.t(self.gamma)

    @property
    def witness(self) -> ImpliesWitness:
        return ImpliesWitness(self.x, self.target, [Step(CONSTRUCTION, self.x, self.target)])


def thm3_3_construction(x: AffineWeylElt) -> Construction:
    G = x.group
    rs, W = G.rs, G.W
    if not G.is_shrunken(x):
        raise HypothesisError(f"{x} is not in the lowest two-sided cell")
    if G.eta(x).support != rs.S:
        raise HypothesisError(f"supp(eta({x})) != S")
    d = G.canonical_decomposition(x)
    v, mu, w = d.v, d.mu, d.w
    J = W.left_descents(w)
    rho_J = rs.rho_check(J)
    nu = tuple(a - b for a, b in zip(mu, rho_J))
    if not rs.is_dominant(nu):
        raise AssertionError("mu - rho_J is not dominant")
    Jp = rs.wall_set(nu)
    v_prime, v_part = W.coset_decompose(v, Jp, "right")
    if v_part != W.longest_element(Jp):
        raise AssertionError("v is not of the form v' w0_{J'}")
    w_prime, z = W.coset_decompose(w * v, Jp, "right")
    lam = tuple(a + b for a, b in zip(nu, w_prime.inverse().act_cw(rho_J)))
    g = G.canonical_decomposition(G.t(lam))
    # t^lam = g.v t^gamma g.w with g.w = e; make y minimal in y W_{I(gamma)}
    gamma = g.mu
    y, _ = W.coset_decompose(g.v, rs.wall_set(gamma), "right")
    a = star(y.inverse() * z, w_prime * y)
    x1 = G.from_finite(v * z.inverse()) * G.t(nu) * G.from_finite(y)
    x2 = G.from_finite(y.inverse() * z) * G.t(rho_J) * G.from_finite(w)
    wpy = w_prime * y
    t_gamma = G.t(gamma)
    wpyt = G.from_finite(wpy) * t_gamma
    yz = y.inverse() * z
    trw = G.t(rho_J) * G.from_finite(w)
    lt = t_gamma.length
    claims = {
        "a": wpy.length == w_prime.length - y.length,
        "b": x1 * x2 == x and x.length == x1.length + x2.length,
        # fibre dimension in (c): l(t^rhoJ w) + l(x1) - l(w'y t^gamma) computed two ways
        "c": (wpyt == trw * x1 and wpyt.length == wpy.length + lt
              and trw.length + x1.length - wpyt.length == x.length - yz.length - wpy.length - lt),
        # (d): l(y^-1 z) + l(w'y) = l(wv), and the offset equals d(x) - d(a t^gamma)
        "d": (yz.length + wpy.length == (w * v).length
              and Fraction(x.length + (w * v).length - lt, 2) - a.length
              == G.virtual_dim(x) - G.virtual_dim(G.from_finite(a) * t_gamma)),
        "supp": a.support == rs.S,
        "length_additive": (G.from_finite(a) * t_gamma).length == a.length + lt,
    }
    return Construction(x, v, mu, w, J, Jp, v_prime, w_prime, z, y, gamma, a, x1, x2, claims)
