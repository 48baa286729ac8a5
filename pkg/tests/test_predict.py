import itertools

import pytest

from adlv.affine import affine_group
from adlv.oracles import decompositions_bruteforce
from adlv.predict import (EMPTY, EXACT, LOWER, NONEMPTY, OUTSIDE, UPPER, BasicClassData, ComponentMismatch,
                          cuspidal_base_case, defect_pgl, find_non_equidim_triples, grassmannian_dim,
                          is_p_alcove, is_very_regular, non_equidim_witness, p_alcove_hypothesis_check,
                          p_alcove_window, parse_b, predict, prediction_record, RECORD_COLUMNS,
                          very_regular_bound)


@pytest.fixture(scope="module")
def A2():
    return affine_group("A2")


@pytest.fixture(scope="module")
def A3():
    return affine_group("A3")


def test_predict_examples(A2, A3):
    assert predict(A2.t((1, 1))).status == EMPTY
    assert predict(A2.t((2, 0))).status == EMPTY
    p = predict(A2.identity)
    assert p.status == OUTSIDE and p.dim is None and not p.flags
    W = A3.W
    x = A3.canonical(W.parse("s1 s2"), (2, 2, 2), W.parse("s1 s2 s3 s2"))
    p = predict(x)
    assert p.status == NONEMPTY and p.dim == 12
    assert p.flags == {UPPER, LOWER, EXACT}


def test_kappa_mismatch_is_empty(A2):
    pi = A2.omega_elements()[1]
    p = predict(pi)
    assert p.status == EMPTY and "component" in p.reason
    # X_tau(tau) is a point: eta = s1 s2 is Coxeter and d = (0 + 2 - 2) / 2
    p = predict(pi, BasicClassData.pgl(3, 1))
    assert p.status == NONEMPTY and p.dim == 0 and p.flags == {LOWER}


def test_dim_only_when_nonempty(A2):
    for x in A2.enumerate(8):
        p = predict(x)
        assert (p.dim is not None) == (p.status == NONEMPTY)
        assert not p.flags or p.status == NONEMPTY
        assert (EXACT in p.flags) == ({UPPER, LOWER} <= p.flags)


def test_shrunken_branch_against_bruteforce_eta(A2):
    W = A2.W
    for x in A2.enumerate_affine(9):
        if not A2.is_shrunken(x):
            continue
        [(v, mu, w)] = decompositions_bruteforce(x)
        full = (w * v).support == A2.rs.S
        assert (predict(x).status == NONEMPTY) == full


@pytest.mark.parametrize("name,top", [("A2", 9), ("B2", 8), ("A3", 6)])
def test_omega_invariance(name, top):
    # conclusive verdicts never disagree; off the shrunken chambers eta is not
    # Omega-compatible, so one side may legitimately be OutsideTheoremScope
    G = affine_group(name)
    for x in G.enumerate(top):
        p = predict(x).status
        for tau in G.omega_elements():
            y = tau * x * tau.inverse()
            q = predict(y).status
            if OUTSIDE not in (p, q):
                assert p == q, (str(x), str(y))
            if G.is_shrunken(x) and G.is_shrunken(y):
                assert p == q


def test_defect_pgl():
    for n in range(2, 7):
        assert defect_pgl(n, 0) == 0
    assert defect_pgl(3, 1) == 2
    assert defect_pgl(4, 2) == 2
    assert defect_pgl(6, 4) == 4
    with pytest.raises(ValueError):
        defect_pgl(3, 3)


def test_basic_class_data(A2):
    b = BasicClassData.trivial(A2.rs)
    assert b.is_trivial and b.defect == 0 and all(c == 0 for c in b.newton)
    b = BasicClassData.pgl(3, 1)
    assert b.kappa == A2.kappa(A2.omega_elements()[1]) and b.defect == 2
    assert parse_b("1", A2.rs).is_trivial
    assert parse_b("pgl:3:2", A2.rs).defect == 2
    for bad in ["pgl:4:1", "b", "pgl:3"]:
        with pytest.raises(ValueError):
            parse_b(bad, A2.rs)


def test_grassmannian_dim(A2):
    rs = A2.rs
    assert grassmannian_dim(rs, (0, 0)) == 0
    assert grassmannian_dim(rs, (1, 1)) == 2
    assert grassmannian_dim(rs, (1, 0), BasicClassData.pgl(3, 1)) == 0
    with pytest.raises(ValueError):
        grassmannian_dim(rs, (1, -1))
    # 2 d(w0 t^mu) = l(w0 t^mu) + l(w0), and the cap equals <rho, mu> + l(w0)
    w0 = A2.from_finite(A2.W.longest)
    for mu in itertools.product(range(4), repeat=2):
        x = w0 * A2.t(mu)
        assert 2 * A2.virtual_dim(x) == x.length + A2.W.longest.length
        assert A2.virtual_dim(x) == grassmannian_dim(rs, mu) + A2.W.longest.length


def test_cuspidal_base_case(A2):
    W = A2.W
    assert cuspidal_base_case(A2, (1, 1), W.parse("s1 s2")) is True
    assert cuspidal_base_case(A2, (1, 1), W.identity) is None
    assert cuspidal_base_case(A2, (1, 1), W.s(1)) is None
    with pytest.raises(ComponentMismatch):
        cuspidal_base_case(A2, (1, 0), W.identity)


def test_very_regular(A2, A3):
    assert is_very_regular(A2.rs, (2, 2)) and not is_very_regular(A2.rs, (2, 1))
    assert is_very_regular(A2.rs, (2, 1), threshold=1)
    assert very_regular_bound(A2.rs) == 3
    assert very_regular_bound(A3.rs) == 4
    assert very_regular_bound(affine_group("B2").rs) == 4


def test_p_alcove_examples(A2, A3):
    W = A2.W
    with pytest.raises(ValueError):
        p_alcove_hypothesis_check(A2.identity, (1, 0), 3)
    with pytest.raises(ValueError):
        p_alcove_hypothesis_check(A2.identity, (2, 0), 1)
    # v = e, so -v^{-1} alpha simple forces alpha negative simple
    assert p_alcove_hypothesis_check(A2.t((1, 1)), (1, 0), 1) == (False, None)
    for x in A2.enumerate(4):
        assert is_p_alcove(x, W.identity, A2.rs.S)
    for mu in itertools.product(range(3), repeat=3):
        for J in [(), (1,), (2, 3), (1, 3)]:
            assert is_p_alcove(A3.t(mu), A3.W.identity, J)
    assert not is_p_alcove(A2.s(1), W.identity, {2})


@pytest.mark.parametrize("name,top", [("A2", 8), ("B2", 7)])
def test_p_alcove_proposition(name, top):
    G = affine_group(name)
    hits = 0
    for x, alpha, j, datum, oracle in p_alcove_window(G, top):
        assert oracle, (str(x), alpha, j)
        hits += 1
    assert hits > 0


def test_non_equidim_paper_triple(A3):
    W = A3.W
    rep = non_equidim_witness(A3, W.parse("s1 s2"), W.parse("s1 s2 s3 s2"), 1, (2, 2, 2))
    assert rep.ok, rep.failures
    assert all(rep.conditions.values())
    assert rep.wv == W.parse("s1 s2 s3 s2 s1 s2")
    assert rep.wsv == W.parse("s1 s2 s3")
    assert (rep.d_x, rep.d_sx) == (12, 10)
    assert rep.split == ("closed(s1)", "open(s1)")
    for mu in [(3, 2, 2), (2, 4, 3)]:
        assert non_equidim_witness(A3, W.parse("s1 s2"), W.parse("s1 s2 s3 s2"), 1, mu, tree=False).ok
    with pytest.raises(ValueError):
        non_equidim_witness(A3, W.identity, W.identity, 1, (1, 1, 1))


def test_non_equidim_condition_two(A3):
    W = A3.W
    for v, w in itertools.product(W, W):
        for s in (1, 2, 3):
            if (w * W.s(s) * v).length == (w * v).length - 1:
                rep = non_equidim_witness(A3, v, w, s, (2, 2, 2), tree=False)
                assert not rep.conditions["2"]
                assert "condition (2) fails" in rep.failures


def test_non_equidim_search(A3):
    W = A3.W
    triples = find_non_equidim_triples(A3, 8)
    assert len(triples) == 12
    assert triples[0] == (W.parse("s1 s2"), W.parse("s1 s2 s3 s2"), 1)
    for v, w, s in triples:
        assert non_equidim_witness(A3, v, w, s, (2, 2, 2), tree=False).ok
    assert find_non_equidim_triples(affine_group("A2"), 6) == []


def test_prediction_record(A2):
    rec = prediction_record(A2.t((1, 1)) * A2.from_finite(A2.W.parse("s1 s2")))
    assert tuple(rec) == RECORD_COLUMNS
    assert rec["status"] == NONEMPTY and rec["dim_times_2"] == 2 * A2.virtual_dim(
        A2.t((1, 1)) * A2.from_finite(A2.W.parse("s1 s2")))
