import itertools

from hypothesis import given, settings, strategies as st
import pytest

from adlv.affine import affine_group
from adlv.demazure import star, star_fold
from adlv.oracles import demazure_max
from adlv.weyl import weyl_group


def test_finite_examples():
    W = weyl_group("A2")
    s1, s2 = W.s(1), W.s(2)
    assert star(s1, s1) == s1
    assert star(s1 * s2, s2 * s1) == W.longest
    assert star(W.identity, s2) == s2


@pytest.mark.parametrize("name", ["A3", "B2", "G2"])
def test_finite_against_oracle(name):
    W = weyl_group(name)
    for x, y in itertools.product(W, W):
        assert star(x, y) == demazure_max(x, y)


def test_affine_examples():
    G = affine_group("A2")
    s0, s1 = G.s(0), G.s(1)
    assert star(s0, s0) == s0
    assert star(s0, s1) == s0 * s1
    pi = G.omega_elements()[1]
    # length-zero factors pass through
    assert star(pi, s1) == pi * s1
    assert star(s1 * pi, pi.inverse()) == s1
    x, y = G.from_word((0, 1)), G.from_word((1, 0))
    assert star(x, y) == G.from_word((0, 1, 0))


def test_mixed_arguments_rejected():
    G = affine_group("A2")
    with pytest.raises(TypeError):
        star(G.s(1), G.W.s(1))


def test_fold_over_nonreduced_word():
    W = weyl_group("A2")
    assert star_fold(W.identity, (1, 1, 2, 2, 1)) == W.longest


A2 = affine_group("A2")
POOL = A2.enumerate(5)
POOL_A = A2.enumerate_affine(5)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL), st.sampled_from(POOL), st.sampled_from(POOL))
def test_associative_and_monotone(x, y, z):
    assert star(star(x, y), z) == star(x, star(y, z))
    w = star(x, y)
    assert A2.bruhat_leq(x * A2.omega_for(y), w) or x.length == 0
    assert w.length >= max(x.length, y.length)
    assert w.length == x.length + (x.inverse() * w).length


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(POOL_A), st.sampled_from(POOL_A))
def test_support_union_in_affine_weyl(x, y):
    assert A2.support(star(x, y)) == A2.support(x) | A2.support(y)
