from fractions import Fraction

import pytest

from adlv.roots import CartanType, NotDominantError, UnsupportedTypeError, build, cartan_matrix

# Bourbaki labelling: a[i][j] = <alpha_i^vee, alpha_j>
CARTAN = {
    "A2": ((2, -1), (-1, 2)),
    "B2": ((2, -1), (-2, 2)),
    "B3": ((2, -1, 0), (-1, 2, -1), (0, -2, 2)),
    "C3": ((2, -1, 0), (-1, 2, -2), (0, -1, 2)),
    "D4": ((2, -1, 0, 0), (-1, 2, -1, -1), (0, -1, 2, 0), (0, -1, 0, 2)),
    "G2": ((2, -3), (-1, 2)),
}

# (number of positive roots, highest root, |Y/X|)
SHAPE = {
    "A1": (1, (1,), 2),
    "A3": (6, (1, 1, 1), 4),
    "B2": (4, (1, 2), 2),
    "B3": (9, (1, 2, 2), 2),
    "C3": (9, (2, 2, 1), 2),
    "D4": (12, (1, 2, 1, 1), 4),
    "D5": (20, (1, 2, 2, 1, 1), 4),
    "G2": (6, (3, 2), 1),
}


@pytest.mark.parametrize("name", sorted(CARTAN))
def test_cartan_matrix(name):
    assert cartan_matrix(CartanType.parse(name)) == CARTAN[name]


@pytest.mark.parametrize("name", sorted(SHAPE))
def test_root_system_shape(name):
    rs = build(name)
    npos, theta, order = SHAPE[name]
    assert len(rs.positive_roots) == npos
    assert len(rs.roots) == 2 * npos
    assert rs.highest_root == theta
    assert rs.fundamental_group_order == order


@pytest.mark.parametrize("name", ["A0", "B1", "C1", "D2", "G3", "E6", "F4", "X2", "A"])
def test_unsupported_types(name):
    with pytest.raises((UnsupportedTypeError, ValueError)):
        build(name)


def test_parse_is_case_insensitive():
    assert build("a2") is build("A2")


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "D4", "G2"])
def test_coroots_pair_to_two(name):
    rs = build(name)
    for a in rs.roots:
        assert rs.pairing(rs.coroot(a), a) == 2


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "D4"])
def test_reflections_permute_roots(name):
    rs = build(name)
    for i in rs.S:
        image = {rs.reflect_root(i, b) for b in rs.roots}
        assert image == set(rs.roots)
        assert rs.reflect_root(i, rs.simple_root(i)) == tuple(-c for c in rs.simple_root(i))


def test_kappa_a2():
    rs = build("A2")
    assert rs.kappa((0, 0)) == (0, 0)
    assert rs.kappa((1, 1)) == (0, 0)  # theta^vee is a coroot
    assert rs.kappa((1, 0)) == (Fraction(2, 3), Fraction(1, 3))
    assert rs.in_coroot_lattice((2, -1))
    assert not rs.in_coroot_lattice((0, 1))


def test_rho_pairing_and_walls():
    rs = build("A2")
    assert rs.rho_pairing((1, 1)) == 2
    assert rs.rho_check() == (1, 1)
    assert rs.rho_check({2}) == (0, 1)
    assert rs.wall_set((2, 0)) == frozenset({2})
    assert rs.is_regular((1, 1)) and not rs.is_regular((1, 0))
    with pytest.raises(NotDominantError):
        rs.wall_set((1, -1))


def test_classical():
    assert build("C3").type.is_classical
    assert not build("G2").type.is_classical
