import pytest
from hypothesis import given, settings, strategies as st

from adlv.affine import affine_group
from adlv.demazure import star
from adlv.parse import ParseError, format_element, parse_element

A2 = affine_group("A2")


@pytest.mark.parametrize("text,expected", [
    ("e", "e"),
    ("s0", "t[1,1] s1 s2 s1"),
    ("s1 s2", "s1 s2"),
    ("s1*s2", "s1 s2"),
    ("t[1,1]", "t[1,1]"),
    ("t[ 2 , -1 ] s1", "t[2,-1] s1"),
    ("pi", "t[1,0] s1 s2"),
    ("pi^2", "t[0,1] s2 s1"),
    ("pi^3", "e"),
    ("w0", "s1 s2 s1"),
    ("inv(s1 s2)", "s2 s1"),
    ("(s1 s2)(s2 s1)", "e"),
    ("star(s1 s2, s2 s1)", "s1 s2 s1"),
])
def test_examples(text, expected):
    assert str(parse_element(A2, text)) == expected


def test_matches_library_arithmetic():
    x = parse_element(A2, "t[2,1] s1 s0 pi")
    assert x == A2.t((2, 1)) * A2.s(1) * A2.s(0) * A2.omega_elements()[1]
    assert parse_element(A2, "star(s0, s1 s0)") == star(A2.s(0), A2.s(1) * A2.s(0))


@pytest.mark.parametrize("text,pos", [
    ("s3", 0),
    ("s1 + s2", 3),
    ("t[1]", 0),
    ("t[1,2", 5),
    ("star(s1)", 7),
    ("foo", 0),
    ("", 0),
    ("(s1", 3),
])
def test_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as e:
        parse_element(A2, text)
    assert e.value.pos == pos
    msg = str(e.value)
    assert f"position {pos}" in msg and msg.rstrip().endswith("^")


def test_format_styles():
    x = A2.s(0) * A2.omega_elements()[1]
    assert format_element(x) == str(x)
    assert format_element(A2.s(0), "word") == "s0"
    assert format_element(A2.s(0), "canonical") == "(e) t[1,1] (s1 s2 s1)"
    with pytest.raises(ValueError):
        format_element(x, "latex")


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(A2.enumerate(6)), st.sampled_from(["normal", "word"]))
def test_round_trip(x, style):
    assert parse_element(A2, format_element(x, style)) == x
