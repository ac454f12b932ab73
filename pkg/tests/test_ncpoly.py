from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from basistype.errors import ParseError
from basistype.ncpoly import Letter, NCPoly, format_poly, gen, involute, parse_poly


def test_involution_reverses_and_flips():
    assert involute(parse_poly("v1 v2")) == parse_poly("v2' v1'")
    assert involute(parse_poly("v1'")) == parse_poly("v1")
    assert involute(parse_poly("1/2 u1_2 v3' + 4")) == parse_poly("1/2 v3 u1_2' + 4")


@pytest.mark.parametrize(
    "text,expected",
    [
        ("v1 v2'", "v1 v2'"),
        ("1/2 v1 - 3 u1_2", "1/2 v1 - 3 u1_2"),
        ("1", "1"),
        ("0", "0"),
        ("-v1", "-v1"),
        ("2 v1 v1' + v2", "v2 + 2 v1 v1'"),
        ("v1 - v1", "0"),
        ("  v2   v1  ", "v2 v1"),
        ("2/4 v1", "1/2 v1"),
    ],
)
def test_parse_and_format(text, expected):
    assert format_poly(parse_poly(text)) == expected


@pytest.mark.parametrize(
    "text,offset",
    [("v1 +", 4), ("x", 0), ("v10", 0), ("1/0", 0), ("+ + v1", 2), ("", 0), ("v1 é", 3)],
)
def test_parse_errors_carry_byte_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse_poly(text)
    assert info.value.offset == offset


def test_arithmetic():
    v1, v2 = gen("v1"), gen("v2")
    assert (v1 + v2) * (v1 - v2) == v1 * v1 - v1 * v2 + v2 * v1 - v2 * v2
    assert 2 * v1 - v1 == v1
    assert (v1 * 0).is_zero()
    assert NCPoly.one() * v1 == v1
    assert (Fraction(1, 3) * v1).terms == (((Letter("v1"),), Fraction(1, 3)),)
    assert NCPoly({(): 0}).is_zero()


def test_equality_ignores_term_order():
    assert parse_poly("v1 + v2") == parse_poly("v2 + v1")
    assert hash(parse_poly("v1 + v2")) == hash(parse_poly("v2 + v1"))


letters = st.builds(Letter, st.sampled_from(["v1", "v2", "v3", "u1_2", "u2_1"]), st.booleans())
words = st.lists(letters, max_size=4).map(tuple)
polys = st.dictionaries(words, st.fractions(max_denominator=6).filter(bool), max_size=5).map(NCPoly)


@given(polys)
def test_involution_is_an_involution(p):
    assert involute(involute(p)) == p


@given(polys, polys)
def test_involution_is_antimultiplicative(p, q):
    assert involute(p * q) == involute(q) * involute(p)
    assert involute(p + q) == involute(p) + involute(q)


@given(polys)
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p)) == p
