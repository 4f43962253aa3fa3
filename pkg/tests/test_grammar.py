import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from regideal.grammar import ParseError, format_ideal, format_ring, parse_ideal, parse_ring

from conftest import ring

TERMS = ["F2", "F3", "F5", "Z4", "Z8", "Z9", "F2[x]/x^3", "F3[x]/x^2", "F2[x,y]/(x,y)^2"]


@pytest.mark.parametrize("text,canon", [
    ("F2xZ4xZ4", "F2 x Z4 x Z4"),
    ("  F2 ×  Z4*F3 ", "F2 x Z4 x F3"),
    ("F2[x]/(x)^3 x F5", "F2[x]/x^3 x F5"),
    ("F2[x,y]/(x,y)^2", "F2[x,y]/(x,y)^2"),
])
def test_ring_canonical_form(text, canon):
    assert format_ring(parse_ring(text)) == canon


@pytest.mark.parametrize("text,pos", [
    ("F2 x Z6", 5), ("F4", 0), ("F2 x", 4), ("F2 Z4", 3), ("Q", 0), ("F2[x,y]/(x,z)^2", 0),
])
def test_ring_parse_errors(text, pos):
    with pytest.raises(ParseError) as err:
        parse_ring(text)
    assert err.value.pos == pos


def test_ideal_examples():
    R = ring("F2 x Z4 x F3")
    assert parse_ideal(R, "0, (2), 1").parts == (0, 1, 1)
    assert parse_ideal(R, "1,(2,3),0") == parse_ideal(R, "1,1,0")
    assert parse_ideal(R, "0,2,0") == parse_ideal(R, "0,(2),0")
    S = ring("F2[x]/x^3 x F2[x,y]/(x,y)^2")
    assert format_ideal(S, parse_ideal(S, "(x^2),(x,y)")) == "(x^2),(x,y)"
    assert parse_ideal(S, "(1+x),0") == parse_ideal(S, "1,0")


@pytest.mark.parametrize("text", ["1,0", "1,(2),0,0", "1,(2,0", "1,(q),0"])
def test_ideal_errors(text):
    with pytest.raises(ParseError):
        parse_ideal(ring("F2 x Z4 x F3"), text)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(TERMS), min_size=1, max_size=3), st.data())
def test_round_trip(terms, data):
    text = " x ".join(terms)
    R = parse_ring(text)
    assert format_ring(R) == text
    assert format_ring(parse_ring(format_ring(R).replace(" ", ""))) == text
    I = data.draw(st.sampled_from(R.ideals))
    assert parse_ideal(R, format_ideal(R, I)) == I
