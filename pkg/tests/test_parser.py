from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from satlat.errors import (
    NonUnitDenominatorInGF,
    PolyParseError,
    UnknownVariable,
)
from satlat.fields import GF, QQ
from satlat.parser import parse_generators, parse_poly
from satlat.ring import QRing


def test_parse_cancellation(qplane2):
    assert parse_poly("y*x - 2*x*y", qplane2).is_zero()


def test_parse_unit(qplane2):
    assert parse_poly("1", qplane2) == qplane2.one


def test_parse_errors(qplane2):
    with pytest.raises(PolyParseError):
        parse_poly("x^", qplane2)
    with pytest.raises(PolyParseError):
        parse_poly("", qplane2)
    with pytest.raises(PolyParseError):
        parse_poly("x + ", qplane2)
    with pytest.raises(PolyParseError):
        parse_poly("x ? y", qplane2)
    with pytest.raises(PolyParseError):
        parse_poly("(x", qplane2)
    with pytest.raises(UnknownVariable):
        parse_poly("x*z", qplane2)
    with pytest.raises(PolyParseError):
        parse_poly("x^y", qplane2)


def test_parse_coefficients(qplane2):
    f = parse_poly("1/2*y^3", qplane2)
    assert f == Fraction(1, 2) * qplane2.var(1) ** 3
    assert parse_poly("3/6*x", qplane2) == Fraction(1, 2) * qplane2.var(0)
    assert parse_poly("2^3", qplane2) == qplane2.scalar(8)


def test_parse_gf_coefficients(qplane_gf5):
    f = parse_poly("7*x + 1/2*y", qplane_gf5)
    assert f.coeff((1, 0)) == 2
    assert f.coeff((0, 1)) == 3  # 1/2 = 3 mod 5
    with pytest.raises(NonUnitDenominatorInGF):
        parse_poly("1/5*x", qplane_gf5)


def test_parse_respects_noncommutativity(qplane2):
    x, y = qplane2.gens()
    assert parse_poly("y*x", qplane2) == 2 * (x * y)
    assert parse_poly("x*y", qplane2) == x * y


def test_parse_parentheses_and_signs(qplane2):
    x, y = qplane2.gens()
    assert parse_poly("(x+y)^2", qplane2) == (x + y) ** 2
    assert parse_poly("-x - 1", qplane2) == -x - 1
    assert parse_poly("+x", qplane2) == x
    assert parse_poly("2*(x - y)*x", qplane2) == 2 * ((x - y) * x)


def test_parse_generators_list(qplane2):
    x, y = qplane2.gens()
    gens = parse_generators("x, y-1", qplane2)
    assert gens == [x, y - 1]
    assert parse_generators("  ", qplane2) == []


@st.composite
def random_poly(draw, ring):
    terms = draw(
        st.lists(
            st.tuples(
                st.tuples(*[st.integers(0, 3) for _ in range(ring.n)]),
                st.fractions(
                    min_value=-4, max_value=4, max_denominator=6
                ),
            ),
            max_size=5,
        )
    )
    return ring.poly(terms)


@settings(max_examples=120, deadline=None)
@given(data=st.data())
def test_print_parse_roundtrip(data):
    ring = QRing(("x", "y", "z"), QQ, {(0, 1): Fraction(2), (1, 2): Fraction(-1)})
    f = data.draw(random_poly(ring))
    assert parse_poly(str(f), ring) == f


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_print_parse_roundtrip_gf(data):
    ring = QRing(("a", "b"), GF(7), {(0, 1): 3})
    terms = data.draw(
        st.lists(
            st.tuples(
                st.tuples(st.integers(0, 3), st.integers(0, 3)),
                st.integers(0, 6),
            ),
            max_size=4,
        )
    )
    f = ring.poly(terms)
    assert parse_poly(str(f), ring) == f
