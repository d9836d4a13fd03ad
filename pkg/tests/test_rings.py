from fractions import Fraction

import pytest

from strop.errors import IntegerRingNotSupported, ParseError
from strop.rings import GF2, INTEGERS, RATIONALS, CoefficientRing


def test_from_name():
    assert CoefficientRing.from_name("q") == RATIONALS
    assert CoefficientRing.from_name("z") == INTEGERS
    assert CoefficientRing.from_name("f2") == GF2
    assert CoefficientRing.from_name("f7").p == 7
    with pytest.raises(ParseError):
        CoefficientRing.from_name("f6")
    with pytest.raises(ParseError):
        CoefficientRing.from_name("gf2")


def test_names():
    assert RATIONALS.name == "q"
    assert INTEGERS.name == "z"
    assert CoefficientRing.prime_field(5).name == "f5"


def test_fp_arithmetic():
    f7 = CoefficientRing.prime_field(7)
    for a in range(1, 7):
        assert f7.mul(a, f7.inv(a)) == 1
    assert f7.from_int(-3) == 4
    assert f7.sub(2, 5) == 4
    assert f7.is_zero(14)


def test_rational_exactness():
    q = RATIONALS
    assert q.add(Fraction(1, 3), Fraction(1, 6)) == Fraction(1, 2)
    assert q.div(q.one(), q.from_int(3)) == Fraction(1, 3)


def test_integers_not_a_field():
    with pytest.raises(IntegerRingNotSupported):
        INTEGERS.require_field("rank")
    with pytest.raises(IntegerRingNotSupported):
        INTEGERS.inv(2)
    RATIONALS.require_field("rank")


def test_scalar_round_trip():
    q = RATIONALS
    for s in ["0", "1", "-7/3", "22/7"]:
        assert q.scalar_to_str(q.scalar_from_str(s)) == s
    f5 = CoefficientRing.prime_field(5)
    assert f5.scalar_from_str("7") == 2
    # fraction literals resolve through the field inverse
    assert f5.scalar_from_str("1/2") == 3
    assert INTEGERS.scalar_from_str("-4") == -4


def test_scalar_parse_errors():
    with pytest.raises(ParseError):
        RATIONALS.scalar_from_str("x")
    with pytest.raises(ParseError):
        INTEGERS.scalar_from_str("1/2")
