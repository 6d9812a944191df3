from fractions import Fraction

import pytest

from logorbi.errors import ValidationError
from logorbi.jsonio import dumps, format_fraction, loads_document, parse_fraction


def test_fraction_round_trip():
    for x in [Fraction(1, 42), Fraction(-6, 7), Fraction(0), Fraction(5), Fraction(-3)]:
        assert parse_fraction(format_fraction(x)) == x


def test_format_lowest_terms():
    assert format_fraction(Fraction(2, 4)) == "1/2"
    assert format_fraction(Fraction(4, 2)) == "2"
    assert format_fraction(Fraction(-1, 42)) == "-1/42"


def test_parse_accepts_ints_and_whitespace():
    assert parse_fraction(7) == 7
    assert parse_fraction(" 3/9 ") == Fraction(1, 3)
    with pytest.raises(ValidationError):
        parse_fraction("1/0")
    with pytest.raises(ValidationError):
        parse_fraction("x/y")
    with pytest.raises(ValidationError):
        parse_fraction(0.5)


def test_dumps_deterministic():
    obj = {"b": [1, 2], "a": {"z": "1/2", "y": 3}}
    assert dumps(obj) == dumps({"a": {"y": 3, "z": "1/2"}, "b": [1, 2]})


def test_loads_document_position():
    with pytest.raises(ValidationError) as err:
        loads_document('{"a": 1,\n "b": }')
    assert "line 2" in str(err.value)
