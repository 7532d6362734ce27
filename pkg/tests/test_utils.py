import logging
from fractions import Fraction

from hypothesis import given
import pytest

from ambientkit.utils import debug, format_rational, from_maybe, is_half_integer_multiple

from tests.helpers import rationals


@pytest.mark.parametrize('default,maybe,expected', [
    (0, None, 0),
    (0, 5, 5),
    ('WARNING', 'debug', 'debug'),
    (1, 0, 0),
])
def test_from_maybe(default, maybe, expected):
    assert from_maybe(default, maybe) == expected


@pytest.mark.parametrize('value,expected', [
    (Fraction(0), "0"),
    (Fraction(3), "3"),
    (Fraction(-4, 6), "-2/3"),
    (Fraction(1, 3), "1/3"),
    (7, "7"),
])
def test_format_rational(value, expected):
    assert format_rational(value) == expected


@given(rationals)
def test_format_rational_lowest_terms(value):
    text = format_rational(value)
    numerator, _, denominator = text.partition('/')
    assert Fraction(int(numerator), int(denominator or 1)) == value


@pytest.mark.parametrize('value,expected', [
    (Fraction(1, 2), True),
    (Fraction(-3, 2), True),
    (Fraction(2), True),
    (Fraction(1, 3), False),
    (Fraction(1, 4), False),
])
def test_is_half_integer_multiple(value, expected):
    assert is_half_integer_multiple(value) is expected


def test_debug_passes_through(caplog):
    @debug('double')
    def double(x):
        return 2 * x

    with caplog.at_level(logging.DEBUG, logger='ambientkit.utils'):
        assert double(4) == 8
    messages = [r.getMessage() for r in caplog.records]
    assert messages[0] == "double: start"
    assert messages[1].startswith("double: done in ")


def test_debug_silent_above_debug(caplog):
    @debug()
    def identity(x):
        return x

    with caplog.at_level(logging.INFO, logger='ambientkit.utils'):
        assert identity(1) == 1
    assert not caplog.records
