import pytest

from apfree_py.exceptions import InvalidDigitSetError
from apfree_py.misc.helpers import format_digits, format_spec, parse_digit_spec
from apfree_py.models.digits import DigitSet


def test_parse_ranges_and_singles():
    assert parse_digit_spec("0:5,8") == [0, 1, 2, 3, 4, 5, 8]
    assert parse_digit_spec(" 3 , 1 ") == [3, 1]


@pytest.mark.parametrize("text", ["", "3:1", "a", "1,,x", "0:15,25:17"])
def test_parse_rejects_malformed(text):
    with pytest.raises(InvalidDigitSetError):
        parse_digit_spec(text)


@pytest.mark.parametrize(
    ("digits", "expected"),
    [
        ([0, 1, 2, 3, 4, 5, 6, 8], "[0,6] ∪ {8}"),
        ([0, 1], "{0,1}"),
        ([*range(10), 11, 12, 13], "[0,9] ∪ [11,13]"),
        ([*range(13), 14, 25, 27, 28], "[0,12] ∪ {14,25,27,28}"),
        ([*range(20), 22, 24, 25, 28, 29, 30], "[0,19] ∪ {22,24,25} ∪ [28,30]"),
    ],
)
def test_interval_notation(digits, expected):
    assert format_digits(digits) == expected


def test_spec_notation_parses_back():
    digits = [*range(18), 19, 20, 26, 29]
    assert format_spec(digits) == "0:17,19:20,26,29"
    assert parse_digit_spec(format_spec(digits)) == digits


def test_digit_set_parse_and_key():
    digit_set = DigitSet.parse(13, "0:6,8")
    assert digit_set.digits == (0, 1, 2, 3, 4, 5, 6, 8)
    assert digit_set.key() == "13:0,1,2,3,4,5,6,8"
    assert str(digit_set) == "[0,6] ∪ {8} mod 13"


def test_digit_set_validation():
    with pytest.raises(InvalidDigitSetError):
        DigitSet.of(5, [])
    with pytest.raises(InvalidDigitSetError):
        DigitSet.of(5, [0, 5])
    with pytest.raises(InvalidDigitSetError):
        DigitSet(m=5, digits=(2, 1))
    with pytest.raises(InvalidDigitSetError):
        DigitSet.of(1, [0])
