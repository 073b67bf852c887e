from fractions import Fraction

import pytest  # type: ignore

from cylab.utils import dump_json, format_rational, jsonable, parse_rational, parse_rational_list


@pytest.mark.parametrize(
    "value, text",
    [(Fraction(-5, 3), "-5/3"), (Fraction(10, 2), "5"), (0, "0"), (Fraction(1, -4), "-1/4")],
)
def test_format_rational(value, text):
    assert format_rational(value) == text
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "one", "1.5", "1e3", "2/-3", "1/2/3", "", "0x10"])
def test_parse_rational_errors(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_rational_list_rejects_decimals():
    with pytest.raises(ValueError):
        parse_rational_list("2,3.5")


def test_parse_rational_list():
    assert parse_rational_list("2, 3/4,-5") == (2, Fraction(3, 4), -5)
    assert parse_rational_list("") == ()


def test_jsonable():
    class Point:
        def to_dict(self):
            return {"x": Fraction(1, 2)}

    assert jsonable({"p": Point(), 1: (True, None), "s": frozenset({3, 1})}) == {
        "p": {"x": "1/2"},
        "1": [True, None],
        "s": [1, 3],
    }

    with pytest.raises(TypeError):
        jsonable(1.5)

    assert dump_json({"a": Fraction(1, 3)}) == '{\n  "a": "1/3"\n}'
