import json
import re
from fractions import Fraction
from typing import Any

RATIONAL_LITERAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def format_rational(value: Fraction | int) -> str:
    """
    Canonical string form of a rational.

    Parameters:
        value (Fraction | int): The number to format.

    Returns:
        str: "a/b" in lowest terms, or "a" when the denominator is 1.
    """
    return str(Fraction(value))


def parse_rational(text: str) -> Fraction:
    """
    Parses "a/b" or "a" into a Fraction. Decimal and exponent notation are rejected.

    Raises:
        ValueError: If the text is not a rational literal or the denominator is zero.
    """
    literal = text.strip()
    if not RATIONAL_LITERAL.fullmatch(literal):
        raise ValueError(f"{text!r} is not a rational literal of the form a or a/b")

    try:
        return Fraction(literal)
    except ZeroDivisionError as error:
        raise ValueError(f"zero denominator in {text!r}") from error



def parse_rational_list(text: str) -> tuple[Fraction, ...]:
    """Parses a comma separated list such as "2,3/4,-5"."""
    return tuple(parse_rational(part) for part in text.split(",") if part.strip())


def jsonable(value: Any) -> Any:
    """
    Converts nested containers into JSON-ready data.

    Fractions become canonical strings, tuples and sets become lists (sets
    sorted), and objects with a `to_dict` method are asked for it.
    """
    if isinstance(value, bool) or value is None:
        return value

    if isinstance(value, Fraction):
        return format_rational(value)

    if isinstance(value, (int, str)):
        return value

    if hasattr(value, "to_dict"):
        return jsonable(value.to_dict())

    if isinstance(value, dict):
        return {str(key): jsonable(item) for key, item in value.items()}

    if isinstance(value, (set, frozenset)):
        return sorted(jsonable(item) for item in value)

    if isinstance(value, (list, tuple)):
        return [jsonable(item) for item in value]

    raise TypeError(f"cannot serialize {type(value).__name__}")


def dump_json(value: Any) -> str:
    return json.dumps(jsonable(value), indent=2, ensure_ascii=False)
