"""Canonical string form for exact rationals: "p/q" in lowest terms, q > 0.

Integers are rendered without the denominator ("3" rather than "3/1");
both forms parse. Floats are rejected everywhere: the whole package is
exact arithmetic.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(value) -> Fraction:
    """Parse "p/q", "p", or an int into a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError("floating point input is not accepted; use \"p/q\" strings")
    text = str(value).strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"not an exact rational: {value!r}")
    return Fraction(text)


def format_rational(value) -> str:
    x = Fraction(value)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
