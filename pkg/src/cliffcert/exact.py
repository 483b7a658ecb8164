"""Exact rational helpers and their JSON encoding."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Union

Rational = Union[int, Fraction]


def frac_to_json(x: Rational) -> dict[str, int]:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator}


def frac_from_json(obj: Any) -> Fraction:
    if isinstance(obj, dict):
        return Fraction(int(obj["num"]), int(obj["den"]))
    if isinstance(obj, int) and not isinstance(obj, bool):
        return Fraction(obj)
    raise ValueError(f"not an exact rational: {obj!r}")


def frac_str(x: Rational) -> str:
    """Render ``25`` or ``57/2``; never a decimal."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator
