"""Exact and floating-point scalar handling.

Distances are either exact (int / Fraction, compared with zero tolerance)
or floats (compared with a global absolute tolerance).  Mixing the two in
one matrix demotes the computation to float mode.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction, float]

#: absolute tolerance used by every comparison in float mode
DEFAULT_TOLERANCE = 1e-9


def is_exact(value: Scalar) -> bool:
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


def all_exact(values: Iterable[Scalar]) -> bool:
    return all(is_exact(v) for v in values)


def parse_scalar(value, exact: bool = True) -> Scalar:
    """Parse a scalar from JSON/CSV content.

    Strings may be "p/q" or decimal ("0.25", "1e-3"); both parse exactly.
    In exact mode floats are converted to their exact binary rational, so
    no information is lost either way.
    """
    if isinstance(value, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(value, (int, Fraction)):
        return Fraction(value) if exact else float(value)
    if isinstance(value, float):
        return Fraction(value) if exact else value
    if isinstance(value, str):
        try:
            parsed = Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse scalar {value!r}") from exc
        return parsed if exact else float(parsed)
    raise TypeError(f"cannot parse scalar of type {type(value).__name__}")


def format_scalar(value: Scalar):
    """Render for JSON: rationals as 'p/q' in lowest terms, floats as-is."""
    if isinstance(value, float):
        return value
    return str(Fraction(value))


def tolerance_for(values: Iterable[Scalar]) -> Scalar:
    return 0 if all_exact(values) else DEFAULT_TOLERANCE


def half(value: Scalar) -> Scalar:
    """Exact halving that keeps integers integral when possible."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(value, int):
        return value // 2 if value % 2 == 0 else Fraction(value, 2)
    if isinstance(value, Fraction):
        return value / 2
    return value / 2
