"""Exact rational values and their canonical text form."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Integral

Rat = Fraction

_RAT_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or an integer into a Fraction.

    Floats are rejected: they are not exact.
    """
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, Fraction):
        return text
    if isinstance(text, Integral):
        return Fraction(int(text))
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RAT_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)) and not isinstance(value, bool):
        return parse_rat(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def format_rat(q: Fraction) -> str:
    return str(Fraction(q))


def parse_rat_list(text: str) -> list[Fraction]:
    """Comma separated rationals, e.g. ``"0,1/2,1"``."""
    parts = [p for p in text.split(",") if p.strip()]
    return [parse_rat(p) for p in parts]
