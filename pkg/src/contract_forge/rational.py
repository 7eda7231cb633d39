"""Exact rational helpers.

All solver paths use :class:`fractions.Fraction`. On the wire a rational is
either a JSON integer or a string ``"p"`` / ``"p/q"`` with ``q > 0``; floats
are rejected so nothing inexact ever enters a model.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import MalformedInput

Rational = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise MalformedInput(f"boolean is not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        m = _RAT_RE.match(value)
        if m is None:
            raise MalformedInput(f"not a rational: {value!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise MalformedInput(f"zero denominator: {value!r}")
        return Fraction(num, den)
    raise MalformedInput(f"not a rational (floats are not accepted): {value!r}")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def common_denominator(values: Iterable[Fraction]) -> int:
    """Least common multiple of the denominators (1 for an empty input)."""
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d
