"""Exact rational parsing and formatting.

All analysis-side arithmetic in this package is done with
:class:`fractions.Fraction` (arbitrary-precision, always in lowest terms,
positive denominator). This module owns the text representation used by the
CLI and the chain-spec JSON format: ``"a/b"`` or ``"a"`` with integer parts
only. Floats are rejected everywhere an exact value is expected.
"""

from __future__ import annotations

import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a/b"`` or ``"a"`` into an exact Fraction.

    Raises ValueError for anything else, including decimal notation
    ("0.5"), scientific notation, and zero denominators.
    """
    match = _RATIONAL_RE.match(text.strip())
    if match is None:
        raise ValueError(
            f"not an exact rational: {text!r} (expected 'a/b' or 'a' with integer parts)"
        )
    numerator = int(match.group(1))
    if match.group(2) is None:
        return Fraction(numerator)
    denominator = int(match.group(2))
    if denominator == 0:
        raise ValueError(f"zero denominator in rational: {text!r}")
    return Fraction(numerator, denominator)


def format_rational(value: Fraction) -> str:
    """Render a Fraction as ``"a/b"`` in lowest terms, or ``"a"`` for integers."""
    return str(value)


def as_exact(value: Fraction | int | str) -> Fraction:
    """Coerce an exact input (Fraction, int, or rational string) to Fraction.

    Floats are refused: silently accepting them would smuggle binary rounding
    into identities that are checked by exact comparison.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(
        f"exact rational required, got {type(value).__name__}: {value!r}"
        " (floats are not accepted in exact-analysis inputs)"
    )
