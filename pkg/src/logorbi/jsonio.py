"""Serialization helpers: exact rationals travel as "p/q" strings.

Rationals are never serialized as floats; "p/q" is in lowest terms and the
"/q" part is dropped for integral values.  Floats (only the triangle
monodromy reports contain any) are left to the JSON encoder, which emits
the shortest round-tripping decimal form.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ValidationError


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, Fraction):
        return s
    if not isinstance(s, str):
        raise ValidationError(f"rational expected as 'p/q' string or integer, got {s!r}")
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse rational {s!r}: {exc}") from None


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, no stray whitespace differences."""
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def loads_document(text: str):
    """Parse JSON, turning decode errors into position-annotated messages."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
