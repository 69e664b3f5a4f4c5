"""Exact rational arithmetic backend.

Every quantity in this package (link capacities, rates, LP tableaus,
inequality coefficients) is an exact rational; floats never appear.
gmpy2's mpq is used when available because tableau pivots dominate the
runtime; set DIXC_RATIONAL=fraction to force the pure-Python
fractions.Fraction backend instead.
"""

from __future__ import annotations

import os
from fractions import Fraction

_choice = os.environ.get("DIXC_RATIONAL", "auto").lower()
if _choice not in ("auto", "gmpy2", "fraction"):
    raise RuntimeError(f"DIXC_RATIONAL must be auto, gmpy2 or fraction, got {_choice!r}")

if _choice == "fraction":
    BACKEND = "fraction"
    _mk = Fraction
else:
    try:
        from gmpy2 import mpq as _mk  # type: ignore[import-untyped]

        BACKEND = "gmpy2"
    except ImportError:
        if _choice == "gmpy2":
            raise
        BACKEND = "fraction"
        _mk = Fraction


def rat(value, den=None):
    """Build an exact rational from an int, a rational, or a 'p/q' string."""
    if den is not None:
        return _mk(value, den)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, _, d = text.partition("/")
                return _mk(int(num.strip()), int(d.strip()))
            if "." in text or "e" in text or "E" in text:
                return _mk(Fraction(text))
            return _mk(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string or rational")
    return _mk(value)


ZERO = rat(0)
ONE = rat(1)


def rat_str(q) -> str:
    """Exact 'p' or 'p/q' rendering (used in all JSON output)."""
    return str(q)


def rat_decimal(q) -> str:
    """Terminating decimal if one exists ('15/2' -> '7.5'), else 'p/q'.

    Only used by the human-readable table renderers.
    """
    num, den = q.numerator, q.denominator
    if den == 1:
        return str(num)
    d = den
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d != 1:
        return str(q)
    # scale denominator to a power of ten
    k2 = k5 = 0
    d = den
    while d % 2 == 0:
        d //= 2
        k2 += 1
    while d % 5 == 0:
        d //= 5
        k5 += 1
    digits = max(k2, k5)
    scaled = num * 10**digits // den
    sign = "-" if scaled < 0 else ""
    scaled = abs(scaled)
    whole, frac = divmod(scaled, 10**digits)
    return f"{sign}{whole}.{str(frac).zfill(digits)}"
