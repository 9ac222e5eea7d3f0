# utils/numeric.py
# Decimal rendering of extended-precision rates: lower bounds are truncated,
# upper bounds are rounded up, sizes are printed in full

from fractions import Fraction
from typing import Union

import mpmath

Number = Union[int, float, Fraction, mpmath.mpf]

_DPS = 60

def _to_mpf(value: Number) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)

def _render(scaled: int, places: int) -> str:
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"

def truncate(value: Number, places: int) -> str:
    """value rounded toward minus infinity at the given number of decimals."""
    with mpmath.workdps(_DPS):
        scaled = int(mpmath.floor(_to_mpf(value) * 10 ** places))
    return _render(scaled, places)

def round_up(value: Number, places: int) -> str:
    """value rounded toward plus infinity at the given number of decimals."""
    with mpmath.workdps(_DPS):
        scaled = int(mpmath.ceil(_to_mpf(value) * 10 ** places))
    return _render(scaled, places)

def format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
