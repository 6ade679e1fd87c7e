"""Non-negative extended-real scalars.

Values are plain numbers (float, int or Fraction) with ``math.inf`` as the
distinguished infinity.  The helpers below provide the checked arithmetic:
everything is total except inf - inf, which raises.
"""
from __future__ import annotations

import math
from fractions import Fraction

INF = math.inf

Number = float  # or int / Fraction; annotations stay loose on purpose


def is_inf(x) -> bool:
    return x == INF


def check_nonneg(x, name: str = "value"):
    if x != x:  # NaN
        raise ValueError(f"{name} is NaN")
    if x < 0:
        raise ValueError(f"{name} must be non-negative, got {x}")
    return x


def ext_add(a, b):
    """a + b with inf absorbing."""
    if is_inf(a) or is_inf(b):
        return INF
    return a + b


def ext_sub(a, b):
    """a - b; raises on inf - inf, returns -inf when only b is infinite."""
    from .errors import InfMinusInfError

    if is_inf(a) and is_inf(b):
        raise InfMinusInfError("inf - inf is undefined")
    if is_inf(a):
        return INF
    if is_inf(b):
        return -INF
    return a - b


def ext_mul_scalar(a, c):
    """a * c for a finite positive scalar c."""
    if not (0 < c < INF):
        raise ValueError(f"scalar must be positive finite, got {c}")
    if is_inf(a):
        return INF
    return a * c


def ext_max(a, b):
    return a if a >= b else b


def as_float(x) -> float:
    """Lossy conversion for report boundaries; Fractions become floats."""
    if isinstance(x, Fraction):
        return float(x)
    return float(x)


def number_to_json(x) -> str:
    """Serialize a breakpoint or parameter exactly.

    Integers and dyadics print as decimal strings; other rationals as 'p/q';
    floats via repr (round-trip exact); inf as 'inf'.
    """
    if is_inf(x):
        return "inf"
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, int):
        return str(x)
    f = float(x)
    if f.is_integer() and abs(f) < 1e15:
        return str(int(f))
    return repr(f)


def number_from_json(s):
    """Inverse of number_to_json; accepts plain ints/floats too."""
    if isinstance(s, (int, float)):
        return s
    s = str(s).strip()
    if s == "inf":
        return INF
    if "/" in s:
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    if "." in s or "e" in s or "E" in s:
        return float(s)
    return int(s)
