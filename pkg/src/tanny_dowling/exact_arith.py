"""Exact integer/rational scalars shared by every symbolic path.

Rationals are :class:`fractions.Fraction`, which keeps lowest terms with a
positive denominator after every operation, so ``==`` is structural equality.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

RationalLike = Union[int, Fraction, str]

__all__ = [
    "Fraction",
    "as_rational",
    "binomial",
    "factorial",
    "falling_factorial",
    "format_rational",
    "parse_rational",
    "rat_pow",
]


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative integer {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial requires n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def falling_factorial(x: RationalLike, k: int) -> Fraction:
    """(x)_k = x (x-1) ... (x-k+1); the empty product for k = 0."""
    if k < 0:
        raise ValueError(f"falling factorial order must be >= 0, got {k}")
    x = as_rational(x)
    out = Fraction(1)
    for i in range(k):
        out *= x - i
    return out


def rat_pow(q: RationalLike, e: int) -> Fraction:
    # 0**0 == 1 is relied on by the j = 0 term of the explicit Whitney sum.
    if e < 0:
        raise ValueError(f"exponent must be >= 0, got {e}")
    return as_rational(q) ** e


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimals are rejected to keep values exact."""
    s = text.strip()
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational of the form p/q: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


def format_rational(q: RationalLike) -> str:
    """Canonical ``"p/q"`` (or ``"p"`` when q == 1)."""
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
