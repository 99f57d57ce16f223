"""Bernoulli numbers (B_1 = -1/2) and Bernoulli polynomials, exact."""

from __future__ import annotations

import threading
from fractions import Fraction

from .exact_arith import RationalLike, binomial
from .polynomials import Polynomial, poly_eval

__all__ = [
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_poly",
    "bernoulli_poly_eval",
    "clear_cache",
]

_lock = threading.Lock()
_numbers: list[Fraction] = [Fraction(1)]
_polys: dict[int, Polynomial] = {}


def bernoulli_numbers(nmax: int) -> tuple[Fraction, ...]:
    """B_0..B_nmax from ``sum_{k=0}^{n} C(n+1, k) B_k = 0``."""
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")
    if len(_numbers) <= nmax:
        with _lock:
            while len(_numbers) <= nmax:
                n = len(_numbers)
                s = sum(binomial(n + 1, k) * _numbers[k] for k in range(n))
                _numbers.append(-s / (n + 1))
    return tuple(_numbers[: nmax + 1])


def bernoulli_number(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


def bernoulli_poly(n: int) -> Polynomial:
    """B_n(x) = sum_k C(n, k) B_k x^(n-k)."""
    poly = _polys.get(n)
    if poly is None:
        bs = bernoulli_numbers(n)
        poly = Polynomial(binomial(n, n - j) * bs[n - j] for j in range(n + 1))
        _polys[n] = poly
    return poly


def bernoulli_poly_eval(n: int, x: RationalLike) -> Fraction:
    return poly_eval(bernoulli_poly(n), x)


def clear_cache() -> None:
    with _lock:
        del _numbers[1:]
        _polys.clear()
