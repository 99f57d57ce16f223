"""Dense exact polynomials and the four families built on Whitney rows."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .exact_arith import RationalLike, as_rational, factorial, format_rational
from .triangles import CLASSICAL, WhitneyParams, stirling2_row, whitney2_table

__all__ = [
    "Polynomial",
    "classical_polys",
    "dowling_poly",
    "exponential_poly",
    "geometric_poly",
    "poly_definite_integral",
    "poly_eval",
    "poly_scale_arg",
    "poly_to_json",
    "tanny_dowling_poly",
]


@dataclass(frozen=True)
class Polynomial:
    """Coefficients by ascending degree; ``()`` is the zero polynomial."""

    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable[RationalLike] = ()):
        cs = [as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: RationalLike) -> Fraction:
        return poly_eval(self, x)

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_float(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=np.float64)

    def __repr__(self) -> str:
        body = ", ".join(format_rational(c) for c in self.coeffs)
        return f"Polynomial([{body}])"


def poly_eval(p: Polynomial, x: RationalLike) -> Fraction:
    x = as_rational(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def poly_scale_arg(p: Polynomial, c: RationalLike) -> Polynomial:
    """p(c x)."""
    c = as_rational(c)
    out = []
    ck = Fraction(1)
    for coef in p.coeffs:
        out.append(coef * ck)
        ck *= c
    return Polynomial(out)


def poly_definite_integral(p: Polynomial, lo: RationalLike, hi: RationalLike) -> Fraction:
    lo, hi = as_rational(lo), as_rational(hi)
    total = Fraction(0)
    hi_pow, lo_pow = hi, lo
    for k, c in enumerate(p.coeffs):
        total += c * (hi_pow - lo_pow) / (k + 1)
        hi_pow *= hi
        lo_pow *= lo
    return total


def dowling_poly(p: WhitneyParams, n: int) -> Polynomial:
    """D~_{m,a}(n; x) = sum_k W~_{m,a}(n, k) x^k."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return Polynomial(whitney2_table(p, n).rows[n])


def tanny_dowling_poly(p: WhitneyParams, n: int) -> Polynomial:
    """F~_{m,a}(n; x) = sum_k k! W~_{m,a}(n, k) x^k."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    row = whitney2_table(p, n).rows[n]
    return Polynomial(factorial(k) * w for k, w in enumerate(row))


def exponential_poly(n: int) -> Polynomial:
    return dowling_poly(CLASSICAL, n)


def geometric_poly(n: int) -> Polynomial:
    return tanny_dowling_poly(CLASSICAL, n)


def classical_polys(n: int) -> tuple[Polynomial, Polynomial]:
    """(phi_n, w_n) built straight from the integer Stirling row.

    Independent of the Whitney tables, so it can check the (1, 0) reduction.
    """
    row = stirling2_row(n)
    return Polynomial(row), Polynomial(factorial(k) * s for k, s in enumerate(row))


def poly_to_json(
    poly: Polynomial | Sequence[Fraction],
    *,
    n: int,
    family: str,
    params: WhitneyParams | None = None,
) -> dict:
    coeffs = poly.coeffs if isinstance(poly, Polynomial) else tuple(poly)
    out: dict = {"n": n, "family": family}
    if params is not None:
        out["m"] = params.m
        out["a"] = format_rational(params.a)
    out["coeffs"] = [format_rational(c) for c in coeffs]
    return out
