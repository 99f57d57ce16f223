"""Stirling numbers of the second kind and noncentral Whitney numbers.

Two routes to W~_{m,a}(n, k):

* :func:`whitney2_explicit`, the alternating binomial sum
  ``(1 / (m^k k!)) * sum_j C(k,j) (-1)^(k-j) (m j - a)^n``;
* :func:`whitney2_table`, the triangular recurrence
  ``W(n+1, k) = W(n, k-1) + (m k - a) W(n, k)``, memoized per (m, a).

The recurrence is the production route, the explicit sum is its oracle.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .exact_arith import (
    RationalLike,
    as_rational,
    binomial,
    factorial,
    format_rational,
)

__all__ = [
    "WhitneyParams",
    "WhitneyTriangle",
    "clear_caches",
    "stirling2",
    "stirling2_row",
    "triangle_csv_rows",
    "whitney2_explicit",
    "whitney2_table",
]


@dataclass(frozen=True)
class WhitneyParams:
    """The pair (m, a); m a positive integer, a an exact rational."""

    m: int
    a: Fraction = field(default=Fraction(0))

    def __post_init__(self) -> None:
        if isinstance(self.m, bool) or not isinstance(self.m, int):
            raise TypeError(f"m must be an int, got {type(self.m).__name__}")
        if self.m < 1:
            raise ValueError(f"m must be a positive integer, got {self.m}")
        object.__setattr__(self, "a", as_rational(self.a))

    @classmethod
    def of(cls, m: int, a: RationalLike = 0) -> "WhitneyParams":
        return cls(m, as_rational(a))

    @property
    def key(self) -> tuple[int, str]:
        return (self.m, format_rational(self.a))

    @property
    def is_classical(self) -> bool:
        return self.m == 1 and self.a == 0


CLASSICAL = WhitneyParams(1, Fraction(0))


@dataclass(frozen=True)
class WhitneyTriangle:
    params: WhitneyParams
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def nmax(self) -> int:
        return len(self.rows) - 1

    def __getitem__(self, nk: tuple[int, int]) -> Fraction:
        n, k = nk
        if k < 0 or k > n:
            return Fraction(0)
        return self.rows[n][k]

    def __iter__(self) -> Iterator[tuple[Fraction, ...]]:
        return iter(self.rows)


_stirling_lock = threading.Lock()
_stirling_rows: list[tuple[int, ...]] = [(1,)]


def stirling2_row(n: int) -> tuple[int, ...]:
    """Row n of the Stirling triangle, ``S(n, 0..n)``."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rows = _stirling_rows
    if n < len(rows):
        return rows[n]
    with _stirling_lock:
        while len(rows) <= n:
            prev = rows[-1]
            size = len(prev)
            new = [0] * (size + 1)
            for k in range(1, size + 1):
                left = prev[k - 1]
                right = prev[k] if k < size else 0
                new[k] = left + k * right
            rows.append(tuple(new))
    return rows[n]


def stirling2(n: int, k: int) -> int:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return stirling2_row(n)[k]


def whitney2_explicit(p: WhitneyParams, n: int, k: int) -> Fraction:
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return Fraction(0)
    m, a = p.m, p.a
    total = Fraction(0)
    for j in range(k + 1):
        term = binomial(k, j) * (m * j - a) ** n
        total += term if (k - j) % 2 == 0 else -term
    return total / (m**k * factorial(k))


def _extend(p: WhitneyParams, rows: list[tuple[Fraction, ...]], nmax: int) -> None:
    m, a = p.m, p.a
    while len(rows) <= nmax:
        prev = rows[-1]
        size = len(prev)
        new = [Fraction(0)] * (size + 1)
        for k in range(size + 1):
            left = prev[k - 1] if k >= 1 else 0
            right = prev[k] if k < size else 0
            new[k] = left + (m * k - a) * right
        rows.append(tuple(new))


_table_lock = threading.Lock()
_tables: dict[tuple[int, str], list[tuple[Fraction, ...]]] = {}


def whitney2_table(p: WhitneyParams, nmax: int) -> WhitneyTriangle:
    """Triangle of W~_{m,a}(n, k) for ``0 <= k <= n <= nmax``."""
    if nmax < 0:
        raise ValueError(f"nmax must be >= 0, got {nmax}")
    rows = _tables.get(p.key)
    if rows is None or len(rows) <= nmax:
        with _table_lock:
            rows = _tables.setdefault(p.key, [(Fraction(1),)])
            _extend(p, rows, nmax)
    return WhitneyTriangle(p, tuple(rows[: nmax + 1]))


def clear_caches() -> None:
    with _table_lock:
        _tables.clear()
    with _stirling_lock:
        del _stirling_rows[1:]


def triangle_csv_rows(tri: WhitneyTriangle) -> Iterator[str]:
    """``n,k,value`` lines (no header), values in p/q form."""
    for n, row in enumerate(tri.rows):
        for k, v in enumerate(row):
            yield f"{n},{k},{format_rational(v)}"
