"""Exact verification of the integral identities and their reductions.

Every ``check_*`` returns an :class:`IdentityCheck` carrying both sides as
canonical rationals (or coefficient tuples), so ``holds`` is plain equality.
"""

from __future__ import annotations

import enum
import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

from .bernoulli import bernoulli_number, bernoulli_poly_eval
from .exact_arith import (
    RationalLike,
    as_rational,
    binomial,
    factorial,
    format_rational,
)
from .polynomials import (
    classical_polys,
    dowling_poly,
    poly_definite_integral,
    poly_eval,
    poly_scale_arg,
    tanny_dowling_poly,
)
from .quadrature import (
    ConvergenceError,
    improper_integral_theorem4,
    theorem4_closed_form,
    theorem4_decay_rate,
)
from .triangles import CLASSICAL, WhitneyParams, stirling2, stirling2_row, whitney2_table

__all__ = [
    "IdentityCheck",
    "IdentityId",
    "SweepGrid",
    "Theorem4Values",
    "VerificationReport",
    "check_bernoulli_stirling",
    "check_corollary2",
    "check_kellner",
    "check_reductions",
    "check_theorem1",
    "check_theorem3_exact",
    "check_theorem4_series",
    "check_worpitzky_classic",
    "check_worpitzky_general",
    "gamma_moment",
    "theorem4_values",
    "verify_sweep",
]

Side = Union[Fraction, tuple[Fraction, ...]]


class IdentityId(str, enum.Enum):
    THEOREM1 = "THEOREM1"
    COROLLARY2 = "COROLLARY2"
    WORPITZKY_GENERAL = "WORPITZKY_GENERAL"
    THEOREM3_EXACT = "THEOREM3_EXACT"
    THEOREM4_SERIES = "THEOREM4_SERIES"
    KELLNER = "KELLNER"
    WORPITZKY_CLASSIC = "WORPITZKY_CLASSIC"
    REDUCTION = "REDUCTION"


def _side_json(side: Side):
    if isinstance(side, tuple):
        return [format_rational(c) for c in side]
    return format_rational(side)


@dataclass(frozen=True)
class IdentityCheck:
    identity_id: IdentityId
    params: WhitneyParams
    n: int
    lhs: Side
    rhs: Side
    holds: bool
    form: str | None = None

    @classmethod
    def compare(
        cls,
        identity_id: IdentityId,
        params: WhitneyParams,
        n: int,
        lhs: Side,
        rhs: Side,
        form: str | None = None,
    ) -> "IdentityCheck":
        return cls(identity_id, params, n, lhs, rhs, lhs == rhs, form)

    def to_json(self) -> dict:
        out = {
            "id": self.identity_id.value,
            "m": self.params.m,
            "a": format_rational(self.params.a),
            "n": self.n,
            "lhs": _side_json(self.lhs),
            "rhs": _side_json(self.rhs),
            "holds": self.holds,
        }
        if self.form is not None:
            out["form"] = self.form
        return out


def gamma_moment(k: int) -> int:
    """int_0^inf x^k e^{-x} dx = k!."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return factorial(k)


def _bernoulli_at_shift(p: WhitneyParams, n: int) -> Fraction:
    return bernoulli_poly_eval(n, -p.a / p.m)


def check_theorem1(p: WhitneyParams, n: int) -> IdentityCheck:
    """int_{-1}^{0} F~(n; m x) dx  vs  m^n B_n(-a/m)."""
    scaled = poly_scale_arg(tanny_dowling_poly(p, n), p.m)
    lhs = poly_definite_integral(scaled, -1, 0)
    rhs = Fraction(p.m) ** n * _bernoulli_at_shift(p, n)
    return IdentityCheck.compare(IdentityId.THEOREM1, p, n, lhs, rhs)


def check_corollary2(p: WhitneyParams, n: int) -> IdentityCheck:
    """sum_k k! W~(n,k) (-1)^k / (m^{n-k} (k+1))  vs  B_n(-a/m)."""
    row = whitney2_table(p, n).rows[n]
    m = p.m
    lhs = Fraction(0)
    for k, w in enumerate(row):
        term = factorial(k) * w / (m ** (n - k) * (k + 1))
        lhs += -term if k % 2 else term
    return IdentityCheck.compare(
        IdentityId.COROLLARY2, p, n, lhs, _bernoulli_at_shift(p, n)
    )


def check_worpitzky_general(p: WhitneyParams, n: int) -> IdentityCheck:
    """sum_{k<=n} sum_{j<=k} C(k,j) (m j - a)^n (-1)^j / (m^n (k+1))  vs  B_n(-a/m).

    The outer index runs over k; the inner one over j.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    m, a = p.m, p.a
    powers = [(m * j - a) ** n for j in range(n + 1)]
    lhs = Fraction(0)
    for k in range(n + 1):
        inner = Fraction(0)
        for j in range(k + 1):
            t = binomial(k, j) * powers[j]
            inner += -t if j % 2 else t
        lhs += inner / (k + 1)
    lhs /= m**n
    return IdentityCheck.compare(
        IdentityId.WORPITZKY_GENERAL, p, n, lhs, _bernoulli_at_shift(p, n)
    )


def check_theorem3_exact(p: WhitneyParams, n: int) -> IdentityCheck:
    """Coefficientwise: int_0^inf D~(n; x lam) e^{-lam} dlam == F~(n; x).

    lam^k integrates against e^{-lam} to gamma_moment(k), so the integral
    maps the Dowling coefficient c_k to c_k * k!.
    """
    dowling = dowling_poly(p, n)
    lhs = tuple(c * gamma_moment(k) for k, c in enumerate(dowling.coeffs))
    rhs = tanny_dowling_poly(p, n).coeffs
    return IdentityCheck.compare(IdentityId.THEOREM3_EXACT, p, n, lhs, rhs)


def check_kellner(n: int) -> IdentityCheck:
    """int_{-1}^{0} w_n(x) dx == B_n, with w_n built from Stirling numbers."""
    _, geometric = classical_polys(n)
    lhs = poly_definite_integral(geometric, -1, 0)
    return IdentityCheck.compare(IdentityId.KELLNER, CLASSICAL, n, lhs, bernoulli_number(n))


def check_worpitzky_classic(n: int) -> IdentityCheck:
    """sum_{k<=n} sum_{j<=k} (-1)^j C(k,j) j^n / (k+1) == B_n."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    lhs = Fraction(0)
    for k in range(n + 1):
        inner = sum((-1) ** j * binomial(k, j) * j**n for j in range(k + 1))
        lhs += Fraction(inner, k + 1)
    return IdentityCheck.compare(
        IdentityId.WORPITZKY_CLASSIC, CLASSICAL, n, lhs, bernoulli_number(n),
        form="double_sum",
    )


def check_bernoulli_stirling(n: int) -> IdentityCheck:
    """sum_{k=1}^{n} (-1)^k k!/(k+1) S(n,k) == B_n, for n >= 1."""
    if n < 1:
        raise ValueError(f"the Stirling form needs n >= 1, got {n}")
    lhs = sum(
        (Fraction((-1) ** k * factorial(k), k + 1) * stirling2(n, k) for k in range(1, n + 1)),
        Fraction(0),
    )
    return IdentityCheck.compare(
        IdentityId.WORPITZKY_CLASSIC, CLASSICAL, n, lhs, bernoulli_number(n),
        form="stirling",
    )


def check_reductions(n: int) -> list[IdentityCheck]:
    """(m, a) = (1, 0) collapses W~, D~, F~ to S, phi_n, w_n."""
    exponential, geometric = classical_polys(n)
    whitney_row = whitney2_table(CLASSICAL, n).rows[n]
    stirling_row = tuple(Fraction(s) for s in stirling2_row(n))
    cases = [
        ("whitney", whitney_row, stirling_row),
        ("dowling", dowling_poly(CLASSICAL, n).coeffs, exponential.coeffs),
        ("tanny_dowling", tanny_dowling_poly(CLASSICAL, n).coeffs, geometric.coeffs),
    ]
    return [
        IdentityCheck.compare(IdentityId.REDUCTION, CLASSICAL, n, tuple(lhs), tuple(rhs), form=name)
        for name, lhs, rhs in cases
    ]


@dataclass(frozen=True)
class Theorem4Values:
    series: float
    closed_form: float
    integral: float

    @property
    def residual(self) -> float:
        vals = (self.series, self.closed_form, self.integral)
        return max(abs(u - v) for u, v in itertools.combinations(vals, 2))


def theorem4_values(
    p: WhitneyParams, x: RationalLike, z: RationalLike, N: int
) -> Theorem4Values:
    """Truncated EGF, closed form and improper integral at one point.

    Raises ConvergenceError unless 1 - (x/m)(e^{m z} - 1) > 0.
    """
    if N < 0:
        raise ValueError(f"truncation order must be >= 0, got {N}")
    xq, zq = as_rational(x), as_rational(z)
    rate = theorem4_decay_rate(p, float(xq), float(zq))
    if not rate > 0:
        raise ConvergenceError(
            f"x (e^(mz) - 1) / m = {1.0 - rate!r} >= 1: series and integral diverge"
        )
    partial = Fraction(0)
    zpow = Fraction(1)
    for n in range(N + 1):
        partial += poly_eval(tanny_dowling_poly(p, n), xq) * zpow / math.factorial(n)
        zpow *= zq
    return Theorem4Values(
        series=float(partial),
        closed_form=theorem4_closed_form(p, float(xq), float(zq)),
        integral=improper_integral_theorem4(p, float(xq), float(zq)),
    )


def check_theorem4_series(
    p: WhitneyParams, x: RationalLike, z: RationalLike, N: int
) -> float:
    """Max pairwise gap between series, closed form and integral."""
    return theorem4_values(p, x, z, N).residual


# ---------------------------------------------------------------------------
# sweeps

GRID_IDENTITIES = ("theorem1", "corollary2", "worpitzky", "theorem3")
SELECTORS = GRID_IDENTITIES + ("reductions", "all")

_GRID_CHECKS: dict[str, Callable[[WhitneyParams, int], IdentityCheck]] = {
    "theorem1": check_theorem1,
    "corollary2": check_corollary2,
    "worpitzky": check_worpitzky_general,
    "theorem3": check_theorem3_exact,
}


def _classical_checks(n: int) -> list[IdentityCheck]:
    out = [check_kellner(n), check_worpitzky_classic(n)]
    if n >= 1:
        out.append(check_bernoulli_stirling(n))
    out.extend(check_reductions(n))
    return out


@dataclass(frozen=True)
class SweepGrid:
    ms: tuple[int, ...]
    as_: tuple[Fraction, ...]
    ns: tuple[int, ...]
    identities: tuple[str, ...] = GRID_IDENTITIES + ("reductions",)

    def __post_init__(self) -> None:
        if any(m < 1 for m in self.ms):
            raise ValueError("every m must be a positive integer")
        if any(n < 0 for n in self.ns):
            raise ValueError("every n must be >= 0")
        unknown = set(self.identities) - set(SELECTORS)
        if unknown:
            raise ValueError(f"unknown identity selector(s): {sorted(unknown)}")

    @classmethod
    def from_ranges(
        cls,
        mmin: int = 1,
        mmax: int = 5,
        amin: RationalLike = -3,
        amax: RationalLike = 3,
        astep: RationalLike = Fraction(1, 2),
        nmin: int = 0,
        nmax: int = 25,
        identities: Sequence[str] = ("all",),
    ) -> "SweepGrid":
        amin, amax, astep = as_rational(amin), as_rational(amax), as_rational(astep)
        if astep <= 0:
            raise ValueError("astep must be positive")
        if mmin < 1 or mmin > mmax:
            raise ValueError(f"invalid m range [{mmin}, {mmax}]")
        if amin > amax:
            raise ValueError(f"invalid a range [{amin}, {amax}]")
        if nmin < 0 or nmin > nmax:
            raise ValueError(f"invalid n range [{nmin}, {nmax}]")
        steps = int((amax - amin) // astep)
        ids = tuple(identities)
        if "all" in ids:
            ids = GRID_IDENTITIES + ("reductions",)
        return cls(
            ms=tuple(range(mmin, mmax + 1)),
            as_=tuple(amin + i * astep for i in range(steps + 1)),
            ns=tuple(range(nmin, nmax + 1)),
            identities=ids,
        )

    def describe(self) -> dict:
        return {
            "m": list(self.ms),
            "a": [format_rational(a) for a in self.as_],
            "n": list(self.ns),
            "identities": list(self.identities),
        }


@dataclass
class VerificationReport:
    grid: dict
    checks: list[IdentityCheck] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def pass_count(self) -> int:
        return sum(c.holds for c in self.checks)

    @property
    def fail_count(self) -> int:
        return len(self.checks) - self.pass_count

    @property
    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.holds]

    def to_json(self, include_timing: bool = False) -> dict:
        out = {
            "grid": self.grid,
            "checks": [c.to_json() for c in self.checks],
            "pass": self.pass_count,
            "fail": self.fail_count,
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out


def _grid_tasks(grid: SweepGrid) -> list[Callable[[], list[IdentityCheck]]]:
    tasks: list[Callable[[], list[IdentityCheck]]] = []
    selected = [name for name in GRID_IDENTITIES if name in grid.identities]
    if selected:
        for m, a, n in itertools.product(grid.ms, grid.as_, grid.ns):
            p = WhitneyParams(m, a)
            for name in selected:
                fn = _GRID_CHECKS[name]
                tasks.append(lambda fn=fn, p=p, n=n: [fn(p, n)])
    if "reductions" in grid.identities and grid.ms and grid.as_:
        for n in grid.ns:
            tasks.append(lambda n=n: _classical_checks(n))
    return tasks


def verify_sweep(grid: SweepGrid, workers: int | None = None) -> VerificationReport:
    """Run every selected exact check; results keep grid order."""
    start = time.perf_counter()
    tasks = _grid_tasks(grid)
    if workers and workers > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks: Iterable[list[IdentityCheck]] = list(pool.map(lambda t: t(), tasks))
    else:
        chunks = [t() for t in tasks]
    checks = [c for chunk in chunks for c in chunk]
    return VerificationReport(grid.describe(), checks, time.perf_counter() - start)
