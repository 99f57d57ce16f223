"""Floating-point cross-checks of the exact engine.

Adaptive Simpson covers the finite interval [-1, 0]; Gauss-Laguerre rules
cover integrals against e^{-lambda} on [0, inf).  The polynomial-integrand
loops live in :mod:`._kernels` (numba or numpy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np

from . import _kernels
from .bernoulli import bernoulli_poly_eval
from .polynomials import dowling_poly, poly_eval, poly_scale_arg, tanny_dowling_poly
from .triangles import WhitneyParams

__all__ = [
    "ConvergenceError",
    "LaguerreRule",
    "QuadratureResult",
    "adaptive_simpson",
    "adaptive_simpson_poly",
    "check_theorem1_numeric",
    "check_theorem3_numeric",
    "improper_integral_theorem4",
    "laguerre_rule",
    "theorem4_closed_form",
    "theorem4_decay_rate",
]

MAX_ORDER = 128
TRUNCATION_EPS = 1e-16
MAX_EVALS = 1_000_000


class ConvergenceError(ArithmeticError):
    """A numerical procedure did not converge or its integral diverges."""


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    evaluations: int


@dataclass(frozen=True)
class LaguerreRule:
    """Gauss-Laguerre rule; ``nodes``/``weights`` are binary64 and the
    ``*_lo`` arrays carry the double-double tails."""

    order: int
    nodes: np.ndarray
    weights: np.ndarray
    nodes_lo: np.ndarray
    weights_lo: np.ndarray

    def integrate(self, f: Callable[[np.ndarray], np.ndarray]) -> float:
        """sum_i w_i f(lambda_i), i.e. int_0^inf f(lambda) e^{-lambda} dlambda."""
        return float(np.dot(self.weights, f(self.nodes)))


def adaptive_simpson(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float,
    max_depth: int = 50,
    max_evals: int = MAX_EVALS,
    min_depth: int = 4,
) -> QuadratureResult:
    """Adaptive Simpson with Richardson correction on each accepted panel.

    Panels shallower than ``min_depth`` are always split, which keeps the
    error estimate honest on sharply peaked integrands.  Raises ConvergenceError when a panel still exceeds its tolerance share at
    ``max_depth`` or the evaluation budget runs out.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    fa, fb = f(lo), f(hi)
    mid = 0.5 * (lo + hi)
    fm = f(mid)
    evals = 3
    value = 0.0
    err = 0.0
    stack = [(lo, hi, fa, fm, fb, (hi - lo) / 6.0 * (fa + 4.0 * fm + fb), tol, 0)]
    while stack:
        a, b, fa, fm, fb, whole, t, depth = stack.pop()
        m = 0.5 * (a + b)
        flm, frm = f(0.5 * (a + m)), f(0.5 * (m + b))
        evals += 2
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth >= min_depth and abs(delta) <= 15.0 * t:
            value += left + right + delta / 15.0
            err += abs(delta) / 15.0
        elif depth >= max_depth or evals >= max_evals:
            raise ConvergenceError(
                f"adaptive Simpson gave up on [{a}, {b}] at depth {depth} "
                f"after {evals} evaluations"
            )
        else:
            stack.append((m, b, fm, frm, fb, right, 0.5 * t, depth + 1))
            stack.append((a, m, fa, flm, fm, left, 0.5 * t, depth + 1))
    return QuadratureResult(value, err, evals)


def adaptive_simpson_poly(
    coeffs: np.ndarray,
    lo: float,
    hi: float,
    tol: float,
    max_depth: int = 50,
    max_evals: int = MAX_EVALS,
    min_depth: int = 4,
) -> QuadratureResult:
    """Same algorithm as :func:`adaptive_simpson`, for a float polynomial."""
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol}")
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    if coeffs.size == 0:
        return QuadratureResult(0.0, 0.0, 1)
    value, err, evals, ok = _kernels.simpson_poly(
        coeffs, float(lo), float(hi), float(tol), min_depth, max_depth, max_evals
    )
    if not ok:
        raise ConvergenceError(
            f"adaptive Simpson exceeded depth {max_depth} or {max_evals} evaluations"
        )
    return QuadratureResult(float(value), float(err), int(evals))


@lru_cache(maxsize=None)
def laguerre_rule(order: int) -> LaguerreRule:
    if not 1 <= order <= MAX_ORDER:
        raise ValueError(f"order must be in [1, {MAX_ORDER}], got {order}")
    seeds, _, ok = _kernels.laguerre_nodes(order, 1e-14, 100)
    if not ok:
        raise ConvergenceError(f"Laguerre root finding failed at order {order}")
    # binary64 Newton leaves ~1e-13 error on the smallest roots past order ~40;
    # two double-double steps take every root and weight to ~1e-28.
    nhi, nlo, whi, wlo = _kernels.laguerre_nodes_dd(order, seeds, 2)
    if not (np.all(np.isfinite(nhi)) and np.all(np.diff(nhi) > 0) and nhi[0] > 0):
        raise ConvergenceError(f"Laguerre root polishing failed at order {order}")
    for arr in (nhi, nlo, whi, wlo):
        arr.setflags(write=False)
    return LaguerreRule(order, nhi, whi, nlo, wlo)


def _dd_split(q: Fraction) -> tuple[float, float]:
    hi = float(q)
    return hi, float(q - Fraction(hi))


def _rounding_floor(coeffs: np.ndarray) -> float:
    # int_{-1}^{0} sum_k |c_k| |x|^k dx bounds the binary64 Horner noise
    # integrated over the interval; asking Simpson for less only burns depth.
    k = np.arange(coeffs.size)
    return 32.0 * np.finfo(float).eps * float(np.sum(np.abs(coeffs) / (k + 1)))


def check_theorem1_numeric(p: WhitneyParams, n: int, tol: float = 1e-10) -> float:
    """|Simpson(F~(n; m x), -1, 0) - m^n B_n(-a/m)|.

    ``tol`` is absolute, floored at the binary64 noise level of the integrand.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    poly = poly_scale_arg(tanny_dowling_poly(p, n), p.m)
    coeffs = poly.to_float()
    res = adaptive_simpson_poly(coeffs, -1.0, 0.0, max(tol, _rounding_floor(coeffs)))
    exact = Fraction(p.m) ** n * bernoulli_poly_eval(n, -p.a / p.m)
    return abs(res.value - float(exact))


def check_theorem3_numeric(
    p: WhitneyParams,
    n: int,
    x: float | Fraction,
    order: int = 64,
    precision: str = "dd",
) -> float:
    """|sum_i w_i D~(n; x lambda_i) - F~(n; x)| with the Laguerre rule.

    ``precision="dd"`` runs the weighted sum in double-double (default);
    ``"double"`` uses binary64 coefficients and rule only.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rule = laguerre_rule(order)
    xq = x if isinstance(x, Fraction) else Fraction(float(x))
    dowling = dowling_poly(p, n)
    if precision == "double":
        approx = _kernels.laguerre_weighted_sum(
            dowling.to_float(), float(xq), rule.nodes, rule.weights
        )
    elif precision == "dd":
        split = [_dd_split(c) for c in dowling.coeffs] or [(0.0, 0.0)]
        chi = np.array([s[0] for s in split])
        clo = np.array([s[1] for s in split])
        xhi, xlo = _dd_split(xq)
        hi, lo = _kernels.laguerre_weighted_sum_dd(
            chi, clo, xhi, xlo, rule.nodes, rule.nodes_lo, rule.weights, rule.weights_lo
        )
        approx = hi + lo
    else:
        raise ValueError(f"precision must be 'dd' or 'double', got {precision!r}")
    target = float(poly_eval(tanny_dowling_poly(p, n), xq))
    return abs(float(approx) - target)


def theorem4_decay_rate(p: WhitneyParams, x: float, z: float) -> float:
    """1 - (x/m)(e^{m z} - 1), the lambda-decay rate of the integrand."""
    return 1.0 - (float(x) / p.m) * math.expm1(p.m * float(z))


def theorem4_closed_form(p: WhitneyParams, x: float, z: float) -> float:
    """m e^{-a z} / (m - x (e^{m z} - 1))."""
    m, a = p.m, float(p.a)
    x, z = float(x), float(z)
    return m * math.exp(-a * z) / (m - x * math.expm1(m * z))


def improper_integral_theorem4(
    p: WhitneyParams, x: float, z: float, tol: float = 1e-13
) -> float:
    """int_0^inf exp(-a z - lambda * rate) dlambda, truncated then Simpson.

    The cut L = (ln(1/eps) + |a z|) / rate bounds the dropped tail by
    eps / rate.  ``tol`` is relative to the integrand's value at 0.
    """
    rate = theorem4_decay_rate(p, x, z)
    if not rate > 0:
        raise ConvergenceError(
            f"integrand does not decay: rate 1 - (x/m)(e^(mz)-1) = {rate!r} <= 0"
        )
    shift = -float(p.a) * float(z)
    cut = (math.log(1.0 / TRUNCATION_EPS) + abs(shift)) / rate
    f0 = math.exp(shift)
    res = adaptive_simpson(
        lambda lam: math.exp(shift - lam * rate), 0.0, cut, tol * f0 / rate
    )
    return res.value
