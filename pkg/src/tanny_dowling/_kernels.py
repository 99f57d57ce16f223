"""Hot float loops for the quadrature cross-checks.

Each kernel is compiled with ``numba.njit`` unless the environment variable
``TANNY_DOWLING_DISABLE_NUMBA`` is set to a truthy value (or numba is missing),
in which case a numpy fallback runs instead.  Both variants of every kernel
stay reachable through :data:`KERNELS`.  Composite kernels call helpers via
module globals, so their ``"numpy"`` entry is only fully un-jitted when the
flag is set at import time.
"""

from __future__ import annotations

import os

import numpy as np

DISABLE_ENV = "TANNY_DOWLING_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


try:
    import numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None

HAVE_NUMBA = numba is not None
USE_NUMBA = HAVE_NUMBA and not _numba_disabled()

# name -> {"numba": compiled or None, "numpy": fallback}
KERNELS: dict[str, dict] = {}


def accelerated(fallback=None):
    """Register a kernel; bind the jitted version when numba is active.

    ``fallback`` is a numpy-vectorized equivalent; without one the plain
    Python body serves as the fallback.
    """

    def wrap(func):
        jitted = numba.njit(cache=True)(func) if HAVE_NUMBA else None
        KERNELS[func.__name__] = {"numba": jitted, "numpy": fallback or func}
        if USE_NUMBA:
            return jitted
        return fallback or func

    return wrap


def _horner_many_np(coeffs, xs):
    ys = np.zeros_like(xs)
    for c in coeffs[::-1]:
        ys = ys * xs + c
    return ys


@accelerated(fallback=_horner_many_np)
def horner_many(coeffs, xs):
    ys = np.empty_like(xs)
    n = coeffs.shape[0]
    for i in range(xs.shape[0]):
        x = xs[i]
        acc = 0.0
        for k in range(n - 1, -1, -1):
            acc = acc * x + coeffs[k]
        ys[i] = acc
    return ys


def _laguerre_weighted_sum_np(coeffs, x, nodes, weights):
    return float(np.dot(weights, _horner_many_np(coeffs, x * nodes)))


@accelerated(fallback=_laguerre_weighted_sum_np)
def laguerre_weighted_sum(coeffs, x, nodes, weights):
    """sum_i w_i p(x * lambda_i)."""
    n = coeffs.shape[0]
    total = 0.0
    for i in range(nodes.shape[0]):
        t = x * nodes[i]
        acc = 0.0
        for k in range(n - 1, -1, -1):
            acc = acc * t + coeffs[k]
        total += weights[i] * acc
    return total


@accelerated()
def laguerre_nodes(order, eps, max_iter):
    """Gauss-Laguerre nodes/weights for weight e^{-x} by Newton iteration.

    L_order and L_{order-1} come from the three-term recurrence; root i is
    seeded from the asymptotic spacing of roots i-1, i-2.  Returns
    ``(nodes, weights, converged)``.
    """
    nodes = np.zeros(order)
    weights = np.zeros(order)
    z = 0.0
    for i in range(order):
        if i == 0:
            z = 3.0 / (1.0 + 2.4 * order)
        elif i == 1:
            z += 15.0 / (1.0 + 2.5 * order)
        else:
            ai = i - 1.0
            z += (1.0 + 2.55 * ai) / (1.9 * ai) * (z - nodes[i - 2])
        converged = False
        p1 = 1.0
        p2 = 0.0
        pp = 1.0
        prev_step = np.inf
        for _ in range(max_iter):
            p1 = 1.0
            p2 = 0.0
            for j in range(1, order + 1):
                p3 = p2
                p2 = p1
                p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j
            pp = order * (p1 - p2) / z
            z1 = z
            z = z1 - p1 / pp
            step = abs(z - z1)
            if step <= eps * abs(z):
                converged = True
                break
            # Rounding floor: the step stopped shrinking but is already tiny.
            if step >= prev_step and step <= 1e-10 * abs(z):
                converged = True
                break
            prev_step = step
        if not converged:
            return nodes, weights, False
        # One polishing step, then refresh pp/p2 at the final root.
        p1 = 1.0
        p2 = 0.0
        for j in range(1, order + 1):
            p3 = p2
            p2 = p1
            p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j
        z -= p1 / (order * (p1 - p2) / z)
        p1 = 1.0
        p2 = 0.0
        for j in range(1, order + 1):
            p3 = p2
            p2 = p1
            p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j
        pp = order * (p1 - p2) / z
        nodes[i] = z
        weights[i] = -1.0 / (pp * order * p2)
    return nodes, weights, True


@accelerated()
def simpson_poly(coeffs, lo, hi, tol, min_depth, max_depth, max_evals):
    """Adaptive Simpson for a polynomial integrand, explicit stack.

    Returns ``(value, est_error, evaluations, converged)``.
    """
    n = coeffs.shape[0]
    cap = 4 * max_depth + 8
    # stack rows: a, b, fa, fm, fb, whole, tol, depth
    stack = np.empty((cap, 8))
    evals = 0

    fa = 0.0
    for k in range(n - 1, -1, -1):
        fa = fa * lo + coeffs[k]
    fb = 0.0
    for k in range(n - 1, -1, -1):
        fb = fb * hi + coeffs[k]
    mid = 0.5 * (lo + hi)
    fm = 0.0
    for k in range(n - 1, -1, -1):
        fm = fm * mid + coeffs[k]
    evals += 3
    whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb)

    stack[0, 0] = lo
    stack[0, 1] = hi
    stack[0, 2] = fa
    stack[0, 3] = fm
    stack[0, 4] = fb
    stack[0, 5] = whole
    stack[0, 6] = tol
    stack[0, 7] = 0.0
    top = 1
    value = 0.0
    err = 0.0
    ok = True
    while top > 0:
        top -= 1
        a = stack[top, 0]
        b = stack[top, 1]
        fa = stack[top, 2]
        fm = stack[top, 3]
        fb = stack[top, 4]
        whole = stack[top, 5]
        t = stack[top, 6]
        depth = stack[top, 7]
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = 0.0
        for k in range(n - 1, -1, -1):
            flm = flm * lm + coeffs[k]
        frm = 0.0
        for k in range(n - 1, -1, -1):
            frm = frm * rm + coeffs[k]
        evals += 2
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth >= min_depth and abs(delta) <= 15.0 * t:
            value += left + right + delta / 15.0
            err += abs(delta) / 15.0
        elif depth >= max_depth or top + 2 > cap or evals >= max_evals:
            ok = False
            value += left + right + delta / 15.0
            err += abs(delta) / 15.0
        else:
            stack[top, 0] = a
            stack[top, 1] = m
            stack[top, 2] = fa
            stack[top, 3] = flm
            stack[top, 4] = fm
            stack[top, 5] = left
            stack[top, 6] = 0.5 * t
            stack[top, 7] = depth + 1.0
            top += 1
            stack[top, 0] = m
            stack[top, 1] = b
            stack[top, 2] = fm
            stack[top, 3] = frm
            stack[top, 4] = fb
            stack[top, 5] = right
            stack[top, 6] = 0.5 * t
            stack[top, 7] = depth + 1.0
            top += 1
    return value, err, evals, ok


def warmup() -> None:
    """Trigger compilation of every active kernel on tiny inputs."""
    c = np.array([1.0, 2.0])
    xs = np.array([0.5])
    horner_many(c, xs)
    nodes, weights, _ = laguerre_nodes(2, 1e-15, 50)
    laguerre_weighted_sum(c, 1.0, nodes, weights)
    simpson_poly(c, 0.0, 1.0, 1e-8, 2, 10, 1000)


__all__ = [
    "DISABLE_ENV",
    "HAVE_NUMBA",
    "KERNELS",
    "USE_NUMBA",
    "horner_many",
    "laguerre_nodes",
    "laguerre_weighted_sum",
    "simpson_poly",
    "warmup",
]


# ---------------------------------------------------------------------------
# Double-double (unevaluated hi + lo pairs, ~106-bit significand) variants.
# Needed where the Laguerre sum cancels: |F~(n; x)| can sit 18 orders of
# magnitude below the integrand mass, past what binary64 can resolve.

_SPLITTER = 134217729.0  # 2**27 + 1


@accelerated()
def _two_sum(a, b):
    s = a + b
    bb = s - a
    err = (a - (s - bb)) + (b - bb)
    return s, err


@accelerated()
def _split(a):
    t = _SPLITTER * a
    hi = t - (t - a)
    return hi, a - hi


@accelerated()
def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    err = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, err


@accelerated()
def dd_add(ahi, alo, bhi, blo):
    s, e = _two_sum(ahi, bhi)
    t, f = _two_sum(alo, blo)
    e += t
    s, e = _two_sum(s, e)
    e += f
    return _two_sum(s, e)


@accelerated()
def dd_mul(ahi, alo, bhi, blo):
    p, e = _two_prod(ahi, bhi)
    e += ahi * blo + alo * bhi
    return _two_sum(p, e)


@accelerated()
def dd_div(ahi, alo, bhi, blo):
    q1 = ahi / bhi
    phi, plo = dd_mul(q1, 0.0, bhi, blo)
    rhi, rlo = dd_add(ahi, alo, -phi, -plo)
    q2 = rhi / bhi
    phi, plo = dd_mul(q2, 0.0, bhi, blo)
    rhi, rlo = dd_add(rhi, rlo, -phi, -plo)
    q3 = rhi / bhi
    qhi, qlo = _two_sum(q1, q2)
    return dd_add(qhi, qlo, q3, 0.0)


@accelerated()
def _laguerre_dd(order, zhi, zlo):
    # (L_order(z), L_{order-1}(z)) by the three-term recurrence.
    p1hi, p1lo = 1.0, 0.0
    p2hi, p2lo = 0.0, 0.0
    for j in range(1, order + 1):
        p3hi, p3lo = p2hi, p2lo
        p2hi, p2lo = p1hi, p1lo
        chi, clo = dd_add(2.0 * j - 1.0, 0.0, -zhi, -zlo)
        ahi, alo = dd_mul(chi, clo, p2hi, p2lo)
        bhi, blo = dd_mul(j - 1.0, 0.0, p3hi, p3lo)
        nhi, nlo = dd_add(ahi, alo, -bhi, -blo)
        p1hi, p1lo = dd_div(nhi, nlo, float(j), 0.0)
    return p1hi, p1lo, p2hi, p2lo


@accelerated()
def laguerre_nodes_dd(order, seeds, iters):
    """Newton-polish binary64 roots to double-double; returns 4 arrays."""
    nhi = np.zeros(order)
    nlo = np.zeros(order)
    whi = np.zeros(order)
    wlo = np.zeros(order)
    for i in range(order):
        zhi, zlo = seeds[i], 0.0
        for _ in range(iters):
            p1hi, p1lo, p2hi, p2lo = _laguerre_dd(order, zhi, zlo)
            dhi, dlo = dd_add(p1hi, p1lo, -p2hi, -p2lo)
            dhi, dlo = dd_mul(dhi, dlo, float(order), 0.0)
            pphi, pplo = dd_div(dhi, dlo, zhi, zlo)
            sthi, stlo = dd_div(p1hi, p1lo, pphi, pplo)
            zhi, zlo = dd_add(zhi, zlo, -sthi, -stlo)
        p1hi, p1lo, p2hi, p2lo = _laguerre_dd(order, zhi, zlo)
        # w = z / (order^2 L_{order-1}(z)^2)
        sqhi, sqlo = dd_mul(p2hi, p2lo, p2hi, p2lo)
        sqhi, sqlo = dd_mul(sqhi, sqlo, float(order) * order, 0.0)
        wh, wl = dd_div(zhi, zlo, sqhi, sqlo)
        nhi[i] = zhi
        nlo[i] = zlo
        whi[i] = wh
        wlo[i] = wl
    return nhi, nlo, whi, wlo


@accelerated()
def laguerre_weighted_sum_dd(chi, clo, xhi, xlo, nhi, nlo, whi, wlo):
    """sum_i w_i p(x lambda_i) in double-double; returns (hi, lo)."""
    n = chi.shape[0]
    thi, tlo = 0.0, 0.0
    for i in range(nhi.shape[0]):
        uhi, ulo = dd_mul(xhi, xlo, nhi[i], nlo[i])
        ahi, alo = 0.0, 0.0
        for k in range(n - 1, -1, -1):
            ahi, alo = dd_mul(ahi, alo, uhi, ulo)
            ahi, alo = dd_add(ahi, alo, chi[k], clo[k])
        ahi, alo = dd_mul(ahi, alo, whi[i], wlo[i])
        thi, tlo = dd_add(thi, tlo, ahi, alo)
    return thi, tlo
