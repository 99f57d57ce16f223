"""Time every float kernel under numba and under the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

The fallback column is timed in a child process started with
TANNY_DOWLING_DISABLE_NUMBA=1: composite kernels call their helpers through
module globals, so only a fresh import gives a fully un-jitted fallback.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time
from fractions import Fraction

import numpy as np

from tanny_dowling import _kernels
from tanny_dowling.polynomials import dowling_poly, poly_scale_arg, tanny_dowling_poly
from tanny_dowling.triangles import WhitneyParams


def _best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def _dd_split(values):
    hi = np.array([float(v) for v in values])
    lo = np.array([float(v - Fraction(h)) for v, h in zip(values, hi)])
    return hi, lo


def cases():
    rng = np.random.default_rng(0)
    coeffs = rng.normal(size=16)
    xs = rng.uniform(-1, 1, size=200_000)
    seeds64, _, _ = _kernels.KERNELS["laguerre_nodes"]["numpy"](64, 1e-14, 100)
    nhi, nlo, whi, wlo = _kernels.KERNELS["laguerre_nodes_dd"]["numpy"](64, seeds64, 2)
    p = WhitneyParams(3, Fraction(-5, 2))
    dow = dowling_poly(p, 12).coeffs
    chi, clo = _dd_split(dow)
    thm1 = poly_scale_arg(tanny_dowling_poly(p, 12), 3).to_float()
    return {
        "horner_many": (coeffs, xs),
        "laguerre_nodes": (64, 1e-14, 100),
        "laguerre_nodes_dd": (64, seeds64, 2),
        "laguerre_weighted_sum": (chi, -2.0, nhi, whi),
        "laguerre_weighted_sum_dd": (chi, clo, -2.0, 0.0, nhi, nlo, whi, wlo),
        "simpson_poly": (thm1, -1.0, 0.0, 1e-6, 4, 50, 1_000_000),
    }


def time_active(repeat: int) -> dict[str, float]:
    """Best-of timings for the kernels bound in this process."""
    out = {}
    for name, args in cases().items():
        fn = getattr(_kernels, name)
        fn(*args)  # compile / warm caches
        out[name] = _best_of(lambda: fn(*args), repeat)
    return out


def run(repeat: int) -> list[dict]:
    numba_times = time_active(repeat) if _kernels.USE_NUMBA else {}
    env = dict(os.environ, **{_kernels.DISABLE_ENV: "1"})
    child = subprocess.run(
        [sys.executable, __file__, "--repeat", str(repeat), "--active-only"],
        env=env, capture_output=True, text=True, check=True,
    )
    numpy_times = json.loads(child.stdout)
    rows = []
    for name in cases():
        row = {"kernel": name, "numba": numba_times.get(name), "numpy": numpy_times[name]}
        if row["numba"]:
            row["speedup"] = row["numpy"] / row["numba"]
        rows.append(row)
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", help="also write the table as JSON")
    parser.add_argument("--active-only", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.active_only:
        print(json.dumps(time_active(args.repeat)))
        return 0
    rows = run(args.repeat)
    print(f"{'kernel':28s} {'numba [s]':>12s} {'numpy [s]':>12s} {'speedup':>9s}")
    for r in rows:
        nb = f"{r['numba']:.3e}" if r["numba"] is not None else "-"
        sp = f"{r['speedup']:.1f}x" if "speedup" in r else "-"
        print(f"{r['kernel']:28s} {nb:>12s} {r['numpy']:12.3e} {sp:>9s}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
