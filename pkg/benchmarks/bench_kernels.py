#!/usr/bin/env python3
"""Benchmark the hot quadrature kernels: compiled extension vs numpy fallback.

Run from the repo root after installing the package:

    python benchmarks/bench_kernels.py

Prints wall times per kernel and problem size plus the speedup. The two
backends implement identical math; agreement is also asserted here (to
rounding) before timing.
"""
import time

import numpy as np

from relpack import _kernels_py
from relpack.quadrature import radial_squared_axis, trapezoid_axis

try:
    from relpack import _kernels

    HAVE_COMPILED = True
except ImportError:
    _kernels = None
    HAVE_COMPILED = False

MASS = 1.0
SIGMA_P = 0.0173
PMAG = 1.732


def moment_args(n):
    axes, weights = [], []
    for c in (0.0, 0.0, PMAG):
        nodes, w = trapezoid_axis(c, 8 * SIGMA_P, n)
        rho = nodes - c
        weights.append(w * np.exp(-rho * rho / (2 * SIGMA_P**2)))
        axes.append(nodes)
    return (*axes, *weights, MASS)


def boost_args(n):
    g0 = 2.0
    b0 = np.sqrt(1 - 1 / g0**2)
    ax, wx = trapezoid_axis(0.0, 8 * 0.005, n)
    az, wz = trapezoid_axis(g0 * b0, 8 * g0 * 0.005, n)
    return (ax, ax, az, wx, wx, wz, MASS, 0.005, b0)


def profile_args(n):
    rho, wrho = trapezoid_axis(0.0, 8 * SIGMA_P, n)
    wrho = wrho * np.exp(-rho * rho / (4 * SIGMA_P**2))
    s, ws = radial_squared_axis(8 * SIGMA_P, n)
    ws = ws * np.exp(-s / (4 * SIGMA_P**2))
    offsets = np.linspace(-150.0, 150.0, 41)
    t = 1000.0
    return (rho, wrho, s, ws, PMAG, MASS, t, offsets + 0.866 * t, np.zeros(41))


CASES = [
    ("velocity_moment_sums", moment_args, [64, 128]),
    ("boosted_gradient_sums", boost_args, [64, 128]),
    ("oscillatory_profile_sums", profile_args, [128, 256]),
]


def timed(fn, args, repeats=3):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def flatten(result):
    if isinstance(result, tuple):
        return np.concatenate([np.atleast_1d(np.asarray(r, dtype=complex)).ravel()
                               for r in result])
    return np.asarray(result).ravel()


def main():
    print(f"compiled extension available: {HAVE_COMPILED}")
    header = f"{'kernel':<26} {'n':>5} {'numpy [ms]':>12} {'compiled [ms]':>14} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make_args, sizes in CASES:
        for n in sizes:
            args = make_args(n)
            t_py, out_py = timed(getattr(_kernels_py, name), args)
            if HAVE_COMPILED:
                t_cy, out_cy = timed(getattr(_kernels, name), args)
                ref = flatten(out_py)
                # zero-by-symmetry entries only carry cancellation noise, so
                # the absolute floor scales with the largest magnitude present
                atol = 1e-12 * np.max(np.abs(ref))
                if not np.allclose(ref, flatten(out_cy), rtol=1e-10, atol=atol):
                    raise SystemExit(f"backend mismatch in {name} at n={n}")
                print(f"{name:<26} {n:>5} {1e3 * t_py:>12.2f} {1e3 * t_cy:>14.2f} "
                      f"{t_py / t_cy:>8.2f}")
            else:
                print(f"{name:<26} {n:>5} {1e3 * t_py:>12.2f} {'-':>14} {'-':>8}")


if __name__ == "__main__":
    main()
