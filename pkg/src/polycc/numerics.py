"""Small deterministic numerical kernels: bisection, damped-free Newton, maps.

Everything here is plain and reproducible: fixed iteration schedules, no
randomness, results identical bit-for-bit for identical inputs. Grid scans
elsewhere in the package rely on that for byte-stable artifacts.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

THREADS_ENV = "POLYCONFIG_THREADS"


def thread_count() -> int:
    """Worker cap for parallel maps; POLYCONFIG_THREADS overrides, default 1."""
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def map_indexed(fn, items):
    """Map fn over items, merging results in input order.

    Runs in a thread pool when POLYCONFIG_THREADS > 1; each call must be a
    pure function of its argument.
    """
    items = list(items)
    workers = thread_count()
    if workers == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def bisect_root(f, lo, hi, flo=None, fhi=None, xtol=1e-12, max_iter=200):
    """Plain bisection on a sign-change bracket [lo, hi]; returns the midpoint.

    The endpoints must straddle a sign change. Fixed deterministic schedule:
    halving until the bracket width falls below xtol.
    """
    if flo is None:
        flo = f(lo)
    if fhi is None:
        fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if (hi - lo) <= xtol:
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


def secant_polish(f, x0, x1, steps=2):
    """A couple of secant steps to sharpen a bisection result."""
    f0, f1 = f(x0), f(x1)
    for _ in range(steps):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not np.isfinite(x2):
            break
        x0, f0, x1, f1 = x1, f1, x2, f(x2)
    return x1


def sign_change_brackets(xs, values):
    """Index pairs (i, i+1) where consecutive values change sign."""
    out = []
    for i in range(len(xs) - 1):
        v0, v1 = values[i], values[i + 1]
        if not (np.isfinite(v0) and np.isfinite(v1)):
            continue
        if v0 == 0.0 or (v0 > 0) != (v1 > 0):
            out.append((i, i + 1))
    return out


def newton_system(f, x0, fd_step=1e-7, tol=1e-12, max_iter=60, lower=None, upper=None):
    """Newton iteration on a square system with central-difference Jacobian.

    fd_step is relative to each coordinate's magnitude. Iterates leaving
    the (lower, upper) box count as failures, as do singular Jacobians.
    Returns (x, max_abs_residual, iterations, converged).
    """
    x = np.array(x0, dtype=float)
    n = x.size
    it = 0
    for it in range(1, max_iter + 1):
        fx = np.asarray(f(x), dtype=float)
        if not np.all(np.isfinite(fx)):
            return x, np.inf, it, False
        resid = float(np.max(np.abs(fx)))
        if resid <= tol:
            return x, resid, it, True
        jac = np.empty((n, n))
        for i in range(n):
            step = fd_step * max(abs(x[i]), 1e-3)
            xp = x.copy()
            xm = x.copy()
            xp[i] += step
            xm[i] -= step
            jac[:, i] = (np.asarray(f(xp)) - np.asarray(f(xm))) / (2.0 * step)
        try:
            dx = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError:
            return x, resid, it, False
        if not np.all(np.isfinite(dx)):
            return x, resid, it, False
        x = x + dx
        if lower is not None and np.any(x < lower):
            return x, resid, it, False
        if upper is not None and np.any(x > upper):
            return x, resid, it, False
        if np.max(np.abs(dx)) <= 1e-15 * (1.0 + np.max(np.abs(x))):
            break
    fx = np.asarray(f(x), dtype=float)
    resid = float(np.max(np.abs(fx))) if np.all(np.isfinite(fx)) else np.inf
    return x, resid, it, resid <= tol
