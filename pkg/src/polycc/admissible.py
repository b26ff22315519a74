"""Exact arithmetic of admissible ring-count pairs, and the double-count refutation.

Vanishing of every tangential sum forces, for each lower index k, a congruence
theta - 2*pi*k/N = l_k * pi / L (mod 2*pi), and symmetrically for the upper
ring. Differencing consecutive congruences yields the divisibility facts
N | 2L and L | 2N; writing N = 2^n N1, L = 2^l L1 with N1, L1 odd then forces
N1 = L1 and n <= l <= n + 1, so L = N or L = 2N. All of that is integer
arithmetic and is carried out exactly here — floats never decide divisibility.

The L = 2N option survives the counting argument but not the dynamics: its
six-equation balance system is unsolvable, pinned by the strict signs of the
kernel gaps. nonexistence_certificate packages the numerical evidence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .errors import CollisionError
from .numerics import newton_system
from .residuals import self_interaction_constant
from .signsums import odd_even_cube_gap, odd_even_radial_gap

TWO_PI = 2.0 * math.pi


class Verdict(Enum):
    EQUAL = "equal"
    DOUBLE = "double"
    INADMISSIBLE = "inadmissible"


@dataclass(frozen=True)
class AdmissibilityReport:
    """Exact-arithmetic verdict for a ring-count pair (N, L)."""

    N: int
    L: int
    divisibility_ok: bool
    odd_parts_equal: bool
    verdict: Verdict
    admissible_thetas: tuple  # reduced (p, q) pairs meaning theta = p*pi/q

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "L": self.L,
            "divisibility_ok": self.divisibility_ok,
            "odd_parts_equal": self.odd_parts_equal,
            "verdict": self.verdict.value,
            "admissible_thetas": [[p, q] for p, q in self.admissible_thetas],
        }


def _odd_part(n: int) -> tuple[int, int]:
    """(two-adic valuation, odd part) of n."""
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    return v, n


def admissible(n: int, l: int) -> AdmissibilityReport:
    """Classify a ring-count pair by the exact congruence argument.

    Admissible twists (for non-inadmissible pairs) are the 2N reduced
    rational multiples {j*pi/N : j = 0..2N-1}.
    """
    if not (2 <= n <= l):
        raise ValueError("need 2 <= N <= L")
    div_ok = (2 * l) % n == 0 and (2 * n) % l == 0
    n_val, n_odd = _odd_part(n)
    l_val, l_odd = _odd_part(l)
    odd_equal = n_odd == l_odd
    if l == n:
        verdict = Verdict.EQUAL
    elif l == 2 * n and div_ok and odd_equal and n_val <= l_val <= n_val + 1:
        verdict = Verdict.DOUBLE
    else:
        verdict = Verdict.INADMISSIBLE
    thetas: tuple = ()
    if verdict is not Verdict.INADMISSIBLE:
        fracs = sorted(Fraction(j, n) for j in range(2 * n))
        thetas = tuple((f.numerator, f.denominator) for f in fracs)
    return AdmissibilityReport(
        N=n,
        L=l,
        divisibility_ok=div_ok,
        odd_parts_equal=odd_equal,
        verdict=verdict,
        admissible_thetas=thetas,
    )


def double_ring_residuals(n: int, a, b, h):
    """Residuals of the six balance equations of the L = 2N stack.

    mu is eliminated through the lower radial equation, so the first entry
    is identically zero; the remaining five measure the two upper radial
    equations and the three axial equations. Scalar arguments give a plain
    (6,) array; broadcastable arrays give shape (6, ...).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    scalar = np.isscalar(a) and np.isscalar(b) and np.isscalar(h)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    h = np.asarray(h, dtype=float)
    if scalar and abs(float(a) - 1.0) < 1e-12 and float(h) == 0.0:
        raise CollisionError("a = 1 with h = 0 stacks vertices of the two rings")

    l = 2 * n
    const_low = self_interaction_constant(n)
    const_up = self_interaction_constant(l)

    j_all = np.arange(1, l + 1) * math.pi / n          # j*pi/N, j = 1..2N
    j_odd = (2 * np.arange(1, n + 1) - 1) * math.pi / n
    j_even = 2 * np.arange(1, n + 1) * math.pi / n

    a_ = a[..., None]
    h_ = h[..., None]

    d_all = (1.0 + a_**2 - 2.0 * a_ * np.cos(j_all) + h_**2) ** -1.5
    d_odd = (1.0 + a_**2 - 2.0 * a_ * np.cos(j_odd) + h_**2) ** -1.5
    d_even = (1.0 + a_**2 - 2.0 * a_ * np.cos(j_even) + h_**2) ** -1.5

    mu = const_low + b * np.sum((1.0 - a_ * np.cos(j_all)) * d_all, axis=-1)
    up_base = b * const_up / a**3
    r_odd = up_base + np.sum((1.0 - np.cos(j_odd) / a_) * d_odd, axis=-1) - mu
    r_even = up_base + np.sum((1.0 - np.cos(j_even) / a_) * d_even, axis=-1) - mu

    denom = n + b * l
    v_all = h * np.sum(d_all, axis=-1) - mu * l * h / denom
    v_odd = h * np.sum(d_odd, axis=-1) - mu * n * h / denom
    v_even = h * np.sum(d_even, axis=-1) - mu * n * h / denom

    out = np.stack([np.zeros_like(mu), r_odd, r_even, v_all, v_odd, v_even])
    return out if not scalar else out.reshape(6)


def double_ring_residuals_normalized(n: int, a, b, h):
    """The L = 2N system with the common factor h divided out of the axial rows.

    The axial balance carries an overall factor h on both sides; the
    displayed form therefore degenerates to 0 = 0 at h = 0 and stops
    measuring solvability there (mass-decoupled corners of parameter space
    can then tune the surviving radial rows arbitrarily small). Dividing by
    h keeps the axial constraints alive for all h >= 0 — at h = 0 they
    encode the h -> 0+ limit — and the unsolvability margin of the system
    stays macroscopic. This is the residual the nonexistence certificate
    scans; double_ring_residuals keeps the displayed form.

    Rows: [0, upper radial odd, upper radial even, axial lower/h,
    axial upper odd/h, axial upper even/h].
    """
    if n < 2:
        raise ValueError("need n >= 2")
    scalar = np.isscalar(a) and np.isscalar(b) and np.isscalar(h)
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    h = np.asarray(h, dtype=float)
    if scalar and abs(float(a) - 1.0) < 1e-12 and float(h) == 0.0:
        raise CollisionError("a = 1 with h = 0 stacks vertices of the two rings")

    l = 2 * n
    const_low = self_interaction_constant(n)
    const_up = self_interaction_constant(l)

    j_all = np.arange(1, l + 1) * math.pi / n
    j_odd = (2 * np.arange(1, n + 1) - 1) * math.pi / n
    j_even = 2 * np.arange(1, n + 1) * math.pi / n

    a_ = a[..., None]
    h_ = h[..., None]
    d_all = (1.0 + a_**2 - 2.0 * a_ * np.cos(j_all) + h_**2) ** -1.5
    d_odd = (1.0 + a_**2 - 2.0 * a_ * np.cos(j_odd) + h_**2) ** -1.5
    d_even = (1.0 + a_**2 - 2.0 * a_ * np.cos(j_even) + h_**2) ** -1.5

    mu = const_low + b * np.sum((1.0 - a_ * np.cos(j_all)) * d_all, axis=-1)
    up_base = b * const_up / a**3
    r_odd = up_base + np.sum((1.0 - np.cos(j_odd) / a_) * d_odd, axis=-1) - mu
    r_even = up_base + np.sum((1.0 - np.cos(j_even) / a_) * d_even, axis=-1) - mu

    denom = n + b * l
    v_all = np.sum(d_all, axis=-1) - mu * l / denom
    v_odd = np.sum(d_odd, axis=-1) - mu * n / denom
    v_even = np.sum(d_even, axis=-1) - mu * n / denom

    out = np.stack([np.zeros_like(mu), r_odd, r_even, v_all, v_odd, v_even])
    return out if not scalar else out.reshape(6)


def _certificate_box():
    return {
        "a": (0.05, 20.0),
        "b": (0.01, 50.0),
        "h": (0.0, 10.0),
    }


def _scan_grids(a_points: int, b_points: int, h_points: int):
    box = _certificate_box()
    a_grid = np.geomspace(*box["a"], a_points)
    a_grid = a_grid[np.abs(a_grid - 1.0) > 1e-6]
    b_grid = np.geomspace(*box["b"], b_points)
    h_grid = np.concatenate([[0.0], np.geomspace(0.01, box["h"][1], h_points - 1)])
    return a_grid, b_grid, h_grid


def nonexistence_certificate(
    n: int,
    a_points: int = 48,
    b_points: int = 32,
    h_points: int = 13,
    draws: int = 10_000,
    seed: int = 0,
    polish: bool = True,
) -> dict:
    """Machine-readable evidence that the L = 2N stack is never central.

    The argument has two sign-definite steps plus corroborating scans:

    1. The difference of the two upper axial equations equals
       h * odd_even_cube_gap(a, h^2, N), and the gap is strictly negative;
       so any solution needs h = 0.
    2. At h = 0 the two upper radial equations force
       odd_even_radial_gap(a, N) = 0, which the sign split forbids for
       a != 1, while a = 1 collides the rings.

    The system scan and randomized starts then confirm the six-equation
    residual stays bounded away from zero over the declared parameter box
    (the infimum is approached only at the degenerate boundary a -> 0,
    b -> 0 outside any positive-mass, collision-free region, which is why
    the box bounds are part of the certificate).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    box = _certificate_box()

    # step 1 witness: cube-kernel gap strictly negative
    a_grid_w = np.geomspace(0.05, 20.0, 200)
    x_grid_w = np.concatenate([[0.0], np.geomspace(1e-2, 100.0, 49)])
    cube_vals = odd_even_cube_gap(a_grid_w[:, None], x_grid_w[None, :], n)
    singular = (np.abs(a_grid_w[:, None] - 1.0) < 1e-12) & (x_grid_w[None, :] == 0.0)
    cube_max = float(np.max(cube_vals[~singular]))

    # step 2 witness: radial-kernel gap bounded away from zero off a = 1
    x_inner = np.geomspace(0.05, 1.0 - 1e-4, 200)
    x_outer = np.geomspace(1.0 + 1e-4, 20.0, 200)
    radial_inner = odd_even_radial_gap(x_inner, n)
    radial_outer = odd_even_radial_gap(x_outer, n)

    # corroborating scan of the normalized six-equation residual over the box
    a_grid, b_grid, h_grid = _scan_grids(a_points, b_points, h_points)
    resid = double_ring_residuals_normalized(
        n,
        a_grid[:, None, None],
        b_grid[None, :, None],
        h_grid[None, None, :],
    )
    max_resid = np.max(np.abs(resid), axis=0)
    flat = int(np.argmin(max_resid))
    ia, ib, ih = np.unravel_index(flat, max_resid.shape)
    grid_min = float(max_resid[ia, ib, ih])
    best = [float(a_grid[ia]), float(b_grid[ib]), float(h_grid[ih])]

    polished_min = grid_min
    polished_at = list(best)
    polish_record: dict = {"ran": False}
    if polish:
        # Local Newton from the best grid point, on the square subsystem
        # (upper radial odd, axial lower, axial upper odd). If it lands on a
        # subsystem root, the remaining two equations' defects are exactly
        # the two sign-lemma gaps: the genuine obstruction to solvability.
        lo = np.array([box["a"][0], box["b"][0], box["h"][0]])
        hi = np.array([box["a"][1], box["b"][1], box["h"][1]])
        x0 = np.clip(np.asarray(best), lo, hi)

        def subsystem(x):
            r = double_ring_residuals_normalized(n, float(x[0]), float(x[1]), float(x[2]))
            return r[[1, 3, 4]]

        x_end, sub_resid, iters, sub_ok = newton_system(
            subsystem, x0, tol=1e-13, max_iter=80, lower=lo, upper=hi
        )
        x_end = np.clip(x_end, lo, hi)
        full = double_ring_residuals_normalized(
            n, float(x_end[0]), float(x_end[1]), float(x_end[2])
        )
        cand = float(np.max(np.abs(full)))
        polish_record = {
            "ran": True,
            "start": [float(v) for v in x0],
            "end": [float(v) for v in x_end],
            "subsystem_converged": bool(sub_ok),
            "iterations": iters,
            "converged_to_zero": bool(cand <= 1e-10),
        }
        if cand < polished_min:
            polished_min = cand
            polished_at = [float(v) for v in x_end]

        # disclosure: let the same Newton run free of the box and record its
        # fate; escapes toward the decoupled-ring corners are the expected
        # failure mode when no root exists
        x_free, free_resid, free_iters, free_ok = newton_system(
            subsystem, x0, tol=1e-13, max_iter=200
        )
        free_record = {
            "subsystem_converged": bool(free_ok),
            "end": [float(v) for v in np.atleast_1d(x_free)],
            "iterations": free_iters,
        }
        if free_ok and np.all(np.isfinite(x_free)) and x_free[0] > 0:
            full_free = double_ring_residuals_normalized(
                n, float(x_free[0]), float(x_free[1]), abs(float(x_free[2]))
            )
            free_record["full_residual_max"] = float(np.max(np.abs(full_free)))
            free_record["in_box"] = bool(
                np.all(x_free >= lo) and np.all(x_free <= hi)
            )
            free_record["leftover_obstruction"] = {
                "upper_radial_gap": float(full_free[2] - full_free[1]),
                "axial_gap": float(full_free[5] - full_free[4]),
            }
        polish_record["unbounded"] = free_record

    # randomized refutation over the same box
    rng = np.random.default_rng(seed)
    ra = np.exp(rng.uniform(np.log(box["a"][0]), np.log(box["a"][1]), draws))
    rb = np.exp(rng.uniform(np.log(box["b"][0]), np.log(box["b"][1]), draws))
    rh = np.exp(rng.uniform(np.log(1e-3), np.log(box["h"][1]), draws))
    rh[rng.uniform(size=draws) < 0.25] = 0.0
    collide = (np.abs(ra - 1.0) < 1e-9) & (rh == 0.0)
    ra[collide] = 1.5  # measure-zero guard
    rand_resid = np.max(
        np.abs(double_ring_residuals_normalized(n, ra, rb, rh)), axis=0
    )
    rand_min = float(np.min(rand_resid))
    rand_arg = int(np.argmin(rand_resid))

    return {
        "N": n,
        "L": 2 * n,
        "conclusion": "no central configuration with L = 2N",
        "box": {k: list(v) for k, v in box.items()},
        "vertical_witness": {
            "gap_function": "odd_even_cube_gap",
            "grid": {"a": [0.05, 20.0, 200], "x": [0.0, 100.0, 50]},
            "max_observed": cube_max,
            "sign_ok": cube_max < 0.0,
            "implies": "h = 0 at any solution",
        },
        "planar_witness": {
            "gap_function": "odd_even_radial_gap",
            "grid": {"x_inner": [0.05, 1.0, 200], "x_outer": [1.0, 20.0, 200]},
            "min_inner": float(np.min(radial_inner)),
            "max_outer": float(np.max(radial_outer)),
            "min_abs": float(
                min(np.min(np.abs(radial_inner)), np.min(np.abs(radial_outer)))
            ),
            "sign_ok": bool(
                np.all(radial_inner > 0.0) and np.all(radial_outer < 0.0)
            ),
            "implies": "no coplanar solution with a != 1; a = 1 collides",
        },
        "system_scan": {
            "residual": "double_ring_residuals_normalized",
            "grid": {
                "a_points": int(len(a_grid)),
                "b_points": b_points,
                "h_points": h_points,
            },
            "min_max_residual": grid_min,
            "argmin": best,
            "polished_min": polished_min,
            "polished_at": polished_at,
            "polish": polish_record,
            "note": (
                "Scan and polish quantify the defect at desk scale inside the "
                "declared box. Near its extreme corners (large b with tuned "
                "(a, h), or the shrunken-ring limit) the rings decouple and "
                "the residual infimum thins out toward zero without ever "
                "reaching it; strict nonexistence everywhere rests on the two "
                "sign witnesses, which never vanish."
            ),
        },
        "random_refutation": {
            "draws": draws,
            "seed": seed,
            "min_max_residual": rand_min,
            "argmin": [float(ra[rand_arg]), float(rb[rand_arg]), float(rh[rand_arg])],
        },
    }


def tangential_infeasibility_scan(
    n: int, l: int, a: float, h: float, grid_mult: int = 16
) -> dict:
    """Float cross-check that no twist angle kills all tangential sums at once.

    Scans theta over a uniform grid of grid_mult * lcm(N, L) points and
    records, for each theta, the largest magnitude among all N + L
    tangential sums; the minimum of that over theta is the infeasibility
    margin. Used to corroborate INADMISSIBLE verdicts.
    """
    if not (2 <= n <= l):
        raise ValueError("need 2 <= N <= L")
    points = grid_mult * math.lcm(n, l)
    thetas = (np.arange(points) + 0.5) * TWO_PI / points

    k = np.arange(n)[:, None]
    j_up = np.arange(l)[None, :]
    psi0 = TWO_PI * j_up / l - TWO_PI * k / n  # (n, l)
    ll = np.arange(l)[:, None]
    j_dn = np.arange(n)[None, :]
    chi0 = TWO_PI * j_dn / n - TWO_PI * ll / l  # (l, n)

    worst = np.empty(points)
    for idx, theta in enumerate(thetas):
        psi = psi0 + theta
        chi = chi0 - theta
        d_low = (1.0 + a * a - 2.0 * a * np.cos(psi) + h * h) ** -1.5
        d_up = (1.0 + a * a - 2.0 * a * np.cos(chi) + h * h) ** -1.5
        t_low = np.abs(np.sum(np.sin(psi) * d_low, axis=1))
        t_up = np.abs(np.sum(np.sin(chi) * d_up, axis=1))
        worst[idx] = max(float(np.max(t_low)), float(np.max(t_up)))

    imin = int(np.argmin(worst))
    return {
        "N": n,
        "L": l,
        "a": a,
        "h": h,
        "grid_points": points,
        "min_max_tangential": float(worst[imin]),
        "argmin_theta": float(thetas[imin]),
    }
