"""Sign analysis of the trigonometric kernel sums behind the balance system.

The tangential and axial balance conditions reduce to finite sums of the form

    sum_j  w(ang_j + t) / (1 + a^2 - 2a cos(ang_j + t) + x)^alpha

over ring angles ang_j. Which parameter sets make these sums vanish, and the
strict signs they keep elsewhere, decide which stacked-pair shapes can exist.
This module evaluates the relevant sums exactly (no approximation beyond
floating point), locates their zero angles, and expands the square-root
kernel gap as a power series with provably signed coefficients.

Desk-scale certification: sign checks use exact sums at grid nodes plus
bisection refinement, not interval arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import gammaln, logsumexp

from .errors import SingularityError
from .numerics import bisect_root, sign_change_brackets

TWO_PI = 2.0 * math.pi

# Plain evaluation of the odd-minus-even gaps cancels catastrophically where
# the true value is tiny (it decays like t^n while each sum stays O(n)).
# Points losing more than _CANCEL_GUARD of relative magnitude are re-evaluated
# through the same-sign series below, which accumulates magnitudes only and
# keeps full relative precision.
_CANCEL_GUARD = 1e-9
_SERIES_ORDER = 512
_SERIES_T_MAX = 0.7


# ---------------------------------------------------------------------------
# generalized tangential sum and its zero angles


def twisted_sine_sum(a: float, theta: float, n: int, x: float, alpha: float) -> float:
    """sum_j sin(ang_j + theta) / (1 + a^2 - 2a cos(ang_j + theta) + x)^alpha
    over the ring angles ang_j = 2*pi*j/n.

    Positivity of this sum for theta strictly inside (0, pi/n) is what pins
    the admissible twist angles. theta = pi/n is allowed for the exact
    antisymmetric-cancellation check (the sum vanishes there identically).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 < theta <= math.pi / n + 1e-15):
        raise ValueError(f"theta must lie in (0, pi/{n}], got {theta!r}")
    if a <= 0.0 or alpha <= 0.0 or x < 0.0:
        raise ValueError("need a > 0, alpha > 0, x >= 0")
    ang = TWO_PI * np.arange(1, n + 1) / n + theta
    base = 1.0 + a * a - 2.0 * a * np.cos(ang) + x
    return float(np.sum(np.sin(ang) * base**-alpha))


def _tangential_profile(n: int, a: float, h: float, thetas: np.ndarray) -> np.ndarray:
    ang = TWO_PI * np.arange(1, n + 1) / n
    arg = ang[None, :] + thetas[:, None]
    d = 1.0 + a * a - 2.0 * a * np.cos(arg) + h * h
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.sum(np.sin(arg) * d**-1.5, axis=1)
    return vals


def _mp_refine_zero(n: int, a: float, h: float, lo: float, hi: float) -> float:
    """Bisection with extended-precision sign evaluation.

    Ring sums with strong kernel damping cancel structurally, leaving the
    tangential profile orders of magnitude below its own terms; double
    precision then cannot place the crossing to 1e-12. Signs computed at
    40 digits can.
    """
    import mpmath as mp

    def sign_at(theta: float) -> int:
        with mp.workdps(40):
            am, hm, tm = mp.mpf(a), mp.mpf(h), mp.mpf(theta)
            total = mp.mpf(0)
            for j in range(1, n + 1):
                ang = 2 * mp.pi * j / n + tm
                d = 1 + am * am - 2 * am * mp.cos(ang) + hm * hm
                total += mp.sin(ang) / d**mp.mpf("1.5")
            return 1 if total > 0 else -1

    s_lo = sign_at(lo)
    if s_lo == sign_at(hi):
        return 0.5 * (lo + hi)
    for _ in range(80):
        if hi - lo <= 1e-14:
            break
        mid = 0.5 * (lo + hi)
        if sign_at(mid) == s_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sine_zero_angles(n: int, a: float, h: float, grid: int = 0) -> list[float]:
    """All twist angles in [0, 2*pi) where the cubic-kernel sine sum vanishes.

    Sign changes on a half-step-offset uniform grid are refined by bisection
    to 1e-12. Crossings through a collision pole (possible only at a = 1,
    h = 0, where the kernel blows up at ring-aligned twists) are filtered by
    the magnitude of the sum at the refined point and skipped.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if grid <= 0:
        grid = 16 * n
    grid = max(grid, 4 * n)

    # half-step offset keeps grid nodes off the exact zeros at j*pi/n
    thetas = (np.arange(grid) + 0.5) * TWO_PI / grid
    vals = _tangential_profile(n, a, h, thetas)

    def f(t: float) -> float:
        return float(_tangential_profile(n, a, h, np.array([t]))[0])

    zeros: list[float] = []
    for i in range(grid):
        i2 = (i + 1) % grid
        t0 = thetas[i]
        t1 = thetas[i2] if i2 != 0 else thetas[0] + TWO_PI
        v0, v1 = vals[i], vals[i2]
        if not (np.isfinite(v0) and np.isfinite(v1)):
            continue
        if v0 == 0.0 or (v0 > 0) != (v1 > 0):
            root = bisect_root(f, t0, t1, flo=v0, fhi=v1, xtol=1e-13)
            if abs(f(root)) > 1e-3:
                continue  # pole crossing at a collision twist, not a zero
            # strongly damped kernels cancel structurally; when the local
            # slope cannot resolve 1e-12 against double-precision noise,
            # redo the bisection with extended-precision signs
            probe = 1e-6
            slope = abs(f(root + probe) - f(root - probe)) / (2.0 * probe)
            if slope == 0.0 or 2e-17 / slope > 1e-12:
                root = _mp_refine_zero(n, a, h, root - probe, root + probe)
            z = root % TWO_PI
            if TWO_PI - z < 1e-9:
                z = 0.0
            zeros.append(z)

    zeros.sort()
    deduped: list[float] = []
    for z in zeros:
        if not deduped or abs(z - deduped[-1]) > 1e-10:
            deduped.append(z)
    if len(deduped) >= 2 and abs((deduped[0] + TWO_PI) - deduped[-1]) <= 1e-10:
        deduped.pop()
    return deduped


# ---------------------------------------------------------------------------
# gaps between odd-multiple and even-multiple kernel sums

def _kernel_sum(a, x, angles, power: float):
    a = np.asarray(a, dtype=float)
    x = np.asarray(x, dtype=float)
    d = 1.0 + a[..., None] ** 2 - 2.0 * a[..., None] * np.cos(angles) + x[..., None]
    return np.sum(d**-power, axis=-1)


@lru_cache(maxsize=64)
def _cube_series_coeffs(n: int, order: int = _SERIES_ORDER) -> np.ndarray:
    """Coefficients gamma_m of the cube-gap series in t = 2a/(1+a^2+x):

        gap = (1+a^2+x)^(-3/2) * sum_m gamma_m t^m,
        gamma_m = beta_m * D_m,   beta_m = rising(3/2, m)/m!,
        D_m = -4n 2^(-m) * sum over odd q with nq <= m, nq = m (mod 2)
              of C(m, (m-nq)/2).

    Every gamma_m is nonpositive (first nonzero at m = n), which is what
    makes the series evaluation cancellation-free.
    """
    beta = np.empty(order + 1)
    beta[0] = 1.0
    for m in range(order):
        beta[m + 1] = beta[m] * (m + 1.5) / (m + 1.0)
    dcoef = np.zeros(order + 1)
    ln2 = math.log(2.0)
    for m in range(n, order + 1):
        q = np.arange(1, m // n + 1, 2)
        q = q[(m - n * q) % 2 == 0]
        if q.size == 0:
            continue
        s = (m - n * q) // 2
        log_c = gammaln(m + 1) - gammaln(s + 1) - gammaln(m - s + 1) - m * ln2
        dcoef[m] = -4.0 * n * float(np.sum(np.exp(log_c)))
    return beta * dcoef


def _cube_gap_series(n: int, a: np.ndarray, x: np.ndarray) -> np.ndarray:
    coeffs = _cube_series_coeffs(n)
    base = 1.0 + a * a + x
    t = 2.0 * a / base
    acc = np.zeros_like(t)
    for c in coeffs[::-1]:
        acc = acc * t + c
    return base**-1.5 * acc


def odd_even_cube_gap(a, x, n: int):
    """Difference of softened inverse-cube sums, odd minus even angle set:

        sum_j (1 + a^2 - 2a cos((2j-1)pi/n) + x)^(-3/2)
      - sum_j (1 + a^2 - 2a cos(2j pi/n)    + x)^(-3/2)

    Strictly negative for all a > 0, x >= 0 away from the single singular
    point (a, x) = (1, 0), where it raises SingularityError. Accepts scalar
    or broadcastable array arguments. Points where direct summation loses
    the value to cancellation are evaluated through the equivalent
    same-sign series instead.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    scalar = np.isscalar(a) and np.isscalar(x)
    if scalar and abs(float(a) - 1.0) < 1e-14 and float(x) == 0.0:
        raise SingularityError("odd_even_cube_gap undefined at a = 1, x = 0")
    j = np.arange(1, n + 1)
    odd = (2.0 * j - 1.0) * math.pi / n
    even = 2.0 * j * math.pi / n
    s_odd = _kernel_sum(a, x, odd, 1.5)
    s_even = _kernel_sum(a, x, even, 1.5)
    out = np.asarray(s_odd - s_even, dtype=float)

    av, xv = np.broadcast_arrays(np.asarray(a, float), np.asarray(x, float))
    t = 2.0 * av / (1.0 + av * av + xv)
    shaky = (np.abs(out) < _CANCEL_GUARD * (s_odd + s_even)) & (t <= _SERIES_T_MAX)
    if np.any(shaky):
        out = np.array(out, copy=True)
        out[shaky] = _cube_gap_series(n, av[shaky], xv[shaky])
    return float(out) if scalar else out


@lru_cache(maxsize=64)
def _sqrt_gap_series_coeffs(n: int, order: int = _SERIES_ORDER) -> np.ndarray:
    return series_coeffs(n, order).b


def _radial_gap_series(n: int, x: np.ndarray) -> np.ndarray:
    """Same-sign series for the radial gap on both sides of x = 1.

    With h(x) = sum b_m x^m the square-root kernel gap, dh/dx = -x f(x)
    gives f(x) = -sum m b_m x^(m-2) on (0, 1); the reflection
    h(x) = h(1/x)/x turns that into f(x) = x^(-3) sum (m+1) b_m x^(-m)
    on (1, inf). All series terms share one sign on each side.
    """
    b = _sqrt_gap_series_coeffs(n)
    m = np.arange(b.size)
    out = np.empty_like(x)
    inner = x < 1.0
    if np.any(inner):
        coeffs = -m * b  # power x^(m-2), lowest m with b_m != 0 is m = n >= 2
        acc = np.zeros_like(x[inner])
        for c in coeffs[:1:-1]:
            acc = (acc + c) * x[inner]
        out[inner] = (acc + coeffs[1]) / x[inner]
    if np.any(~inner):
        u = 1.0 / x[~inner]
        coeffs = (m + 1.0) * b
        acc = np.zeros_like(u)
        for c in coeffs[::-1]:
            acc = acc * u + c
        out[~inner] = u**3 * acc
    return out


def odd_even_radial_gap(x, n: int):
    """Difference of the coplanar radial kernels, odd minus even angle set:

        sum_j (1 - cos((2j-1)pi/n)/x) / (1 + x^2 - 2x cos((2j-1)pi/n))^(3/2)
      - sum_j (1 - cos(2j pi/n)/x)    / (1 + x^2 - 2x cos(2j pi/n))^(3/2)

    Positive on (0, 1) and negative on (1, inf); x = 1 is excluded.
    Accepts scalar or array x. Cancellation-dominated points fall back to
    the equivalent same-sign series.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float)).ravel()
    if np.any(xa <= 0.0) or np.any(xa == 1.0):
        raise ValueError("x must be positive and different from 1")
    j = np.arange(1, n + 1)
    odd = (2.0 * j - 1.0) * math.pi / n
    even = 2.0 * j * math.pi / n

    c_odd = np.cos(odd)
    c_even = np.cos(even)
    xv = xa[:, None]
    term_odd = (1.0 - c_odd / xv) * (1.0 + xv**2 - 2.0 * xv * c_odd) ** -1.5
    term_even = (1.0 - c_even / xv) * (1.0 + xv**2 - 2.0 * xv * c_even) ** -1.5
    out = np.sum(term_odd, axis=1) - np.sum(term_even, axis=1)

    scale = np.sum(np.abs(term_odd), axis=1) + np.sum(np.abs(term_even), axis=1)
    shaky = (np.abs(out) < _CANCEL_GUARD * scale) & (
        (xa <= _SERIES_T_MAX) | (xa >= 1.0 / _SERIES_T_MAX)
    )
    if np.any(shaky):
        out[shaky] = _radial_gap_series(n, xa[shaky])
    if scalar:
        return float(out[0])
    return out.reshape(np.shape(x))


def odd_even_sqrt_gap(x, n: int):
    """Square-root-kernel gap, odd minus even angle set:

        sum_j (1 + x^2 - 2x cos((2j-1)pi/n))^(-1/2)
      - sum_j (1 + x^2 - 2x cos(2j pi/n))^(-1/2)

    The generating function reconstructed by series_coeffs; negative on (0, 1).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    scalar = np.isscalar(x)
    xa = np.atleast_1d(np.asarray(x, dtype=float))
    j = np.arange(1, n + 1)
    odd = (2.0 * j - 1.0) * math.pi / n
    even = 2.0 * j * math.pi / n
    out = _kernel_sum(xa, np.zeros_like(xa), odd, 0.5) - _kernel_sum(
        xa, np.zeros_like(xa), even, 0.5
    )
    return float(out[0]) if scalar else out.reshape(np.shape(x))


# ---------------------------------------------------------------------------
# power series of the square-root kernel gap


@dataclass(eq=False)
class SeriesCoeffs:
    """Truncated series data for the square-root kernel gap.

    d holds the binomial coefficients of (1 - z)^(-1/2); b the gap series
    coefficients, every one of which is nonpositive. tail_bound is the
    geometric tail estimate d_M^2 (M+1) r^(M+1) / (1-r) at the stored
    evaluation radius.
    """

    d: np.ndarray
    b: np.ndarray
    truncation_order: int
    tail_bound: float
    radius: float

    def partial_sum(self, x: float) -> float:
        powers = np.power(float(x), np.arange(self.truncation_order + 1))
        return float(np.sum(self.b * powers))


def series_coeffs(n: int, order: int, radius: float = 0.5) -> SeriesCoeffs:
    """Coefficients d_m of (1 - z)^(-1/2) and the gap series b_m up to order.

    d follows the stable recurrence d_{m+1} = d_m (m + 1/2) / (m + 1); b is
    the convolution restricted to index pairs congruent mod n:

        b_m = n * sum_{k+l=m, k = l (mod n)} d_k d_l [cos((k-l) pi / n) - 1].

    The coefficients stay in [0, 1] throughout, so no overflow guard is
    needed at any order.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if order < n:
        raise ValueError(f"order must be at least n = {n}")
    if not (0.0 < radius < 1.0):
        raise ValueError("radius must lie in (0, 1)")

    d = np.empty(order + 1)
    d[0] = 1.0
    for m in range(order):
        d[m + 1] = d[m] * (m + 0.5) / (m + 1.0)

    b = np.zeros(order + 1)
    for m in range(order + 1):
        k = np.arange(m + 1)
        diff = 2 * k - m  # k - l with l = m - k
        mask = diff % n == 0
        if not np.any(mask):
            continue
        kk = k[mask]
        b[m] = n * np.sum(
            d[kk] * d[m - kk] * (np.cos(diff[mask] * math.pi / n) - 1.0)
        )

    tail = d[order] ** 2 * (order + 1) * radius ** (order + 1) / (1.0 - radius)
    return SeriesCoeffs(
        d=d, b=b, truncation_order=order, tail_bound=float(tail), radius=radius
    )


# ---------------------------------------------------------------------------
# root-compared half sums (the alpha -> infinity comparison device)


def _half_sum_terms(theta: float, n: int):
    plus_j = np.arange(0, (n - 1) // 2 + 1)  # ang_0 = 0 belongs to the plus set
    minus_j = np.arange(1, n // 2 + 1)
    plus_ang = TWO_PI * plus_j / n + theta
    minus_ang = TWO_PI * minus_j / n - theta
    return plus_ang, minus_ang


def half_sum_root_gap(a: float, theta: float, n: int, t: float, alpha: float) -> float:
    """Gap of alpha-th roots of the positive-sine and negative-sine half sums:

        { sum_{j in plus half} sin(ang_j + theta) (1 - t cos(ang_j + theta))^(-alpha) }^(1/alpha)
      - { sum_{j in minus half} sin(ang_j - theta) (1 - t cos(ang_j - theta))^(-alpha) }^(1/alpha)

    Same sign as twisted_sine_sum at the matching x = 2a/t - 1 - a^2. Both
    half sums have positive terms for theta in (0, pi/n), so the roots are
    real; evaluation is in log space to support large alpha.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 < theta < math.pi / n):
        raise ValueError(f"theta must lie strictly in (0, pi/{n})")
    tmax = 2.0 * a / (1.0 + a * a)
    if not (0.0 < t <= tmax + 1e-15):
        raise ValueError(f"t must lie in (0, 2a/(1+a^2)] = (0, {tmax:.12g}]")
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    plus_ang, minus_ang = _half_sum_terms(theta, n)

    def log_half(angles: np.ndarray) -> float:
        s = np.sin(angles)
        base = 1.0 - t * np.cos(angles)
        return float(logsumexp(np.log(s) - alpha * np.log(base)))

    return math.exp(log_half(plus_ang) / alpha) - math.exp(log_half(minus_ang) / alpha)


def half_sum_root_gap_limit(theta: float, n: int, t: float) -> float:
    """Pointwise large-alpha limit of half_sum_root_gap:

        1 / (1 - t cos(theta)) - 1 / (1 - t cos(2*pi/n - theta)).

    Strictly positive for theta in (0, pi/n) and t in (0, 1).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not (0.0 < theta < math.pi / n):
        raise ValueError(f"theta must lie strictly in (0, pi/{n})")
    return 1.0 / (1.0 - t * math.cos(theta)) - 1.0 / (
        1.0 - t * math.cos(TWO_PI / n - theta)
    )


def power_sum_root(weights, bases, exponent: float) -> float:
    """(sum_j w_j A_j^p)^(1/p) evaluated stably in log space.

    As p grows this tends to max_j A_j; used to probe the limit and
    derivative behavior of weighted power sums without overflow.
    """
    w = np.asarray(weights, dtype=float)
    a = np.asarray(bases, dtype=float)
    if np.any(w <= 0) or np.any(a <= 0):
        raise ValueError("weights and bases must be positive")
    return float(math.exp(logsumexp(np.log(w) + exponent * np.log(a)) / exponent))


# ---------------------------------------------------------------------------
# JSON-able sign reports


def _grid_report(name: str, grid_spec: dict, values: np.ndarray, violation_mask) -> dict:
    values = np.asarray(values, dtype=float)
    bad = np.argwhere(violation_mask)
    return {
        "lemma": name,
        "grid": grid_spec,
        "min_observed": float(np.min(values)),
        "max_observed": float(np.max(values)),
        "violations": [
            {"index": [int(i) for i in idx], "value": float(values[tuple(idx)])}
            for idx in bad[:64]
        ],
    }


def twisted_sine_report(
    n_values=(2, 3, 4, 6, 8),
    alphas=(1.5, 3.0, 10.0, 50.0),
    a_grid=None,
    x_grid=None,
    theta_points: int = 9,
) -> dict:
    """Positivity report for twisted_sine_sum over parameter grids.

    alpha = 1.5 is the exponent the balance system actually uses and is the
    one asserted downstream; other alpha values are reported only.
    """
    if a_grid is None:
        a_grid = np.geomspace(0.1, 10.0, 13)
    if x_grid is None:
        x_grid = np.concatenate([[0.0], np.geomspace(1e-3, 100.0, 12)])
    per_alpha = {}
    worst = math.inf
    best = -math.inf
    for alpha in alphas:
        violations = []
        lo = math.inf
        for n in n_values:
            thetas = np.linspace(0.0, math.pi / n, theta_points + 2)[1:-1]
            for a in a_grid:
                for x in x_grid:
                    for theta in thetas:
                        v = twisted_sine_sum(float(a), float(theta), n, float(x), alpha)
                        lo = min(lo, v)
                        worst = min(worst, v)
                        best = max(best, v)
                        if v <= 0.0:
                            violations.append(
                                {
                                    "n": n,
                                    "a": float(a),
                                    "x": float(x),
                                    "theta": float(theta),
                                    "alpha": alpha,
                                    "value": v,
                                }
                            )
        per_alpha[str(alpha)] = {"min_observed": lo, "violations": violations}
    return {
        "lemma": "twisted-sine-positivity",
        "grid": {
            "n": list(n_values),
            "alphas": list(alphas),
            "a": [float(a_grid[0]), float(a_grid[-1]), len(a_grid)],
            "x": [float(x_grid[0]), float(x_grid[-1]), len(x_grid)],
            "theta_points": theta_points,
        },
        "min_observed": worst,
        "max_observed": best,
        "flagged_alpha": 1.5,
        "per_alpha": per_alpha,
        "violations": per_alpha.get("1.5", {}).get("violations", []),
    }


def zero_angle_report(n: int, a: float, h: float, grid: int = 0) -> dict:
    """Compare located zero angles against the lattice {j*pi/n}."""
    found = sine_zero_angles(n, a, h, grid)
    lattice = [(j * math.pi / n) % TWO_PI for j in range(1, 2 * n + 1)]
    collisions = []
    if abs(a - 1.0) < 1e-12 and h == 0.0:
        collisions = sorted((TWO_PI * j / n) % TWO_PI for j in range(n))
    expected = sorted(t for t in lattice if all(abs(t - c) > 1e-9 for c in collisions))
    matched = len(found) == len(expected)
    deviation = (
        max(abs(f - e) for f, e in zip(found, expected)) if matched and found else math.inf
    )
    if matched and not found:
        deviation = 0.0
    violations = []
    if not matched or deviation > 1e-10:
        violations.append(
            {"found": found, "expected": expected, "max_deviation": deviation}
        )
    return {
        "lemma": "zero-angles-on-lattice",
        "grid": {"n": n, "a": a, "h": h, "points": grid if grid > 0 else 16 * n},
        "found": found,
        "expected": expected,
        "skipped_collisions": collisions,
        "min_observed": 0.0 if not violations else -1.0,
        "max_observed": deviation if matched else math.inf,
        "violations": violations,
    }


def cube_gap_report(n_values=range(2, 13), a_points: int = 200, x_points: int = 50) -> dict:
    """Strict negativity of odd_even_cube_gap over a log-log grid."""
    a_grid = np.geomspace(0.05, 20.0, a_points)
    x_grid = np.concatenate([[0.0], np.geomspace(1e-2, 100.0, x_points - 1)])
    chunks = []
    for n in n_values:
        vals = odd_even_cube_gap(a_grid[:, None], x_grid[None, :], n)
        chunks.append(vals.ravel())
    values = np.concatenate(chunks)
    return _grid_report(
        "cube-kernel-gap-negative",
        {
            "n": list(n_values),
            "a": [0.05, 20.0, a_points],
            "x": [0.0, 100.0, x_points],
        },
        values,
        values >= 0.0,
    )


def radial_gap_report(n_values=range(2, 13), points: int = 200) -> dict:
    """Sign split of odd_even_radial_gap at x = 1 over log grids."""
    x_inner = np.geomspace(1e-3, 1.0 - 1e-6, points)
    x_outer = np.geomspace(1.0 + 1e-6, 1e3, points)
    vals_inner = []
    vals_outer = []
    for n in n_values:
        vals_inner.append(odd_even_radial_gap(x_inner, n))
        vals_outer.append(odd_even_radial_gap(x_outer, n))
    inner = np.concatenate(vals_inner)
    outer = np.concatenate(vals_outer)
    values = np.concatenate([inner, -outer])  # both must be positive
    report = _grid_report(
        "radial-kernel-gap-sign-split",
        {"n": list(n_values), "x_inner": [1e-3, 1.0, points], "x_outer": [1.0, 1e3, points]},
        values,
        values <= 0.0,
    )
    report["min_inner"] = float(np.min(inner))
    report["max_outer"] = float(np.max(outer))
    return report


def series_report(n_values=range(2, 13), order: int = 200, radius: float = 0.5) -> dict:
    """Nonpositivity of the gap series coefficients plus reconstruction error.

    The reconstruction compares the truncated series with the direct kernel
    gap at the stored radius; the allowance is the analytic tail bound plus
    a fixed 5e-13 floating-point slack on the order-1 sums.
    """
    float_slack = 5e-13
    rows = []
    violations = []
    worst_coeff = -math.inf
    for n in n_values:
        sc = series_coeffs(n, order, radius)
        coeff_max = float(np.max(sc.b))
        worst_coeff = max(worst_coeff, coeff_max)
        recon_err = abs(sc.partial_sum(radius) - odd_even_sqrt_gap(radius, n))
        allowed = sc.tail_bound + float_slack
        rows.append(
            {
                "n": n,
                "max_coefficient": coeff_max,
                "reconstruction_error": recon_err,
                "tail_bound": sc.tail_bound,
                "allowed": allowed,
            }
        )
        if coeff_max > 0.0:
            violations.append({"n": n, "max_coefficient": coeff_max})
        if recon_err > allowed:
            violations.append({"n": n, "reconstruction_error": recon_err, "allowed": allowed})
    return {
        "lemma": "gap-series-nonpositive",
        "grid": {"n": list(n_values), "order": order, "radius": radius},
        "min_observed": -1.0 if violations else 0.0,
        "max_observed": worst_coeff,
        "rows": rows,
        "violations": violations,
    }


LEMMA_REPORTS = {
    "twisted-sine": lambda: twisted_sine_report(),
    "vertical-gap": lambda: cube_gap_report(),
    "radial-gap": lambda: radial_gap_report(),
    "series-signs": lambda: series_report(),
}
