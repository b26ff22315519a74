"""The specialized balance conditions of the stacked twisted pair.

Projecting the per-body balance onto in-plane radial, in-plane tangential,
and axial directions collapses the 3(N+L) scalar equations to six families:

  radial, lower ring (k = 1..N):
      A + b * sum_j (1 - a cos psi_kj) / D(psi_kj)^(3/2) = mu
  radial, upper ring (l = 1..L):
      b*B/a^3 + sum_j (1 - cos(chi_lj)/a) / D(chi_lj)^(3/2) = mu
  tangential, lower (k):  sum_j sin(psi_kj) / D(psi_kj)^(3/2) = 0
  tangential, upper (l):  sum_j sin(chi_lj) / D(chi_lj)^(3/2) = 0
  axial, lower:  h * sum_j D(psi_1j)^(-3/2) = mu L h / (N + b L)
  axial, upper:  h * sum_j D(chi_1j)^(-3/2) = mu N h / (N + b L)

with psi_kj = 2*pi*j/L - 2*pi*k/N + theta, chi_lj = 2*pi*j/N - 2*pi*l/L - theta,
D(x) = 1 + a^2 - 2a cos x + h^2, mu = lambda/m, and A, B the self-interaction
constants of the unit N- and L-rings. mu is eliminated through the first
radial equation; by ring symmetry every k gives the same value (checked).

Also here: the reduced equal-count (N = L) systems used by the solvers, in
the coplanar (h = 0, linear in b) and stacked (h > 0, two-equation) forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateError
from .polygons import TwistedPairParams, build

TWO_PI = 2.0 * math.pi


def self_interaction_constant(n: int) -> float:
    """Radial pull of a unit regular n-ring of unit masses on one vertex.

    Computed as the real part of sum_{j=1}^{n-1} (1 - z_j) / |1 - z_j|^3 over
    the n-th roots of unity z_j; the imaginary parts cancel pairwise. Agrees
    with the closed form sum_j 1 / (4 sin(pi j / n)).
    """
    if n < 2:
        raise ValueError("need n >= 2")
    z = np.exp(2j * np.pi * np.arange(1, n) / n)
    w = 1.0 - z
    return float(np.real(np.sum(w / np.abs(w) ** 3)))


@dataclass(frozen=True)
class PolygonConstants:
    """Self-interaction constants of the two rings; both strictly positive."""

    lower: float
    upper: float

    @classmethod
    def for_pair(cls, n: int, l: int) -> "PolygonConstants":
        return cls(lower=self_interaction_constant(n), upper=self_interaction_constant(l))


@dataclass(eq=False)
class ResidualVector:
    """Defects of the six balance families with mu eliminated.

    mu_lower is a solved value, not a defect; everything else vanishes
    exactly when the configuration is central.
    """

    mu_lower: float
    radial_upper_gap: float
    tangential_lower: np.ndarray
    tangential_upper: np.ndarray
    vertical_lower_gap: float
    vertical_upper_gap: float

    def max_abs(self) -> float:
        return float(
            max(
                abs(self.radial_upper_gap),
                np.max(np.abs(self.tangential_lower)),
                np.max(np.abs(self.tangential_upper)),
                abs(self.vertical_lower_gap),
                abs(self.vertical_upper_gap),
            )
        )

    def to_dict(self) -> dict:
        return {
            "mu_lower": self.mu_lower,
            "radial_upper_gap": self.radial_upper_gap,
            "tangential_lower": self.tangential_lower.tolist(),
            "tangential_upper": self.tangential_upper.tolist(),
            "vertical_lower_gap": self.vertical_lower_gap,
            "vertical_upper_gap": self.vertical_upper_gap,
            "max_abs": self.max_abs(),
        }


def validate_twist(n: int, theta_choice: float) -> float:
    """Snap theta_choice to the admissible equal-count twists {0, pi/n}."""
    if abs(theta_choice) <= 1e-12:
        return 0.0
    if abs(theta_choice - math.pi / n) <= 1e-12:
        return math.pi / n
    raise ValueError(
        f"twist must be 0 or pi/{n} (= {math.pi / n:.12g}), got {theta_choice!r}"
    )


def residual_vector(params: TwistedPairParams, mu_spread_tol: float = 1e-12) -> ResidualVector:
    """Evaluate all six balance families for a stacked-pair parameter tuple.

    mu is taken from the first lower radial equation; the spread across k is
    asserted below mu_spread_tol (relative) as an internal consistency check.
    At h = 0 both axial conditions hold identically and are reported as
    exact zeros.
    """
    build(params)  # collision guard; raises CollisionError on bad geometry
    n, l = params.N, params.L
    a, b, h, theta = params.a, params.b, params.h, params.theta
    consts = PolygonConstants.for_pair(n, l)

    k = np.arange(n)[:, None]
    j_up = np.arange(l)[None, :]
    psi = TWO_PI * j_up / l - TWO_PI * k / n + theta
    d_low = (1.0 + a * a - 2.0 * a * np.cos(psi) + h * h) ** -1.5

    radial_lower = consts.lower + b * np.sum((1.0 - a * np.cos(psi)) * d_low, axis=1)
    mu = float(radial_lower[0])
    if l % n == 0:
        # lower bodies are equivalent only when the upper ring repeats under
        # 2*pi/N rotations, i.e. N | L; then all k must agree on mu
        spread = float(np.max(radial_lower) - np.min(radial_lower))
        if spread > mu_spread_tol * max(1.0, abs(mu)):
            raise AssertionError(
                f"lower radial equations disagree on mu (spread {spread:.3e}); "
                "ring symmetry violated"
            )

    ll = np.arange(l)[:, None]
    j_dn = np.arange(n)[None, :]
    chi = TWO_PI * j_dn / n - TWO_PI * ll / l - theta
    d_up = (1.0 + a * a - 2.0 * a * np.cos(chi) + h * h) ** -1.5

    radial_upper = b * consts.upper / a**3 + np.sum(
        (1.0 - np.cos(chi) / a) * d_up, axis=1
    )
    if l == n:
        # upper bodies are all equivalent only for equal counts
        up_spread = float(np.max(radial_upper) - np.min(radial_upper))
        if up_spread > mu_spread_tol * max(1.0, abs(radial_upper[0])):
            raise AssertionError(
                f"upper radial equations disagree (spread {up_spread:.3e})"
            )

    tangential_lower = np.sum(np.sin(psi) * d_low, axis=1)
    tangential_upper = np.sum(np.sin(chi) * d_up, axis=1)

    if h == 0.0:
        v_low = 0.0
        v_up = 0.0
    else:
        denom = n + b * l
        v_low = float(h * np.sum(d_low[0]) - mu * l * h / denom)
        v_up = float(h * np.sum(d_up[0]) - mu * n * h / denom)

    return ResidualVector(
        mu_lower=mu,
        radial_upper_gap=float(radial_upper[0]) - mu,
        tangential_lower=tangential_lower,
        tangential_upper=tangential_upper,
        vertical_lower_gap=v_low,
        vertical_upper_gap=v_up,
    )


def _coplanar_sums(n: int, a, theta_choice: float):
    """The two radial sums of the equal-count coplanar system, vectorized in a."""
    a = np.asarray(a, dtype=float)
    ang = TWO_PI * np.arange(1, n + 1) / n + theta_choice
    cos_ang = np.cos(ang)
    d = (1.0 + a[..., None] ** 2 - 2.0 * a[..., None] * cos_ang) ** -1.5
    s_dir = np.sum((1.0 - a[..., None] * cos_ang) * d, axis=-1)
    s_inv = np.sum((1.0 - cos_ang / a[..., None]) * d, axis=-1)
    return s_dir, s_inv


def planar_mass_ratio(n: int, a: float, theta_choice: float) -> float:
    """Mass ratio b making the coplanar (h = 0) equal-count pair central.

    Solves the linear-in-b relation
        b * [S_dir(a) - A/a^3] = S_inv(a) - A
    for the chosen twist. The returned value may be nonpositive; callers
    keep b > 0 for physical configurations. a = 1 is excluded (the relation
    degenerates there); a vanishing bracket raises DegenerateError.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if abs(a - 1.0) <= 1e-9:
        raise ValueError("a = 1 excluded in the coplanar relation")
    theta_choice = validate_twist(n, theta_choice)
    const = self_interaction_constant(n)
    s_dir, s_inv = _coplanar_sums(n, a, theta_choice)
    denom = float(s_dir) - const / a**3
    numer = float(s_inv) - const
    scale = max(1.0, abs(const / a**3), abs(float(s_dir)))
    if abs(denom) <= 1e-12 * scale:
        raise DegenerateError(
            f"coefficient of b vanishes at a={a!r} (|denom|={abs(denom):.3e}); "
            "no mass ratio determined"
        )
    return numer / denom


def spatial_system(n: int, theta_choice: float, a: float, b: float, h: float):
    """Residuals of the two-equation stacked (h > 0) equal-count system.

    With S0 = sum_j D_j^(-3/2), Sc = sum_j cos(ang_j) D_j^(-3/2), returns

        (b*a*Sc - (A - S0),  b*a*(A/a^3 - S0) - Sc)

    both of which vanish exactly at a central configuration.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    theta_choice = validate_twist(n, theta_choice)
    const = self_interaction_constant(n)
    ang = TWO_PI * np.arange(1, n + 1) / n + theta_choice
    cos_ang = np.cos(ang)
    d = (1.0 + a * a - 2.0 * a * cos_ang + h * h) ** -1.5
    s0 = float(np.sum(d))
    sc = float(np.sum(cos_ang * d))
    r1 = b * a * sc - (const - s0)
    r2 = b * a * (const / a**3 - s0) - sc
    return r1, r2
