"""Point-mass systems and the direct central-configuration test.

A configuration of n point masses (G = 1) is central when the gravitational
acceleration on every body is a common negative multiple of its position
vector measured from the center of mass. The multiplier lambda equals the
ratio of the potential to the moment of inertia of the centered system.

This module is the configuration-agnostic oracle: it knows nothing about
polygons and evaluates the defining per-body balance directly from pairwise
forces. Everything downstream is cross-checked against it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import CollisionError, NotCenteredError

#: Minimum allowed pairwise distance between bodies.
COLLISION_TOL = 1e-9
#: Default absolute tolerance on max_k |residual_k| / m_k for centrality.
CENTRALITY_TOL = 1e-10
#: Default tolerance on |sum m_i q_i| / M for "already centered".
CENTER_TOL = 1e-8


@dataclass(eq=False)
class BodySystem:
    """Explicit masses and 3D positions for n >= 2 bodies.

    Masses are strictly positive and no two bodies may sit closer than
    ``collision_tol``. Positions are in canonical length units (G = 1).
    """

    masses: np.ndarray
    positions: np.ndarray
    collision_tol: float = COLLISION_TOL

    def __post_init__(self):
        self.masses = np.atleast_1d(np.asarray(self.masses, dtype=float))
        self.positions = np.asarray(self.positions, dtype=float)
        if self.masses.ndim != 1:
            raise ValueError("masses must be a flat sequence")
        if self.positions.ndim != 2 or self.positions.shape[1] != 3:
            raise ValueError("positions must be an (n, 3) array")
        if self.masses.shape[0] != self.positions.shape[0]:
            raise ValueError("masses and positions must have equal length")
        if self.masses.shape[0] < 2:
            raise ValueError("need at least two bodies")
        if not np.all(np.isfinite(self.masses)) or not np.all(np.isfinite(self.positions)):
            raise ValueError("masses and positions must be finite")
        if np.any(self.masses <= 0.0):
            raise ValueError("all masses must be strictly positive")
        dmin = float(np.min(_distance_matrix(self.positions)[_offdiag(self.n)]))
        if dmin <= self.collision_tol:
            raise CollisionError(
                f"minimum pairwise distance {dmin:.3e} at or below tolerance "
                f"{self.collision_tol:.1e}"
            )

    @property
    def n(self) -> int:
        return self.masses.shape[0]

    @property
    def total_mass(self) -> float:
        return float(np.sum(self.masses))

    def center_of_mass(self) -> np.ndarray:
        return self.masses @ self.positions / self.total_mass

    def to_dict(self) -> dict:
        return {
            "masses": self.masses.tolist(),
            "positions": self.positions.tolist(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BodySystem":
        return cls(masses=data["masses"], positions=data["positions"])

    @classmethod
    def from_json(cls, text: str) -> "BodySystem":
        return cls.from_dict(json.loads(text))


@dataclass(eq=False)
class CCReport:
    """Outcome of the per-body balance test.

    ``lam`` is the multiplier U/I of the centered system;
    ``per_body_residual`` holds the raw 3D force-balance defects;
    ``max_residual_norm`` is max_k |residual_k| / m_k, the quantity compared
    against ``tolerance`` to decide ``is_central``.
    """

    lam: float
    per_body_residual: np.ndarray
    max_residual_norm: float
    is_central: bool
    tolerance: float

    def to_dict(self) -> dict:
        return {
            "lambda": self.lam,
            "per_body_residual": self.per_body_residual.tolist(),
            "max_residual_norm": self.max_residual_norm,
            "is_central": self.is_central,
            "tolerance": self.tolerance,
        }


def _offdiag(n: int) -> np.ndarray:
    return ~np.eye(n, dtype=bool)


def _distance_matrix(positions: np.ndarray) -> np.ndarray:
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt(np.sum(diff * diff, axis=-1))
    np.fill_diagonal(dist, np.inf)
    return dist


def _check_collisions(sys: BodySystem) -> np.ndarray:
    dist = _distance_matrix(sys.positions)
    dmin = float(np.min(dist[_offdiag(sys.n)]))
    if dmin <= sys.collision_tol:
        raise CollisionError(f"pairwise distance {dmin:.3e} below tolerance")
    return dist


def potential(sys: BodySystem) -> float:
    """Pair-summed potential: sum over j < k of m_j m_k / |q_j - q_k|."""
    dist = _check_collisions(sys)
    mm = np.outer(sys.masses, sys.masses)
    iu = np.triu_indices(sys.n, k=1)
    return float(np.sum(mm[iu] / dist[iu]))


def moment_of_inertia(sys: BodySystem, center_tol: float = CENTER_TOL) -> float:
    """Sum of m_j |q_j|^2; the system must already be centered."""
    drift = float(np.linalg.norm(sys.masses @ sys.positions)) / sys.total_mass
    if drift > center_tol:
        raise NotCenteredError(
            f"center of mass off origin by {drift:.3e} (tolerance {center_tol:.1e}); "
            "apply center_of_mass_shift first"
        )
    return float(np.sum(sys.masses * np.sum(sys.positions**2, axis=1)))


def center_of_mass_shift(sys: BodySystem) -> BodySystem:
    """Translate so the mass-weighted centroid sits exactly at the origin."""
    return BodySystem(
        masses=sys.masses.copy(),
        positions=sys.positions - sys.center_of_mass(),
        collision_tol=sys.collision_tol,
    )


def cc_residual(sys: BodySystem, tolerance: float = CENTRALITY_TOL) -> CCReport:
    """Evaluate the defining balance for each body of the centered system.

    residual_k = sum_{j != k} m_j m_k (q_j - q_k) / |q_j - q_k|^3
                 + lambda m_k q_k,        lambda = U / I.

    The input is centered internally; the verdict is
    max_k |residual_k| / m_k <= tolerance.
    """
    centered = center_of_mass_shift(sys)
    dist = _check_collisions(centered)
    q = centered.positions
    m = centered.masses

    inv3 = dist**-3.0
    diff = q[None, :, :] - q[:, None, :]  # diff[k, j] = q_j - q_k
    mm = np.outer(m, m)
    np.fill_diagonal(inv3, 0.0)
    force = np.sum((mm * inv3)[:, :, None] * diff, axis=1)

    iu = np.triu_indices(centered.n, k=1)
    u = float(np.sum(mm[iu] / dist[iu]))
    i_moment = float(np.sum(m * np.sum(q * q, axis=1)))
    lam = u / i_moment

    residual = force + lam * m[:, None] * q
    norms = np.linalg.norm(residual, axis=1) / m
    max_norm = float(np.max(norms))
    return CCReport(
        lam=lam,
        per_body_residual=residual,
        max_residual_norm=max_norm,
        is_central=bool(max_norm <= tolerance),
        tolerance=tolerance,
    )
