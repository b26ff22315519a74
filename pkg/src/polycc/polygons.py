"""Builders for the stacked pair of twisted regular polygons.

The lower ring has N unit-mass bodies on the unit circle in the z = 0 plane;
the upper ring has L bodies of mass b*m on a circle of radius a at height h,
rotated by the twist angle theta. Canonical units: lower circumradius 1,
lower mass m (default 1), G = 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .nbody import BodySystem, center_of_mass_shift

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class TwistedPairParams:
    """Full parameter tuple (N, L, a, b, h, theta, m) of a stacked pair.

    N <= L by convention (the balance equations are written asymmetrically);
    violating it raises instead of silently swapping. theta is stored reduced
    to [0, 2*pi).
    """

    N: int
    L: int
    a: float
    b: float
    h: float
    theta: float
    m: float = 1.0

    def __post_init__(self):
        if int(self.N) != self.N or int(self.L) != self.L:
            raise ValueError("N and L must be integers")
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "L", int(self.L))
        for name in ("a", "b", "h", "m"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if self.N < 2 or self.L < 2:
            raise ValueError("need N >= 2 and L >= 2")
        if self.N > self.L:
            raise ValueError(f"convention requires N <= L, got N={self.N} > L={self.L}")
        if not (self.a > 0.0):
            raise ValueError("radius ratio a must be positive")
        if not (self.b > 0.0):
            raise ValueError("mass ratio b must be positive")
        if self.h < 0.0:
            raise ValueError("separation h must be nonnegative")
        if not (self.m > 0.0):
            raise ValueError("lower mass m must be positive")
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "L": self.L,
            "a": self.a,
            "b": self.b,
            "h": self.h,
            "theta": self.theta,
            "m": self.m,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "TwistedPairParams":
        return cls(
            N=data["N"],
            L=data["L"],
            a=data["a"],
            b=data["b"],
            h=data["h"],
            theta=data["theta"],
            m=data.get("m", 1.0),
        )

    @classmethod
    def from_json(cls, text: str) -> "TwistedPairParams":
        return cls.from_dict(json.loads(text))


def mass_center_height(params: TwistedPairParams) -> float:
    """z-coordinate of the center of mass of the raw (uncentered) stack."""
    return params.b * params.L * params.h / (params.N + params.b * params.L)


def build(params: TwistedPairParams) -> BodySystem:
    """Place the two rings in canonical coordinates, lower ring first.

    Body ordering is stable: lower indices 0..N-1 at angles 2*pi*k/N, then
    upper indices at angles 2*pi*l/L + theta. Raises CollisionError if the
    parameters put two bodies on top of each other (possible only at h = 0).
    """
    lower_ang = TWO_PI * np.arange(params.N) / params.N
    upper_ang = TWO_PI * np.arange(params.L) / params.L + params.theta

    positions = np.empty((params.N + params.L, 3))
    positions[: params.N, 0] = np.cos(lower_ang)
    positions[: params.N, 1] = np.sin(lower_ang)
    positions[: params.N, 2] = 0.0
    positions[params.N :, 0] = params.a * np.cos(upper_ang)
    positions[params.N :, 1] = params.a * np.sin(upper_ang)
    positions[params.N :, 2] = params.h

    masses = np.concatenate(
        [
            np.full(params.N, params.m),
            np.full(params.L, params.b * params.m),
        ]
    )
    return BodySystem(masses=masses, positions=positions)


def centered_positions(params: TwistedPairParams) -> BodySystem:
    """build() followed by the exact center-of-mass shift.

    The shift is purely vertical, by -b*L*h / (N + b*L).
    """
    return center_of_mass_shift(build(params))
