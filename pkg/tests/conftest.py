import numpy as np
import pytest

from polycc import BodySystem


def regular_ngon(n: int, radius: float = 1.0, mass: float = 1.0) -> BodySystem:
    ang = 2.0 * np.pi * np.arange(n) / n
    pos = np.column_stack([radius * np.cos(ang), radius * np.sin(ang), np.zeros(n)])
    return BodySystem(masses=np.full(n, mass), positions=pos)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    axis = np.asarray(axis, dtype=float)
    axis = axis / np.linalg.norm(axis)
    x, y, z = axis
    c, s = np.cos(angle), np.sin(angle)
    k = np.array([[0.0, -z, y], [z, 0.0, -x], [-y, x, 0.0]])
    return np.eye(3) + s * k + (1.0 - c) * (k @ k)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
