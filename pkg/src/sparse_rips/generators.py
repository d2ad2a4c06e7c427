"""Seeded synthetic point-cloud generators for verification and scaling runs."""

from __future__ import annotations

import numpy as np


def uniform2d(n: int, rng: np.random.Generator) -> np.ndarray:
    """n points uniform in the unit square."""
    return rng.random((n, 2))


def uniform3d(n: int, rng: np.random.Generator) -> np.ndarray:
    """n points uniform in the unit cube."""
    return rng.random((n, 3))


def circle(n: int, rng: np.random.Generator, noise: float = 0.05) -> np.ndarray:
    """n equally spaced points on the unit circle with uniform radial noise."""
    theta = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    r = 1.0 + rng.uniform(-noise, noise, n)
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def clusters(n: int, rng: np.random.Generator, separation: float = 4.0,
             spread: float = 0.5) -> np.ndarray:
    """Two gaussian clusters of n//2 and n - n//2 points."""
    n0 = n // 2
    a = rng.normal(0.0, spread, (n0, 2))
    b = rng.normal(0.0, spread, (n - n0, 2)) + np.array([separation, 0.0])
    return np.vstack([a, b])


GENERATORS = {
    "uniform2d": uniform2d,
    "uniform3d": uniform3d,
    "circle": circle,
    "clusters": clusters,
}
