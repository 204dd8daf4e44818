"""Deterministic sample-set generators.

Random draws use numpy's PCG64 bit generator (``numpy.random.PCG64``) seeded
with the unsigned 64-bit seed taken from the experiment config, so a seed
plus the algorithm name pins every sampled point.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np
from scipy.stats import qmc, norm as _normal

from .kernels import SampleSet

GENERATOR = "numpy.random.PCG64"


def rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


def random_ball_points(n: int, d: int, seed: int, rmax: float = 0.95) -> np.ndarray:
    """``n`` points uniform (in volume) in the ball of radius ``rmax`` in ``C^d``."""
    g = rng(seed)
    x = g.standard_normal((n, 2 * d))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    r = rmax * g.random(n) ** (1.0 / (2 * d))
    z = (x[:, :d] + 1j * x[:, d:]) * r[:, None]
    return z


def random_samples(n: int, d: int, seed: int, rmax: float = 0.95, label: str = "random") -> SampleSet:
    return SampleSet.from_array(random_ball_points(n, d, seed, rmax), label=label, seed=seed)


def ring_points(radii: Sequence[float], n_angles: int, phase: float = 0.0) -> np.ndarray:
    """Equispaced angles on each circle; doubling ``n_angles`` gives a superset."""
    theta = phase + 2 * np.pi * np.arange(n_angles) / n_angles
    return np.concatenate([r * np.exp(1j * theta) for r in radii])


def ring_samples(radii: Sequence[float], n_angles: int, phase: float = 0.0) -> SampleSet:
    return SampleSet.from_array(ring_points(radii, n_angles, phase), label="rings{}x{}".format(list(radii), n_angles))


def nested_ring_schedule(radii: Sequence[float], base_angles: int, levels: int, phase: float = 0.0) -> list:
    """Nested grids: level ``j`` uses ``base_angles * 2**j`` angles per ring.

    All levels are cut from the finest grid, so coarse points are bitwise
    identical to their copies in finer grids and keep their position in the
    ordering (each grid is a prefix-preserving superset of the previous).
    """
    finest = base_angles * 2 ** (levels - 1)
    theta = phase + 2 * np.pi * np.arange(finest) / finest
    grid = np.array([[r * np.exp(1j * t) for t in theta] for r in radii])
    out = []
    current = None
    for j in range(levels):
        step = 2 ** (levels - 1 - j)
        pts = SampleSet.from_array(grid[:, ::step].reshape(-1))
        current = pts if current is None else current.union(pts)
        out.append(SampleSet(current.points, label="rings{}x{}".format(list(radii), base_angles * 2**j)))
    return out


GRADED_RADII = (0.5, 0.75, 0.9, 0.95, 0.98, 0.99)
GRADED_ANGLES = (3, 6, 12, 24, 48, 96)


def graded_ring_schedule(radii: Sequence[float] = GRADED_RADII[:4], angles: Sequence[int] = GRADED_ANGLES[:4],
                         phase_step: float = 0.37) -> list:
    """Level ``j`` adds a ring of radius ``radii[j]`` with ``angles[j]`` points.

    Rings approach the boundary while the angular density grows with the
    kernel's resolution there, which keeps the Gram matrices far better
    conditioned than uniform grids of the same size. Successive rings are
    rotated by ``phase_step`` to avoid radial alignment.
    """
    if len(radii) != len(angles):
        raise ValueError("radii and angles must have the same length")
    out = []
    current = None
    for j, (r, n) in enumerate(zip(radii, angles)):
        ring = SampleSet.from_array(ring_points([r], n, phase_step * j))
        current = ring if current is None else current.union(ring)
        out.append(SampleSet(current.points, label="graded{}".format(j + 1)))
    return out


def growing_radius_schedule(radii: Sequence[float], n_angles: int, phase: float = 0.0) -> list:
    """Nested grids adding one ring at a time (radius sequence in the given order)."""
    out = []
    current = None
    for r in radii:
        ring = SampleSet.from_array(ring_points([r], n_angles, phase))
        current = ring if current is None else current.union(ring)
        out.append(SampleSet(current.points, label="rings<= {}".format(r)))
    return out


def ball_qmc_points(n: int, d: int, seed: int, rmax: float = 0.95) -> np.ndarray:
    """Scrambled Sobol points mapped into the ball of ``C^d``; prefixes are nested."""
    sob = qmc.Sobol(d=2 * d + 1, scramble=True, seed=np.random.Generator(np.random.PCG64(int(seed))))
    m = max(1, math.ceil(math.log2(max(n, 1))))
    u = sob.random_base2(m)[:n]
    u = np.clip(u, 1e-12, 1 - 1e-12)
    x = _normal.ppf(u[:, : 2 * d])
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    r = rmax * u[:, 2 * d] ** (1.0 / (2 * d))
    return (x[:, :d] + 1j * x[:, d:]) * r[:, None]


def nested_ball_schedule(counts: Sequence[int], d: int, seed: int, rmax: float = 0.95) -> list:
    """Prefixes of one scrambled Sobol sequence."""
    pts = ball_qmc_points(max(counts), d, seed, rmax)
    return [SampleSet.from_array(pts[:c], label="sobol{}".format(c), seed=seed) for c in counts]


def ring_centers(radii: Sequence[float] = (0.3, 0.6, 0.85), per_ring: int = 8, phase: float = 0.1) -> np.ndarray:
    """Concentric ring centres interleaved ring by ring, so prefixes stay spread out."""
    theta = phase + 2 * np.pi * np.arange(per_ring) / per_ring
    # rotate successive rings to avoid radial alignment
    grid = [r * np.exp(1j * (theta + k * np.pi / per_ring)) for k, r in enumerate(radii)]
    return np.stack(grid, axis=1).reshape(-1)


def nested_random_schedule(counts: Sequence[int], d: int, seed: int, rmax: float = 0.95) -> list:
    """Prefixes of one seeded random draw."""
    pts = random_ball_points(max(counts), d, seed, rmax)
    return [SampleSet.from_array(pts[:c], label="random{}".format(c), seed=seed) for c in counts]


def unit_disk_pairs(n: int, seed: int, rmax: float = 0.95) -> tuple:
    z = random_ball_points(2 * n, 1, seed, rmax)[:, 0]
    return z[:n], z[n:]
