"""Angular (Fourier) and polar (angle-distance) sparsifying dictionaries.

The angular dictionary F collects far-field steering vectors on the
uniform spatial-frequency grid theta_n = (2n - N + 1)/N and is unitary.
The polar dictionary D concatenates, per angle, near-field steering
vectors at distances sampled uniformly in inverse distance from 0
(recorded as inf, the far-field atom) down to 1/r_min. D is overcomplete
(Q >= N), so its analysis direction is a matched filter rather than an
exact inverse; a pseudo-inverse variant is available for diagnostics.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .channel import ArrayGeometry, far_field_steering, near_field_steering


class Direction(enum.Enum):
    """Which way a domain transform runs."""

    ANALYSIS = "analysis"
    SYNTHESIS = "synthesis"


def _angle_grid(geom: ArrayGeometry) -> np.ndarray:
    n = np.arange(geom.num_antennas)
    return (2.0 * n - geom.num_antennas + 1.0) / geom.num_antennas


@dataclass(frozen=True)
class AngularDictionary:
    """Unitary N x N matrix whose n-th column is a(theta_n)."""

    matrix: np.ndarray
    angle_grid: np.ndarray


@dataclass(frozen=True)
class PolarGrid:
    """Sampling grid behind a polar dictionary.

    ``distances_per_angle[n]`` lists the Q_n distances probed at angle
    ``angles[n]``, strictly decreasing, with math.inf marking the
    far-field atom.
    """

    angles: np.ndarray
    distances_per_angle: tuple[tuple[float, ...], ...]

    def __post_init__(self) -> None:
        if len(self.distances_per_angle) != len(self.angles):
            raise ValueError("one distance list per angle required")
        for dists in self.distances_per_angle:
            if len(dists) < 1:
                raise ValueError("every angle needs at least one atom")
            for r in dists:
                if not r > 0:
                    raise ValueError(f"distances must be positive, got {r}")
            if any(b >= a for a, b in zip(dists, dists[1:])):
                raise ValueError("per-angle distances must be strictly decreasing")

    @property
    def total_atoms(self) -> int:
        return sum(len(d) for d in self.distances_per_angle)

    def atom_params(self) -> list[tuple[float, float]]:
        """(angle, distance) per dictionary column, in column order."""
        return [
            (float(theta), float(r))
            for theta, dists in zip(self.angles, self.distances_per_angle)
            for r in dists
        ]


@dataclass(frozen=True)
class PolarDictionary:
    """N x Q matrix of near-field atoms, angle-major, distance descending."""

    matrix: np.ndarray
    grid: PolarGrid


def build_angular_dictionary(geom: ArrayGeometry) -> AngularDictionary:
    """Fourier dictionary on the grid theta_n = (2n - N + 1)/N."""
    angles = _angle_grid(geom)
    cols = [far_field_steering(geom, theta) for theta in angles]
    return AngularDictionary(np.column_stack(cols), angles)


def build_polar_grid(
    geom: ArrayGeometry, atoms_per_angle: int, r_min: float
) -> PolarGrid:
    """Distance ladder per angle, uniform in 1/r.

    Sample q of Q_n has 1/r proportional to q: q = 0 is the far-field
    atom (r = inf) and q = Q_n - 1 lands exactly on r_min. The same
    ladder is reused for every angle, so Q = N * atoms_per_angle.
    """
    if atoms_per_angle < 1:
        raise ValueError(f"atoms_per_angle must be >= 1, got {atoms_per_angle}")
    if not r_min > 0:
        raise ValueError(f"r_min must be positive, got {r_min}")
    ladder = tuple(
        math.inf if q == 0 else (atoms_per_angle - 1) * r_min / q
        for q in range(atoms_per_angle)
    )
    angles = _angle_grid(geom)
    return PolarGrid(angles, tuple(ladder for _ in range(geom.num_antennas)))


def build_polar_dictionary(geom: ArrayGeometry, grid: PolarGrid) -> PolarDictionary:
    """Stack steering atoms column by column following the grid order.

    Far-field atoms (r = inf) are produced by the same routine as the
    angular dictionary's columns, so they match entry for entry.
    """
    if len(grid.angles) != geom.num_antennas:
        raise ValueError(
            f"grid has {len(grid.angles)} angles, geometry expects {geom.num_antennas}"
        )
    cols = []
    for theta, dists in zip(grid.angles, grid.distances_per_angle):
        for r in dists:
            if math.isinf(r):
                cols.append(far_field_steering(geom, theta))
            else:
                cols.append(near_field_steering(geom, theta, r))
    return PolarDictionary(np.column_stack(cols), grid)


def transform(
    x: np.ndarray,
    dictionary: AngularDictionary | PolarDictionary,
    direction: Direction,
    method: str = "adjoint",
):
    """Move between the antenna domain and a dictionary's coefficient domain.

    Synthesis maps coefficients to the antenna domain (matrix product).
    Analysis maps an antenna-domain vector to coefficients; ``method``
    selects the adjoint (default; exact inverse only in the unitary
    angular case) or ``"pinv"`` for the minimum-norm pseudo-inverse.
    """
    A = dictionary.matrix
    n_rows, n_cols = A.shape
    x = np.asarray(x)
    if direction is Direction.SYNTHESIS:
        if x.shape != (n_cols,):
            raise ValueError(f"synthesis input must have length {n_cols}, got {x.shape}")
        return A @ x
    if direction is Direction.ANALYSIS:
        if x.shape != (n_rows,):
            raise ValueError(f"analysis input must have length {n_rows}, got {x.shape}")
        if method == "adjoint":
            return A.conj().T @ x
        if method == "pinv":
            return np.linalg.pinv(A) @ x
        raise ValueError(f"unknown analysis method {method!r}")
    raise TypeError(f"direction must be a Direction, got {direction!r}")


def mutual_coherence(dictionary: AngularDictionary | PolarDictionary) -> float:
    """Largest |inner product| over distinct unit-norm columns."""
    A = dictionary.matrix
    gram = np.abs(A.conj().T @ A)
    np.fill_diagonal(gram, 0.0)
    # Clip rounding overshoot; unit-norm columns bound the true value by 1.
    return float(min(gram.max(), 1.0))
