"""Uplink channel synthesis for very large uniform linear arrays.

Models a single-antenna transmitter observed by an N-element ULA under
either a planar-wavefront (far-field) or an exact spherical-wavefront
(near-field) propagation model, plus the noisy pilot observation
y = sqrt(p) * h + n. All randomness flows through explicit numpy
generators so every draw is reproducible from a seed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Regime(enum.Enum):
    """Wavefront model used when synthesizing a channel."""

    FAR_FIELD = "far-field"
    NEAR_FIELD = "near-field"


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array: element count, carrier wavelength, spacing.

    ``spacing`` defaults to half a wavelength. Derived quantities:
    ``wave_number`` (2*pi/wavelength) and ``aperture`` ((N-1)*spacing).
    """

    num_antennas: int
    wavelength: float
    spacing: float | None = None

    def __post_init__(self) -> None:
        if self.num_antennas < 1:
            raise ValueError(f"num_antennas must be >= 1, got {self.num_antennas}")
        if not self.wavelength > 0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")
        if self.spacing is None:
            object.__setattr__(self, "spacing", self.wavelength / 2.0)
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    @property
    def wave_number(self) -> float:
        return 2.0 * math.pi / self.wavelength

    @property
    def aperture(self) -> float:
        return (self.num_antennas - 1) * self.spacing


@dataclass(frozen=True)
class PathComponent:
    """One propagation path: complex gain, distance to the reference
    (index-0) antenna in meters, and spatial angle sin(v) in [-1, 1]."""

    gain: complex
    distance: float
    spatial_angle: float

    def __post_init__(self) -> None:
        if not self.distance > 0:
            raise ValueError(f"path distance must be positive, got {self.distance}")
        if not abs(self.spatial_angle) <= 1.0:
            raise ValueError(
                f"spatial angle must lie in [-1, 1], got {self.spatial_angle}"
            )


@dataclass(frozen=True)
class ChannelScenario:
    """An ordered set of propagation paths plus the wavefront regime."""

    paths: tuple[PathComponent, ...]
    regime: Regime

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(self.paths))
        if len(self.paths) < 1:
            raise ValueError("a scenario needs at least one path")

    @property
    def num_paths(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class SnrConfig:
    """Linear transmit power p and noise power sigma^2 per receive antenna."""

    transmit_power: float
    noise_power: float

    def __post_init__(self) -> None:
        if self.transmit_power < 0:
            raise ValueError("transmit_power must be >= 0")
        if self.noise_power < 0:
            raise ValueError("noise_power must be >= 0")

    @property
    def snr_db(self) -> float:
        if self.transmit_power == 0 and self.noise_power == 0:
            raise ValueError("SNR undefined: transmit and noise power both zero")
        if self.noise_power == 0:
            return math.inf
        if self.transmit_power == 0:
            return -math.inf
        return 10.0 * math.log10(self.transmit_power / self.noise_power)

    @classmethod
    def from_snr_db(cls, snr_db: float, transmit_power: float = 1.0) -> "SnrConfig":
        return cls(transmit_power, transmit_power / 10.0 ** (snr_db / 10.0))


def rayleigh_distance(geom: ArrayGeometry) -> float:
    """Boundary between spherical- and planar-wavefront regimes: 2*D^2/lambda."""
    return 2.0 * geom.aperture**2 / geom.wavelength


def _check_spatial_angle(spatial_angle: float) -> None:
    if not abs(spatial_angle) <= 1.0:
        raise ValueError(f"spatial angle must lie in [-1, 1], got {spatial_angle}")


def element_distance(
    geom: ArrayGeometry, spatial_angle: float, r1: float, n: int | np.ndarray
):
    """Exact distance from antenna ``n`` to a source seen at distance ``r1``
    from antenna 0 under spatial angle theta.

    With antenna n at transverse offset n*spacing, the squared distance is
    r1^2 + (n*spacing)^2 - 2*r1*theta*n*spacing. ``n`` may be an int or an
    integer array; scalar in, float out.
    """
    _check_spatial_angle(spatial_angle)
    if not r1 > 0:
        raise ValueError(f"r1 must be positive, got {r1}")
    idx = np.asarray(n)
    if np.any(idx < 0) or np.any(idx >= geom.num_antennas):
        raise ValueError(f"antenna index out of range 0..{geom.num_antennas - 1}")
    offset = idx * geom.spacing
    sq = r1 * r1 + offset * offset - 2.0 * r1 * spatial_angle * offset
    # The closed form is a squared Euclidean distance; negatives can only be
    # rounding residue of order eps * (r1 + offset)^2.
    assert np.all(sq > -1e-9 * (r1 + geom.aperture) ** 2)
    dist = np.sqrt(np.maximum(sq, 0.0))
    return float(dist) if np.ndim(n) == 0 else dist


def far_field_steering(geom: ArrayGeometry, spatial_angle: float) -> np.ndarray:
    """Unit-norm planar-wavefront array response: entry n is
    exp(+j*pi*n*theta)/sqrt(N)."""
    _check_spatial_angle(spatial_angle)
    n = np.arange(geom.num_antennas)
    return np.exp(1j * math.pi * spatial_angle * n) / math.sqrt(geom.num_antennas)


def near_field_steering(
    geom: ArrayGeometry, spatial_angle: float, r1: float
) -> np.ndarray:
    """Unit-norm spherical-wavefront array response.

    Entry n carries the exact propagation phase difference relative to
    antenna 0: exp(-j*k*(r_n - r1))/sqrt(N). Entry 0 is exactly 1/sqrt(N).
    """
    dists = element_distance(geom, spatial_angle, r1, np.arange(geom.num_antennas))
    phase = -geom.wave_number * (dists - r1)
    return np.exp(1j * phase) / math.sqrt(geom.num_antennas)


def synthesize_channel(geom: ArrayGeometry, scenario: ChannelScenario) -> np.ndarray:
    """Multipath channel h = sqrt(N/L) * sum_l gain_l * exp(-j*k*r_l) * v_l.

    The steering vector v_l is planar or spherical according to the
    scenario's regime; the spherical one also depends on the path distance.
    """
    acc = np.zeros(geom.num_antennas, dtype=np.complex128)
    for path in scenario.paths:
        if scenario.regime is Regime.FAR_FIELD:
            v = far_field_steering(geom, path.spatial_angle)
        else:
            v = near_field_steering(geom, path.spatial_angle, path.distance)
        acc += path.gain * np.exp(-1j * geom.wave_number * path.distance) * v
    return math.sqrt(geom.num_antennas / scenario.num_paths) * acc


def sample_scenario(
    rng,
    geom: ArrayGeometry,
    num_paths: int,
    r_range: tuple[float, float],
    regime: Regime,
) -> ChannelScenario:
    """Draw a random scenario: gains CN(0,1), distances U(r_min, r_max),
    spatial angles U(-1, 1). Deterministic for a given generator state."""
    rng = np.random.default_rng(rng)
    if num_paths < 1:
        raise ValueError(f"num_paths must be >= 1, got {num_paths}")
    r_min, r_max = r_range
    if not (0 < r_min <= r_max):
        raise ValueError(f"need 0 < r_min <= r_max, got {r_range}")
    re = rng.standard_normal(num_paths)
    im = rng.standard_normal(num_paths)
    gains = (re + 1j * im) * math.sqrt(0.5)
    dists = rng.uniform(r_min, r_max, num_paths)
    angles = rng.uniform(-1.0, 1.0, num_paths)
    paths = tuple(
        PathComponent(complex(g), float(r), float(a))
        for g, r, a in zip(gains, dists, angles)
    )
    return ChannelScenario(paths, regime)


def simulate_received_signal(rng, h: np.ndarray, snr: SnrConfig) -> np.ndarray:
    """Noisy pilot observation y = sqrt(p)*h + n with n_i ~ CN(0, sigma^2).

    The noise draw is taken even when sigma^2 = 0 so the generator advances
    identically for any noise level; the zero case returns sqrt(p)*h exactly.
    """
    rng = np.random.default_rng(rng)
    n = len(h)
    noise = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) * math.sqrt(
        snr.noise_power / 2.0
    )
    return math.sqrt(snr.transmit_power) * h + noise
