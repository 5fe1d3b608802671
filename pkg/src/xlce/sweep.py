"""Seeded Monte-Carlo NMSE sweeps across SNR for the classical estimators.

Trial (i, t) for SNR index i draws from the substream keyed by
(master_seed, i, t), so records never depend on execution order or on
how trials are split across worker processes. All estimators score the
same trials (paired comparison), which tightens gap estimates between
schemes at no extra cost.
"""

from __future__ import annotations

import functools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import (
    ArrayGeometry,
    Regime,
    SnrConfig,
    sample_scenario,
    simulate_received_signal,
    synthesize_channel,
)
from .dictionaries import (
    build_angular_dictionary,
    build_polar_dictionary,
    build_polar_grid,
)
from .estimators import ls_estimate, omp_estimate
from .metrics import nmse, nmse_db

ESTIMATORS = ("ls", "omp", "pomp")


@dataclass(frozen=True)
class SweepConfig:
    """Everything that determines a sweep's records.

    ``grid_r_min`` is the polar grid's closest ring; it defaults to the
    scenario's minimum path distance. ``sparsity`` defaults to the path
    count.
    """

    snr_db_list: tuple[float, ...]
    trials_per_point: int
    estimators: tuple[str, ...]
    master_seed: int
    num_antennas: int = 128
    wavelength: float = 0.03
    spacing: float | None = None
    num_paths: int = 6
    r_range: tuple[float, float] = (5.0, 50.0)
    regime: Regime = Regime.NEAR_FIELD
    atoms_per_angle: int = 2
    grid_r_min: float | None = None
    transmit_power: float = 1.0
    sparsity: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "snr_db_list", tuple(self.snr_db_list))
        object.__setattr__(self, "estimators", tuple(self.estimators))
        object.__setattr__(self, "r_range", tuple(self.r_range))
        if not self.snr_db_list:
            raise ValueError("snr_db_list must be non-empty")
        if not self.estimators:
            raise ValueError("estimators must be non-empty")
        if self.trials_per_point < 1:
            raise ValueError("trials_per_point must be >= 1")
        unknown = [e for e in self.estimators if e not in ESTIMATORS]
        if unknown:
            raise ValueError(
                f"unknown estimator(s) {unknown}; known: {', '.join(ESTIMATORS)}"
            )
        if not self.transmit_power > 0:
            raise ValueError("transmit_power must be positive")

    @property
    def effective_grid_r_min(self) -> float:
        return self.r_range[0] if self.grid_r_min is None else self.grid_r_min

    @property
    def effective_sparsity(self) -> int:
        return self.num_paths if self.sparsity is None else self.sparsity


@dataclass(frozen=True)
class NmseRecord:
    """One sweep cell: mean normalized error of one estimator at one SNR."""

    estimator: str
    snr_db: float
    trials: int
    nmse: float
    nmse_db: float


@functools.lru_cache(maxsize=8)
def _operators(
    num_antennas: int,
    wavelength: float,
    spacing: float | None,
    atoms_per_angle: int,
    grid_r_min: float,
):
    geom = ArrayGeometry(num_antennas, wavelength, spacing)
    angular = build_angular_dictionary(geom)
    polar = build_polar_dictionary(
        geom, build_polar_grid(geom, atoms_per_angle, grid_r_min)
    )
    return geom, angular, polar


def _config_operators(config: SweepConfig):
    return _operators(
        config.num_antennas,
        config.wavelength,
        config.spacing,
        config.atoms_per_angle,
        config.effective_grid_r_min,
    )


def _trial_nmse(config: SweepConfig, snr_idx: int, trial_idx: int) -> np.ndarray:
    geom, angular, polar = _config_operators(config)
    rng = np.random.default_rng(
        np.random.SeedSequence((config.master_seed, snr_idx, trial_idx))
    )
    scenario = sample_scenario(
        rng, geom, config.num_paths, config.r_range, config.regime
    )
    h = synthesize_channel(geom, scenario)
    snr = SnrConfig.from_snr_db(config.snr_db_list[snr_idx], config.transmit_power)
    y = simulate_received_signal(rng, h, snr)
    k = config.effective_sparsity
    p = config.transmit_power
    out = np.empty(len(config.estimators))
    for j, name in enumerate(config.estimators):
        if name == "ls":
            h_hat = ls_estimate(y, p)
        elif name == "omp":
            h_hat, _ = omp_estimate(y, angular, k, p)
        else:
            h_hat, _ = omp_estimate(y, polar, k, p)
        out[j] = nmse(h, h_hat)
    return out


def _run_chunk(config: SweepConfig, snr_idx: int, lo: int, hi: int) -> np.ndarray:
    out = np.empty((hi - lo, len(config.estimators)))
    for t in range(lo, hi):
        out[t - lo] = _trial_nmse(config, snr_idx, t)
    return out


def resolve_workers(workers: int | None) -> int:
    """None or 1 means serial; 0 means one worker per CPU."""
    if workers is None:
        return 1
    if workers < 0:
        raise ValueError(f"workers must be >= 0, got {workers}")
    if workers == 0:
        return os.cpu_count() or 1
    return workers


def run_sweep(config: SweepConfig, workers: int | None = None) -> list[NmseRecord]:
    """Monte-Carlo NMSE table, one record per (estimator, SNR) cell.

    Records are grouped by estimator, SNRs in config order. Reruns with
    an equal config are bit-identical regardless of ``workers``.
    """
    n_snr = len(config.snr_db_list)
    trials = config.trials_per_point
    ratios = np.empty((n_snr, trials, len(config.estimators)))
    n_workers = resolve_workers(workers)
    if n_workers <= 1:
        for i in range(n_snr):
            ratios[i] = _run_chunk(config, i, 0, trials)
    else:
        chunk = max(1, math.ceil(trials / n_workers))
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            futures = {}
            for i in range(n_snr):
                for lo in range(0, trials, chunk):
                    hi = min(lo + chunk, trials)
                    futures[pool.submit(_run_chunk, config, i, lo, hi)] = (i, lo, hi)
            for fut, (i, lo, hi) in futures.items():
                ratios[i, lo:hi] = fut.result()

    records = []
    for j, name in enumerate(config.estimators):
        for i, snr_db in enumerate(config.snr_db_list):
            mean = float(np.mean(ratios[i, :, j]))
            records.append(NmseRecord(name, snr_db, trials, mean, nmse_db(mean)))
    return records


CSV_HEADER = "estimator,snr_db,trials,nmse,nmse_db"


def records_to_csv(records: list[NmseRecord]) -> str:
    """Plot-ready CSV, floats at 6 significant digits."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            f"{r.estimator},{r.snr_db:.6g},{r.trials},{r.nmse:.6g},{r.nmse_db:.6g}"
        )
    return "\n".join(lines) + "\n"
