"""Estimation-quality metrics.

The per-sample normalized error is ||h - h_hat||^2 / ||h||^2; sweeps
average this ratio across trials (the expectation sits outside the
ratio) and report the mean in dB.
"""

from __future__ import annotations

import math

import numpy as np


def nmse(h: np.ndarray, h_hat: np.ndarray) -> float:
    """Normalized squared error of one estimate."""
    h = np.asarray(h)
    h_hat = np.asarray(h_hat)
    if h.shape != h_hat.shape:
        raise ValueError(f"shape mismatch: {h.shape} vs {h_hat.shape}")
    ref = float(np.vdot(h, h).real)
    if ref == 0.0:
        raise ValueError("true channel has zero norm; ratio undefined")
    err = h - h_hat
    return float(np.vdot(err, err).real) / ref


def nmse_db(value: float) -> float:
    """10*log10 of a non-negative ratio; 0 maps to -inf."""
    if value < 0:
        raise ValueError(f"ratio must be >= 0, got {value}")
    if value == 0:
        return -math.inf
    return 10.0 * math.log10(value)
