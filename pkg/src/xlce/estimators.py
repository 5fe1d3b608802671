"""Least-squares and orthogonal-matching-pursuit channel estimators.

OMP greedily picks the dictionary atom most correlated with the current
residual, then re-solves the least-squares fit over the accumulated
support from scratch each iteration. Against the angular dictionary it
is the classical far-field baseline; against the polar dictionary it
exploits near-field sparsity. Estimates are rescaled by 1/sqrt(p) to
undo the pilot power.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dictionaries import AngularDictionary, PolarDictionary


@dataclass(frozen=True)
class SparseEstimate:
    """Bookkeeping from one greedy pursuit run.

    ``residual_norms[0]`` is the observation norm; one extra entry is
    appended after each iteration, so the sequence is non-increasing.
    ``coefficients`` align with ``support`` (selection order).
    """

    support: tuple[int, ...]
    coefficients: np.ndarray
    residual_norms: tuple[float, ...]


def ls_estimate(y: np.ndarray, transmit_power: float) -> np.ndarray:
    """Scale-only baseline: h_hat = y / sqrt(p)."""
    if not transmit_power > 0:
        raise ValueError(f"transmit_power must be positive, got {transmit_power}")
    return np.asarray(y) / math.sqrt(transmit_power)


def omp_estimate(
    y: np.ndarray,
    dictionary: AngularDictionary | PolarDictionary,
    sparsity: int,
    transmit_power: float,
) -> tuple[np.ndarray, SparseEstimate]:
    """Greedy sparse recovery over the dictionary's atoms.

    Runs ``sparsity`` iterations (stopping early only on an exactly zero
    residual): select argmax |A^H r| among unselected atoms (lowest index
    on ties), re-solve min-norm least squares on the support, update the
    residual. Returns the antenna-domain estimate A_S x / sqrt(p) along
    with the support, coefficients, and residual-norm history.
    """
    A = dictionary.matrix
    num_atoms = A.shape[1]
    if not 1 <= sparsity <= num_atoms:
        raise ValueError(f"sparsity must lie in 1..{num_atoms}, got {sparsity}")
    if not transmit_power > 0:
        raise ValueError(f"transmit_power must be positive, got {transmit_power}")
    y = np.asarray(y, dtype=np.complex128)
    if y.shape != (A.shape[0],):
        raise ValueError(f"observation must have length {A.shape[0]}, got {y.shape}")

    residual = y
    residual_norms = [float(np.linalg.norm(y))]
    support: list[int] = []
    coeffs = np.zeros(0, dtype=np.complex128)
    for _ in range(sparsity):
        if residual_norms[-1] == 0.0:
            break
        corr = np.abs(A.conj().T @ residual)
        if support:
            corr[support] = -1.0
        support.append(int(np.argmax(corr)))
        subdict = A[:, support]
        coeffs, _, _, _ = np.linalg.lstsq(subdict, y, rcond=None)
        residual = y - subdict @ coeffs
        residual_norms.append(float(np.linalg.norm(residual)))

    if support:
        h_hat = A[:, support] @ coeffs / math.sqrt(transmit_power)
    else:
        h_hat = np.zeros_like(y)
    return h_hat, SparseEstimate(
        tuple(support), np.asarray(coeffs), tuple(residual_norms)
    )
