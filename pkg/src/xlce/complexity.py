"""Closed-form running-phase operation counts for every estimator family.

Counts are exact formula evaluations, not measurements: greedy pursuit
costs scale with the cube of the sparsity level times the dictionary
size, network costs with blocks x layers x feature-map length x kernel
and channel factors.
"""

from __future__ import annotations

_REQUIRED = {
    "omp": ("l", "n"),
    "pomp": ("l", "n", "q"),
    "mrdn": ("b", "m", "n", "k", "e"),
    "pmrdn": ("b", "m", "n", "q", "k", "e"),
    "pmsrdn": ("b", "m", "n", "q", "k", "e"),
}

SCHEMES = tuple(_REQUIRED)


def theoretical_complexity(scheme: str, **params: int) -> int:
    """Operation count for ``scheme`` at the given dimension parameters.

    Parameters are keyword-only: n (antennas), q (polar atoms),
    l (sparsity), b (network blocks), m (layers per block),
    k (kernel extent), e (feature channels). Extra keys are ignored so
    one parameter set can be applied to every scheme.
    """
    if scheme not in _REQUIRED:
        raise ValueError(f"unknown scheme {scheme!r}; known: {', '.join(SCHEMES)}")
    missing = [name for name in _REQUIRED[scheme] if name not in params]
    if missing:
        raise ValueError(f"{scheme} needs parameters: {', '.join(missing)}")
    v = {}
    for name in _REQUIRED[scheme]:
        value = int(params[name])
        if value < 1:
            raise ValueError(f"parameter {name} must be >= 1, got {params[name]}")
        v[name] = value
    if scheme == "omp":
        return v["l"] ** 3 * v["n"] ** 2
    if scheme == "pomp":
        return v["l"] ** 3 * v["n"] * v["q"]
    if scheme == "mrdn":
        return v["b"] * v["m"] * v["n"] ** 2 * v["k"] ** 2 * v["e"] ** 2
    if scheme == "pmrdn":
        return v["b"] * v["m"] * v["n"] * v["q"] * v["k"] ** 2 * v["e"] ** 2
    return v["b"] * (v["m"] + 4) * v["n"] * v["q"] * v["k"] ** 2 * v["e"] ** 2
