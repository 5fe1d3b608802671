import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xlce import nmse, nmse_db

finite_complex = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=1e3, allow_nan=False, allow_infinity=False
)


def test_perfect_estimate_scores_zero():
    h = np.array([1 + 2j, -0.5j, 3.0])
    assert nmse(h, h) == 0.0


def test_zero_estimate_scores_one():
    h = np.array([1 + 2j, -0.5j, 3.0])
    assert nmse(h, np.zeros(3)) == pytest.approx(1.0, rel=1e-15)
    assert nmse_db(1.0) == 0.0


def test_doubled_estimate_scores_one():
    h = np.array([1 + 1j, 2 - 1j, 0.25])
    assert nmse(h, 2 * h) == pytest.approx(1.0, rel=1e-12)


def test_nmse_rejects_degenerate_inputs():
    with pytest.raises(ValueError):
        nmse(np.zeros(4), np.ones(4))
    with pytest.raises(ValueError):
        nmse(np.ones(4), np.ones(5))


def test_nmse_db_edge_cases():
    assert nmse_db(0.0) == -math.inf
    assert nmse_db(100.0) == pytest.approx(20.0)
    with pytest.raises(ValueError):
        nmse_db(-0.1)


@given(st.lists(finite_complex, min_size=1, max_size=32), st.lists(finite_complex, min_size=1, max_size=32))
@settings(max_examples=200, deadline=None)
def test_nmse_non_negative(hs, gs):
    n = min(len(hs), len(gs))
    h = np.array(hs[:n])
    g = np.array(gs[:n])
    if np.linalg.norm(h) == 0:
        return
    v = nmse(h, g)
    assert v >= 0.0
    assert nmse(h, h) == 0.0
