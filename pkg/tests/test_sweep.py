import math

import numpy as np
import pytest

from xlce import (
    ESTIMATORS,
    CSV_HEADER,
    SweepConfig,
    records_to_csv,
    resolve_workers,
    run_sweep,
)

SMALL = SweepConfig(
    snr_db_list=(0.0, 10.0),
    trials_per_point=64,
    estimators=("ls", "omp", "pomp"),
    master_seed=5,
    num_antennas=32,
)


def test_estimator_registry():
    assert ESTIMATORS == ("ls", "omp", "pomp")


def test_row_count_and_ordering():
    records = run_sweep(SMALL)
    assert len(records) == 2 * 3
    # estimator-major, snr ascending within each estimator
    assert [(r.estimator, r.snr_db) for r in records] == [
        (e, s) for e in ("ls", "omp", "pomp") for s in (0.0, 10.0)
    ]
    for r in records:
        assert r.trials == 64
        assert r.nmse > 0
        assert r.nmse_db == pytest.approx(10 * math.log10(r.nmse), rel=1e-12)


def test_rerun_is_bit_identical():
    a = run_sweep(SMALL)
    b = run_sweep(SMALL)
    assert a == b


def test_parallel_equals_serial():
    serial = run_sweep(SMALL, workers=None)
    parallel = run_sweep(SMALL, workers=2)
    assert serial == parallel


def test_resolve_workers():
    assert resolve_workers(None) == 1
    assert resolve_workers(3) == 3
    assert resolve_workers(0) >= 1
    with pytest.raises(ValueError):
        resolve_workers(-1)


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig((), 10, ("ls",), 0)
    with pytest.raises(ValueError):
        SweepConfig((10.0,), 0, ("ls",), 0)
    with pytest.raises(ValueError):
        SweepConfig((10.0,), 10, (), 0)
    with pytest.raises(ValueError):
        SweepConfig((10.0,), 10, ("mmse",), 0)


def test_config_derived_defaults():
    cfg = SweepConfig((10.0,), 1, ("ls",), 0)
    assert cfg.effective_grid_r_min == 5.0
    assert cfg.effective_sparsity == 6
    cfg = SweepConfig((10.0,), 1, ("ls",), 0, grid_r_min=25.0, sparsity=12)
    assert cfg.effective_grid_r_min == 25.0
    assert cfg.effective_sparsity == 12


def test_csv_serialization():
    records = run_sweep(SMALL)
    text = records_to_csv(records)
    lines = text.strip().split("\n")
    assert lines[0] == CSV_HEADER == "estimator,snr_db,trials,nmse,nmse_db"
    assert len(lines) == 1 + len(records)
    first = lines[1].split(",")
    assert first[0] == "ls"
    assert float(first[1]) == 0.0
    assert int(first[2]) == 64
    # six significant digits
    assert float(first[3]) == pytest.approx(records[0].nmse, rel=1e-5)


def test_ls_error_floor_follows_noise():
    # ls nmse scales like sigma^2/p, so 10 dB more SNR is ~10x lower nmse
    records = [r for r in run_sweep(SMALL) if r.estimator == "ls"]
    assert records[0].nmse / records[1].nmse == pytest.approx(10.0, rel=0.35)


def test_polar_never_loses_at_moderate_snr_and_defaults():
    """Default grid and sparsity, matched trials: polar pursuit at least
    ties the angular baseline from 10 dB up."""
    cfg = SweepConfig(
        snr_db_list=(10.0, 20.0, 30.0),
        trials_per_point=500,
        estimators=("omp", "pomp"),
        master_seed=123,
    )
    records = run_sweep(cfg)
    omp = {r.snr_db: r.nmse for r in records if r.estimator == "omp"}
    pomp = {r.snr_db: r.nmse for r in records if r.estimator == "pomp"}
    for snr in (10.0, 20.0, 30.0):
        assert pomp[snr] <= omp[snr]


def test_calibrated_benchmark_gap_exceeds_two_db(benchmark_records):
    by = {(r.estimator, r.snr_db): r.nmse_db for r in benchmark_records}
    gap = by[("omp", 20.0)] - by[("pomp", 20.0)]
    assert gap >= 2.0
