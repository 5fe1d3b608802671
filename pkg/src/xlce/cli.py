"""Command-line front end for reproducible channel-estimation experiments.

Subcommands: gen-dataset (write a binary sample file), sweep (Monte-Carlo
NMSE-vs-SNR CSV), estimate (score one estimator on a dataset file),
grid-info (print the polar grid), complexity (analytic operation counts).

Exit status: 0 success, 2 usage error, 3 missing required flag,
4 I/O failure, 5 malformed dataset file. Diagnostics are a single line
on stderr. Output files are written atomically (temp file + rename).
The XLCE_THREADS environment variable caps sweep worker processes
(0 = one per CPU).
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile

import numpy as np

from .channel import ArrayGeometry, Regime, rayleigh_distance
from .complexity import SCHEMES, theoretical_complexity
from .datasets import DatasetConfig, DatasetFormatError, generate_dataset, read_dataset
from .dictionaries import (
    build_angular_dictionary,
    build_polar_dictionary,
    build_polar_grid,
    mutual_coherence,
)
from .estimators import ls_estimate, omp_estimate
from .metrics import nmse, nmse_db
from .sweep import (
    CSV_HEADER,
    ESTIMATORS,
    SweepConfig,
    records_to_csv,
    run_sweep,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING_FLAG = 3
EXIT_IO = 4
EXIT_DATASET_FORMAT = 5

_REGIMES = {"near": Regime.NEAR_FIELD, "far": Regime.FAR_FIELD}


class _Parser(argparse.ArgumentParser):
    """Single-line diagnostics; distinct status for missing required flags."""

    def error(self, message: str) -> None:
        status = EXIT_MISSING_FLAG if "required" in message else EXIT_USAGE
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(status)


def snr_list(text: str) -> tuple[float, ...]:
    """Comma-separated values, or start:step:stop (inclusive)."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range form is start:step:stop")
        start, step, stop = (float(p) for p in parts)
        if step <= 0 or stop < start:
            raise ValueError("range needs step > 0 and stop >= start")
        count = int((stop - start) / step + 1e-9) + 1
        return tuple(start + i * step for i in range(count))
    values = tuple(float(tok) for tok in text.split(",") if tok.strip())
    if not values:
        raise ValueError("empty SNR list")
    return values


def estimator_list(text: str) -> tuple[str, ...]:
    names = tuple(tok.strip() for tok in text.split(",") if tok.strip())
    if not names:
        raise ValueError("empty estimator list")
    for name in names:
        if name not in ESTIMATORS:
            raise ValueError(f"unknown estimator {name!r}")
    return names


def _add_geometry_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=128, help="number of antennas")
    p.add_argument("--wavelength", type=float, default=0.03, help="carrier wavelength in meters")
    p.add_argument("--spacing", type=float, default=None,
                   help="element spacing in meters; half the wavelength when omitted")


def _add_scenario_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--paths", type=int, default=6, help="multipath components per channel")
    p.add_argument("--r-min", type=float, default=5.0,
                   help="minimum path distance in meters (also the closest polar grid ring)")
    p.add_argument("--r-max", type=float, default=50.0, help="maximum path distance in meters")
    p.add_argument("--power", type=float, default=1.0, help="transmit power (linear)")
    p.add_argument("--regime", choices=sorted(_REGIMES), default="near",
                   help="wavefront model for synthesized channels")


def _add_grid_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--atoms-per-angle", type=int, default=2,
                   help="distance samples per angle in the polar dictionary")


def build_parser() -> _Parser:
    parser = _Parser(prog="xlce", description=__doc__.splitlines()[0],
                     formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("gen-dataset", help="write a binary (y, h) sample file",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_geometry_flags(p)
    _add_scenario_flags(p)
    p.add_argument("--samples", type=int, required=True, default=argparse.SUPPRESS,
                   help="number of (y, h) records")
    p.add_argument("--snr-db", type=float, required=True, default=argparse.SUPPRESS,
                   help="per-file SNR in dB")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", required=True, default=argparse.SUPPRESS,
                   help="output file path")
    p.set_defaults(func=_cmd_gen_dataset)

    p = sub.add_parser("sweep", help="Monte-Carlo NMSE-vs-SNR table as CSV",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_geometry_flags(p)
    _add_scenario_flags(p)
    _add_grid_flags(p)
    p.add_argument("--estimators", type=estimator_list, default=("ls", "omp", "pomp"),
                   metavar="NAMES", help="comma-separated subset of: " + ",".join(ESTIMATORS))
    p.add_argument("--snr-db", type=snr_list, default=(0.0, 10.0, 20.0, 30.0),
                   metavar="LIST", help="comma list or start:step:stop range of SNRs in dB")
    p.add_argument("--trials", type=int, default=200, help="Monte-Carlo trials per SNR point")
    p.add_argument("--sparsity", type=int, default=None,
                   help="greedy iterations; matches --paths when omitted")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", required=True, default=argparse.SUPPRESS,
                   help="output CSV path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("estimate", help="score one estimator on a dataset file",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_grid_flags(p)
    p.add_argument("--estimator", choices=ESTIMATORS, required=True,
                   default=argparse.SUPPRESS, help="estimator to run")
    p.add_argument("--in", dest="input", required=True, default=argparse.SUPPRESS,
                   help="dataset file from gen-dataset")
    p.add_argument("--r-min", type=float, default=5.0,
                   help="closest polar grid ring in meters")
    p.add_argument("--sparsity", type=int, default=None,
                   help="greedy iterations; matches the file's path count when omitted")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("grid-info", help="print the polar sampling grid",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    _add_geometry_flags(p)
    _add_grid_flags(p)
    p.add_argument("--r-min", type=float, default=5.0,
                   help="closest polar grid ring in meters")
    p.set_defaults(func=_cmd_grid_info)

    p = sub.add_parser("complexity", help="analytic operation counts for every scheme",
                       formatter_class=argparse.ArgumentDefaultsHelpFormatter)
    p.add_argument("--n", type=int, default=128, help="number of antennas")
    p.add_argument("--q", type=int, default=256, help="polar dictionary atoms")
    p.add_argument("--l", type=int, default=6, help="sparsity level")
    p.add_argument("--b", type=int, default=8, help="network blocks")
    p.add_argument("--m", type=int, default=6, help="layers per block")
    p.add_argument("--k", type=int, default=3, help="convolution kernel extent")
    p.add_argument("--e", type=int, default=64, help="feature channels")
    p.set_defaults(func=_cmd_complexity)

    return parser


def _write_atomic(path: str, write_body) -> None:
    """Write via a sibling temp file and rename into place."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=os.path.basename(path) + ".")
    try:
        with os.fdopen(fd, "wb") as f:
            write_body(f)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _workers_from_env() -> int:
    raw = os.environ.get("XLCE_THREADS", "0")
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"XLCE_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"XLCE_THREADS must be >= 0, got {value}")
    return value


def _cmd_gen_dataset(args: argparse.Namespace) -> int:
    config = DatasetConfig(
        snr_db=args.snr_db,
        master_seed=args.seed,
        num_antennas=args.n,
        wavelength=args.wavelength,
        spacing=args.spacing,
        num_paths=args.paths,
        r_range=(args.r_min, args.r_max),
        regime=_REGIMES[args.regime],
        transmit_power=args.power,
    )
    _write_atomic(args.out, lambda f: generate_dataset(config, args.samples, f))
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = SweepConfig(
        snr_db_list=args.snr_db,
        trials_per_point=args.trials,
        estimators=args.estimators,
        master_seed=args.seed,
        num_antennas=args.n,
        wavelength=args.wavelength,
        spacing=args.spacing,
        num_paths=args.paths,
        r_range=(args.r_min, args.r_max),
        regime=_REGIMES[args.regime],
        atoms_per_angle=args.atoms_per_angle,
        transmit_power=args.power,
        sparsity=args.sparsity,
    )
    records = run_sweep(config, workers=_workers_from_env())
    csv_text = records_to_csv(records)
    _write_atomic(args.out, lambda f: f.write(csv_text.encode()))
    return EXIT_OK


def _cmd_estimate(args: argparse.Namespace) -> int:
    header, samples = read_dataset(args.input)
    geom = ArrayGeometry(header.num_antennas, header.wavelength, header.spacing)
    sparsity = args.sparsity if args.sparsity is not None else header.num_paths
    name = args.estimator
    angular = polar = None
    if name == "omp":
        angular = build_angular_dictionary(geom)
    elif name == "pomp":
        polar = build_polar_dictionary(
            geom, build_polar_grid(geom, args.atoms_per_angle, args.r_min)
        )
    p = header.transmit_power
    ratios = []
    for y32, h32 in samples:
        y = y32.astype(np.complex128)
        h = h32.astype(np.complex128)
        if name == "ls":
            h_hat = ls_estimate(y, p)
        elif name == "omp":
            h_hat, _ = omp_estimate(y, angular, sparsity, p)
        else:
            h_hat, _ = omp_estimate(y, polar, sparsity, p)
        ratios.append(nmse(h, h_hat))
    mean = float(np.mean(ratios))
    print(CSV_HEADER)
    print(
        f"{name},{header.snr_db:.6g},{len(ratios)},{mean:.6g},{nmse_db(mean):.6g}"
    )
    return EXIT_OK


def _cmd_grid_info(args: argparse.Namespace) -> int:
    geom = ArrayGeometry(args.n, args.wavelength, args.spacing)
    grid = build_polar_grid(geom, args.atoms_per_angle, args.r_min)
    polar = build_polar_dictionary(geom, grid)
    print(f"antennas: {geom.num_antennas}")
    print(f"wavelength_m: {geom.wavelength:.6g}")
    print(f"spacing_m: {geom.spacing:.6g}")
    print(f"aperture_m: {geom.aperture:.6g}")
    print(f"rayleigh_distance_m: {rayleigh_distance(geom):.6g}")
    print(f"atoms_per_angle: {args.atoms_per_angle}")
    print(f"total_atoms: {grid.total_atoms}")
    print(f"mutual_coherence: {mutual_coherence(polar):.6g}")
    print("angle distances_m")
    for theta, dists in zip(grid.angles, grid.distances_per_angle):
        ladder = " ".join("inf" if d == float("inf") else f"{d:.6g}" for d in dists)
        print(f"{theta:+.6f} {ladder}")
    return EXIT_OK


def _cmd_complexity(args: argparse.Namespace) -> int:
    params = dict(n=args.n, q=args.q, l=args.l, b=args.b, m=args.m, k=args.k, e=args.e)
    for scheme in SCHEMES:
        print(f"{scheme} {theoretical_complexity(scheme, **params)}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DatasetFormatError as exc:
        print(f"xlce: dataset error: {exc}", file=sys.stderr)
        return EXIT_DATASET_FORMAT
    except OSError as exc:
        print(f"xlce: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"xlce: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
