#!/usr/bin/env python3
"""Generate train/test dataset files, one pair per SNR point.

Each file holds seeded (y, h) sample pairs in the package's binary
format; train and test splits use distinct master seeds so their sample
streams never overlap. File names encode the split and SNR, e.g.
train_snr20.bin / test_snr20.bin.
"""

import argparse
import os
import sys

from xlce import DatasetConfig, generate_dataset
from xlce.cli import snr_list


def parse_args(argv=None):
    parser = argparse.ArgumentParser(
        description=__doc__.splitlines()[0],
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--out-dir", default="data", help="output directory")
    parser.add_argument("--snr-db", type=snr_list, default=(20.0,),
                        metavar="LIST", help="comma list or start:step:stop in dB")
    parser.add_argument("--train-samples", type=int, default=16_000)
    parser.add_argument("--test-samples", type=int, default=4_000)
    parser.add_argument("--n", type=int, default=128, help="antennas")
    parser.add_argument("--paths", type=int, default=6, help="multipath components")
    parser.add_argument("--train-seed", type=int, default=1, help="train-split master seed")
    parser.add_argument("--test-seed", type=int, default=2, help="test-split master seed")
    return parser.parse_args(argv)


def main(argv=None):
    args = parse_args(argv)
    os.makedirs(args.out_dir, exist_ok=True)
    splits = (
        ("train", args.train_samples, args.train_seed),
        ("test", args.test_samples, args.test_seed),
    )
    for snr_db in args.snr_db:
        for split, count, seed in splits:
            config = DatasetConfig(
                snr_db=snr_db,
                master_seed=seed,
                num_antennas=args.n,
                num_paths=args.paths,
            )
            name = f"{split}_snr{snr_db:g}.bin"
            path = os.path.join(args.out_dir, name)
            header = generate_dataset(config, count, path)
            size = os.path.getsize(path)
            print(f"{path}: {header.sample_count} samples, {size} bytes")
    return 0


if __name__ == "__main__":
    sys.exit(main())
