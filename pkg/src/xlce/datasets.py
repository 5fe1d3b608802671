"""Binary container for (observation, channel) sample pairs.

Little-endian layout: a fixed 56-byte header followed by sample_count
records. Header fields in order: magic b"XLCE", u16 format version,
u16 reserved (zero), u32 N, u64 sample_count, f32 snr_db,
f32 transmit_power, f64 wavelength_m, f64 spacing_m, u32 num_paths,
u64 master_seed. Each record stores y then h as N complex64 values
apiece (interleaved real/imaginary, antenna index ascending), 16*N
bytes per record, so the header alone fixes the exact file size and
truncation is always detectable.

Generation is fully reproducible: sample i draws from the substream
keyed by (master_seed, i), independent of every other sample.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterator

import numpy as np

from .channel import (
    ArrayGeometry,
    Regime,
    SnrConfig,
    sample_scenario,
    simulate_received_signal,
    synthesize_channel,
)

MAGIC = b"XLCE"
FORMAT_VERSION = 1

_HEADER = struct.Struct("<4sHHIQffddIQ")
HEADER_NBYTES = _HEADER.size


class DatasetFormatError(Exception):
    """Base class for malformed dataset files."""


class DatasetMagicError(DatasetFormatError):
    """Leading magic bytes do not identify a dataset file."""


class DatasetVersionError(DatasetFormatError):
    """Recognized file with an unsupported format version."""


class DatasetTruncatedError(DatasetFormatError):
    """File ends before the byte count promised by its header."""


@dataclass(frozen=True)
class DatasetHeader:
    """Everything a consumer needs to parse the payload and rebuild the
    matching geometry and pilot scaling."""

    num_antennas: int
    sample_count: int
    snr_db: float
    transmit_power: float
    wavelength: float
    spacing: float
    num_paths: int
    master_seed: int

    @property
    def sample_nbytes(self) -> int:
        return 16 * self.num_antennas

    @property
    def payload_nbytes(self) -> int:
        return self.sample_count * self.sample_nbytes

    def pack(self) -> bytes:
        return _HEADER.pack(
            MAGIC,
            FORMAT_VERSION,
            0,
            self.num_antennas,
            self.sample_count,
            self.snr_db,
            self.transmit_power,
            self.wavelength,
            self.spacing,
            self.num_paths,
            self.master_seed,
        )

    @classmethod
    def unpack(cls, buf: bytes) -> "DatasetHeader":
        if len(buf) < HEADER_NBYTES:
            raise DatasetTruncatedError(
                f"header needs {HEADER_NBYTES} bytes, got {len(buf)}"
            )
        magic, version, _reserved, n, count, snr_db, power, wl, sp, paths, seed = (
            _HEADER.unpack(buf[:HEADER_NBYTES])
        )
        if magic != MAGIC:
            raise DatasetMagicError(f"bad magic {magic!r}, expected {MAGIC!r}")
        if version != FORMAT_VERSION:
            raise DatasetVersionError(
                f"unsupported format version {version}, expected {FORMAT_VERSION}"
            )
        return cls(n, count, snr_db, power, wl, sp, paths, seed)


@dataclass(frozen=True)
class DatasetConfig:
    """Scenario and noise parameters behind one dataset file."""

    snr_db: float
    master_seed: int
    num_antennas: int = 128
    wavelength: float = 0.03
    spacing: float | None = None
    num_paths: int = 6
    r_range: tuple[float, float] = (5.0, 50.0)
    regime: Regime = Regime.NEAR_FIELD
    transmit_power: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "r_range", tuple(self.r_range))
        if not self.transmit_power > 0:
            raise ValueError("transmit_power must be positive")

    def geometry(self) -> ArrayGeometry:
        return ArrayGeometry(self.num_antennas, self.wavelength, self.spacing)


def _sample_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((master_seed, index)))


def generate_dataset(
    config: DatasetConfig, sample_count: int, out: str | BinaryIO
) -> DatasetHeader:
    """Write header plus sample_count (y, h) records to ``out``.

    ``out`` may be a path or a writable binary file object. Byte output
    is a pure function of (config, sample_count).
    """
    if sample_count < 1:
        raise ValueError(f"sample_count must be >= 1, got {sample_count}")
    geom = config.geometry()
    header = DatasetHeader(
        num_antennas=geom.num_antennas,
        sample_count=sample_count,
        snr_db=config.snr_db,
        transmit_power=config.transmit_power,
        wavelength=geom.wavelength,
        spacing=geom.spacing,
        num_paths=config.num_paths,
        master_seed=config.master_seed,
    )
    snr = SnrConfig.from_snr_db(config.snr_db, config.transmit_power)

    own = isinstance(out, (str, bytes)) or hasattr(out, "__fspath__")
    sink: BinaryIO = open(out, "wb") if own else out
    try:
        sink.write(header.pack())
        for idx in range(sample_count):
            rng = _sample_rng(config.master_seed, idx)
            scenario = sample_scenario(
                rng, geom, config.num_paths, config.r_range, config.regime
            )
            h = synthesize_channel(geom, scenario)
            y = simulate_received_signal(rng, h, snr)
            sink.write(np.ascontiguousarray(y, dtype="<c8").tobytes())
            sink.write(np.ascontiguousarray(h, dtype="<c8").tobytes())
    finally:
        if own:
            sink.close()
    return header


def read_dataset(
    source: str | BinaryIO,
) -> tuple[DatasetHeader, Iterator[tuple[np.ndarray, np.ndarray]]]:
    """Parse the header eagerly, then stream (y, h) complex64 pairs.

    The iterator yields exactly header.sample_count pairs and raises
    DatasetTruncatedError after the last whole sample if the file is
    short. Magic and version problems surface before any sample.
    """
    own = isinstance(source, (str, bytes)) or hasattr(source, "__fspath__")
    f: BinaryIO = open(source, "rb") if own else source
    try:
        header = DatasetHeader.unpack(f.read(HEADER_NBYTES))
    except Exception:
        if own:
            f.close()
        raise

    def samples() -> Iterator[tuple[np.ndarray, np.ndarray]]:
        n = header.num_antennas
        per = header.sample_nbytes
        try:
            for idx in range(header.sample_count):
                raw = f.read(per)
                if len(raw) < per:
                    raise DatasetTruncatedError(
                        f"sample {idx}: expected {per} bytes, got {len(raw)}"
                    )
                flat = np.frombuffer(raw, dtype="<c8")
                yield flat[:n].copy(), flat[n:].copy()
        finally:
            if own:
                f.close()

    return header, samples()
