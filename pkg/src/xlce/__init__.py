"""Near-field ULA channel simulation, sparse dictionaries, and NMSE benchmarks."""

from .channel import (
    ArrayGeometry,
    ChannelScenario,
    PathComponent,
    Regime,
    SnrConfig,
    element_distance,
    far_field_steering,
    near_field_steering,
    rayleigh_distance,
    sample_scenario,
    simulate_received_signal,
    synthesize_channel,
)
from .complexity import SCHEMES, theoretical_complexity
from .datasets import (
    HEADER_NBYTES,
    DatasetConfig,
    DatasetFormatError,
    DatasetHeader,
    DatasetMagicError,
    DatasetTruncatedError,
    DatasetVersionError,
    generate_dataset,
    read_dataset,
)
from .dictionaries import (
    AngularDictionary,
    Direction,
    PolarDictionary,
    PolarGrid,
    build_angular_dictionary,
    build_polar_dictionary,
    build_polar_grid,
    mutual_coherence,
    transform,
)
from .estimators import SparseEstimate, ls_estimate, omp_estimate
from .metrics import nmse, nmse_db
from .sweep import (
    CSV_HEADER,
    ESTIMATORS,
    NmseRecord,
    SweepConfig,
    records_to_csv,
    resolve_workers,
    run_sweep,
)

__version__ = "0.1.0"

__all__ = [
    "CSV_HEADER",
    "HEADER_NBYTES",
    "ArrayGeometry",
    "ChannelScenario",
    "PathComponent",
    "Regime",
    "SnrConfig",
    "element_distance",
    "far_field_steering",
    "near_field_steering",
    "rayleigh_distance",
    "sample_scenario",
    "simulate_received_signal",
    "synthesize_channel",
    "SCHEMES",
    "theoretical_complexity",
    "DatasetConfig",
    "DatasetFormatError",
    "DatasetHeader",
    "DatasetMagicError",
    "DatasetTruncatedError",
    "DatasetVersionError",
    "generate_dataset",
    "read_dataset",
    "AngularDictionary",
    "Direction",
    "PolarDictionary",
    "PolarGrid",
    "build_angular_dictionary",
    "build_polar_dictionary",
    "build_polar_grid",
    "mutual_coherence",
    "transform",
    "SparseEstimate",
    "ls_estimate",
    "omp_estimate",
    "nmse",
    "nmse_db",
    "ESTIMATORS",
    "NmseRecord",
    "SweepConfig",
    "records_to_csv",
    "resolve_workers",
    "run_sweep",
    "__version__",
]
