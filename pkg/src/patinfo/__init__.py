"""Combinatorial information measures and entropy for finite symbol patterns.

The library quantifies the information content of a finite symbol
sequence in bits, between a constant-pattern lower bound and a
uniform-random upper bound, with frequency-adjusted, compression-
calibrated, and size-normalized estimators in between, plus seeded
corpus generators and an executable property suite.
"""

from .core import (
    Alphabet,
    DegenerateAlphabetError,
    EmptyPatternError,
    FrequencyTable,
    PatinfoError,
    Pattern,
    Symbol,
    frequency_table,
    infer_alphabet,
)
from .estimators import (
    EstimatorKind,
    bounds,
    clamp_bits,
    combinatorial_entropy,
    ensemble_min_info,
    frequency_entropy,
    log2_geometric_series,
    max_info,
    min_info,
    modified_shannon_info,
    shannon_classic_info,
)
from .compression import (
    CalibrationCache,
    CalibrationMismatchError,
    CompressionBackendError,
    CompressionCalibration,
    Compressor,
    calibrate,
    compressed_bits,
    compression_info,
    default_compressor,
    default_mode,
    oracle_normalized_info,
    serialize_pattern,
)
from .generators import GeneratorError, GeneratorKind, GeneratorSpec, default_symbols, generate
from .properties import (
    CheckClass,
    PropertyId,
    PropertyReport,
    SuiteConfig,
    check_monotonicity,
    check_normalization,
    check_ordering_chain,
    check_redundancy,
    check_reversibility,
    check_subadditivity,
    run_suite,
)
from .report import EstimateReport, ReportContext, build_report

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "CalibrationCache",
    "CalibrationMismatchError",
    "CheckClass",
    "CompressionBackendError",
    "CompressionCalibration",
    "Compressor",
    "DegenerateAlphabetError",
    "EmptyPatternError",
    "EstimateReport",
    "EstimatorKind",
    "FrequencyTable",
    "GeneratorError",
    "GeneratorKind",
    "GeneratorSpec",
    "PatinfoError",
    "Pattern",
    "PropertyId",
    "PropertyReport",
    "ReportContext",
    "SuiteConfig",
    "Symbol",
    "bounds",
    "build_report",
    "calibrate",
    "check_monotonicity",
    "check_normalization",
    "check_ordering_chain",
    "check_redundancy",
    "check_reversibility",
    "check_subadditivity",
    "clamp_bits",
    "combinatorial_entropy",
    "compressed_bits",
    "compression_info",
    "default_compressor",
    "default_mode",
    "default_symbols",
    "ensemble_min_info",
    "frequency_entropy",
    "frequency_table",
    "generate",
    "infer_alphabet",
    "log2_geometric_series",
    "max_info",
    "min_info",
    "modified_shannon_info",
    "oracle_normalized_info",
    "run_suite",
    "serialize_pattern",
    "shannon_classic_info",
    "__version__",
]
