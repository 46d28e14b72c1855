"""weightspec: exact weight spectra of linear codes over GF(q).

Closed-form MDS and random-code spectra, the inequality chain relating
them, and a deterministic Monte Carlo harness that reproduces the
"approximately MDS" behaviour of random codes with large field size.
"""

from .codes import (
    LinearCode,
    MessageWeightCounts,
    WeightSpectrum,
    is_mds,
    macwilliams_transform,
    message_weight_counts,
    min_distance,
    reed_solomon_generator,
    spectrum,
    spectrum_direct,
    spectrum_dual,
)
from .ensemble import (
    EnsembleConfig,
    EnsembleSummary,
    SampleRecord,
    independence_audit,
    run_ensemble,
)
from .formulas import (
    ExpectedSpectrum,
    MdsSpectrum,
    Thresholds,
    expected_spectrum,
    full_rank_prob,
    mds_spectrum,
    ratio_bounds,
    regime_check,
    theorem_bound,
    theta_expansion,
    thresholds,
)
from .gf import FieldSpec, field_create
from .linalg import MatrixGF, VectorGF, dual_generator, mat_rank, random_matrix
from .rng import SeedStream, splitmix64_next, substream_seed

__version__ = "0.1.0"

__all__ = [
    "EnsembleConfig",
    "EnsembleSummary",
    "ExpectedSpectrum",
    "FieldSpec",
    "LinearCode",
    "MatrixGF",
    "MdsSpectrum",
    "MessageWeightCounts",
    "SampleRecord",
    "SeedStream",
    "Thresholds",
    "VectorGF",
    "WeightSpectrum",
    "dual_generator",
    "expected_spectrum",
    "field_create",
    "full_rank_prob",
    "independence_audit",
    "is_mds",
    "macwilliams_transform",
    "mat_rank",
    "mds_spectrum",
    "message_weight_counts",
    "min_distance",
    "random_matrix",
    "ratio_bounds",
    "reed_solomon_generator",
    "regime_check",
    "run_ensemble",
    "spectrum",
    "spectrum_direct",
    "spectrum_dual",
    "splitmix64_next",
    "substream_seed",
    "theorem_bound",
    "theta_expansion",
    "thresholds",
]
