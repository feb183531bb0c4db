"""Subspace estimation from noisy canonical projections, with computable
error bounds, identifiability checks, and a reproducible experiment harness.
"""

from .bounds import (
    BoundReport,
    bound_report,
    delta_of,
    epsilon_of,
    projection_bound,
    theorem1_bound,
)
from .errors import (
    DimensionMismatch,
    EchelonDegenerate,
    EmptyList,
    IdentifiabilityFailure,
    IndexOutOfRange,
    InvalidDimensions,
    MissingNoise,
    NonPositiveDenominator,
    RankDeficient,
    SubspaceError,
    TooFewProjections,
)
from .estimator import (
    NormalMatrix,
    ProjectionSet,
    build_normal_matrix,
    echelon_alpha,
    estimate_subspace,
    lift,
    noiseless_projections,
    restrict_rows,
)
from .linalg import (
    SingularSpectrum,
    SubspaceBasis,
    chordal_distance,
    hyperplane_normal,
    orthogonal_complement,
    projection_operator,
    singular_spectrum,
)
from .matrixio import read_matrix, write_matrix
from .sampling import (
    SamplingPattern,
    ValidationReport,
    c3_generic_rank,
    gen_omega1,
    gen_omega2,
    overlap_stats,
    validate,
)
from .sweeps import SweepSpec, run_sweep, sweep_ambient, sweep_noise, sweep_subspace
from .synth import (
    TrialConfig,
    TrialRecord,
    make_noisy_projections,
    random_subspace,
    run_trial,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport",
    "DimensionMismatch",
    "EchelonDegenerate",
    "EmptyList",
    "IdentifiabilityFailure",
    "IndexOutOfRange",
    "InvalidDimensions",
    "MissingNoise",
    "NonPositiveDenominator",
    "NormalMatrix",
    "ProjectionSet",
    "RankDeficient",
    "SamplingPattern",
    "SingularSpectrum",
    "SubspaceBasis",
    "SubspaceError",
    "SweepSpec",
    "TooFewProjections",
    "TrialConfig",
    "TrialRecord",
    "ValidationReport",
    "bound_report",
    "build_normal_matrix",
    "c3_generic_rank",
    "chordal_distance",
    "delta_of",
    "echelon_alpha",
    "epsilon_of",
    "estimate_subspace",
    "gen_omega1",
    "gen_omega2",
    "hyperplane_normal",
    "lift",
    "make_noisy_projections",
    "noiseless_projections",
    "orthogonal_complement",
    "overlap_stats",
    "projection_bound",
    "projection_operator",
    "random_subspace",
    "read_matrix",
    "restrict_rows",
    "run_sweep",
    "run_trial",
    "singular_spectrum",
    "sweep_ambient",
    "sweep_noise",
    "sweep_subspace",
    "theorem1_bound",
    "validate",
    "write_matrix",
]
