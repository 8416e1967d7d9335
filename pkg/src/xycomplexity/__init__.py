"""Circuit complexity of the transverse-field XY chain."""

from .complexity import (
    Convergence,
    Divergent,
    Finite,
    PenaltySpec,
    StatePair,
    convergence_classify,
    merged_amplitudes,
    momentum_complexity_density,
    momentum_complexity_finite,
    realspace_complexity,
    realspace_complexity_closed,
    realspace_complexity_series,
)
from .kernels import (
    AmplitudeDecomposition,
    CriticalLineError,
    closed_kernels,
    kernel_closed,
    kernel_finite,
    kernel_quadrature,
    term_amplitudes,
)
from .model import (
    ChainParams,
    InvalidParams,
    Phase,
    bogoliubov_angle,
    classify_phase,
    correlation_lengths,
    lambda_pair,
)
from .scaling import ScalingProbe, leading_coefficient, scaling_fit, scaling_prediction
from .special import DomainError, gamma_val, polylog, zeta_val

__version__ = "0.1.0"

__all__ = [
    "Convergence",
    "Divergent",
    "Finite",
    "PenaltySpec",
    "StatePair",
    "convergence_classify",
    "merged_amplitudes",
    "momentum_complexity_density",
    "momentum_complexity_finite",
    "realspace_complexity",
    "realspace_complexity_closed",
    "realspace_complexity_series",
    "AmplitudeDecomposition",
    "CriticalLineError",
    "closed_kernels",
    "kernel_closed",
    "kernel_finite",
    "kernel_quadrature",
    "term_amplitudes",
    "ChainParams",
    "InvalidParams",
    "Phase",
    "bogoliubov_angle",
    "classify_phase",
    "correlation_lengths",
    "lambda_pair",
    "ScalingProbe",
    "leading_coefficient",
    "scaling_fit",
    "scaling_prediction",
    "DomainError",
    "gamma_val",
    "polylog",
    "zeta_val",
]
