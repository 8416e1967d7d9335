"""Ground-state parameterization of the transverse-field XY chain.

Everything downstream is built from a handful of analytic quantities of the
diagonalized chain: the dispersion, the Bogoliubov angle of each momentum
sector and the correlation parameters lambda_+/-.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

DEFAULT_PHASE_TOL = 1e-12

# Discriminants h^2 + gamma^2 - 1 below this are rounding noise on the factorizing curve.
_DISCRIMINANT_SNAP = 8 * np.finfo(float).eps


class InvalidParams(ValueError):
    """Chain parameters outside the supported domain h >= 0, gamma > 0."""


class DivergentLengthError(ArithmeticError):
    """A correlation length is infinite (state on the critical line)."""


@dataclass(frozen=True)
class ChainParams:
    """A point (h, gamma) of the phase diagram."""

    h: float
    gamma: float

    def __post_init__(self):
        h, g = float(self.h), float(self.gamma)
        if not (math.isfinite(h) and math.isfinite(g)):
            raise InvalidParams(f"non-finite parameters h={self.h!r}, gamma={self.gamma!r}")
        if h < 0:
            raise InvalidParams(f"h must be >= 0, got {h}")
        if g <= 0:
            raise InvalidParams(f"gamma must be > 0, got {g}")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "gamma", g)

    @property
    def radius_sq(self) -> float:
        return self.h * self.h + self.gamma * self.gamma


@dataclass(frozen=True)
class LambdaPair:
    lambda_plus: complex
    lambda_minus: complex

    @property
    def is_real(self) -> bool:
        return self.lambda_plus.imag == 0.0 and self.lambda_minus.imag == 0.0


class Phase(Enum):
    DISORDERED = "disordered"
    ORDERED = "ordered"
    OSCILLATORY = "oscillatory"
    CRITICAL = "critical"
    FACTORIZING = "factorizing"

    @property
    def is_ordered(self) -> bool:
        return self in (Phase.ORDERED, Phase.OSCILLATORY, Phase.FACTORIZING)


@dataclass(frozen=True)
class CorrelationLengths:
    xi_plus: float
    xi_minus: float

    @property
    def xi_max(self) -> float:
        return max(self.xi_plus, self.xi_minus)


def dispersion(params: ChainParams, q):
    """Single-particle energy eps(q) = sqrt((h - cos q)^2 + (gamma sin q)^2)."""
    q = np.asarray(q, dtype=float)
    if not np.all(np.isfinite(q)):
        raise ValueError("momentum must be finite")
    out = np.hypot(params.h - np.cos(q), params.gamma * np.sin(q))
    return float(out) if out.ndim == 0 else out


def _angle(h, gamma, q):
    # unchecked vectorized canonical branch; callers guarantee 0 < q < pi
    return 0.5 * np.arctan2(gamma * np.sin(q), h - np.cos(q))


def bogoliubov_angle(params: ChainParams, q):
    """Bogoliubov angle nu_q on the canonical branch.

    nu_q = angle(h - cos q, gamma sin q) / 2 with the two-argument arctangent,
    which is continuous on the open interval (0, pi) and takes values in
    (0, pi/2). The discontinuity of the odd extension sits at q = 0.

    Parameters
    ----------
    params : ChainParams
    q : float or array_like
        Momenta strictly inside (0, pi).
    """
    q = np.asarray(q, dtype=float)
    if not np.all((q > 0) & (q < np.pi)):
        raise ValueError("bogoliubov_angle requires 0 < q < pi")
    out = _angle(params.h, params.gamma, q)
    return float(out) if out.ndim == 0 else out


def lambda_pair(params: ChainParams) -> LambdaPair:
    h, g = params.h, params.gamma
    disc = h * h + g * g - 1.0
    if abs(disc) <= _DISCRIMINANT_SNAP:
        disc = 0.0
    root = cmath.sqrt(complex(disc, 0.0))
    return LambdaPair((h + root) / (1 + g), (h - root) / (1 + g))


def _length(lam: complex) -> float:
    mod = abs(lam)
    if mod == 0.0:
        return 0.0
    return 1.0 / abs(math.log(mod))


def correlation_lengths(params: ChainParams, tol: float = DEFAULT_PHASE_TOL) -> CorrelationLengths:
    """Decay lengths xi = 1/|ln|lambda|| of both correlation parameters.

    Raises DivergentLengthError when either |lambda| equals one within `tol`,
    i.e. on the critical line.
    """
    pair = lambda_pair(params)
    for lam in (pair.lambda_plus, pair.lambda_minus):
        if math.isclose(abs(lam), 1.0, rel_tol=tol, abs_tol=tol):
            raise DivergentLengthError(f"|lambda| = 1 at h={params.h}, gamma={params.gamma}")
    return CorrelationLengths(_length(pair.lambda_plus), _length(pair.lambda_minus))


def classify_phase(params: ChainParams, tol: float = DEFAULT_PHASE_TOL) -> Phase:
    if tol <= 0:
        raise ValueError("tol must be positive")
    h = params.h
    if math.isclose(h, 1.0, rel_tol=tol, abs_tol=tol):
        return Phase.CRITICAL
    if h > 1.0:
        return Phase.DISORDERED
    r2 = params.radius_sq
    if math.isclose(r2, 1.0, rel_tol=tol, abs_tol=tol):
        return Phase.FACTORIZING
    if r2 < 1.0:
        return Phase.OSCILLATORY
    return Phase.ORDERED


def decay_parameter(params: ChainParams) -> float:
    """The slowest-decaying correlation parameter modulus.

    |lambda_+| in the ordered phase and |1/lambda_+| in the disordered one; this
    is the quantity whose contours show the oscillatory region.
    """
    lp = abs(lambda_pair(params).lambda_plus)
    if params.h > 1.0:
        return 1.0 / lp
    return lp
