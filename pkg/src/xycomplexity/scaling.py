"""Near-critical scaling of the real-space complexity at l = 0.

The target approaches the transition from the ordered side, h_T = 1 - eps,
with the reference held fixed deep in the ordered phase. The leading
eps-dependence is

    beta = 0            C ~ +(pi^2 / 2 gamma_T) eps ln eps
    beta = 1            C ~ -(pi^2 / 4) ln eps
    beta not integer    C ~ pi^2 Gamma(beta - 1) / (2^(1+beta) gamma_T^(1-beta)) eps^(1-beta)

All three follow from the Li_{2-beta}(lambda_+^2) term with lambda_+^2 ~ 1 - 2 eps / gamma_T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy import optimize

from .complexity import Finite, PenaltySpec, StatePair, realspace_complexity_series
from .model import ChainParams, Phase, classify_phase
from .special import gamma_val

EPS_MAX = 0.2


class ScalingError(ValueError):
    pass


class BetaClass(Enum):
    ZERO = "zero"
    ONE = "one"
    NON_INTEGER = "non-integer"


def beta_class(beta: float) -> BetaClass:
    if beta == 0:
        return BetaClass.ZERO
    if beta == 1:
        return BetaClass.ONE
    if float(beta).is_integer():
        raise ScalingError(f"no scaling law available for integer beta = {beta}")
    return BetaClass.NON_INTEGER


def _check(beta, gamma_T, eps=None):
    if not gamma_T > 0:
        raise ScalingError("gamma_T must be positive")
    if not beta < 2:
        raise ScalingError("beta must be < 2 for the series to converge off criticality")
    if eps is not None and not (0 < eps <= EPS_MAX):
        raise ScalingError(f"eps must lie in (0, {EPS_MAX}], got {eps}")


def leading_coefficient(beta: float, gamma_T: float) -> float:
    """Prefactor of the leading eps-dependent term (of eps ln eps, ln eps, eps^(1-beta))."""
    _check(beta, gamma_T)
    cls = beta_class(beta)
    if cls is BetaClass.ZERO:
        return math.pi**2 / (2 * gamma_T)
    if cls is BetaClass.ONE:
        return -math.pi**2 / 4
    return math.pi**2 * gamma_val(beta - 1) / (2 ** (1 + beta) * gamma_T ** (1 - beta))


def scaling_prediction(beta: float, gamma_T: float, eps: float) -> float:
    """Leading eps-dependent part of the complexity (excluding the eps = 0 constant)."""
    _check(beta, gamma_T, eps)
    coef = leading_coefficient(beta, gamma_T)
    cls = beta_class(beta)
    if cls is BetaClass.ZERO:
        return coef * eps * math.log(eps)
    if cls is BetaClass.ONE:
        return coef * math.log(eps)
    return coef * eps ** (1 - beta)


@dataclass(frozen=True)
class ScalingProbe:
    reference: ChainParams
    gamma_T: float
    epsilons: tuple[float, ...]
    beta: float

    def __post_init__(self):
        eps = tuple(float(e) for e in self.epsilons)
        object.__setattr__(self, "epsilons", eps)
        for e in eps:
            if not (0 < e <= EPS_MAX):
                raise ScalingError(f"eps must lie in (0, {EPS_MAX}], got {e}")
        if not self.gamma_T > 0:
            raise ScalingError("gamma_T must be positive")
        phase = classify_phase(self.reference)
        if phase not in (Phase.ORDERED, Phase.OSCILLATORY):
            raise ScalingError(f"reference must be in the ordered phase, got {phase.value}")
        beta_class(self.beta)

    def target(self, eps: float) -> ChainParams:
        return ChainParams(1.0 - eps, self.gamma_T)


@dataclass(frozen=True)
class ScalingFit:
    beta_class: BetaClass
    fitted_coefficient: float
    predicted_coefficient: float
    relative_deviation: float
    fit_residual: float
    fitted_exponent: float | None = None
    params: dict = field(default_factory=dict)


def probe_complexity(probe: ScalingProbe, eps: float, tol: float = 1e-12) -> Finite:
    """Series evaluation at one eps, with the term cap scaled as 50/eps."""
    pair = StatePair(probe.reference, probe.target(eps))
    out = realspace_complexity_series(
        pair, PenaltySpec(0.0, probe.beta), tol=tol, max_terms=max(10_000, int(50 / eps))
    )
    if not isinstance(out, Finite):
        raise ScalingError(f"complexity diverges at eps={eps}, beta={probe.beta}")
    return out


def evaluate_probe(probe: ScalingProbe, tol: float = 1e-12) -> list[tuple[float, float]]:
    return [(e, probe_complexity(probe, e, tol).value) for e in probe.epsilons]


def _lstsq(A, y):
    if np.linalg.matrix_rank(A) < A.shape[1]:
        raise ScalingError("rank-deficient design matrix")
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    return coef, float(np.sqrt(np.mean(resid**2)))


def _fit_power(eps, y, p0):
    """Fit y = c + A eps^p + B eps with the exponent free (variable projection)."""

    def cost(p):
        A = np.column_stack([eps**p, eps, np.ones_like(eps)])
        return _lstsq(A, y)[1]

    res = optimize.minimize_scalar(cost, bounds=(p0 - 0.4, p0 + 0.4), method="bounded",
                                   options={"xatol": 1e-10})
    A = np.column_stack([eps**res.x, eps, np.ones_like(eps)])
    coef, rms = _lstsq(A, y)
    return float(res.x), coef, rms


def scaling_fit(probe: ScalingProbe, complexities) -> ScalingFit:
    """Least-squares fit of computed complexities against the leading law.

    The bases carry subleading terms (eps, constant) so that the leading
    coefficient is not contaminated by them.
    """
    data = sorted((float(e), float(v)) for e, v in complexities)
    if len(data) < 8:
        raise ScalingError(f"need at least 8 samples, got {len(data)}")
    eps = np.array([e for e, _ in data])
    y = np.array([v for _, v in data])
    if eps.max() / eps.min() < 100 * (1 - 1e-9):
        raise ScalingError("samples must span at least two decades of eps")

    cls = beta_class(probe.beta)
    predicted = leading_coefficient(probe.beta, probe.gamma_T)
    exponent = None
    if cls is BetaClass.ZERO:
        coef, rms = _lstsq(np.column_stack([eps * np.log(eps), eps, np.ones_like(eps)]), y)
    elif cls is BetaClass.ONE:
        coef, rms = _lstsq(np.column_stack([np.log(eps), np.ones_like(eps)]), y)
    else:
        p = 1 - probe.beta
        coef, rms = _lstsq(np.column_stack([eps**p, eps, np.ones_like(eps)]), y)
        exponent = _fit_power(eps, y, p)[0]
    fitted = float(coef[0])
    return ScalingFit(
        beta_class=cls,
        fitted_coefficient=fitted,
        predicted_coefficient=predicted,
        relative_deviation=abs(fitted - predicted) / abs(predicted),
        fit_residual=rms,
        fitted_exponent=exponent,
        params={"coefficients": [float(c) for c in coef]},
    )


def field_derivative(reference: ChainParams, gamma_T: float, eps: float, beta: float = 0.0,
                     rel_step: float = 0.05, tol: float = 1e-13) -> float:
    """Central finite difference of C with respect to h_T at h_T = 1 - eps."""
    step = rel_step * eps
    vals = []
    for h in (1 - eps + step, 1 - eps - step):
        pair = StatePair(reference, ChainParams(h, gamma_T))
        out = realspace_complexity_series(pair, PenaltySpec(0.0, beta), tol=tol,
                                          max_terms=max(10_000, int(50 / (eps - step))))
        vals.append(out.value)
    return (vals[0] - vals[1]) / (2 * step)


def log_fit(eps, values) -> tuple[float, float, float]:
    """Fit values = a + b ln eps; returns (a, b, R^2)."""
    eps = np.asarray(eps, dtype=float)
    y = np.asarray(values, dtype=float)
    A = np.column_stack([np.ones_like(eps), np.log(eps)])
    coef, _ = _lstsq(A, y)
    ss_res = float(np.sum((y - A @ coef) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    return float(coef[0]), float(coef[1]), 1.0 - ss_res / ss_tot
