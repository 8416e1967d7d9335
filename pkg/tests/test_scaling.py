import math

import numpy as np
import pytest

from xycomplexity.model import ChainParams
from xycomplexity.scaling import (
    BetaClass,
    ScalingError,
    ScalingProbe,
    beta_class,
    evaluate_probe,
    field_derivative,
    leading_coefficient,
    log_fit,
    scaling_fit,
    scaling_prediction,
)

EPS = tuple(np.logspace(-4, -2, 12))
REF = ChainParams(0.1, 1.1)


def test_leading_coefficients():
    assert leading_coefficient(0.0, 1.1) == pytest.approx(math.pi**2 / 2.2, rel=1e-15)
    assert leading_coefficient(1.0, 1.1) == pytest.approx(-math.pi**2 / 4, rel=1e-15)
    # Gamma(-1/2) = -2 sqrt(pi)
    expected = math.pi**2 * (-2 * math.sqrt(math.pi)) / (2**1.5 * math.sqrt(1.1))
    assert leading_coefficient(0.5, 1.1) == pytest.approx(expected, rel=1e-14)
    assert leading_coefficient(0.5, 1.1) == pytest.approx(-11.794060230496639, rel=1e-14)


def test_beta_classes():
    assert beta_class(0) is BetaClass.ZERO
    assert beta_class(1.0) is BetaClass.ONE
    assert beta_class(0.3) is BetaClass.NON_INTEGER
    with pytest.raises(ScalingError):
        beta_class(2.0)


@pytest.mark.parametrize("eps", [0.0, -1e-3, 0.3])
def test_eps_domain(eps):
    with pytest.raises(ScalingError):
        scaling_prediction(0.0, 1.1, eps)


def test_probe_needs_ordered_reference():
    with pytest.raises(ScalingError):
        ScalingProbe(ChainParams(1.5, 1.0), 1.1, EPS, 1.0)


@pytest.mark.parametrize("beta", [0.0, 0.5, 1.0, 1.5, -0.5])
def test_synthetic_recovery(beta):
    probe = ScalingProbe(REF, 1.1, EPS, beta)
    data = [(e, scaling_prediction(beta, 1.1, e) + 0.7) for e in EPS]
    fit = scaling_fit(probe, data)
    assert fit.relative_deviation < 1e-9
    if fit.fitted_exponent is not None:
        assert fit.fitted_exponent == pytest.approx(1 - beta, abs=1e-5)


def test_fit_needs_range():
    probe = ScalingProbe(REF, 1.1, EPS, 1.0)
    with pytest.raises(ScalingError):
        scaling_fit(probe, [(e, 1.0) for e in EPS[:5]])
    narrow = np.linspace(1e-3, 2e-3, 10)
    with pytest.raises(ScalingError):
        scaling_fit(probe, [(e, math.log(e)) for e in narrow])


def test_beta_one_slope():
    probe = ScalingProbe(REF, 1.1, EPS, 1.0)
    fit = scaling_fit(probe, evaluate_probe(probe))
    assert fit.relative_deviation < 0.02
    assert fit.fitted_coefficient == pytest.approx(-2.4634113039496492, rel=1e-6)


def test_beta_zero_coefficient_positive():
    probe = ScalingProbe(REF, 1.1, EPS, 0.0)
    fit = scaling_fit(probe, evaluate_probe(probe))
    assert fit.fitted_coefficient > 0
    assert fit.relative_deviation < 0.02


def test_beta_zero_derivative_logarithmic():
    eps = np.logspace(-4, -2, 8)
    d = [field_derivative(REF, 1.1, e) for e in eps]
    a, b, r2 = log_fit(eps, d)
    assert r2 > 0.99
    # dC/dh = -d/d eps (c eps ln eps) ~ -c ln eps
    assert b == pytest.approx(-math.pi**2 / 2.2, rel=0.05)


def test_log_fit_exact():
    eps = np.logspace(-4, -2, 9)
    a, b, r2 = log_fit(eps, 3.0 - 2.0 * np.log(eps))
    assert (a, b) == (pytest.approx(3.0), pytest.approx(-2.0))
    assert r2 == pytest.approx(1.0)
