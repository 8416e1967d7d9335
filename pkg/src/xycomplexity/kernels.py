"""Real-space kernel amplitudes I_n = int_{-pi}^{pi} e^{iqn} nu_q dq.

Three independent routes are provided:

* ``kernel_closed`` -- the per-phase closed forms in terms of lambda_+/-;
* ``kernel_quadrature`` -- adaptive quadrature of 2i int_0^pi sin(qn) nu_q dq;
* ``kernel_finite`` -- the finite-N coefficient K_n of a circuit between two
  states, which tends to (I_n^T - I_n^R) / (2 pi) as N grows.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .model import ChainParams, Phase, _angle, classify_phase, lambda_pair


class CriticalLineError(ValueError):
    """Closed forms are not available on the critical line h = 1."""


class QuadratureError(ArithmeticError):
    def __init__(self, message, estimate, error):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


@dataclass(frozen=True)
class KernelValue:
    n: int
    value: complex
    method: str = "closed"
    error: float = 0.0


@dataclass(frozen=True)
class AmplitudeDecomposition:
    """I_n = (i pi / 2n) * sum_a weight_a * mu_a**n."""

    terms: tuple[tuple[int, complex], ...]

    def evaluate(self, n):
        n = np.asarray(n, dtype=float)
        acc = np.zeros(n.shape, dtype=complex)
        for w, mu in self.terms:
            acc += w * np.power(complex(mu), n)
        return 1j * np.pi / (2 * n) * acc

    def envelope(self, n):
        """(pi/2n) * sum |w| * max|mu|^n, an upper bound on |I_n|."""
        wsum = sum(abs(w) for w, _ in self.terms)
        rho = max((abs(mu) for _, mu in self.terms), default=0.0)
        n = np.asarray(n, dtype=float)
        return np.pi / (2 * n) * wsum * rho**n


def _check_n(n):
    if isinstance(n, (bool, np.bool_)) or int(n) != n or n < 1:
        raise ValueError(f"gate range n must be a positive integer, got {n!r}")
    return int(n)


def _phase_off_critical(params: ChainParams) -> Phase:
    phase = classify_phase(params)
    if phase is Phase.CRITICAL:
        raise CriticalLineError(f"h = {params.h} lies on the critical line")
    return phase


def closed_kernels(params: ChainParams, ns, drop_constant: bool = False) -> np.ndarray:
    """Vectorized closed-form I_n for an array of gate ranges.

    With ``drop_constant`` the n-independent amplitude of the ordered phase,
    i pi / n, is left out. Differences between two ordered states should be
    formed that way: 2 - lambda^n loses lambda^n entirely once it drops below
    the rounding level of 2.
    """
    phase = _phase_off_critical(params)
    lam = lambda_pair(params)
    lp, lm = lam.lambda_plus, lam.lambda_minus
    n = np.asarray(ns, dtype=float)
    pref = 1j * np.pi / (2 * n)
    if phase is Phase.DISORDERED:
        # oriented so that I_n is continuous across h = 1 and agrees with quadrature
        return pref * (np.power(1 / lp, n) - np.power(lm, n))
    const = 0.0 if drop_constant else 2.0
    return pref * (const - np.power(lp, n) - np.power(lm, n))


def kernel_closed(params: ChainParams, n: int) -> KernelValue:
    n = _check_n(n)
    return KernelValue(n, complex(closed_kernels(params, n)), "closed", 0.0)


def term_amplitudes(params: ChainParams) -> AmplitudeDecomposition:
    phase = _phase_off_critical(params)
    lam = lambda_pair(params)
    if phase is Phase.DISORDERED:
        return AmplitudeDecomposition(((-1, lam.lambda_minus), (1, 1 / lam.lambda_plus)))
    return AmplitudeDecomposition(((2, 1 + 0j), (-1, lam.lambda_plus), (-1, lam.lambda_minus)))


def kernel_quadrature(params: ChainParams, n: int, tol: float = 1e-10, limit: int = 500) -> KernelValue:
    """Numerical I_n from the Fourier integral of the canonical-branch angle.

    The integrand is smooth on the open interval; Gauss-Kronrod panels never
    touch the endpoints. Raises QuadratureError (carrying the best estimate)
    when the panel budget is exhausted before the error estimate meets `tol`.
    """
    n = _check_n(n)
    if not tol > 0:
        raise ValueError("tol must be positive")
    h, g = params.h, params.gamma

    def f(q):
        return math.sin(q * n) * _angle(h, g, q)

    val, abserr, info = integrate.quad(
        f, 0.0, math.pi, epsabs=tol / 2, epsrel=0.0, limit=limit, full_output=True
    )[:3]
    estimate, err = 2j * val, 2 * abserr
    if err > tol:
        raise QuadratureError(
            f"quadrature for n={n} reached error {err:.3g} > {tol:.3g}", estimate, err
        )
    return KernelValue(n, estimate, "quadrature", err)


def quadrature_kernels(params: ChainParams, ns, tol: float = 1e-10, limit: int = 2000) -> tuple[np.ndarray, float]:
    """I_n for many gate ranges in one adaptive pass (vector-valued integrand).

    Returns the values and the estimated max-norm absolute error.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    ns = np.asarray([_check_n(n) for n in np.atleast_1d(ns)], dtype=float)
    h, g = params.h, params.gamma

    def f(q):
        return np.sin(q * ns) * _angle(h, g, q)

    val, abserr, info = integrate.quad_vec(
        f, 0.0, math.pi, epsabs=tol / 2, epsrel=0.0, norm="max", limit=limit,
        quadrature="gk21", full_output=True,
    )
    estimate, err = 2j * val, 2 * abserr
    if not info.success or err > tol:
        raise QuadratureError(f"vector quadrature reached error {err:.3g} > {tol:.3g}", estimate, err)
    return estimate, err


def momentum_grid(N: int) -> np.ndarray:
    """Positive momenta of Gamma = (2 pi / N) * (-(N-1)/2, ..., (N-1)/2)."""
    if N < 4:
        raise ValueError(f"system size must be >= 4, got {N}")
    m = np.arange(N) - (N - 1) / 2
    m = m[m > 0]
    return 2 * np.pi * m / N


def kernel_finite(reference: ChainParams, target: ChainParams, n, N: int):
    """Finite-size coefficient K_n = (2i/N) sum_{q>0} (nu^T - nu^R) sin(qn).

    `n` may be an integer or an array of integers in [1, N-1].
    """
    q = momentum_grid(N)
    ns = np.atleast_1d(np.asarray(n))
    if ns.size == 0 or np.any(ns < 1) or np.any(ns > N - 1) or np.any(ns != np.round(ns)):
        raise ValueError(f"n must be integers in [1, {N - 1}], got {n!r}")
    dnu = _angle(target.h, target.gamma, q) - _angle(reference.h, reference.gamma, q)
    out = 2j / N * (np.sin(np.outer(ns, q)) @ dnu)
    return complex(out[0]) if np.ndim(n) == 0 else out
