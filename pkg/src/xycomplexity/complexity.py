"""Circuit complexity between XY-chain ground states.

Momentum space: C = sum_{q>0} |nu^T_q - nu^R_q|^2 (finite N) and its
intensive limit. Real space: the penalized sum

    C = sum_{n>=1} e^{2nl} n^beta |I^T_n - I^R_n|^2,

evaluated either as a truncated series with a rigorous tail bound or as a
finite combination of polylogarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy import integrate

from .kernels import AmplitudeDecomposition, closed_kernels, momentum_grid, term_amplitudes
from .model import ChainParams, _angle, classify_phase
from .special import PolylogQuery, polylog_eval

# margins within this of zero count as the convergence boundary
BOUNDARY_TOL = 1e-12
# amplitudes closer than this are merged into one term
_MERGE_TOL = 1e-14
# margins in (NEAR_BOUNDARY, 0) make the series slow; the term cap applies there
NEAR_BOUNDARY = -0.05
DEFAULT_MAX_TERMS = 10_000_000


@dataclass(frozen=True)
class PenaltySpec:
    l: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        l, beta = float(self.l), float(self.beta)
        if not (math.isfinite(l) and l >= 0):
            raise ValueError(f"penalty l must be finite and >= 0, got {self.l!r}")
        if not math.isfinite(beta):
            raise ValueError(f"penalty beta must be finite, got {self.beta!r}")
        object.__setattr__(self, "l", l)
        object.__setattr__(self, "beta", beta)


@dataclass(frozen=True)
class StatePair:
    reference: ChainParams
    target: ChainParams

    def swapped(self) -> "StatePair":
        return StatePair(self.target, self.reference)

    @property
    def trivial(self) -> bool:
        return self.reference == self.target


@dataclass(frozen=True)
class Finite:
    value: float
    error_bound: float
    method: str
    terms: int = 0

    is_finite = True


@dataclass(frozen=True)
class Divergent:
    margin: float

    is_finite = False


ComplexityOutcome = Union[Finite, Divergent]


@dataclass(frozen=True)
class Convergence:
    convergent: bool
    margin: float
    rho_sq: float

    def __bool__(self):
        return self.convergent


class QuadratureBudgetError(ArithmeticError):
    pass


# --------------------------------------------------------------------------
# momentum space


def momentum_complexity_finite(pair: StatePair, N: int) -> float:
    """sum over positive q in Gamma of |Delta nu_q|^2.

    Tends to N * density / 2 for large N, see `momentum_complexity_density`.
    """
    q = momentum_grid(N)
    r, t = pair.reference, pair.target
    dnu = _angle(t.h, t.gamma, q) - _angle(r.h, r.gamma, q)
    return float(np.dot(dnu, dnu))


def momentum_complexity_density(pair: StatePair, tol: float = 1e-10, limit: int = 500) -> float:
    """Intensive complexity (1/2pi) int_{-pi}^{pi} (Delta nu_q)^2 dq."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    if pair.trivial:
        return 0.0
    r, t = pair.reference, pair.target

    def f(q):
        d = _angle(t.h, t.gamma, q) - _angle(r.h, r.gamma, q)
        return d * d

    # the integrand is even, so (1/2pi) int_{-pi}^{pi} = (1/pi) int_0^pi
    val, err = integrate.quad(f, 0.0, math.pi, epsabs=tol * math.pi, epsrel=0.0, limit=limit, full_output=True)[:2]
    if err > tol * math.pi:
        raise QuadratureBudgetError(f"density quadrature error {err / math.pi:.3g} exceeds {tol:.3g}")
    return val / math.pi


# --------------------------------------------------------------------------
# real space


def merged_amplitudes(pair: StatePair) -> AmplitudeDecomposition:
    """Amplitudes of Delta I_n: target terms with +w, reference terms with -w.

    Coinciding amplitudes are combined and zero net weights dropped, so e.g. the
    constant terms of two ordered states cancel.
    """
    merged: list[list] = []
    tgt = term_amplitudes(pair.target).terms
    ref = term_amplitudes(pair.reference).terms
    for w, mu in [(w, mu) for w, mu in tgt] + [(-w, mu) for w, mu in ref]:
        for slot in merged:
            if abs(slot[1] - mu) <= _MERGE_TOL:
                slot[0] += w
                break
        else:
            merged.append([w, complex(mu)])
    return AmplitudeDecomposition(tuple((w, mu) for w, mu in merged if w != 0 and mu != 0))


def convergence_classify(pair: StatePair, penalty: PenaltySpec) -> Convergence:
    """Radius-of-convergence test for the penalized series.

    With rho = the largest contributing |mu|, the terms behave like
    (e^{2l} rho^2)^n n^(beta-2): divergent beyond the radius, and on it
    divergent iff 2 - beta <= 1.
    """
    amps = merged_amplitudes(pair)
    rho = max((abs(mu) for _, mu in amps.terms), default=0.0)
    if rho == 0.0:
        return Convergence(True, -math.inf, 0.0)
    rho_sq = rho * rho
    margin = 2 * penalty.l + math.log(rho_sq)
    if abs(margin) <= BOUNDARY_TOL:
        return Convergence(penalty.beta < 1.0, margin, rho_sq)
    return Convergence(margin < 0, margin, rho_sq)


def _unit_weight(amps: AmplitudeDecomposition) -> tuple[float, float, float]:
    """Split amplitudes into the net weight on |mu| = 1 and a majorant of the rest.

    Returns (c, W, rho) with |sum_{|mu|<1} w mu^n| <= W rho^n.
    """
    c = 0.0
    wsum, rho = 0.0, 0.0
    for w, mu in amps.terms:
        if abs(abs(mu) - 1.0) <= BOUNDARY_TOL:
            c += w
        else:
            wsum += abs(w)
            rho = max(rho, abs(mu))
    return c, wsum, rho


def _geometric_tail(A, p, r, K):
    """Bound on sum_{n > K} A n^p r^n for r < 1."""
    if A == 0.0 or r == 0.0:
        return 0.0
    ratio = r * max(1.0, ((K + 2.0) / (K + 1.0)) ** p)
    if ratio >= 1.0:
        return math.inf
    first = A * math.exp(p * math.log(K + 1.0) + (K + 1.0) * math.log(r))
    return first / (1.0 - ratio)


def _power_tail(p, K):
    """Euler-Maclaurin estimate of sum_{n > K} n^p for p < -1, with error bound."""
    # sum_{n>K} f(n) = int_K^inf f - f(K)/2 - f'(K)/12 + f'''(K)/720 - ...
    integral = -(K ** (p + 1)) / (p + 1)
    f = K**p
    d1 = p * K ** (p - 1)
    d3 = p * (p - 1) * (p - 2) * K ** (p - 3)
    estimate = integral - f / 2 - d1 / 12 + d3 / 720
    d5 = abs(p * (p - 1) * (p - 2) * (p - 3) * (p - 4)) * K ** (p - 5)
    return estimate, d5 / 30240 + 4 * np.finfo(float).eps * abs(estimate)


def _delta_kernels(pair, n):
    """I^T_n - I^R_n with the ordered-phase constants cancelled exactly."""
    t, r = pair.target, pair.reference
    net_const = float(classify_phase(t).is_ordered) - float(classify_phase(r).is_ordered)
    dI = closed_kernels(t, n, drop_constant=True) - closed_kernels(r, n, drop_constant=True)
    if net_const:
        dI = dI + net_const * 1j * np.pi / n
    return dI


def _series_terms(pair, penalty, n):
    dI = _delta_kernels(pair, n)
    mag = np.abs(dI)
    with np.errstate(divide="ignore"):
        logs = 2 * n * penalty.l + penalty.beta * np.log(n) + 2 * np.log(mag)
    return np.where(mag > 0, np.exp(logs), 0.0)


def partial_sums(pair: StatePair, penalty: PenaltySpec, cutoffs) -> np.ndarray:
    """Partial sums of the penalized series at the given cutoffs (no tail)."""
    cutoffs = np.asarray(cutoffs, dtype=int)
    n = np.arange(1, int(cutoffs.max()) + 1, dtype=float)
    cum = np.cumsum(_series_terms(pair, penalty, n))
    return cum[cutoffs - 1]


def realspace_complexity_series(
    pair: StatePair,
    penalty: PenaltySpec = PenaltySpec(),
    tol: float = 1e-10,
    max_terms: int | None = None,
) -> ComplexityOutcome:
    """Direct summation of the penalized real-space series.

    The kernels come from the closed forms term by term; the amplitude
    decomposition is only used to bound what has not been summed. On the
    convergence boundary (l = 0 with an uncancelled constant amplitude) the
    slowly decaying p-series part of the tail is estimated by Euler-Maclaurin
    and added to the value.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    if pair.trivial:
        return Finite(0.0, 0.0, "series", 0)
    conv = convergence_classify(pair, penalty)
    if not conv:
        return Divergent(conv.margin)
    if max_terms is None:
        max_terms = DEFAULT_MAX_TERMS

    l, beta = penalty.l, penalty.beta
    c, wsum, rho = _unit_weight(merged_amplitudes(pair))
    pref = math.pi**2 / 4
    r = math.exp(2 * l) * rho * rho
    # |Delta I_n|^2 n^2 (4/pi^2) <= c^2 + 2|c| W rho^n + W^2 rho^2n, weights e^{2nl} n^beta
    cross = 2 * abs(c) * wsum
    r_cross = math.exp(2 * l) * rho

    total = 0.0
    K = 0
    chunk = 512
    err = math.inf
    tail_est = 0.0
    while K < max_terms:
        n = np.arange(K + 1, min(K + chunk, max_terms) + 1, dtype=float)
        total += float(np.sum(_series_terms(pair, penalty, n)))
        K = int(n[-1])
        err = _geometric_tail(pref * wsum * wsum, beta - 2, r, K)
        if c != 0.0:
            err += _geometric_tail(pref * cross, beta - 2, r_cross, K)
            tail_est, em_err = _power_tail(beta - 2, K)
            tail_est *= pref * c * c
            err += pref * c * c * em_err
        if err <= tol:
            break
        chunk = min(chunk * 2, 1 << 20)
    value = total + tail_est
    err += 16 * np.finfo(float).eps * abs(value)
    return Finite(max(float(value), 0.0), float(err), "series", K)


def realspace_complexity_closed(
    pair: StatePair, penalty: PenaltySpec = PenaltySpec(), tol: float = 1e-13
) -> ComplexityOutcome:
    """Polylogarithm resummation of the penalized series.

    Expanding |Delta I_n|^2 = (pi^2/4n^2) |sum_a w_a mu_a^n|^2 gives

        C = (pi^2/4) sum_{a,b} w_a w_b Li_{2-beta}(mu_a conj(mu_b) e^{2l}).

    Only valid inside the radius of convergence; outside, Divergent is returned.
    """
    if pair.trivial:
        return Finite(0.0, 0.0, "polylog", 0)
    conv = convergence_classify(pair, penalty)
    if not conv:
        return Divergent(conv.margin)
    amps = merged_amplitudes(pair).terms
    s = 2.0 - penalty.beta
    scale = math.exp(2 * penalty.l)
    total = 0.0
    err = 0.0
    mag = 0.0
    terms = 0
    for i, (wa, ma) in enumerate(amps):
        for j, (wb, mb) in enumerate(amps[i:], start=i):
            z = ma * mb.conjugate() * scale
            if abs(abs(z) - 1.0) <= BOUNDARY_TOL:
                z = z / abs(z)
                if abs(z - 1) <= BOUNDARY_TOL:
                    z = 1 + 0j
            try:
                res = polylog_eval(PolylogQuery(s, z, tol))
            except ValueError:
                return Divergent(conv.margin)
            # Li(conj z) = conj Li(z): the (a, b) and (b, a) terms pair up into a real part
            mult = 1 if i == j else 2
            total += mult * wa * wb * res.value.real
            err += mult * abs(wa * wb) * res.error
            mag += mult * abs(wa * wb) * abs(res.value)
            terms = max(terms, res.terms)
    pref = math.pi**2 / 4
    value = float(pref * total)
    err = pref * (err + 16 * np.finfo(float).eps * mag)
    return Finite(max(value, 0.0), float(err), "polylog", terms)


def realspace_complexity(pair, penalty=PenaltySpec(), method="auto", tol=1e-10):
    """Dispatch between the series and polylog evaluations.

    ``auto`` uses the polylog closed form and falls back to the series when the
    polylog hits its term cap.
    """
    if method == "series":
        return realspace_complexity_series(pair, penalty, tol=tol)
    if method in ("polylog", "closed"):
        return realspace_complexity_closed(pair, penalty)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    out = realspace_complexity_closed(pair, penalty)
    if isinstance(out, Finite) and out.error_bound > max(tol, 1e-9 * out.value):
        return realspace_complexity_series(pair, penalty, tol=tol)
    return out
