"""Polylogarithm, Riemann zeta and gamma on the domains the resummation needs.

The polylogarithm is evaluated strictly as its defining power series. Arguments
outside the closed unit disk are refused rather than continued analytically:
outside the disk the series (and hence the complexity) diverges.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

DEFAULT_MAX_TERMS = 10_000_000
_ROUNDING = 8 * np.finfo(float).eps


class DomainError(ValueError):
    """Argument outside the region where the defining series converges."""


class SeriesCapWarning(RuntimeWarning):
    """Series stopped at the term cap before reaching the requested tolerance."""


@dataclass(frozen=True)
class PolylogQuery:
    s: float
    z: complex
    tol: float = 1e-12

    def __post_init__(self):
        s = float(self.s)
        z = complex(self.z)
        if not math.isfinite(s) or not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError("polylog arguments must be finite")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        r = abs(z)
        if r > 1.0:
            raise DomainError(f"|z| = {r!r} > 1: series diverges")
        if r == 1.0 and s <= 1.0:
            raise DomainError(f"|z| = 1 requires s > 1, got s = {s}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "z", z)


@dataclass(frozen=True)
class PolylogResult:
    value: complex
    error: float
    terms: int
    converged: bool


def _tail_majorant(s, r, k_last, last_abs):
    """Upper bound on sum_{k > k_last} |z|^k / k^s given |t_{k_last}| = last_abs.

    Beyond k_last the ratio of consecutive term moduli is at most
    r * ((k_last + 1)/k_last)^(-s) for s < 0 and at most r for s >= 0.
    """
    ratio = r * max(1.0, ((k_last + 1.0) / k_last) ** (-s))
    if ratio >= 1.0:
        return math.inf
    return last_abs * ratio / (1.0 - ratio)


def polylog_eval(query: PolylogQuery, max_terms: int = DEFAULT_MAX_TERMS) -> PolylogResult:
    """Sum Li_s(z) = sum_k z^k / k^s until the tail majorant meets the tolerance."""
    s, z, tol = query.s, query.z, query.tol
    if z == 0:
        return PolylogResult(0j, 0.0, 0, True)
    r = abs(z)
    if z == 1.0:
        return PolylogResult(complex(zeta_val(s)), 1e-15 * zeta_val(s), 0, True)

    logz = complex(np.log(z))
    total = 0j
    abs_sum = 0.0
    k0 = 0
    chunk = 256
    err = math.inf
    while k0 < max_terms:
        k = np.arange(k0 + 1, min(k0 + chunk, max_terms) + 1, dtype=float)
        terms = np.exp(k * logz - s * np.log(k))
        total += terms.sum()
        abs_sum += float(np.abs(terms).sum())
        k0 = int(k[-1])
        if r < 1.0:
            err = _tail_majorant(s, r, k0, abs(terms[-1]))
        else:
            # |z| = 1, s > 1: p-series tail sum_{k > K} k^-s <= K^(1-s)/(s-1)
            err = k0 ** (1.0 - s) / (s - 1.0)
        if err <= tol * abs(total):
            return PolylogResult(complex(total), err + _ROUNDING * abs_sum, k0, True)
        chunk = min(chunk * 2, 1 << 20)
    return PolylogResult(complex(total), err + _ROUNDING * abs_sum, k0, False)


def polylog(s: float, z: complex, tol: float = 1e-12, max_terms: int = DEFAULT_MAX_TERMS) -> complex:
    """Li_s(z) for |z| < 1, or |z| = 1 with s > 1.

    Raises DomainError elsewhere. If the term cap is reached the best estimate is
    returned with a SeriesCapWarning; use `polylog_eval` to get the error bound.
    """
    res = polylog_eval(PolylogQuery(s, z, tol), max_terms=max_terms)
    if not res.converged:
        warnings.warn(
            f"Li_{s}({z}) stopped after {res.terms} terms with error bound {res.error:.3g}",
            SeriesCapWarning,
            stacklevel=2,
        )
    return res.value


def zeta_val(s: float) -> float:
    """Riemann zeta on s > 1."""
    s = float(s)
    if not s > 1.0:
        raise DomainError(f"zeta_val requires s > 1, got {s}")
    return float(_sp.zeta(s, 1))


def gamma_val(x: float) -> float:
    x = float(x)
    if x <= 0 and x == math.floor(x):
        raise DomainError(f"gamma has a pole at {x}")
    return math.gamma(x)
