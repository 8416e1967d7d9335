"""Bundled oracle checks with a machine-readable report.

Each group compares two independent evaluation routes on random inputs:
closed-form vs quadrature kernels, finite-N vs thermodynamic kernels, the
real-space series vs momentum-space quadrature (Parseval), the series vs the
polylog resummation, and the special functions vs exact identities.
"""

from __future__ import annotations

import math
import time

import numpy as np

from .complexity import (
    PenaltySpec,
    StatePair,
    convergence_classify,
    momentum_complexity_density,
    realspace_complexity_closed,
    realspace_complexity_series,
)
from .kernels import closed_kernels, kernel_finite, quadrature_kernels
from .model import ChainParams
from .special import polylog, zeta_val, gamma_val

REGIONS = ("disordered", "ordered", "oscillatory")

KERNEL_TOL = 1e-8
QUAD_TOL = 1e-10
PARSEVAL_TOL = 1e-6
FINITE_N_SIZES = (2001, 4001, 8001)
# errors below this are rounding noise of the finite-N sum
FINITE_N_FLOOR = 1e-11
SPECIAL_TOL = 1e-9


def random_params(rng: np.random.Generator, region: str) -> ChainParams:
    """Uniform draw from one region, kept a finite distance from every boundary."""
    if region == "disordered":
        return ChainParams(rng.uniform(1.1, 2.5), rng.uniform(0.1, 2.0))
    h = rng.uniform(0.0, 0.9)
    if region == "ordered":
        g_lo = math.sqrt(max(1.05 - h * h, 0.01))
        return ChainParams(h, rng.uniform(g_lo, 2.0))
    if region == "oscillatory":
        return ChainParams(h, rng.uniform(0.05, math.sqrt(0.95 - h * h)))
    raise ValueError(f"unknown region {region!r}")


def random_pair(rng: np.random.Generator) -> StatePair:
    r, t = rng.choice(REGIONS, size=2)
    return StatePair(random_params(rng, str(r)), random_params(rng, str(t)))


def random_convergent_sample(rng, margin_max=-0.05, beta_range=(-1.0, 1.9), l_max=1.0):
    """Rejection-sample (pair, penalty) strictly inside the radius of convergence."""
    while True:
        pair = random_pair(rng)
        penalty = PenaltySpec(rng.uniform(0.0, l_max), rng.uniform(*beta_range))
        conv = convergence_classify(pair, penalty)
        if conv and conv.margin <= margin_max:
            return pair, penalty


# --------------------------------------------------------------------------


def check_kernel_oracle(rng, per_region=20, n_max=50):
    ns = np.arange(1, n_max + 1)
    worst, worst_re = 0.0, 0.0
    for region in REGIONS:
        for _ in range(per_region):
            p = random_params(rng, region)
            closed = closed_kernels(p, ns)
            quad, _ = quadrature_kernels(p, ns, tol=QUAD_TOL)
            worst = max(worst, float(np.max(np.abs(closed - quad))))
            worst_re = max(worst_re, float(np.max(np.abs(closed.real))), float(np.max(np.abs(quad.real))))
    return {"passed": worst <= KERNEL_TOL and worst_re <= 1e-10,
            "max_error": worst, "max_real_part": worst_re, "tolerance": KERNEL_TOL,
            "samples": 3 * per_region}


def finite_n_errors(pair: StatePair, ns, sizes=FINITE_N_SIZES, scale=2 * math.pi):
    """|scale * K_n(N) - Delta I_n| for each size; rows are sizes, columns n."""
    dI = closed_kernels(pair.target, ns) - closed_kernels(pair.reference, ns)
    return np.array([np.abs(scale * kernel_finite(pair.reference, pair.target, ns, N) - dI)
                     for N in sizes])


def check_finite_n(rng, pairs=10, ns=(1, 2, 3, 4, 5), mutation=None):
    """Finite-N kernels approach Delta I_n / 2pi inside a C/N envelope.

    C is fitted on the two smaller sizes and must bound the largest one.
    """
    ns = np.asarray(ns)
    scale = 1.0 if mutation == "drop-2pi" else 2 * math.pi
    sizes = np.asarray(FINITE_N_SIZES, dtype=float)
    ok = True
    orders = []
    worst = 0.0
    for _ in range(pairs):
        pair = random_pair(rng)
        err = finite_n_errors(pair, ns, scale=scale)
        worst = max(worst, float(err[-1].max()))
        for j in range(len(ns)):
            e = err[:, j]
            if np.all(e <= FINITE_N_FLOOR):
                continue
            C = max(e[0] * sizes[0], e[1] * sizes[1])
            if not (e[2] <= C / sizes[2] + FINITE_N_FLOOR and e[2] < e[0]):
                ok = False
            if e[1] > FINITE_N_FLOOR and e[2] > FINITE_N_FLOOR:
                orders.append(math.log(e[1] / e[2]) / math.log(sizes[2] / sizes[1]))
    return {"passed": ok, "max_error_at_largest_N": worst, "sizes": list(FINITE_N_SIZES),
            "observed_orders": [min(orders), max(orders)] if orders else None,
            "samples": pairs}


def check_parseval(rng, pairs=50):
    worst = 0.0
    ok = True
    for _ in range(pairs):
        pair = random_pair(rng)
        series = realspace_complexity_series(pair, PenaltySpec(0.0, 0.0), tol=1e-10)
        momentum = 2 * math.pi**2 * momentum_complexity_density(pair, tol=1e-11)
        gap = abs(series.value - momentum)
        worst = max(worst, gap)
        ok &= gap <= PARSEVAL_TOL + series.error_bound
    return {"passed": bool(ok), "max_error": worst, "tolerance": PARSEVAL_TOL, "samples": pairs}


def check_series_vs_polylog(rng, samples=100):
    worst_ratio = 0.0
    worst = 0.0
    ok = True
    for _ in range(samples):
        pair, penalty = random_convergent_sample(rng)
        s = realspace_complexity_series(pair, penalty, tol=1e-11)
        c = realspace_complexity_closed(pair, penalty)
        gap = abs(s.value - c.value)
        bound = s.error_bound + c.error_bound
        worst = max(worst, gap)
        worst_ratio = max(worst_ratio, gap / bound if bound > 0 else (0.0 if gap == 0 else math.inf))
        ok &= gap <= bound
    return {"passed": bool(ok), "max_error": worst, "max_error_over_bound": worst_ratio,
            "samples": samples}


def check_special_functions(rng, samples=200):
    worst = 0.0

    def rel(a, b):
        return abs(a - b) / max(abs(b), 1e-300)

    for _ in range(samples):
        s = rng.uniform(-1.0, 3.0)
        z = rng.uniform(0.0, 0.95) * np.exp(1j * rng.uniform(-math.pi, math.pi))
        lhs = polylog(s, z) + polylog(s, -z)
        worst = max(worst, rel(lhs, 2 ** (1 - s) * polylog(s, z * z)))
    for _ in range(samples // 4):
        z = rng.uniform(0.0, 0.9) * np.exp(1j * rng.uniform(-math.pi, math.pi))
        worst = max(worst, rel(polylog(0.0, z), z / (1 - z)), rel(polylog(1.0, z), -np.log(1 - z)))
    worst = max(
        worst,
        rel(zeta_val(2.0), math.pi**2 / 6),
        rel(zeta_val(4.0), math.pi**4 / 90),
        rel(polylog(2.0, 1.0), math.pi**2 / 6),
        rel(gamma_val(0.5), math.sqrt(math.pi)),
        rel(gamma_val(-0.5), -2 * math.sqrt(math.pi)),
    )
    return {"passed": worst <= SPECIAL_TOL, "max_relative_error": worst, "tolerance": SPECIAL_TOL}


def run_selfcheck(quick: bool = False, seed: int = 20240101, mutation: str | None = None) -> dict:
    """Run every oracle group and return a report; report['passed'] is the verdict."""
    rng = np.random.default_rng(seed)
    k = 4 if quick else 1
    groups = {}
    t_start = time.perf_counter()
    plan = [
        ("kernel_oracle", lambda: check_kernel_oracle(rng, per_region=20 // k)),
        ("finite_n", lambda: check_finite_n(rng, pairs=max(10 // k, 3), mutation=mutation)),
        ("parseval", lambda: check_parseval(rng, pairs=50 // k)),
        ("series_vs_polylog", lambda: check_series_vs_polylog(rng, samples=100 // k)),
        ("special_functions", lambda: check_special_functions(rng, samples=200 // k)),
    ]
    for name, fn in plan:
        t0 = time.perf_counter()
        try:
            res = fn()
        except Exception as exc:  # report, never crash the harness
            res = {"passed": False, "error": f"{type(exc).__name__}: {exc}"}
        res["runtime_s"] = round(time.perf_counter() - t0, 3)
        groups[name] = res
    return {
        "passed": all(g["passed"] for g in groups.values()),
        "quick": quick,
        "seed": seed,
        "runtime_s": round(time.perf_counter() - t_start, 3),
        "groups": groups,
    }
