import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from xycomplexity.complexity import (
    Divergent,
    Finite,
    PenaltySpec,
    StatePair,
    convergence_classify,
    merged_amplitudes,
    momentum_complexity_density,
    momentum_complexity_finite,
    partial_sums,
    realspace_complexity,
    realspace_complexity_closed,
    realspace_complexity_series,
)
from xycomplexity.model import ChainParams


def pair(r, t):
    return StatePair(ChainParams(*r), ChainParams(*t))


# 30-digit mpmath sums of e^{2nl} n^beta |Delta I_n|^2 over the closed-form kernels
FROZEN_PENALIZED = [
    ((0.1, 1.4), (0.5, 1.2), 0.2, 0.5, 0.58203239466695766352),
    ((0.1, 1.4), (0.3, 0.5), 0.1, -0.5, 0.81207976259772255359),
    ((1.2, 0.7), (1.6, 1.3), 0.05, 1.5, 0.37160298038875234681),
    # ordered -> disordered on the convergence boundary: n^{-3/2} tail
    ((0.1, 1.1), (1.3, 1.1), 0.0, 0.5, 14.828713778199771488),
]

# (1/pi) int_0^pi (Delta nu)^2 dq, mpmath quadrature
FROZEN_DENSITY = [
    ((0.1, 1.4), (0.5, 1.2), 0.017799827841579515261),
    ((0.1, 1.1), (1.3, 1.1), 0.34718612321655639222),
    ((0.4, 0.6), (1.5, 0.8), 0.41016262212628523749),
]


@pytest.mark.parametrize("r,t,l,beta,expected", FROZEN_PENALIZED)
def test_series_frozen(r, t, l, beta, expected):
    out = realspace_complexity_series(pair(r, t), PenaltySpec(l, beta), tol=1e-12)
    assert isinstance(out, Finite)
    assert abs(out.value - expected) <= max(out.error_bound, 1e-13 * expected)


@pytest.mark.parametrize("r,t,l,beta,expected", FROZEN_PENALIZED)
def test_polylog_frozen(r, t, l, beta, expected):
    out = realspace_complexity_closed(pair(r, t), PenaltySpec(l, beta))
    assert out.method == "polylog"
    assert abs(out.value - expected) <= max(out.error_bound, 1e-13 * expected)


@pytest.mark.parametrize("r,t,density", FROZEN_DENSITY)
def test_density_frozen(r, t, density):
    assert momentum_complexity_density(pair(r, t), tol=1e-12) == pytest.approx(density, rel=1e-10)


@pytest.mark.parametrize("r,t,density", FROZEN_DENSITY)
def test_parseval(r, t, density):
    out = realspace_complexity_series(pair(r, t), PenaltySpec(), tol=1e-12)
    assert out.value == pytest.approx(2 * math.pi**2 * density, rel=1e-10)


def test_finite_size_momentum_complexity():
    p = pair((0.1, 1.4), (0.5, 1.2))
    density = FROZEN_DENSITY[0][2]
    for N in (1000, 4000):
        assert momentum_complexity_finite(p, N) / N == pytest.approx(density / 2, rel=1e-6)


def test_trivial_pair_is_zero():
    p = pair((0.3, 0.8), (0.3, 0.8))
    assert momentum_complexity_density(p) == 0.0
    assert momentum_complexity_finite(p, 64) == 0.0
    out = realspace_complexity(p, PenaltySpec(0.5, 1.0))
    assert isinstance(out, Finite) and out.value == 0.0


def test_ordered_constants_cancel():
    amps = merged_amplitudes(pair((0.1, 1.4), (0.5, 1.2)))
    assert all(abs(mu) < 1 for _, mu in amps.terms)
    cross = merged_amplitudes(pair((0.1, 1.4), (1.5, 1.2)))
    assert any(abs(mu) == 1 for _, mu in cross.terms)


def test_convergence_predicate():
    p = pair((0.1, 1.4), (0.5, 1.2))
    conv = convergence_classify(p, PenaltySpec(0.0, 3.0))
    assert conv and conv.margin < 0
    # exactly on the boundary
    rho_sq = conv.rho_sq
    l_edge = -0.5 * math.log(rho_sq)
    assert not convergence_classify(p, PenaltySpec(l_edge + 1e-3))
    assert isinstance(realspace_complexity(p, PenaltySpec(l_edge + 1e-3)), Divergent)


@pytest.mark.parametrize("beta,finite", [(0.0, True), (0.99, True), (1.0, False), (1.7, False)])
def test_cross_phase_boundary(beta, finite):
    out = realspace_complexity(pair((0.1, 1.1), (1.3, 1.1)), PenaltySpec(0.0, beta))
    assert out.is_finite is finite


def test_cross_phase_needs_zero_l():
    out = realspace_complexity(pair((0.1, 1.1), (1.3, 1.1)), PenaltySpec(0.01, 0.0))
    assert isinstance(out, Divergent) and out.margin == pytest.approx(0.02)


def test_partial_sums_increase_to_limit():
    p = pair((0.1, 1.4), (0.5, 1.2))
    pen = PenaltySpec(0.2, 0.5)
    s = partial_sums(p, pen, [1, 5, 20, 200])
    assert np.all(np.diff(s) >= 0)
    assert s[-1] == pytest.approx(FROZEN_PENALIZED[0][4], rel=1e-12)


def test_method_selection():
    p = pair((0.1, 1.4), (0.5, 1.2))
    pen = PenaltySpec(0.2, 0.5)
    assert realspace_complexity(p, pen, method="series").method == "series"
    assert realspace_complexity(p, pen, method="polylog").method == "polylog"
    with pytest.raises(ValueError):
        realspace_complexity(p, pen, method="magic")


@pytest.mark.parametrize("l,beta", [(-0.1, 0.0), (math.nan, 0.0), (0.0, math.inf)])
def test_bad_penalty(l, beta):
    with pytest.raises(ValueError):
        PenaltySpec(l, beta)


ordered = st.tuples(st.floats(0.0, 0.8), st.floats(0.7, 2.0))
disordered = st.tuples(st.floats(1.2, 2.5), st.floats(0.1, 2.0))


@settings(max_examples=30, deadline=None)
@given(st.one_of(ordered, disordered), st.one_of(ordered, disordered),
       st.floats(0.0, 0.3), st.floats(-1.0, 1.5))
def test_symmetric_nonnegative_and_methods_agree(r, t, l, beta):
    p = pair(r, t)
    pen = PenaltySpec(l, beta)
    conv = convergence_classify(p, pen)
    if not conv or conv.margin > -0.05:
        return
    a = realspace_complexity_series(p, pen, tol=1e-11)
    b = realspace_complexity_closed(p.swapped(), pen)
    assert a.value >= 0
    assert abs(a.value - b.value) <= a.error_bound + b.error_bound
