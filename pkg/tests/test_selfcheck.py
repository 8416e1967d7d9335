import numpy as np

from xycomplexity.complexity import convergence_classify
from xycomplexity.model import classify_phase
from xycomplexity.selfcheck import (
    REGIONS,
    check_finite_n,
    random_convergent_sample,
    random_params,
    run_selfcheck,
)


def test_region_sampling(rng):
    for region in REGIONS:
        for _ in range(50):
            assert classify_phase(random_params(rng, region)).value == region


def test_convergent_sampling(rng):
    for _ in range(20):
        pair, pen = random_convergent_sample(rng)
        assert convergence_classify(pair, pen).margin <= -0.05


def test_finite_n_mutation_detected(rng):
    assert check_finite_n(rng, pairs=3)["passed"]
    assert not check_finite_n(np.random.default_rng(1), pairs=3, mutation="drop-2pi")["passed"]


def test_quick_report_groups():
    rep = run_selfcheck(quick=True)
    assert rep["passed"]
    assert set(rep["groups"]) == {"kernel_oracle", "finite_n", "parseval", "series_vs_polylog",
                                  "special_functions"}
    assert rep["runtime_s"] < 60
