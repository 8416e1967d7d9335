import csv
import io
import json
import math

import numpy as np

from xycomplexity.complexity import PenaltySpec, StatePair, convergence_classify
from xycomplexity.config import build_config
from xycomplexity.model import ChainParams, correlation_lengths
from xycomplexity.scan import (
    LINE_COLUMNS,
    SCAN_COLUMNS,
    boundary_polyline,
    kernel_rows,
    kink_ratio,
    nearest_to_circle,
    run_grid_scan,
    run_line_sweep,
    run_scaling_suite,
    slope_jump_ratio,
    to_csv,
    to_json,
    turning_angles,
)

FIG2_REF = ChainParams(0.1, 1.4)
FIG2_PEN = PenaltySpec(abs(math.log(0.56)), 0.0)


def small_grid(*extra):
    return build_config("scan", None, ["grid.h_steps=7", "grid.gamma_steps=6", *extra])


def test_grid_rows_match_predicate():
    cfg = small_grid()
    rows = run_grid_scan(cfg)
    assert len(rows) == 42
    assert [(r.h_T, r.gamma_T) for r in rows[:2]] == [(0.0, 0.01), (0.0, rows[1].gamma_T)]
    for r in rows:
        if r.value == "crit":
            assert r.h_T == 1.0
            continue
        conv = convergence_classify(StatePair(FIG2_REF, ChainParams(r.h_T, r.gamma_T)), FIG2_PEN)
        assert (r.value == "div") == (not conv)
        if r.value != "div":
            assert r.value >= 0 and r.error_bound >= 0


def test_trivial_grid_all_zero():
    # 2x2 grid; for each cell a scan with that cell as reference returns exactly zero there
    axes = ["grid.h_min=0.3", "grid.h_max=1.4", "grid.h_steps=2",
            "grid.gamma_min=0.5", "grid.gamma_max=1.2", "grid.gamma_steps=2"]
    for k, cell in enumerate(run_grid_scan(build_config("scan", None, axes))):
        ref = [f"reference.h={cell.h_T!r}", f"reference.gamma={cell.gamma_T!r}"]
        assert run_grid_scan(build_config("scan", None, axes + ref))[k].value == 0.0


def test_lambda_quantity():
    cfg = small_grid("grid.quantity=lambda")
    for r in run_grid_scan(cfg):
        if r.value == "crit":
            continue
        assert 0 <= r.value < 1


def test_csv_deterministic_across_threads():
    a = to_csv(SCAN_COLUMNS, run_grid_scan(small_grid("threads=1")))
    b = to_csv(SCAN_COLUMNS, run_grid_scan(small_grid("threads=2")))
    assert a == b
    rows = list(csv.reader(io.StringIO(a)))
    assert tuple(rows[0]) == SCAN_COLUMNS and len(rows) == 43


def test_json_output():
    rows = run_grid_scan(small_grid())
    data = json.loads(to_json(SCAN_COLUMNS, rows))
    assert len(data) == len(rows) and set(data[0]) == set(SCAN_COLUMNS)


def test_line_sweep():
    cfg = build_config("line", None, ["line.steps=5", "line.betas=0, 1"])
    rows = run_line_sweep(cfg)
    assert len(rows) == 10 and rows[0][1] == 0.0 and rows[5][1] == 1.0
    assert rows[2][2] == "crit"
    # beta = 0 stays finite past the transition; beta = 1 diverges there
    assert isinstance(rows[3][2], float) and rows[8][2] == "div"
    text = to_csv(LINE_COLUMNS, rows)
    assert text.splitlines()[0] == "h_T,beta,value,error"


def test_line_sweep_reference_point_is_zero():
    cfg = build_config("line", None, ["line.h_min=0.1", "line.h_max=0.9", "line.steps=2",
                                      "line.gamma_T=1.1", "line.betas=0"])
    assert run_line_sweep(cfg)[0][2] == 0.0


def test_kernel_rows():
    cfg = build_config("kernel", None, ["kernel.n_max=5"])
    rows = kernel_rows(cfg)
    closed = [r[1] for r in rows if r[2] == "closed"]
    quad = [r[1] for r in rows if r[2] == "quadrature"]
    np.testing.assert_allclose(closed, quad, atol=1e-9)


def test_scaling_suite_synthetic():
    rep = run_scaling_suite(build_config("scaling", None, ["scaling.synthetic=true"]))
    assert rep["passed"]
    assert all(f["relative_deviation"] <= 1e-10 for f in rep["fits"])


def test_turning_angles_square():
    pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float)
    np.testing.assert_allclose(turning_angles(pts), [np.pi / 2, np.pi / 2])


def test_kink_on_fig2_boundary():
    center = (0.6, 0.9)
    angles = np.linspace(-1.2, 0.9, 121)
    pts = boundary_polyline(FIG2_REF, FIG2_PEN, center, angles)
    idx = nearest_to_circle(pts)
    assert abs(math.hypot(*pts[idx]) - 1) < 0.02
    assert kink_ratio(pts, idx) >= 5


def test_xi_slope_jump():
    h = 0.5
    g_cross = math.sqrt(1 - h * h)

    def xi(g):
        return correlation_lengths(ChainParams(h, g)).xi_max

    assert slope_jump_ratio(xi, g_cross, 1e-2) >= 5
    assert slope_jump_ratio(xi, g_cross + 0.2, 1e-2) < 5
