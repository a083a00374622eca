import math

import numpy as np
import pytest

from farpoint import GridFunction, InvalidObjective, InvalidParameter, InvalidX
from farpoint.scenarios import (
    Distance,
    DistancePlusNorm,
    EuclideanBall,
    Polytope,
    Square,
    fk_supremum,
    random_polytope,
    run_ball_remark,
    run_ck_counterexample,
    run_density_ck,
    run_density_triangle,
    run_extreme_points,
    run_extreme_points_scenario,
    run_fk_remark,
)


def by_description(report):
    return {a.description: a for a in report.assertions}


def dense_fx(x, n, grid=200_001):
    """f_x((1 - 1/n) x_n) = ||x - (1-1/n) x_n|| + (1 - 1/n), evaluated on a fine grid."""
    t = np.union1d(np.linspace(0, 1, grid), [0.5 / n, 1.0 / n])
    hat = np.clip(np.minimum(t * 2 * n, 2 - t * 2 * n), 0, None)
    return np.max(np.abs(x(t) - (1 - 1 / n) * hat)) + (1 - 1 / n)


def test_ck_constant_two():
    rep = run_ck_counterexample(n_max=1000)
    assert rep.passed, [a for a in rep.assertions if not a.passed]
    a = by_description(rep)
    assert a["x[0]: verdict"].observed == "NotAttained"
    assert a["x[0]: f_x at the limit point 0"].observed == pytest.approx(2.0, abs=1e-12)
    series = rep.artifacts["fx_vs_n"]
    assert series["columns"] == ["n", "f_x"]
    n, fx = np.array(series["rows"]).T
    np.testing.assert_allclose(fx, 3 - 1 / n, rtol=0, atol=1e-12)
    assert fx.max() < 3.0


def test_ck_linear_x_against_dense_grid():
    x = GridFunction(np.linspace(0, 1, 11), 1.5 + np.linspace(0, 1, 11))
    rep = run_ck_counterexample(n_max=300, schedule=(10, 100, 300), x_choices=[x])
    assert rep.passed
    n, fx = np.array(rep.artifacts["fx_vs_n"]["rows"]).T
    assert fx.max() < 3.5
    for k in (1, 2, 3, 7, 50, 300):
        assert fx[k - 1] == pytest.approx(dense_fx(x, k), abs=1e-9)
    assert by_description(rep)["x[0]: sup bracket upper (f_x)"].observed == pytest.approx(3.5)


def test_ck_boundary_x_equal_one():
    rep = run_ck_counterexample(n_max=100, schedule=(10, 100), x_choices=[[1.0]])
    assert rep.passed
    n, fx = np.array(rep.artifacts["fx_vs_n"]["rows"]).T
    np.testing.assert_allclose(fx, 2 - 1 / n, atol=1e-12)


def test_ck_several_x_choices():
    rng = np.random.default_rng(3)
    xs = [GridFunction(np.linspace(0, 1, 11), 2 + rng.uniform(-1, 1, 11)) for _ in range(3)]
    rep = run_ck_counterexample(n_max=1000, x_choices=xs)
    assert rep.passed
    assert sum(a.description.endswith("verdict") for a in rep.assertions) == 3


def test_ck_rejects_x_outside_ball():
    with pytest.raises(InvalidX):
        run_ck_counterexample(n_max=100, schedule=(10, 100), x_choices=[[3.5]])
    with pytest.raises(InvalidParameter):
        run_ck_counterexample(n_max=50, schedule=(10, 100))


def fk_by_enumeration(x, k, m=20_001):
    """Grid oracle: the open interval is approached by a fine grid, endpoints penalised."""
    z = np.linspace(0, 1, m)
    vals = np.abs(x - z)
    ends = vals[[0, -1]] - (0 if k is None else 1 / k)
    return max(vals[1:-1].max(), ends.max()), ends.max()


@pytest.mark.parametrize("x", [-1.0, -0.3, 0.0, 0.2, 0.5, 0.7, 1.0, 1.6, 2.0])
@pytest.mark.parametrize("k", [1, 2, 5, None])
def test_fk_supremum_against_grid(x, k):
    s, attained, witness = fk_supremum(x, k)
    grid_sup, end_best = fk_by_enumeration(x, k)
    assert s == pytest.approx(grid_sup, abs=1e-4)
    assert s >= grid_sup
    if k is None:
        assert attained and abs(x - witness) == s
    else:
        assert not attained and end_best < s


def test_fk_examples():
    assert fk_supremum(0.7, 5) == (0.7, False, None)
    assert fk_supremum(0.5, 3) == (0.5, False, None)
    assert fk_supremum(0.7, None) == (0.7, True, 0.0)


def test_fk_remark_report():
    rep = run_fk_remark()
    assert rep.passed
    rows = rep.artifacts["fk_sup"]["rows"]
    assert len(rows) == 101 * 4
    assert all(att == (k == 0) for _, k, _, att in rows)
    with pytest.raises(InvalidParameter):
        run_fk_remark([0])


def test_square_vertex_sup():
    square = Polytope([[-1, -1], [-1, 1], [1, -1], [1, 1]])
    rep = run_extreme_points(square, DistancePlusNorm((2.0, 0.0)), 20_000, seed=0)
    assert rep.sup_over_extremes == pytest.approx(math.sqrt(10) + math.sqrt(2), abs=1e-12)
    assert rep.sup_over_extremes == pytest.approx(4.576491, abs=1e-6)
    assert rep.argmax_extreme in ([-1, -1], [-1, 1])
    assert rep.sup_over_dense_sample <= rep.sup_over_extremes + 1e-12
    assert 0 <= rep.gap < 5e-3


def test_interval_square_objective():
    rep = run_extreme_points(Polytope([[0.0], [1.0]]), Square(), 1000, seed=1)
    assert rep.sup_over_extremes == 1.0 and rep.argmax_extreme == [1.0]
    assert rep.sup_over_dense_sample <= 1.0


def test_ball_extreme_points():
    rep = run_extreme_points(EuclideanBall(2), DistancePlusNorm((2.0, 0.0)), 50_000, seed=0)
    assert rep.sup_over_extremes == 4.0
    np.testing.assert_allclose(rep.argmax_extreme, [-1, 0])
    assert rep.sup_over_dense_sample <= 4.0
    rep = run_extreme_points(EuclideanBall(3), Distance((0.0, 0.0, 0.0)), 1000, seed=0)
    assert rep.sup_over_extremes == 1.0 and rep.argmax_extreme == [1, 0, 0]


def test_invalid_objectives():
    square = Polytope([[0, 0], [1, 1]])
    with pytest.raises(InvalidObjective):
        run_extreme_points(square, lambda z: z, 10)
    with pytest.raises(InvalidObjective):
        run_extreme_points(square, Square(), 10)
    with pytest.raises(InvalidObjective):
        run_extreme_points(square, Distance((1.0, 2.0, 3.0)), 10)
    with pytest.raises(InvalidObjective):
        run_extreme_points_scenario(objective="cube", sample_count=10)


def test_gap_shrinks_with_samples():
    small, large = [], []
    for seed in range(5):
        poly = random_polytope(np.random.default_rng(seed), 3, 8)
        obj = DistancePlusNorm((2.0, 0.0, 0.0))
        small.append(run_extreme_points(poly, obj, 1000, seed).gap)
        large.append(run_extreme_points(poly, obj, 100_000, seed).gap)
    assert min(small + large) >= -1e-12
    assert np.mean(large) <= np.mean(small)


def test_extreme_points_scenario_report():
    rep = run_extreme_points_scenario(3, 7, "distance", sample_count=5000, seed=2)
    assert rep.passed
    assert rep.artifacts["extreme_points"]["sample_count"] == 5000


def test_ball_remark_examples():
    rep = run_ball_remark(2, [[2.0, 0.0], [0.5, 0.0]], seed=0, sphere_samples=20_000)
    assert rep.passed
    rows = rep.artifacts["ball_sup"]["rows"]
    assert rows[0][2] == 4.0 and rows[1][2] == 2.5
    rep0 = run_ball_remark(3, [[0.0, 0.0, 0.0]], seed=0, sphere_samples=20_000)
    assert rep0.passed and rep0.artifacts["ball_sup"]["rows"][0][2] == 2.0
    with pytest.raises(InvalidParameter):
        run_ball_remark(2, [[1.0, 2.0, 3.0]])


def test_ball_remark_random_high_dimension():
    rep = run_ball_remark(8, 3, seed=4, sphere_samples=20_000)
    assert rep.passed
    for a in rep.assertions:
        if "observed sup vs" in a.description:
            assert abs(a.observed - a.expected) <= 2e-3


def test_density_scenarios():
    tri = run_density_triangle(500, seed=3)
    assert tri.passed and len(tri.artifacts["density_rows"]["rows"]) == 500
    ck = run_density_ck(5, seed=3, n_max=1000)
    assert ck.passed
    assert ck.artifacts["density_probe"]["attained_fraction"] == 0.0
