import math

import numpy as np
import pytest

from elprior import (AnalyticOracle, NotARoot, PriorSpec, ScenarioSpec,
                     chi_squared, draw_sample, exp_scale_spec, exponential,
                     log_normal, mean_spec, mele, normal, penalized_mele,
                     run_cell, run_table, second_moment_ratio_spec,
                     theta0_of, wilks_check)
from elprior.estfun import cubic_centered_spec, moment_functionals

SEED = 20260823


def test_theta0_values():
    smr = second_moment_ratio_spec()
    assert theta0_of(smr, normal(10, 2)) == pytest.approx(5.2)
    assert theta0_of(smr, exponential(1)) == pytest.approx(1.0)
    assert theta0_of(smr, chi_squared(1)) == pytest.approx(1.5)
    assert theta0_of(smr, log_normal(0, 0.5)) == pytest.approx(
        0.5 * math.exp(0.375))
    assert theta0_of(exp_scale_spec(0.0), normal(0, 1)) == pytest.approx(1.0)
    assert theta0_of(mean_spec(), normal(10, 2)) == 10.0


def test_theta0_is_a_population_root():
    for spec, dist in ((second_moment_ratio_spec(), log_normal(0, 0.5)),
                       (cubic_centered_spec(), exponential(1)),
                       (exp_scale_spec(1.5), normal(1.5, 1.0))):
        t0 = theta0_of(spec, dist)
        mf = moment_functionals(spec, AnalyticOracle(dist), t0)
        assert abs(mf.eg) < 1e-8 * (1.0 + math.sqrt(mf.eg2))


def test_theta0_undefined_for_zero_mean():
    with pytest.raises(NotARoot):
        theta0_of(second_moment_ratio_spec(), normal(0, 1))


def test_draw_sample_deterministic_and_stream_separated():
    d = exponential(1)
    a = draw_sample(d, 20, SEED, 3)
    b = draw_sample(d, 20, SEED, 3)
    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, draw_sample(d, 20, SEED, 4))
    assert not np.array_equal(a, draw_sample(d, 20, SEED + 1, 3))
    assert not np.array_equal(draw_sample(normal(0, 1), 20, SEED, 3)[:5],
                              draw_sample(normal(0, 2), 20, SEED, 3)[:5])


def test_draw_sample_clt():
    d = normal(10, 2)
    x = draw_sample(d, 1_000_000, SEED, 0)
    assert np.mean(x) == pytest.approx(10.0, abs=0.01)
    assert np.var(x) == pytest.approx(4.0, rel=0.01)


def test_scenario_validation():
    spec = second_moment_ratio_spec()
    sc = ScenarioSpec(spec=spec, dist=exponential(1), n_list=(15,),
                      reps=10, seed=SEED)
    assert sc.theta0 == pytest.approx(1.0)
    with pytest.raises(NotARoot):
        ScenarioSpec(spec=spec, dist=exponential(1), n_list=(15,),
                     reps=10, seed=SEED, theta0=2.0)
    with pytest.raises(ValueError):
        ScenarioSpec(spec=spec, dist=exponential(1), n_list=(0,),
                     reps=10, seed=SEED)
    with pytest.raises(ValueError):
        ScenarioSpec(spec=spec, dist=exponential(1), n_list=(15,),
                     reps=10, seed=SEED, prior_source="oracle")


def test_run_cell_single_rep_matches_direct_estimates():
    spec = second_moment_ratio_spec()
    dist = exponential(1)
    sc = ScenarioSpec(spec=spec, dist=dist, n_list=(30,), reps=1, seed=SEED)
    cell = run_cell(sc, 30)
    x = draw_sample(dist, 30, SEED, 0)
    th = mele(x, spec).theta
    tt = penalized_mele(x, spec, PriorSpec(spec, AnalyticOracle(dist))).theta
    assert cell.mean_mele == th
    assert cell.mean_pmele == tt
    assert cell.mse_mele == (th - 1.0) ** 2
    assert cell.replication_failures == 0


def test_run_cell_thread_count_invariance():
    sc = ScenarioSpec(spec=second_moment_ratio_spec(), dist=exponential(1),
                      n_list=(15,), reps=200, seed=SEED)
    one = run_cell(sc, 15, threads=1)
    four = run_cell(sc, 15, threads=4)
    assert one == four  # bit-identical, not just close


def test_run_table_shapes():
    sc = ScenarioSpec(spec=second_moment_ratio_spec(), dist=exponential(1),
                      n_list=(15, 25), reps=50, seed=SEED)
    cells = run_table(sc)
    assert [c.n for c in cells] == [15, 25]
    for c in cells:
        assert c.reps == 50
        assert 0 <= c.replication_failures <= 50
        assert math.isfinite(c.mse_mele)


def test_sample_prior_source():
    sc = ScenarioSpec(spec=exp_scale_spec(0.0), dist=normal(0, 1),
                      n_list=(15,), reps=100, seed=SEED,
                      prior_source="sample")
    cell = run_cell(sc, 15)
    assert cell.replication_failures == 0
    assert 0.5 < cell.mean_pmele < 1.6


def test_wilks_penalty_branch_exact():
    # theta far outside every sample's hull: each replication contributes
    # -2 * (-c0 * n), so the mean is exactly 2 * c0 * n
    val = wilks_check(exponential(1), mean_spec(), theta0=50.0, n=10,
                      reps=20, seed=SEED)
    assert val == 20.0


def test_wilks_mean_near_one_for_smooth_case():
    # the -2 log EL ratio at the true mean of a normal sample has mean
    # close to the chi^2_1 value 1
    val = wilks_check(normal(0, 1), mean_spec(), theta0=0.0, n=100,
                      reps=2000, seed=SEED)
    assert 0.9 < val < 1.15
