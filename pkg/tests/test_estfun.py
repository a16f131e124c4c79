import math

import numpy as np
import pytest

from elprior import (AnalyticOracle, MissingMoment, SampleMomentOracle,
                     cubic_centered_spec, chi_squared, exp_scale_spec,
                     exponential, g, g_dtheta, g_dtheta2, log_normal,
                     mean_spec, moment_functionals, normal,
                     second_moment_ratio_spec)

rng = np.random.default_rng(11)

ALL_SPECS = (mean_spec(), second_moment_ratio_spec(), exp_scale_spec(0.3),
             cubic_centered_spec())


def test_pointwise_values():
    assert g(mean_spec(), 3.0, 1.0) == 2.0
    assert g(second_moment_ratio_spec(), 3.0, 1.0) == 3.0
    assert g(exp_scale_spec(0.0), 0.0, 0.0) == 0.0
    assert g(cubic_centered_spec(), 3.0, 1.0) == 8.0
    x = np.array([1.0, 2.0])
    np.testing.assert_allclose(g(mean_spec(), x, 0.5), x - 0.5)


def test_derivatives_match_finite_differences():
    h = 1e-6
    for spec in ALL_SPECS:
        for _ in range(25):
            x = float(rng.normal())
            t = float(rng.normal())
            fd1 = (g(spec, x, t + h) - g(spec, x, t - h)) / (2 * h)
            assert g_dtheta(spec, x, t) == pytest.approx(fd1, rel=1e-5,
                                                         abs=1e-5)
            fd2 = (g_dtheta(spec, x, t + h)
                   - g_dtheta(spec, x, t - h)) / (2 * h)
            assert g_dtheta2(spec, x, t) == pytest.approx(fd2, rel=1e-4,
                                                          abs=1e-4)


def test_sample_moment_oracle_values():
    o = SampleMomentOracle([1.0, 2.0, 3.0])
    assert o.raw_moment(1) == 2.0
    assert o.raw_moment(2) == pytest.approx(14.0 / 3.0)
    assert o.raw_moment(3) == pytest.approx(12.0)
    assert o.exp_moment(1) == pytest.approx(
        (math.e + math.e ** 2 + math.e ** 3) / 3.0)
    with pytest.raises(ValueError):
        SampleMomentOracle([])


def test_functionals_smr_exponential():
    # Exp(1) at theta = 1: m = (1, 2, 6, 24)
    mf = moment_functionals(second_moment_ratio_spec(),
                            AnalyticOracle(exponential(1)), 1.0)
    assert mf.eg == pytest.approx(0.0)
    assert mf.eg2 == pytest.approx(4 * 2 - 4 * 6 + 24)  # 8
    assert mf.eg1 == pytest.approx(-2.0)
    assert mf.egg1 == pytest.approx(-2 * 6 + 4 * 2)     # -4
    assert mf.eg2nd == 0.0


def test_functionals_mean():
    mf = moment_functionals(mean_spec(), AnalyticOracle(normal(10, 2)), 10.0)
    assert mf.eg == 0.0
    assert mf.eg2 == pytest.approx(4.0)   # the variance
    assert mf.eg1 == -1.0
    assert mf.egg1 == 0.0
    assert mf.eg2nd == 0.0


def test_functionals_exp_scale():
    # N(0,1), mu = 0, theta = 1 (the true variance)
    mf = moment_functionals(exp_scale_spec(0.0),
                            AnalyticOracle(normal(0, 1)), 1.0)
    c = math.exp(0.5)
    assert mf.eg == pytest.approx(0.0, abs=1e-12)
    assert mf.eg2 == pytest.approx(math.exp(2.0) - c * c)  # e^2 - e
    assert mf.eg1 == pytest.approx(-0.5 * c)
    assert mf.egg1 == pytest.approx(0.0, abs=1e-12)
    assert mf.eg2nd == pytest.approx(-0.25 * c)


def test_functionals_equal_sample_averages():
    """With the sample oracle the functionals must be the exact empirical
    averages of the pointwise quantities."""
    for spec in ALL_SPECS:
        for _ in range(10):
            x = rng.normal(size=int(rng.integers(3, 40)))
            t = float(rng.normal())
            mf = moment_functionals(spec, SampleMomentOracle(x), t)
            gv = g(spec, x, t)
            gp = g_dtheta(spec, x, t)
            assert mf.eg == pytest.approx(np.mean(gv), rel=1e-10, abs=1e-10)
            assert mf.eg2 == pytest.approx(np.mean(gv * gv), rel=1e-9,
                                           abs=1e-9)
            assert mf.eg1 == pytest.approx(np.mean(gp), rel=1e-10, abs=1e-10)
            assert mf.egg1 == pytest.approx(np.mean(gv * gp), rel=1e-9,
                                            abs=1e-9)
            assert mf.eg2nd == pytest.approx(
                np.mean(g_dtheta2(spec, x, t)), rel=1e-10, abs=1e-10)


def test_eg2_nonnegative():
    for spec in ALL_SPECS:
        for oracle in (AnalyticOracle(normal(0.4, 1.2)),
                       SampleMomentOracle(rng.normal(size=20))):
            for t in (-1.0, 0.0, 0.7, 2.5):
                assert moment_functionals(spec, oracle, t).eg2 >= 0.0
    # analytic families without exp-moments only support the raw-moment kinds
    for oracle in (AnalyticOracle(chi_squared(1)),
                   AnalyticOracle(log_normal(0, 0.5))):
        for spec in (mean_spec(), second_moment_ratio_spec(),
                     cubic_centered_spec()):
            assert moment_functionals(spec, oracle, 0.7).eg2 >= 0.0


def test_exp_scale_requires_exp_moments():
    with pytest.raises(MissingMoment):
        moment_functionals(exp_scale_spec(0.0),
                           AnalyticOracle(log_normal(0, 0.5)), 1.0)


def test_unknown_kind_rejected():
    from elprior import EstimatingFunctionSpec
    with pytest.raises(ValueError):
        EstimatingFunctionSpec("median")
