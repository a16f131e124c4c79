import math

import pytest

from elprior import (AnalyticOracle, DegenerateDenominator, NotARoot,
                     SampleMomentOracle, chi_squared, cubic_centered_spec,
                     exp_scale_spec, exponential, first_order_bias,
                     log_normal, mean_spec, normal, second_moment_ratio_spec)
from elprior.mc import theta0_of


def test_mean_is_unbiased_to_first_order():
    report = first_order_bias(mean_spec(), AnalyticOracle(normal(10, 2)), 10.0)
    assert report.n_bias_mele == 0.0
    assert report.n_bias_pmele == 0.0


def test_smr_chisq_value():
    # chisq(1): m = (1, 3, 15), theta0 = 1.5, A = (-30 + 18)/4 = -3
    report = first_order_bias(second_moment_ratio_spec(),
                              AnalyticOracle(chi_squared(1)), 1.5)
    assert report.n_bias_mele == pytest.approx(-3.0)
    assert report.n_bias_pmele == 0.0


def test_exp_scale_value():
    # N(0,1), mu=0, theta0=1: A = 0 and
    # B = 0.5 (e^2 - e)(-e^{1/2}/4) / (-e^{1/2}/2)^3 = e - 1
    report = first_order_bias(exp_scale_spec(0.0),
                              AnalyticOracle(normal(0, 1)), 1.0)
    b = math.e - 1.0
    assert b == pytest.approx(1.718, abs=5e-4)
    assert report.n_bias_mele == pytest.approx(-b)
    assert report.n_bias_pmele == pytest.approx(b)


def test_zero_law_for_theta_linear_kinds():
    """Whenever G is linear in theta (E{G''} = 0) the penalized estimator
    has no first-order bias term at all."""
    cases = [
        (mean_spec(), normal(3, 1.5)),
        (mean_spec(), exponential(2)),
        (second_moment_ratio_spec(), normal(10, 2)),
        (second_moment_ratio_spec(), exponential(1)),
        (second_moment_ratio_spec(), chi_squared(1)),
        (second_moment_ratio_spec(), log_normal(0, 0.5)),
    ]
    for spec, dist in cases:
        t0 = theta0_of(spec, dist)
        report = first_order_bias(spec, AnalyticOracle(dist), t0)
        assert report.n_bias_pmele == 0.0
        assert report.first_term == report.n_bias_mele


def test_antisymmetry_for_exp_scale():
    """E{G G'}(theta0) = 0 for the exp-scale kind, so the two first-order
    biases are exact negatives of each other."""
    for mu, sd in ((0.0, 1.0), (1.0, 1.0), (1.5, 1.0), (1.5, math.sqrt(1.5))):
        spec = exp_scale_spec(mu)
        dist = normal(mu, sd)
        t0 = theta0_of(spec, dist)
        assert t0 == pytest.approx(sd * sd)
        report = first_order_bias(spec, AnalyticOracle(dist), t0)
        assert report.n_bias_pmele == -report.n_bias_mele


def test_not_a_root_rejected():
    with pytest.raises(NotARoot):
        first_order_bias(mean_spec(), AnalyticOracle(normal(10, 2)), 9.0)


def test_degenerate_denominator():
    # a constant sample makes E{G'} = 0 for the cubic kind at its root
    with pytest.raises(DegenerateDenominator):
        first_order_bias(cubic_centered_spec(),
                         SampleMomentOracle([2.0, 2.0, 2.0]), 2.0)
