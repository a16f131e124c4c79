"""Empirical-likelihood estimation for scalar estimating equations, with a
reference-prior penalty that removes the first-order bias term, plus Monte
Carlo and bootstrap harnesses for studying both estimators."""

from .bias import BiasReport, first_order_bias
from .bootstrap import (GroupData, StudyResult, StudyRow, cubic_root,
                        ingest_csv, make_synthetic_group, run_study)
from .distributions import (DistributionSpec, chi_squared, exponential,
                            log_normal, normal, parse_distribution)
from .elcore import (DEFAULT_CONFIG, ElConfig, ElEvaluation,
                     adjusted_log_el_ratio, el_evaluate, gvalues,
                     lambda_bounds, solve_lambda)
from .errors import (DegenerateDenominator, DegeneratePrior, ElpriorError,
                     EmptyFile, EmptyInterval, MissingMoment, NoConvergence,
                     NotARoot, OutOfHull, ParseError)
from .estfun import (AnalyticOracle, EstimatingFunctionSpec,
                     MomentFunctionals, SampleMomentOracle,
                     cubic_centered_spec, exp_scale_spec, g, g_dtheta,
                     g_dtheta2, mean_spec, moment_functionals,
                     second_moment_ratio_spec)
from .estimators import (EstimateResult, feasible_interval, mele,
                         penalized_mele)
from .kernels import USE_NUMBA
from .mc import (DEFAULT_SEED, McCellResult, ScenarioSpec, draw_sample,
                 run_cell, run_table, theta0_of, wilks_check)
from .prior import PriorSpec, log_prior, sample_moment_oracle, sigma2

__version__ = "0.1.0"
