"""Empirical likelihood at a fixed theta.

Solves the Lagrange multiplier equation on its exact bracket, builds the
probability weights, and evaluates the log EL ratio together with its
adjusted (penalized-branch) variant.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import kernels
from .errors import NoConvergence, OutOfHull


@dataclass(frozen=True)
class ElConfig:
    m_threshold: float = 1e-8   # M in the one-sided mass condition
    c0: float = 1.0             # penalty branch value is -c0 * n
    lambda_tol: float = 1e-10   # relative accuracy target for lambda
    max_iter: int = 200

    def __post_init__(self):
        if self.m_threshold <= 0 or self.c0 <= 0 or self.lambda_tol <= 0:
            raise ValueError("ElConfig fields must be strictly positive")
        if self.max_iter <= 0:
            raise ValueError("max_iter must be a positive integer")


DEFAULT_CONFIG = ElConfig()


@dataclass(frozen=True)
class ElEvaluation:
    lam: float
    weights: Optional[np.ndarray]
    log_ratio: Optional[float]
    feasible: bool
    w1: float
    w2: float
    gvals: np.ndarray = field(repr=False)


def gvalues(sample, spec, theta) -> np.ndarray:
    x = np.ascontiguousarray(sample, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty sample")
    return kernels.g_array(x, spec.code, spec.mu, theta)


def _hull_ok(gvals) -> bool:
    return np.min(gvals) < 0.0 < np.max(gvals)


def lambda_bounds(gvals):
    """Exact multiplier bracket (lo, hi) from the one-sided mass sums."""
    gvals = np.asarray(gvals, dtype=float)
    if not _hull_ok(gvals):
        raise OutOfHull("all G values share a sign; 0 not inside the hull")
    n = gvals.size
    s = float(np.sum(gvals))
    w1, w2 = kernels.side_masses(gvals)
    if s >= 0.0:
        return 0.0, n * s / w1
    return n * s / w2, 0.0


def solve_lambda(gvals, config: ElConfig = DEFAULT_CONFIG) -> float:
    gvals = np.ascontiguousarray(gvals, dtype=np.float64)
    if not _hull_ok(gvals):
        raise OutOfHull("all G values share a sign; 0 not inside the hull")
    lam, _, status = kernels.solve_lambda_kernel(
        gvals, config.lambda_tol, config.max_iter)
    if status != kernels.OK:
        raise NoConvergence(
            f"multiplier solve hit the {config.max_iter}-iteration cap")
    return float(lam)


def el_evaluate(sample, spec, theta, config: ElConfig = DEFAULT_CONFIG) -> ElEvaluation:
    """Full EL solve at theta; infeasibility is flagged, never raised."""
    gv = gvalues(sample, spec, theta)
    n = gv.size
    w1, w2 = kernels.side_masses(gv)
    hull = _hull_ok(gv)
    feasible = hull and w1 > config.m_threshold and w2 > config.m_threshold
    if not hull:
        return ElEvaluation(lam=float("nan"), weights=None, log_ratio=None,
                            feasible=False, w1=w1, w2=w2, gvals=gv)
    lam, _, status = kernels.solve_lambda_kernel(
        gv, config.lambda_tol, config.max_iter)
    if status != kernels.OK:
        raise NoConvergence(
            f"multiplier solve hit the {config.max_iter}-iteration cap")
    weights = 1.0 / (n + lam * gv)
    log_ratio = float(kernels.log_ratio_from(gv, lam)) if feasible else None
    return ElEvaluation(lam=float(lam), weights=weights, log_ratio=log_ratio,
                        feasible=feasible, w1=w1, w2=w2, gvals=gv)


def adjusted_log_el_ratio(sample, spec, theta,
                          config: ElConfig = DEFAULT_CONFIG) -> float:
    """lr(theta) when both one-sided masses exceed M, else -c0 * n."""
    gv = gvalues(sample, spec, theta)
    value, _, status = kernels.adjusted_log_ratio_kernel(
        gv, config.m_threshold, config.c0, config.lambda_tol, config.max_iter)
    if status != kernels.OK:
        raise NoConvergence(
            f"multiplier solve hit the {config.max_iter}-iteration cap")
    return float(value)


__all__ = [
    "ElConfig", "ElEvaluation", "DEFAULT_CONFIG",
    "gvalues", "lambda_bounds", "solve_lambda",
    "el_evaluate", "adjusted_log_el_ratio",
]
