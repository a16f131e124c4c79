"""Point estimation: the estimating-equation root and its prior-penalized
counterpart, both restricted to the feasible theta interval."""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import kernels
from .errors import DegeneratePrior, EmptyInterval, NoConvergence
from .prior import PriorSpec

MELE = "mele"
PENALIZED_MELE = "penalized_mele"

SCAN_POINTS = 256
WIDTH_TOL = 1e-10
MARGIN = 1e-6  # relative shrink away from the hull boundary


@dataclass(frozen=True)
class EstimateResult:
    theta: float
    kind: str
    objective_at_theta: float
    feasible_interval: Tuple[float, float]
    iterations: int


def _as_array(sample):
    x = np.ascontiguousarray(sample, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty sample")
    return x


def feasible_interval(sample, spec) -> Tuple[float, float]:
    """Open theta interval where 0 is strictly inside the hull of the
    G values, from the per-observation roots of G(x_i, theta)."""
    x = _as_array(sample)
    if spec.kind == "mean" or spec.kind == "cubic_centered":
        roots = x
    elif spec.kind == "second_moment_ratio":
        nz = x[x != 0.0]
        if nz.size == 0:
            raise EmptyInterval("all observations are zero")
        roots = nz / 2.0
    else:  # exp_scale
        roots = 2.0 * (x - spec.mu)
    lo = float(np.min(roots))
    hi = float(np.max(roots))
    if not lo < hi:
        raise EmptyInterval("degenerate sample: hull of G values collapses")
    return lo, hi


def mele(sample, spec, tol: float = 1e-12) -> EstimateResult:
    """Root of the sample estimating equation inside the feasible interval."""
    x = _as_array(sample)
    lo, hi = feasible_interval(x, spec)
    theta, iters, status = kernels.mele_kernel(
        x, spec.code, spec.mu, lo, hi, tol, 200)
    if status != kernels.OK:
        raise NoConvergence("estimating-equation root finder did not converge")
    residual = float(kernels.mean_g(x, spec.code, spec.mu, theta))
    return EstimateResult(theta=float(theta), kind=MELE,
                          objective_at_theta=residual,
                          feasible_interval=(lo, hi), iterations=int(iters))


def _prior_params(prior: Optional[PriorSpec]):
    """Translate a PriorSpec into the kernel's (code, polys, exp params)."""
    zero = np.zeros(1)
    if prior is None:
        return kernels.PRIOR_FLAT, zero, zero, 0.0, 0.0, 0.0
    spec, oracle = prior.spec, prior.oracle
    if spec.kind == "exp_scale":
        return (kernels.PRIOR_EXP, zero, zero, spec.mu,
                oracle.exp_moment(1), oracle.exp_moment(2))
    if spec.kind == "mean":
        m1, m2 = oracle.raw_moment(1), oracle.raw_moment(2)
        num = np.array([m2, -2.0 * m1, 1.0])
        den = np.array([-1.0])
    elif spec.kind == "second_moment_ratio":
        m1 = oracle.raw_moment(1)
        m2 = oracle.raw_moment(2)
        m3 = oracle.raw_moment(3)
        m4 = oracle.raw_moment(4)
        num = np.array([m4, -4.0 * m3, 4.0 * m2])
        den = np.array([-2.0 * m1])
    else:  # cubic_centered: E{(x-t)^6} over (-3 E{(x-t)^2})^2
        m = [1.0] + [oracle.raw_moment(k) for k in range(1, 7)]
        num = np.array([math.comb(6, j) * (-1.0) ** j * m[6 - j]
                        for j in range(7)])
        den = np.array([-3.0 * m[2], 6.0 * m[1], -3.0])
    return kernels.PRIOR_POLY, num, den, 0.0, 0.0, 0.0


def penalized_mele(sample, spec, prior: Optional[PriorSpec] = None,
                   config=None, n_scan: int = SCAN_POINTS,
                   width_tol: float = WIDTH_TOL) -> EstimateResult:
    """Maximizer of the adjusted log EL ratio plus the log prior.

    ``prior=None`` means a flat prior, in which case the result coincides
    with the estimating-equation root.
    """
    from .elcore import DEFAULT_CONFIG
    cfg = config if config is not None else DEFAULT_CONFIG
    x = _as_array(sample)
    lo, hi = feasible_interval(x, spec)
    pcode, pnum, pden, pmu, pme1, pme2 = _prior_params(prior)
    theta, obj, evals, status = kernels.penalized_argmax_kernel(
        x, spec.code, spec.mu, lo, hi, pcode, pnum, pden, pmu, pme1, pme2,
        cfg.m_threshold, cfg.c0, cfg.lambda_tol, cfg.max_iter,
        n_scan, width_tol)
    if status == kernels.DEGENERATE_PRIOR:
        raise DegeneratePrior(
            "sigma^2(theta) non-positive on the feasible interval")
    if status != kernels.OK:
        raise NoConvergence("penalized objective maximization failed")
    return EstimateResult(theta=float(theta), kind=PENALIZED_MELE,
                          objective_at_theta=float(obj),
                          feasible_interval=(lo, hi), iterations=int(evals))
