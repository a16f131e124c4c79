"""Estimating-function family G(x, theta), derivatives, and moment oracles.

The moment functionals E{G}, E{G^2}, E{G'}, E{G G'}, E{G''} are assembled
from raw moments E(X^k) (or exp-moments E(e^{kX}) for the exp-scale kind).
An analytic oracle reads them off a DistributionSpec; a sample oracle
averages the data, so the functionals equal the empirical averages of the
pointwise quantities exactly.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .distributions import DistributionSpec
from .errors import MissingMoment
from . import kernels

KINDS = ("mean", "second_moment_ratio", "exp_scale", "cubic_centered")

_KIND_CODE = {
    "mean": kernels.MEAN,
    "second_moment_ratio": kernels.SECOND_MOMENT,
    "exp_scale": kernels.EXP_SCALE,
    "cubic_centered": kernels.CUBIC,
}


@dataclass(frozen=True)
class EstimatingFunctionSpec:
    """Scalar estimating function; ``mu`` only applies to exp_scale."""

    kind: str
    mu: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown estimating function kind: {self.kind!r}")

    @property
    def code(self) -> int:
        return _KIND_CODE[self.kind]


def mean_spec():
    return EstimatingFunctionSpec("mean")


def second_moment_ratio_spec():
    return EstimatingFunctionSpec("second_moment_ratio")


def exp_scale_spec(mu):
    return EstimatingFunctionSpec("exp_scale", mu=float(mu))


def cubic_centered_spec():
    return EstimatingFunctionSpec("cubic_centered")


def g(spec, x, theta):
    """G(x, theta); accepts scalars or arrays in x."""
    x = np.asarray(x, dtype=float)
    if spec.kind == "mean":
        out = x - theta
    elif spec.kind == "second_moment_ratio":
        out = x * x - 2.0 * theta * x
    elif spec.kind == "exp_scale":
        out = np.exp(x) - math.exp(spec.mu + 0.5 * theta)
    else:
        out = (x - theta) ** 3
    return out if out.ndim else float(out)


def g_dtheta(spec, x, theta):
    """dG/dtheta."""
    x = np.asarray(x, dtype=float)
    if spec.kind == "mean":
        out = np.full_like(x, -1.0)
    elif spec.kind == "second_moment_ratio":
        out = -2.0 * x
    elif spec.kind == "exp_scale":
        out = np.full_like(x, -0.5 * math.exp(spec.mu + 0.5 * theta))
    else:
        out = -3.0 * (x - theta) ** 2
    return out if out.ndim else float(out)


def g_dtheta2(spec, x, theta):
    """d^2G/dtheta^2."""
    x = np.asarray(x, dtype=float)
    if spec.kind == "mean" or spec.kind == "second_moment_ratio":
        out = np.zeros_like(x)
    elif spec.kind == "exp_scale":
        out = np.full_like(x, -0.25 * math.exp(spec.mu + 0.5 * theta))
    else:
        out = 6.0 * (x - theta)
    return out if out.ndim else float(out)


class SampleMomentOracle:
    """Raw and exp moments computed as plain sample averages."""

    def __init__(self, sample):
        x = np.asarray(sample, dtype=float)
        if x.size == 0:
            raise ValueError("empty sample")
        self._x = x

    def raw_moment(self, k: int) -> float:
        if k < 1:
            raise ValueError("k must be >= 1")
        return float(np.mean(self._x ** k))

    def exp_moment(self, k: int) -> float:
        if k < 1:
            raise ValueError("k must be >= 1")
        return float(np.mean(np.exp(k * self._x)))


class AnalyticOracle:
    """Moments of a known DistributionSpec.

    Exp-moments are those of the actual distribution (its true variance for
    the normal case), so sigma^2(theta) built from them carries the slope
    that the first-order bias theory assumes.
    """

    def __init__(self, dist: DistributionSpec):
        self.dist = dist

    def raw_moment(self, k: int) -> float:
        return self.dist.raw_moment(k)

    def exp_moment(self, k: int) -> float:
        return self.dist.exp_moment(k)


class MomentFunctionals(NamedTuple):
    eg: float      # E{G}
    eg2: float     # E{G^2}
    eg1: float     # E{G'}
    egg1: float    # E{G G'}
    eg2nd: float   # E{G''}


def _central_power(oracle, theta, p):
    """E{(X - theta)^p} from raw moments."""
    acc = 0.0
    for j in range(p + 1):
        m = 1.0 if j == p else oracle.raw_moment(p - j)
        acc += math.comb(p, j) * m * (-theta) ** j
    return acc


def moment_functionals(spec, oracle, theta) -> MomentFunctionals:
    """The five moment functionals at theta, exact in the oracle's moments."""
    if spec.kind == "mean":
        m1 = oracle.raw_moment(1)
        m2 = oracle.raw_moment(2)
        eg = m1 - theta
        return MomentFunctionals(
            eg=eg,
            eg2=m2 - 2.0 * theta * m1 + theta * theta,
            eg1=-1.0,
            egg1=-eg,
            eg2nd=0.0,
        )
    if spec.kind == "second_moment_ratio":
        m1 = oracle.raw_moment(1)
        m2 = oracle.raw_moment(2)
        m3 = oracle.raw_moment(3)
        m4 = oracle.raw_moment(4)
        return MomentFunctionals(
            eg=m2 - 2.0 * theta * m1,
            eg2=4.0 * theta * theta * m2 - 4.0 * theta * m3 + m4,
            eg1=-2.0 * m1,
            egg1=-2.0 * m3 + 4.0 * theta * m2,
            eg2nd=0.0,
        )
    if spec.kind == "exp_scale":
        try:
            me1 = oracle.exp_moment(1)
            me2 = oracle.exp_moment(2)
        except MissingMoment:
            raise
        c = math.exp(spec.mu + 0.5 * theta)
        eg = me1 - c
        return MomentFunctionals(
            eg=eg,
            eg2=me2 - 2.0 * c * me1 + c * c,
            eg1=-0.5 * c,
            egg1=-0.5 * c * eg,
            eg2nd=-0.25 * c,
        )
    # cubic_centered: needs raw moments up to order six
    return MomentFunctionals(
        eg=_central_power(oracle, theta, 3),
        eg2=_central_power(oracle, theta, 6),
        eg1=-3.0 * _central_power(oracle, theta, 2),
        egg1=-3.0 * _central_power(oracle, theta, 5),
        eg2nd=6.0 * _central_power(oracle, theta, 1),
    )
