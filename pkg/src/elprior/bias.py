"""Closed-form first-order bias of the plain and penalized estimators,
reported on the n * bias scale."""

import math
from dataclasses import dataclass

from .errors import DegenerateDenominator, NotARoot
from .estfun import moment_functionals

ROOT_TOL = 1e-8


@dataclass(frozen=True)
class BiasReport:
    n_bias_mele: float    # A - B
    n_bias_pmele: float   # B

    @property
    def first_term(self) -> float:
        return self.n_bias_mele + self.n_bias_pmele


def first_order_bias(spec, oracle, theta0: float) -> BiasReport:
    """Leading bias terms at the true root theta0.

    A = E{G G'} / E{G'}^2 and B = 0.5 * E{G^2} E{G''} / E{G'}^3; the plain
    estimator's n * bias is A - B, the penalized estimator's is B.
    """
    mf = moment_functionals(spec, oracle, theta0)
    scale = 1.0 + math.sqrt(max(mf.eg2, 0.0))
    if abs(mf.eg) > ROOT_TOL * scale:
        raise NotARoot(
            f"E{{G}}(theta0={theta0}) = {mf.eg:.3e}; not a root of the "
            "population estimating equation")
    if mf.eg1 == 0.0:
        raise DegenerateDenominator(f"E{{G'}}(theta0={theta0}) = 0")
    a = mf.egg1 / (mf.eg1 * mf.eg1)
    b = 0.5 * mf.eg2 * mf.eg2nd / (mf.eg1 ** 3) + 0.0  # drop negative zero
    return BiasReport(n_bias_mele=a - b + 0.0, n_bias_pmele=b)
