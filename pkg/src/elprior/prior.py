"""The reference prior pi(theta) proportional to sigma^2(theta)^{-1/2},
with sigma^2 = E{G^2} / E{G'}^2 assembled from a moment oracle."""

import math
from dataclasses import dataclass

from .errors import DegeneratePrior
from .estfun import SampleMomentOracle, moment_functionals


@dataclass(frozen=True)
class PriorSpec:
    spec: object     # EstimatingFunctionSpec
    oracle: object   # MomentOracle


def sigma2(prior: PriorSpec, theta: float) -> float:
    mf = moment_functionals(prior.spec, prior.oracle, theta)
    if mf.eg1 == 0.0:
        raise DegeneratePrior(f"E{{G'}}(theta={theta}) = 0")
    s2 = mf.eg2 / (mf.eg1 * mf.eg1)
    if not math.isfinite(s2) or s2 <= 0.0:
        raise DegeneratePrior(f"sigma^2(theta={theta}) = {s2} is not positive")
    return s2


def log_prior(prior: PriorSpec, theta: float) -> float:
    """Unnormalized log prior, -0.5 * log sigma^2(theta)."""
    return -0.5 * math.log(sigma2(prior, theta))


def sample_moment_oracle(sample) -> SampleMomentOracle:
    return SampleMomentOracle(sample)
