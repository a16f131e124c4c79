"""Data-generating distributions with closed-form moments and seeded sampling."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import MissingMoment, ParseError

_KIND_CODES = {"normal": 1, "exponential": 2, "chisq": 3, "lognormal": 4}


@dataclass(frozen=True)
class DistributionSpec:
    """One of Normal(mean, sd), Exponential(rate), ChiSquared(df),
    LogNormal(logmean, logsd).  ``a``/``b`` hold the two parameters
    (``b`` unused for one-parameter families)."""

    kind: str
    a: float
    b: float = 0.0

    def __post_init__(self):
        if self.kind not in _KIND_CODES:
            raise ValueError(f"unknown distribution kind: {self.kind!r}")
        if self.kind == "normal" and self.b <= 0:
            raise ValueError("normal sd must be > 0")
        if self.kind == "exponential" and self.a <= 0:
            raise ValueError("exponential rate must be > 0")
        if self.kind == "chisq" and self.a <= 0:
            raise ValueError("chisq df must be > 0")
        if self.kind == "lognormal" and self.b <= 0:
            raise ValueError("lognormal logsd must be > 0")

    @property
    def code(self) -> int:
        return _KIND_CODES[self.kind]

    def raw_moment(self, k: int) -> float:
        """E(X^k) for integer k >= 1."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if self.kind == "normal":
            m, s2 = self.a, self.b * self.b
            # M_k = m M_{k-1} + (k-1) s^2 M_{k-2}
            prev, cur = 1.0, m
            for j in range(2, k + 1):
                prev, cur = cur, m * cur + (j - 1) * s2 * prev
            return cur if k >= 1 else 1.0
        if self.kind == "exponential":
            return math.factorial(k) / self.a ** k
        if self.kind == "chisq":
            out = 1.0
            for j in range(k):
                out *= self.a + 2 * j
            return out
        # lognormal
        return math.exp(k * self.a + 0.5 * (k * self.b) ** 2)

    def exp_moment(self, k: int) -> float:
        """E(exp(kX)) for integer k >= 1."""
        if k < 1:
            raise ValueError("k must be >= 1")
        if self.kind == "normal":
            return math.exp(k * self.a + 0.5 * (k * self.b) ** 2)
        if self.kind == "exponential":
            if k >= self.a:
                raise MissingMoment(
                    f"E(exp({k}X)) diverges for Exponential(rate={self.a})")
            return self.a / (self.a - k)
        if self.kind == "chisq":
            if k >= 0.5:
                raise MissingMoment(
                    f"E(exp({k}X)) diverges for ChiSquared(df={self.a})")
            return (1.0 - 2.0 * k) ** (-self.a / 2.0)
        raise MissingMoment("E(exp(kX)) diverges for LogNormal")

    def sample(self, n: int, rng: np.random.Generator) -> np.ndarray:
        if self.kind == "normal":
            return rng.normal(self.a, self.b, n)
        if self.kind == "exponential":
            return rng.exponential(1.0 / self.a, n)
        if self.kind == "chisq":
            if self.a == 1.0:
                z = rng.standard_normal(n)
                return z * z
            return rng.chisquare(self.a, n)
        return rng.lognormal(self.a, self.b, n)

    def label(self) -> str:
        if self.kind in ("exponential", "chisq"):
            return f"{self.kind}({self.a:g})"
        return f"{self.kind}({self.a:g},{self.b:g})"


def normal(mean, sd):
    return DistributionSpec("normal", float(mean), float(sd))


def exponential(rate):
    return DistributionSpec("exponential", float(rate))


def chi_squared(df):
    return DistributionSpec("chisq", float(df))


def log_normal(logmean, logsd):
    return DistributionSpec("lognormal", float(logmean), float(logsd))


def parse_distribution(text: str) -> DistributionSpec:
    """Parse strings like ``normal(10, 2)`` or ``exponential(1)``."""
    s = text.strip().lower()
    if "(" not in s or not s.endswith(")"):
        raise ParseError(f"cannot parse distribution: {text!r}")
    name, _, rest = s.partition("(")
    name = name.strip()
    parts = [p.strip() for p in rest[:-1].split(",") if p.strip()]
    try:
        params = [float(p) for p in parts]
    except ValueError:
        raise ParseError(f"non-numeric distribution parameter in {text!r}")
    arity = {"normal": 2, "exponential": 1, "chisq": 1, "lognormal": 2}
    if name not in arity:
        raise ParseError(f"unknown distribution {name!r}")
    if len(params) != arity[name]:
        raise ParseError(
            f"{name} takes {arity[name]} parameter(s), got {len(params)}")
    return DistributionSpec(name, *params)
