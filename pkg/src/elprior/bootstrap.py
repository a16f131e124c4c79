"""Subsample-and-hold-out study for the cubic M-estimator.

Each replication draws n points without replacement from a data group,
estimates the plain and penalized cubic-centered estimators on them (the
penalty prior uses the subsample's own moments), and compares both against
the cubic root of the held-out remainder.
"""

import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from . import kernels
from .distributions import DistributionSpec
from .elcore import DEFAULT_CONFIG
from .errors import (DegeneratePrior, EmptyInterval, EmptyFile,
                     NoConvergence, OutOfHull, ParseError)
from .estfun import SampleMomentOracle, cubic_centered_spec
from .estimators import mele, penalized_mele
from .prior import PriorSpec

_FAILURE_KINDS = (EmptyInterval, DegeneratePrior, NoConvergence, OutOfHull)


@dataclass(frozen=True)
class GroupData:
    label: str
    values: np.ndarray

    @property
    def size(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class StudyRow:
    n: int
    theta_ref: float          # mean held-out root over replications
    mean_mele: float
    mean_pmele: float
    mean_bias_mele: float     # mean of (estimate - per-replication ref)
    mean_bias_pmele: float
    mse_mele: float
    mse_pmele: float
    mc_se_mele: float
    replication_failures: int
    reps: int


@dataclass(frozen=True)
class StudyResult:
    label: str
    rows: List[StudyRow]


def ingest_csv(path) -> GroupData:
    """One numeric value per line; a single non-numeric first line is
    treated as a header."""
    values = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            token = raw.strip().strip(",")
            if not token:
                continue
            try:
                v = float(token)
            except ValueError:
                if lineno == 1 and not values:
                    continue  # header
                raise ParseError(
                    f"{path}: non-numeric value {token!r}", line=lineno)
            if not math.isfinite(v):
                raise ParseError(f"{path}: non-finite value", line=lineno)
            values.append(v)
    if not values:
        raise EmptyFile(f"{path}: no numeric values")
    label = os.path.splitext(os.path.basename(str(path)))[0]
    return GroupData(label=label, values=np.asarray(values, dtype=np.float64))


def cubic_root(sample) -> float:
    """Unique root of theta -> sum (y_i - theta)^3."""
    y = np.ascontiguousarray(sample, dtype=np.float64)
    if y.size == 0:
        raise ValueError("empty sample")
    theta, _, status = kernels.cubic_root_kernel(y, 1e-10, 200)
    if status != kernels.OK:
        raise NoConvergence("cubic root finder did not converge")
    return float(theta)


def _study_rng(seed, label: str, n: int, rep: int) -> np.random.Generator:
    key = (zlib.crc32(label.encode("utf-8")), int(n), int(rep))
    ss = np.random.SeedSequence(entropy=seed, spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))


def run_study(group: GroupData, n_list, reps: int, seed,
              config=DEFAULT_CONFIG, threads: int = 1) -> StudyResult:
    spec = cubic_centered_spec()
    big_n = group.size
    rows = []
    for n in n_list:
        if n >= big_n:
            raise ValueError(f"subsample size {n} >= group size {big_n}")
        est_h = np.full(reps, np.nan)
        est_t = np.full(reps, np.nan)
        refs = np.full(reps, np.nan)
        ok = np.zeros(reps, dtype=bool)

        def worker(rep, n=n):
            rng = _study_rng(seed, group.label, n, rep)
            idx = rng.choice(big_n, size=n, replace=False)
            mask = np.zeros(big_n, dtype=bool)
            mask[idx] = True
            sub = group.values[mask]
            held = group.values[~mask]
            try:
                th = mele(sub, spec).theta
                prior = PriorSpec(spec, SampleMomentOracle(sub))
                tt = penalized_mele(sub, spec, prior, config).theta
            except _FAILURE_KINDS:
                return
            est_h[rep] = th
            est_t[rep] = tt
            refs[rep] = cubic_root(held)
            ok[rep] = True

        if threads > 1 and reps > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                list(pool.map(worker, range(reps), chunksize=64))
        else:
            for rep in range(reps):
                worker(rep)

        count = int(np.sum(ok))
        failures = reps - count
        if count == 0:
            nan = float("nan")
            rows.append(StudyRow(n=n, theta_ref=nan, mean_mele=nan,
                                 mean_pmele=nan, mean_bias_mele=nan,
                                 mean_bias_pmele=nan, mse_mele=nan,
                                 mse_pmele=nan, mc_se_mele=nan,
                                 replication_failures=failures, reps=reps))
            continue
        h = est_h[ok]
        t = est_t[ok]
        r = refs[ok]
        bias_h = h - r
        bias_t = t - r
        rows.append(StudyRow(
            n=n,
            theta_ref=float(np.mean(r)),
            mean_mele=float(np.mean(h)),
            mean_pmele=float(np.mean(t)),
            mean_bias_mele=float(np.mean(bias_h)),
            mean_bias_pmele=float(np.mean(bias_t)),
            mse_mele=float(np.mean(bias_h ** 2)),
            mse_pmele=float(np.mean(bias_t ** 2)),
            mc_se_mele=float(np.std(bias_h) / math.sqrt(count)),
            replication_failures=failures,
            reps=reps,
        ))
    return StudyResult(label=group.label, rows=rows)


def make_synthetic_group(dist: DistributionSpec, size: int, seed,
                         label: str = "synthetic") -> GroupData:
    """Deterministic right-skew-capable stand-in for the unavailable
    original dataset."""
    rng = _study_rng(seed, f"group:{label}", size, 0)
    return GroupData(label=label, values=dist.sample(size, rng))
