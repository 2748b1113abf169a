"""Nonparametric bootstrap over the full estimation pipeline.

Each replicate resamples n units with replacement and re-runs the whole
pipeline — propensity refit, outcome refit, weight recomputation — so the
interval reflects design-stage as well as analysis-stage uncertainty.
Replicate r draws from the counter-based Philox stream keyed (seed, r),
so serial and parallel execution produce identical results.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import DegenerateArmError, SeparationError, UnstableBootstrapError
from .estimators import full_pipeline
from .weights import WeightSpec

__all__ = ["BootstrapResult", "bootstrap", "Z_95"]

# two-sided 95% normal quantile, pinned
Z_95 = 1.959964

# replicates may lose an arm or separate; beyond this share the run aborts
MAX_FAILED_SHARE = 0.05

CI_METHODS = ("normal", "percentile")


@dataclass(frozen=True)
class BootstrapResult:
    """Point estimate with bootstrap standard error and 95% interval."""

    point: float
    se: float
    ci_low: float
    ci_high: float
    b: int
    failed_replicates: int
    method: str


def replicate_rng(seed: int, r: int) -> np.random.Generator:
    """Counter-based stream for replicate r under the given seed."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, r))))


def _one_replicate(dataset: Dataset, spec: WeightSpec, augmented: bool,
                   seed: int, r: int) -> float | None:
    idx = replicate_rng(seed, r).integers(0, dataset.n, size=dataset.n)
    try:
        return full_pipeline(dataset.take(idx), spec, augmented=augmented).estimate
    except (DegenerateArmError, SeparationError):
        return None


def bootstrap(dataset: Dataset, spec: WeightSpec, augmented: bool, b: int,
              seed: int, ci_method: str = "normal", parallel: bool = False) -> BootstrapResult:
    """Bootstrap the pipeline estimate.

    Parameters
    ----------
    b : int
        Replicate count, at least 2.
    seed : int
        Nonnegative stream key; replicate r uses stream (seed, r).
    ci_method : {"normal", "percentile"}
        Normal: point +/- 1.959964 * se. Percentile: empirical 2.5%/97.5%
        quantiles of the replicate estimates.
    parallel : bool
        Evaluate replicates on a thread pool; results are aggregated by
        replicate index either way, so output is identical to serial.

    Raises
    ------
    UnstableBootstrapError
        If more than 5% of replicates fail with degenerate-arm or
        separation errors.
    """
    if b < 2:
        raise ValueError(f"need b >= 2 bootstrap replicates, got {b}")
    if seed < 0:
        raise ValueError(f"seed must be nonnegative, got {seed}")
    if ci_method not in CI_METHODS:
        raise ValueError(f"ci_method must be one of {CI_METHODS}, got {ci_method!r}")

    point = full_pipeline(dataset, spec, augmented=augmented).estimate

    if parallel:
        with ThreadPoolExecutor() as pool:
            results = list(pool.map(
                lambda r: _one_replicate(dataset, spec, augmented, seed, r), range(b)))
    else:
        results = [_one_replicate(dataset, spec, augmented, seed, r) for r in range(b)]

    estimates = np.array([v for v in results if v is not None])
    failed = b - estimates.size
    if failed > MAX_FAILED_SHARE * b:
        raise UnstableBootstrapError(
            f"{failed} of {b} bootstrap replicates failed "
            f"(> {MAX_FAILED_SHARE:.0%}); resamples lose an arm or separate"
        )

    se = float(np.std(estimates, ddof=1))
    if ci_method == "normal":
        ci_low, ci_high = point - Z_95 * se, point + Z_95 * se
    else:
        ci_low, ci_high = (float(q) for q in np.quantile(estimates, [0.025, 0.975]))
    return BootstrapResult(point=point, se=se, ci_low=float(ci_low), ci_high=float(ci_high),
                           b=b, failed_replicates=int(failed), method=ci_method)
