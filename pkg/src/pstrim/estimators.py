"""Trimmed weighting estimators of average treatment effects.

Per-unit effect contributions (simple and augmented) are combined into a
weighted ratio estimate

    sum_i w_i tau_i / sum_i w_i,     w_i = weight(spec, e_i),

which covers the ATE families and, with the ATT weights, the ATT families
under the same formula. Estimators consume precomputed scores so oracle
(true-score) and fitted-score evaluations share one code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import EmptyPopulationError
from .glm import PROB_FLOOR, PropensityFit, fit_mle
from .outcome import OutcomeFit, _predict_matrix, fit_outcome
from .weights import WeightSpec, weight

__all__ = ["PointEstimate", "unit_tau", "unit_tau_aug", "trimmed_estimate", "full_pipeline"]


@dataclass(frozen=True)
class PointEstimate:
    """Point-estimate fields of a pipeline run (no inference)."""

    estimate: float
    n_total: int
    effective_size: float       # sum of weights
    n_retained: int             # units with weight > 0.5
    propensity: PropensityFit
    outcome: OutcomeFit | None


def unit_tau(a, y, e) -> float:
    """Per-unit inverse-probability contribution aY/e - (1-a)Y/(1-e)."""
    return float(a * y / e - (1.0 - a) * y / (1.0 - e))


def unit_tau_aug(a, y, e, mu1, mu0) -> float:
    """Per-unit augmented contribution.

    {a R / e + mu1} - {(1-a) R / (1-e) + mu0}, with residual
    R = y - mu_a(x). Algebraically identical to
    [aY/e + (1 - a/e) mu1] - [(1-a)Y/(1-e) + (1 - (1-a)/(1-e)) mu0].
    """
    r = y - (mu1 if a == 1 else mu0)
    return float((a * r / e + mu1) - ((1.0 - a) * r / (1.0 - e) + mu0))


def _unit_tau_vec(a: np.ndarray, y: np.ndarray, e: np.ndarray) -> np.ndarray:
    return a * y / e - (1.0 - a) * y / (1.0 - e)


def _unit_tau_aug_vec(a, y, e, mu0, mu1) -> np.ndarray:
    r = y - np.where(a == 1.0, mu1, mu0)
    return (a * r / e + mu1) - ((1.0 - a) * r / (1.0 - e) + mu0)


def _floor_scores(scores: np.ndarray) -> np.ndarray:
    return np.clip(scores, PROB_FLOOR, 1.0 - PROB_FLOOR)


def trimmed_estimate(dataset: Dataset, scores, spec: WeightSpec,
                     fit: OutcomeFit | None = None) -> float:
    """Weighted effect estimate over the (smoothly) trimmed population.

    ``scores`` are propensity scores in (0,1) — fitted or oracle. With
    ``fit`` given, per-unit contributions are augmented with the outcome
    regression; otherwise the simple inverse-probability form is used.

    Raises
    ------
    EmptyPopulationError
        If every unit receives zero weight.
    """
    e = _floor_scores(np.asarray(scores, dtype=float))
    if e.shape != (dataset.n,):
        raise ValueError(f"scores have shape {e.shape}, expected ({dataset.n},)")
    w = weight(spec, e)
    wsum = float(w.sum())
    if wsum <= 0.0:
        raise EmptyPopulationError(
            f"no unit received positive weight under {spec.family!r} "
            f"(score range [{e.min():.6g}, {e.max():.6g}])"
        )
    if fit is None:
        tau = _unit_tau_vec(dataset.a, dataset.y, e)
    else:
        mu0, mu1 = _predict_matrix(fit, dataset.x)
        tau = _unit_tau_aug_vec(dataset.a, dataset.y, e, mu0, mu1)
    return float((w * tau).sum() / wsum)


def full_pipeline(dataset: Dataset, spec: WeightSpec, augmented: bool = False) -> PointEstimate:
    """Fit propensity (and outcome, if augmented), then estimate.

    Reports the effective sample size (sum of weights) and the hard count
    of units with weight above 0.5.
    """
    pfit = fit_mle(dataset)
    ofit = fit_outcome(dataset) if augmented else None
    estimate = trimmed_estimate(dataset, pfit.scores, spec, fit=ofit)
    w = weight(spec, _floor_scores(pfit.scores))
    return PointEstimate(
        estimate=estimate,
        n_total=dataset.n,
        effective_size=float(w.sum()),
        n_retained=int((w > 0.5).sum()),
        propensity=pfit,
        outcome=ofit,
    )
