"""Per-arm linear outcome regression for the augmented estimator.

Ordinary least squares on the dataset's design matrix (intercept included),
fit separately within each treatment arm via the normal equations with a
guarded Cholesky solve. Deliberate misspecification is allowed: the fit
never inspects goodness of fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .data import Dataset
from .errors import CollinearityError, InsufficientDataError

__all__ = ["OutcomeFit", "fit_outcome", "predict_outcome"]

# Cholesky pivots below this fraction of the largest Gram diagonal are
# treated as rank deficiency. p is small here, so no pivoting refinements.
PIVOT_RTOL = 1e-12


@dataclass(frozen=True)
class OutcomeFit:
    """OLS coefficients per arm; each vector has length p."""

    beta0: np.ndarray
    beta1: np.ndarray

    def __post_init__(self):
        for name in ("beta0", "beta1"):
            if not np.all(np.isfinite(getattr(self, name))):
                raise CollinearityError(f"{name} is non-finite")


def _ols(x: np.ndarray, y: np.ndarray, arm: int) -> np.ndarray:
    n, p = x.shape
    if n < p:
        raise InsufficientDataError(f"arm {arm} has {n} units for {p} coefficients")
    gram = x.T @ x
    try:
        factor = cho_factor(gram, lower=True)
    except np.linalg.LinAlgError:
        raise CollinearityError(f"arm {arm} design is rank deficient") from None
    pivots = np.diag(factor[0]) ** 2
    if np.min(pivots) <= PIVOT_RTOL * np.max(np.diag(gram)):
        raise CollinearityError(f"arm {arm} design is numerically rank deficient")
    return cho_solve(factor, x.T @ y)


def fit_outcome(dataset: Dataset) -> OutcomeFit:
    """Fit Y ~ X by OLS separately for A = 0 and A = 1.

    Raises
    ------
    InsufficientDataError
        If an arm has fewer units than coefficients.
    CollinearityError
        If an arm's design matrix is numerically rank deficient.
    """
    treated = dataset.a == 1.0
    beta0 = _ols(dataset.x[~treated], dataset.y[~treated], arm=0)
    beta1 = _ols(dataset.x[treated], dataset.y[treated], arm=1)
    return OutcomeFit(beta0=beta0, beta1=beta1)


def predict_outcome(fit: OutcomeFit, a: int, x) -> float:
    """mu_hat(a, x): inner product of x with the arm's coefficients."""
    beta = fit.beta1 if a == 1 else fit.beta0
    return float(np.asarray(x, dtype=float) @ beta)


def _predict_matrix(fit: OutcomeFit, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fitted (mu0, mu1) for every row of x."""
    return x @ fit.beta0, x @ fit.beta1
