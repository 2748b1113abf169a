"""scikit-learn style front end for the trimmed weighting pipeline.

``TrimmedEffect`` wraps propensity fitting, optional outcome regression,
weighting, and bootstrap inference behind the familiar estimator protocol
(``fit`` / ``get_params`` / ``set_params``), so it can sit inside the wider
sklearn ecosystem (cloning, grid search over cutoffs, etc.).
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from .bootstrap import bootstrap
from .data import Dataset
from .estimators import full_pipeline
from .glm import expit
from .validation import add_intercept, check_matrix, check_treatment, check_vector
from .weights import WeightSpec, weight

__all__ = ["TrimmedEffect"]


class TrimmedEffect(BaseEstimator):
    """Average treatment effect over a (smoothly) trimmed population.

    Parameters
    ----------
    weight : str
        Weight family: "indicator", "smooth", "overlap", "att-indicator"
        or "att-smooth".
    alpha1, alpha2 : float
        Two-sided trimming cutoffs on the propensity score.
    alpha : float
        ATT cutoff on 1 - e (ATT families only).
    epsilon : float
        Smoothing scale of the normal-CDF weights (smooth families only).
    augmented : bool
        Augment with per-arm linear outcome regression (doubly robust
        when untrimmed).
    bootstrap : int
        Bootstrap replicate count; 0 disables inference.
    seed : int
        Stream key for the bootstrap.
    ci_method : str
        "normal" or "percentile".

    Attributes
    ----------
    effect_ : float
        Point estimate.
    se_, ci_ : float, (float, float)
        Bootstrap standard error and 95% interval (when bootstrap > 0).
    n_effective_ : float
        Sum of inclusion weights.
    n_retained_ : int
        Units with weight above 0.5.
    """

    def __init__(self, weight="smooth", alpha1=0.1, alpha2=0.9, alpha=0.1,
                 epsilon=1e-4, augmented=True, bootstrap=0, seed=0, ci_method="normal"):
        self.weight = weight
        self.alpha1 = alpha1
        self.alpha2 = alpha2
        self.alpha = alpha
        self.epsilon = epsilon
        self.augmented = augmented
        self.bootstrap = bootstrap
        self.seed = seed
        self.ci_method = ci_method

    def _spec(self) -> WeightSpec:
        return WeightSpec(family=self.weight, alpha1=self.alpha1, alpha2=self.alpha2,
                          alpha=self.alpha, epsilon=self.epsilon)

    def fit(self, X, y, treatment=None):
        """Fit the pipeline on covariates X, outcomes y, and 0/1 treatment."""
        if treatment is None:
            raise ValueError("TrimmedEffect.fit requires the treatment= keyword")
        X = check_matrix(X, "X")
        y = check_vector(y, n=X.shape[0], name="y")
        a = check_treatment(treatment, n=X.shape[0])
        dataset = Dataset(a, y, add_intercept(X))
        spec = self._spec()
        result = full_pipeline(dataset, spec, augmented=self.augmented)
        self.effect_ = result.estimate
        self.n_effective_ = result.effective_size
        self.n_retained_ = result.n_retained
        self.propensity_fit_ = result.propensity
        self.outcome_fit_ = result.outcome
        self.n_features_in_ = X.shape[1]
        if self.bootstrap:
            boot = bootstrap(dataset, spec, augmented=self.augmented, b=self.bootstrap,
                             seed=self.seed, ci_method=self.ci_method)
            self.se_ = boot.se
            self.ci_ = (boot.ci_low, boot.ci_high)
            self.bootstrap_result_ = boot
        return self

    def _check_fitted(self):
        if not hasattr(self, "effect_"):
            raise NotFittedError("TrimmedEffect is not fitted; call fit first")

    def predict(self, X) -> np.ndarray:
        """Per-unit estimated effect mu_hat(1, x) - mu_hat(0, x)."""
        self._check_fitted()
        if self.outcome_fit_ is None:
            raise ValueError("predict needs augmented=True (no outcome model was fit)")
        X = add_intercept(check_matrix(X, "X"))
        return X @ (self.outcome_fit_.beta1 - self.outcome_fit_.beta0)

    def propensity_scores(self, X) -> np.ndarray:
        """Fitted propensity scores for new covariate rows."""
        self._check_fitted()
        X = add_intercept(check_matrix(X, "X"))
        return expit(X @ self.propensity_fit_.theta)

    def sample_weights(self, X) -> np.ndarray:
        """Inclusion weights the fitted model assigns to new rows."""
        return weight(self._spec(), self.propensity_scores(X))
