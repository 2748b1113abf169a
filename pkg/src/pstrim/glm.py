"""Logistic propensity model: link, score, information, Newton-Raphson MLE.

The score and information are implemented in their general form for a
link with derivative ``f(t)``,

    S(theta) = (1/N) sum_i X_i (A_i - e_i) f_i / {e_i (1 - e_i)}
    I(theta) = (1/N) sum_i f_i^2 / {e_i (1 - e_i)} X_i X_i'

which for the logistic link (f = e(1-e)) reduce to the familiar
``(1/N) X'(A - e)`` and ``(1/N) X'WX``. Only the logistic link is exposed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .data import Dataset
from .errors import CollinearityError, NonConvergenceError, NumericError, SeparationError

__all__ = ["PROB_FLOOR", "PropensityFit", "expit", "link_derivative", "score",
           "information", "log_likelihood", "fit_mle"]

# Fitted probabilities are clamped to [PROB_FLOOR, 1 - PROB_FLOOR] so the
# 1/e and 1/(1-e) weights downstream can never overflow. The floor sits far
# below any trimming cutoff of practical interest.
PROB_FLOOR = 1e-12

# Any |theta_j| beyond this leaves fitted probabilities within ~1e-13 of
# {0,1}; treat it as complete separation and fail fast.
SEPARATION_BOUND = 30.0

# Once a linear predictor passes the flooring onset, its score contribution
# collapses to the floor and Newton can stall at a fake stationary point;
# flag that as separation too.
LP_SATURATION = -np.log(1e-12)

SCORE_TOL = 1e-10
STEP_TOL = 1e-12
MAX_ITER = 50
MAX_HALVINGS = 20


@dataclass(frozen=True)
class PropensityFit:
    """Fitted logistic propensity model."""

    theta: np.ndarray
    scores: np.ndarray          # floored fitted probabilities, strictly in (0,1)
    iterations: int
    converged: bool
    final_grad_norm: float


def expit(t):
    """Inverse logit 1/(1+exp(-t)), stable for either sign of t.

    The result is clamped to [PROB_FLOOR, 1 - PROB_FLOOR], so it is
    strictly inside (0, 1) even where the exact value would round to 0 or 1
    in double precision.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    pos = t >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-t[pos]))
    z = np.exp(t[~pos])
    out[~pos] = z / (1.0 + z)
    out = np.clip(out, PROB_FLOOR, 1.0 - PROB_FLOOR)
    return out if out.ndim else float(out)


def link_derivative(t):
    """de/dt for the logistic link: e(t) * (1 - e(t))."""
    e = expit(t)
    return e * (1.0 - e)


def _design(dataset: Dataset, theta) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (dataset.p,):
        raise ValueError(f"theta has shape {theta.shape}, expected ({dataset.p},)")
    lp = dataset.x @ theta
    return theta, lp, expit(lp)


def score(dataset: Dataset, theta) -> np.ndarray:
    """Sample score vector S(theta), general-link form."""
    _, lp, e = _design(dataset, theta)
    f = link_derivative(lp)
    g = (dataset.a - e) * f / (e * (1.0 - e))
    out = dataset.x.T @ g / dataset.n
    if not np.all(np.isfinite(out)):
        raise NumericError("non-finite score; linear predictor out of range")
    return out


def information(dataset: Dataset, theta) -> np.ndarray:
    """Sample Fisher information I(theta); symmetric positive semidefinite."""
    _, lp, e = _design(dataset, theta)
    f = link_derivative(lp)
    w = f * f / (e * (1.0 - e))
    raw = (dataset.x * w[:, None]).T @ dataset.x / dataset.n
    # BLAS gemm output is not bitwise symmetric; enforce it
    return (raw + raw.T) / 2.0


def log_likelihood(dataset: Dataset, theta) -> float:
    """Mean Bernoulli log-likelihood under the logistic link."""
    _, lp, _ = _design(dataset, theta)
    # a*lp - log(1+exp(lp)), with softplus computed stably
    softplus = np.maximum(lp, 0.0) + np.log1p(np.exp(-np.abs(lp)))
    return float(np.mean(dataset.a * lp - softplus))


def fit_mle(dataset: Dataset, _trace: list | None = None) -> PropensityFit:
    """Newton-Raphson MLE from theta = 0, with step-halving.

    Converges when the score norm falls to ``SCORE_TOL`` or the relative
    step length falls below ``STEP_TOL``. A Newton step that would lower
    the log-likelihood is halved up to ``MAX_HALVINGS`` times.
    ``_trace``, if given, collects the accepted (theta, log-likelihood)
    sequence; test instrumentation only.

    Raises
    ------
    SeparationError
        If any coefficient exceeds ``SEPARATION_BOUND`` in magnitude during
        iteration (fitted probabilities numerically 0/1).
    CollinearityError
        If the information matrix is singular.
    NonConvergenceError
        If ``MAX_ITER`` iterations do not reach the tolerance.
    """
    theta = np.zeros(dataset.p)
    ll = log_likelihood(dataset, theta)
    if _trace is not None:
        _trace.append((theta.copy(), ll))
    iterations = 0
    for iterations in range(1, MAX_ITER + 1):
        g = score(dataset, theta)
        gnorm = float(np.linalg.norm(g))
        if gnorm <= SCORE_TOL:
            return PropensityFit(theta, expit(dataset.x @ theta), iterations - 1, True, gnorm)
        info = information(dataset, theta)
        try:
            step = np.linalg.solve(info, g)
        except np.linalg.LinAlgError:
            raise CollinearityError("singular information matrix; covariates collinear") from None
        if not np.all(np.isfinite(step)):
            raise CollinearityError("information solve produced non-finite step")

        new_theta = theta + step
        new_ll = log_likelihood(dataset, new_theta)
        halvings = 0
        while new_ll < ll and halvings < MAX_HALVINGS:
            step = step / 2.0
            new_theta = theta + step
            new_ll = log_likelihood(dataset, new_theta)
            halvings += 1

        if np.any(np.abs(new_theta) > SEPARATION_BOUND):
            raise SeparationError(
                "propensity MLE diverged (|theta| > "
                f"{SEPARATION_BOUND:g}); data are separated"
            )
        if float(np.max(np.abs(dataset.x @ new_theta))) >= LP_SATURATION:
            raise SeparationError(
                "fitted probabilities numerically 0/1 (linear predictor beyond "
                f"{LP_SATURATION:.3g}); data are separated"
            )
        rel_step = float(np.linalg.norm(step)) / max(float(np.linalg.norm(new_theta)), 1.0)
        theta, ll = new_theta, new_ll
        if _trace is not None:
            _trace.append((theta.copy(), ll))
        if rel_step < STEP_TOL:
            gnorm = float(np.linalg.norm(score(dataset, theta)))
            return PropensityFit(theta, expit(dataset.x @ theta), iterations,
                                 gnorm <= SCORE_TOL, gnorm)

    gnorm = float(np.linalg.norm(score(dataset, theta)))
    if gnorm <= SCORE_TOL:
        return PropensityFit(theta, expit(dataset.x @ theta), iterations, True, gnorm)
    raise NonConvergenceError(
        f"Newton-Raphson did not converge in {MAX_ITER} iterations (grad norm {gnorm:.3e})"
    )
