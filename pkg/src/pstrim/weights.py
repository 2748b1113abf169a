"""Inclusion-weight functions: indicator, smooth, overlap, and ATT variants.

The smooth families replace the hard trimming indicator with products of
normal CDFs of scale ``epsilon``; as epsilon -> 0 they converge to the
corresponding indicator weight everywhere except at the cutoffs themselves.

Families
--------
indicator       1{alpha1 <= e <= alpha2}           (closed interval)
smooth          Phi_eps(e - alpha1) * Phi_eps(alpha2 - e)
overlap         e * (1 - e)
att-indicator   e * 1{1 - e >= alpha}
att-smooth      Phi_eps(1 - alpha - e) * e
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from .glm import expit, link_derivative

__all__ = ["FAMILIES", "WeightSpec", "phi_eps", "weight", "smooth_weight_dtheta"]

FAMILIES = ("indicator", "smooth", "overlap", "att-indicator", "att-smooth")

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class WeightSpec:
    """Weight-family selector with its cutoff/smoothing parameters.

    ``alpha1``/``alpha2`` bound the two-sided families, ``alpha`` is the
    ATT cutoff on 1 - e, and ``epsilon`` is the smoothing scale used by the
    smooth families (ignored by the others).
    """

    family: str = "indicator"
    alpha1: float = 0.1
    alpha2: float = 0.9
    alpha: float = 0.1
    epsilon: float = 1e-4

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown weight family {self.family!r}; choose from {FAMILIES}")
        if self.family in ("indicator", "smooth"):
            if not (0.0 <= self.alpha1 < self.alpha2 <= 1.0):
                raise ValueError(
                    f"need 0 <= alpha1 < alpha2 <= 1, got ({self.alpha1}, {self.alpha2})"
                )
        if self.family in ("att-indicator", "att-smooth"):
            if not (0.0 < self.alpha < 1.0):
                raise ValueError(f"need 0 < alpha < 1, got {self.alpha}")
        if self.family in ("smooth", "att-smooth") and not self.epsilon > 0.0:
            raise ValueError(f"need epsilon > 0, got {self.epsilon}")

    @property
    def smooth(self) -> bool:
        return self.family in ("smooth", "att-smooth")


def phi_eps(z, epsilon: float):
    """Normal CDF with mean 0 and standard deviation ``epsilon``.

    Evaluated through the complementary error function (scipy's ``ndtr``),
    absolute error below 1e-15 even deep in the tails.
    """
    if not epsilon > 0.0:
        raise ValueError(f"need epsilon > 0, got {epsilon}")
    out = ndtr(np.asarray(z, dtype=float) / epsilon)
    return out if out.ndim else float(out)


def _phi_density(z, epsilon: float):
    """Normal density with scale ``epsilon`` (d/dz of :func:`phi_eps`)."""
    z = np.asarray(z, dtype=float) / epsilon
    return np.exp(-0.5 * z * z) / (epsilon * _SQRT_2PI)


def weight(spec: WeightSpec, e):
    """Evaluate the inclusion weight at propensity score(s) ``e`` in (0,1)."""
    e = np.asarray(e, dtype=float)
    if spec.family == "indicator":
        out = ((e >= spec.alpha1) & (e <= spec.alpha2)).astype(float)
    elif spec.family == "smooth":
        out = ndtr((e - spec.alpha1) / spec.epsilon) * ndtr((spec.alpha2 - e) / spec.epsilon)
    elif spec.family == "overlap":
        out = e * (1.0 - e)
    elif spec.family == "att-indicator":
        out = e * ((1.0 - e) >= spec.alpha)
    else:  # att-smooth
        out = ndtr((1.0 - spec.alpha - e) / spec.epsilon) * e
    return out if out.ndim else float(out)


def smooth_weight_dtheta(x, theta, spec: WeightSpec) -> np.ndarray:
    """Gradient in theta of the smooth two-sided weight at covariate row x.

    d/dtheta omega_eps(x'theta) =
        [phi_eps(e - a1) Phi_eps(a2 - e) - Phi_eps(e - a1) phi_eps(a2 - e)]
        * f(x'theta) * x,

    with e = expit(x'theta) and f the link derivative.
    """
    x = np.asarray(x, dtype=float)
    return _smooth_weight_dtheta_matrix(x.reshape(1, -1), np.asarray(theta, float), spec)[0]


def _smooth_weight_dtheta_matrix(x: np.ndarray, theta: np.ndarray, spec: WeightSpec) -> np.ndarray:
    """Row-wise smooth-weight gradients; shape (n, p)."""
    if spec.family != "smooth":
        raise ValueError(f"derivative defined for the smooth family, got {spec.family!r}")
    lp = x @ theta
    e = expit(lp)
    eps = spec.epsilon
    factor = (
        _phi_density(e - spec.alpha1, eps) * ndtr((spec.alpha2 - e) / eps)
        - ndtr((e - spec.alpha1) / eps) * _phi_density(spec.alpha2 - e, eps)
    )
    return (factor * link_derivative(lp))[:, None] * x
