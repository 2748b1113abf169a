"""Optimal ATT trimming cutoff from the empirical fixed-point equation.

The cutoff alpha for the retained set {i : 1 - e_i >= alpha} solves

    1/alpha = 2 * sum_{retained} e_i^2 {1/e_i + 1/(1-e_i)}
                / sum_{retained} e_i.

The right-hand side is piecewise constant in alpha between the order
statistics of 1 - e_i, so each piece is solved exactly: on a piece with
constant RHS c the only candidate is alpha = 1/c, accepted iff it lies in
the piece. The smallest accepted candidate is returned (lower piece on
ties). Homoskedastic outcome variance is assumed, under which the variance
scale cancels from the equation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoAlphaSolutionError

__all__ = ["AlphaSolution", "solve_att_alpha"]


@dataclass(frozen=True)
class AlphaSolution:
    """Solved ATT cutoff."""

    alpha: float
    retained_fraction: float     # share of units with 1 - e >= alpha
    residual: float              # |1/alpha - RHS(alpha)| at the solution


def _rhs_terms(e: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # e^2 (1/e + 1/(1-e)) simplifies to e + e^2/(1-e)
    return e + e * e / (1.0 - e), e


def solve_att_alpha(scores) -> AlphaSolution:
    """Solve the ATT cutoff equation over propensity scores in (0,1).

    Raises
    ------
    NoAlphaSolutionError
        If no piece admits a solution on (0, 1); the message carries the
        RHS range for diagnosis.
    """
    e = np.asarray(scores, dtype=float).ravel()
    if e.size == 0:
        raise ValueError("need at least one propensity score")
    if np.any(e <= 0.0) or np.any(e >= 1.0):
        raise ValueError("scores must lie strictly inside (0, 1)")

    d = 1.0 - e
    order = np.argsort(d)
    numer, denom = _rhs_terms(e[order])
    d_sorted = d[order]

    # suffix sums: piece k retains every unit with d >= d_distinct[k]
    suffix_num = np.cumsum(numer[::-1])[::-1]
    suffix_den = np.cumsum(denom[::-1])[::-1]
    d_distinct, first_pos = np.unique(d_sorted, return_index=True)

    accepted: list[tuple[float, int]] = []
    rhs_values = []
    lower = 0.0
    for k, upper in enumerate(d_distinct):
        rhs = 2.0 * suffix_num[first_pos[k]] / suffix_den[first_pos[k]]
        rhs_values.append(rhs)
        candidate = 1.0 / rhs
        if lower < candidate <= upper and candidate < 1.0:
            accepted.append((candidate, k))
        lower = upper

    if not accepted:
        raise NoAlphaSolutionError(
            "no cutoff on (0,1) satisfies 1/alpha = RHS(alpha); "
            f"RHS ranges over [{min(rhs_values):.6g}, {max(rhs_values):.6g}] "
            f"with 1 - e in [{d_distinct[0]:.6g}, {d_distinct[-1]:.6g}]"
        )
    alpha, _ = min(accepted)
    retained = float(np.mean(d >= alpha))
    kept = d >= alpha
    rhs_at = 2.0 * _rhs_terms(e[kept])[0].sum() / e[kept].sum()
    return AlphaSolution(alpha=float(alpha), retained_fraction=retained,
                         residual=float(abs(1.0 / alpha - rhs_at)))
