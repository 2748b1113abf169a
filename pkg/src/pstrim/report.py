"""Machine-readable estimate report: the CLI's primary output shape."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bootstrap import BootstrapResult
from .estimators import PointEstimate
from .weights import WeightSpec

__all__ = ["EstimateReport"]


@dataclass(frozen=True)
class EstimateReport:
    """Point estimate, optional bootstrap inference, and a config echo."""

    estimate: float
    weight_family: str
    alpha1: float
    alpha2: float
    alpha: float
    epsilon: float
    augmented: bool
    n_total: int
    n_effective: float
    n_trimmed_out: int
    bootstrap_b: int
    seed: int
    ci_method: str
    se: float | None = None
    ci: tuple[float, float] | None = None

    @classmethod
    def build(cls, point: PointEstimate, spec: WeightSpec, augmented: bool,
              bootstrap_b: int, seed: int, ci_method: str,
              boot: BootstrapResult | None = None) -> "EstimateReport":
        return cls(
            estimate=point.estimate,
            weight_family=spec.family,
            alpha1=spec.alpha1,
            alpha2=spec.alpha2,
            alpha=spec.alpha,
            epsilon=spec.epsilon,
            augmented=augmented,
            n_total=point.n_total,
            n_effective=point.effective_size,
            n_trimmed_out=point.n_total - point.n_retained,
            bootstrap_b=bootstrap_b,
            seed=seed,
            ci_method=ci_method,
            se=None if boot is None else boot.se,
            ci=None if boot is None else (boot.ci_low, boot.ci_high),
        )

    def to_dict(self) -> dict:
        out = {
            "estimate": self.estimate,
            "weight_family": self.weight_family,
            "alpha1": self.alpha1,
            "alpha2": self.alpha2,
            "alpha": self.alpha,
            "epsilon": self.epsilon,
            "augmented": self.augmented,
            "n_total": self.n_total,
            "n_effective": self.n_effective,
            "n_trimmed_out": self.n_trimmed_out,
            "bootstrap_b": self.bootstrap_b,
            "seed": self.seed,
            "ci_method": self.ci_method,
        }
        if self.se is not None:
            out["se"] = self.se
            out["ci"] = list(self.ci)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"estimate        {self.estimate:.6f}"]
        if self.se is not None:
            lines.append(f"se              {self.se:.6f}")
            lines.append(f"95% ci          ({self.ci[0]:.6f}, {self.ci[1]:.6f})")
        lines += [
            f"weight family   {self.weight_family}",
            f"cutoffs         alpha1={self.alpha1:g} alpha2={self.alpha2:g} alpha={self.alpha:g}",
            f"epsilon         {self.epsilon:g}",
            f"augmented       {self.augmented}",
            f"n total         {self.n_total}",
            f"n effective     {self.n_effective:.3f}",
            f"n trimmed out   {self.n_trimmed_out}",
            f"bootstrap       b={self.bootstrap_b} ci={self.ci_method} seed={self.seed}",
        ]
        return "\n".join(lines) + "\n"
