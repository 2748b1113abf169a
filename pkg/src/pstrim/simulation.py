"""Synthetic-data designs, Monte Carlo scenario runner, and the b1 check.

Covariates: (X1, X2, X3) trivariate normal with means 0, variances
(2, 1, 1) and covariances (1, -1, -0.5); X4 ~ Uniform[-3, 3]; X5 ~ chi^2_1;
X6 ~ Bernoulli(0.5); blocks independent. Propensity designs P1-P4 apply
expit to 0.1x or 0.8x a covariate sum that is linear (P1, P2) or has X2, X3
squared (P3, P4). Outcome designs O1 (linear effect) and O2 (squared
effect) add standard normal noise.

The scenario runner fits the propensity by logistic regression on the raw
covariates, so P3/P4 are misspecified by construction, and benchmarks each
replication against the trimmed mean of the true effect over units whose
*true* score lies inside the cutoff window.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field

import numpy as np

from .data import Dataset
from .errors import DegenerateArmError, NumericError, SeparationError
from .estimators import trimmed_estimate
from .glm import expit, fit_mle
from .outcome import fit_outcome
from .validation import add_intercept
from .weights import WeightSpec, _smooth_weight_dtheta_matrix, weight

__all__ = ["SIGMA", "PROPENSITY_DESIGNS", "OUTCOME_DESIGNS", "ScenarioConfig", "ScenarioRow",
           "gen_covariates", "propensity_design", "outcome_effect", "simulate_outcome",
           "design_features", "design_theta", "run_scenario", "b1_epsilon_check",
           "b1_estimate", "scenario_table_csv", "scenario_table_text"]

# covariance of the trivariate normal block; positive definite (det = 0.5)
SIGMA = np.array([[2.0, 1.0, -1.0],
                  [1.0, 1.0, -0.5],
                  [-1.0, -0.5, 1.0]])
_CHOL = np.linalg.cholesky(SIGMA)

PROPENSITY_DESIGNS = ("P1", "P2", "P3", "P4")
OUTCOME_DESIGNS = ("O1", "O2")

_DESIGN_SCALE = {"P1": 0.1, "P2": 0.8, "P3": 0.1, "P4": 0.8}

# share of replications allowed to fail (dropped and counted)
MAX_FAILED_REPS = 0.02


def _stream(*key: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(key)))


def gen_covariates(n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw the six-covariate design matrix, shape (n, 6)."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    z = rng.standard_normal((n, 3)) @ _CHOL.T
    x4 = rng.uniform(-3.0, 3.0, n)
    x5 = rng.chisquare(1.0, n)
    x6 = rng.binomial(1, 0.5, n).astype(float)
    return np.column_stack([z, x4, x5, x6])


def _as_rows(x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    rows = x.reshape(1, -1) if x.ndim == 1 else x
    if rows.shape[1] != 6:
        raise ValueError(f"expected 6 covariates, got {rows.shape[1]}")
    return rows


def design_features(x, design: str) -> np.ndarray:
    """Covariate transform whose linear combination drives the design.

    Raw covariates for P1/P2; X2 and X3 squared for P3/P4.
    """
    rows = _as_rows(x)
    if design in ("P1", "P2"):
        return rows.copy()
    if design in ("P3", "P4"):
        out = rows.copy()
        out[:, 1] = rows[:, 1] ** 2
        out[:, 2] = rows[:, 2] ** 2
        return out
    raise ValueError(f"unknown propensity design {design!r}; choose from {PROPENSITY_DESIGNS}")


def design_theta(design: str) -> np.ndarray:
    """True coefficient vector (intercept first) on the design's features."""
    scale = _DESIGN_SCALE.get(design)
    if scale is None:
        raise ValueError(f"unknown propensity design {design!r}; choose from {PROPENSITY_DESIGNS}")
    return np.concatenate([[0.0], np.full(6, scale)])


def propensity_design(x, design: str):
    """True propensity score(s) under P1-P4 for covariate row(s) x."""
    feats = design_features(x, design)
    e = expit(_DESIGN_SCALE[design] * feats.sum(axis=1))
    return float(e[0]) if np.asarray(x).ndim == 1 else e


def outcome_effect(x, design: str):
    """True conditional effect surface of the outcome design."""
    rows = _as_rows(x)
    if design == "O1":
        g = rows[:, 0] + rows[:, 1] + rows[:, 2] - rows[:, 3] + rows[:, 4] + rows[:, 5]
    elif design == "O2":
        g = (rows[:, 0] + rows[:, 1] + rows[:, 2]) ** 2
    else:
        raise ValueError(f"unknown outcome design {design!r}; choose from {OUTCOME_DESIGNS}")
    return float(g[0]) if np.asarray(x).ndim == 1 else g


def simulate_outcome(x, a, design: str, rng: np.random.Generator):
    """Potential outcome Y(a) = a * effect(x) + eta, eta ~ N(0,1) per call."""
    g = outcome_effect(x, design)
    eta = rng.standard_normal(np.shape(g) or None)
    return g * float(a) + eta if np.ndim(g) else float(g * a + eta)


@dataclass(frozen=True)
class ScenarioConfig:
    """One Monte Carlo scenario: designs, sizes, cutoffs, seeds."""

    propensity_design: str = "P1"
    outcome_design: str = "O1"
    n: int = 500
    reps: int = 1000
    bootstrap_b: int = 100
    epsilon_grid: tuple = (1e-4,)
    alpha1: float = 0.1
    alpha2: float = 0.9
    seed: int = 0

    def __post_init__(self):
        if self.propensity_design not in PROPENSITY_DESIGNS:
            raise ValueError(f"unknown propensity design {self.propensity_design!r}")
        if self.outcome_design not in OUTCOME_DESIGNS:
            raise ValueError(f"unknown outcome design {self.outcome_design!r}")
        if self.n < 50:
            raise ValueError(f"need n >= 50, got {self.n}")
        if self.reps < 1:
            raise ValueError(f"need reps >= 1, got {self.reps}")
        if self.bootstrap_b < 0:
            raise ValueError(f"need bootstrap_b >= 0, got {self.bootstrap_b}")
        # cutoff validity delegated to WeightSpec
        WeightSpec("indicator", alpha1=self.alpha1, alpha2=self.alpha2)
        object.__setattr__(self, "epsilon_grid", tuple(float(e) for e in self.epsilon_grid))


@dataclass(frozen=True)
class ScenarioRow:
    """Aggregated Monte Carlo results for one estimator variant."""

    estimator_label: str
    epsilon: float | None
    mean: float
    var: float
    ve: float | None             # mean bootstrap variance estimate; None if b = 0
    true_tau_O: float


def _variants(config: ScenarioConfig) -> list[tuple[str, float | None, WeightSpec, bool]]:
    indicator = WeightSpec("indicator", alpha1=config.alpha1, alpha2=config.alpha2)
    out = [("ipw", None, indicator, False), ("aipw", None, indicator, True)]
    for eps in config.epsilon_grid:
        smooth = WeightSpec("smooth", alpha1=config.alpha1, alpha2=config.alpha2, epsilon=eps)
        out.append(("ipw", eps, smooth, False))
        out.append(("aipw", eps, smooth, True))
    return out


def _estimate_all(dataset: Dataset, variants) -> np.ndarray:
    pfit = fit_mle(dataset)
    ofit = fit_outcome(dataset) if any(aug for *_, aug in variants) else None
    return np.array([
        trimmed_estimate(dataset, pfit.scores, spec, fit=ofit if aug else None)
        for *_, spec, aug in variants
    ])


def _one_replication(config: ScenarioConfig, rep: int, variants):
    rng = _stream(config.seed, rep)
    x = gen_covariates(config.n, rng)
    e_true = propensity_design(x, config.propensity_design)
    a = (rng.random(config.n) < e_true).astype(float)
    g = outcome_effect(x, config.outcome_design)
    eta = rng.standard_normal(config.n)
    y = np.where(a == 1.0, g + eta, eta)    # Y(1) and Y(0) share one eta per unit

    in_window = (e_true >= config.alpha1) & (e_true <= config.alpha2)
    if not np.any(in_window):
        raise DegenerateArmError("no unit has true score inside the cutoff window")
    tau_o = float(g[in_window].mean())

    dataset = Dataset(a, y, add_intercept(x))
    estimates = _estimate_all(dataset, variants)

    if config.bootstrap_b == 0:
        return tau_o, estimates, None

    boot = np.empty((config.bootstrap_b, len(variants)))
    kept = 0
    for r in range(config.bootstrap_b):
        idx = _stream(config.seed, rep, r).integers(0, config.n, size=config.n)
        try:
            boot[kept] = _estimate_all(dataset.take(idx), variants)
            kept += 1
        except (DegenerateArmError, SeparationError):
            continue
    if kept < 2:
        raise NumericError(f"replication {rep}: fewer than 2 bootstrap replicates survived")
    ve = np.var(boot[:kept], axis=0, ddof=1)
    return tau_o, estimates, ve


def run_scenario(config: ScenarioConfig) -> list[ScenarioRow]:
    """Run the scenario's replications and aggregate per estimator variant.

    Replication ``rep`` draws data from stream (seed, rep); its bootstrap
    replicate ``r`` resamples from stream (seed, rep, r). Replications that
    fail with degenerate-arm or separation errors are dropped and counted,
    capped at 2% of ``reps``.
    """
    variants = _variants(config)
    tau_os, ests, ves = [], [], []
    failed = 0
    for rep in range(config.reps):
        try:
            tau_o, estimates, ve = _one_replication(config, rep, variants)
        except (DegenerateArmError, SeparationError):
            failed += 1
            continue
        tau_os.append(tau_o)
        ests.append(estimates)
        if ve is not None:
            ves.append(ve)
    if failed > MAX_FAILED_REPS * config.reps:
        raise NumericError(
            f"{failed} of {config.reps} replications failed (> {MAX_FAILED_REPS:.0%})"
        )
    if not ests:
        raise NumericError("every replication failed")

    est_mat = np.vstack(ests)
    mean_tau_o = float(np.mean(tau_os))
    means = est_mat.mean(axis=0)
    variances = est_mat.var(axis=0, ddof=1) if est_mat.shape[0] > 1 else np.zeros(len(variants))
    mean_ve = np.mean(np.vstack(ves), axis=0) if ves else None

    rows = []
    for j, (label, eps, _, _) in enumerate(variants):
        rows.append(ScenarioRow(
            estimator_label=label,
            epsilon=eps,
            mean=float(means[j]),
            var=float(variances[j]),
            ve=float(mean_ve[j]) if mean_ve is not None else None,
            true_tau_O=mean_tau_o,
        ))
    return rows


def b1_estimate(features: np.ndarray, theta: np.ndarray, tau: np.ndarray,
                epsilon: float, alpha1: float = 0.1, alpha2: float = 0.9) -> np.ndarray:
    """Sample-average estimate of the support-estimation bias vector.

    Plugs sample means into
        E[ d/dtheta { Ew^{-1} w_eps(X'theta) } tau(X) ],
    where Ew and E[dw/dtheta] are themselves sample averages over the same
    draws. ``features`` must carry the intercept column.
    """
    spec = WeightSpec("smooth", alpha1=alpha1, alpha2=alpha2, epsilon=epsilon)
    w = weight(spec, expit(features @ theta))
    d = _smooth_weight_dtheta_matrix(features, theta, spec)
    wbar = w.mean()
    dbar = d.mean(axis=0)
    term1 = (d * tau[:, None]).mean(axis=0) / wbar
    term2 = dbar * float((w * tau).mean()) / wbar ** 2
    return term1 - term2


def b1_epsilon_check(design: str, epsilons, m: int, seed: int = 0,
                     alpha1: float = 0.1, alpha2: float = 0.9) -> list[tuple[float, float]]:
    """Monte Carlo norms of the b1 vector at each epsilon, common draws.

    Uses the design's true coefficients on its own feature scale and the
    O1 effect surface; the same ``m`` covariate draws are reused across the
    whole epsilon grid.
    """
    if m < 10_000:
        raise ValueError(f"need m >= 10000 draws, got {m}")
    rng = _stream(seed)
    x = gen_covariates(m, rng)
    features = add_intercept(design_features(x, design))
    theta = design_theta(design)
    tau = outcome_effect(x, "O1")
    out = []
    for eps in epsilons:
        vec = b1_estimate(features, theta, tau, float(eps), alpha1, alpha2)
        out.append((float(eps), float(np.linalg.norm(vec))))
    return out


def scenario_table_csv(rows: list[ScenarioRow]) -> str:
    """ScenarioRow table as CSV text."""
    buf = io.StringIO()
    buf.write("estimator,epsilon,mean,var,ve,true_tau_O\n")
    for r in rows:
        eps = "" if r.epsilon is None else repr(r.epsilon)
        ve = "" if r.ve is None else repr(r.ve)
        buf.write(f"{r.estimator_label},{eps},{r.mean!r},{r.var!r},{ve},{r.true_tau_O!r}\n")
    return buf.getvalue()


def scenario_table_text(rows: list[ScenarioRow]) -> str:
    """Aligned text table in the (estimator, epsilon, mean, var, ve) layout."""
    lines = [f"tau(O) = {rows[0].true_tau_O:.4f}" if rows else "tau(O) = n/a",
             f"{'estimator':<12}{'epsilon':>10}{'mean':>10}{'var':>10}{'ve':>10}"]
    for r in rows:
        eps = "-" if r.epsilon is None else f"{r.epsilon:g}"
        ve = "-" if r.ve is None else f"{r.ve:.4f}"
        lines.append(f"{r.estimator_label:<12}{eps:>10}{r.mean:>10.4f}{r.var:>10.4f}{ve:>10}")
    return "\n".join(lines) + "\n"
