"""Propensity-score trimming with smooth weights.

Estimation of average treatment effects (overall and on the treated) over
a trimmed target population, with the hard trimming indicator optionally
replaced by a smooth normal-CDF weight so that the whole pipeline —
propensity fit, trimming, outcome regression — can be bootstrapped.
"""

from .att import AlphaSolution, solve_att_alpha
from .bootstrap import BootstrapResult, bootstrap
from .data import Dataset, load_csv, save_csv
from .errors import (CollinearityError, DegenerateArmError, EmptyPopulationError,
                     InsufficientDataError, NoAlphaSolutionError, NonConvergenceError,
                     NumericError, ParseError, PstrimError, SchemaError, SeparationError,
                     UnstableBootstrapError, ValidationError)
from .estimators import PointEstimate, full_pipeline, trimmed_estimate, unit_tau, unit_tau_aug
from .glm import PropensityFit, expit, fit_mle, information, link_derivative, score
from .outcome import OutcomeFit, fit_outcome, predict_outcome
from .report import EstimateReport
from .simulation import (ScenarioConfig, ScenarioRow, b1_epsilon_check, gen_covariates,
                         outcome_effect, propensity_design, run_scenario, simulate_outcome)
from .sklearn_api import TrimmedEffect
from .weights import WeightSpec, phi_eps, smooth_weight_dtheta, weight

__version__ = "0.1.0"

__all__ = [
    "AlphaSolution", "BootstrapResult", "Dataset", "EstimateReport", "OutcomeFit",
    "PointEstimate", "PropensityFit", "ScenarioConfig", "ScenarioRow", "TrimmedEffect",
    "WeightSpec", "b1_epsilon_check", "bootstrap", "expit", "fit_mle", "fit_outcome",
    "full_pipeline", "gen_covariates", "information", "link_derivative", "load_csv",
    "outcome_effect", "phi_eps", "predict_outcome", "propensity_design", "run_scenario",
    "save_csv", "score", "simulate_outcome", "smooth_weight_dtheta", "solve_att_alpha",
    "trimmed_estimate", "unit_tau", "unit_tau_aug", "weight",
    "PstrimError", "ValidationError", "SchemaError", "ParseError", "NumericError",
    "DegenerateArmError", "NonConvergenceError", "SeparationError", "CollinearityError",
    "InsufficientDataError", "EmptyPopulationError", "UnstableBootstrapError",
    "NoAlphaSolutionError",
]
