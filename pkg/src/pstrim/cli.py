"""Command-line interface: estimate, simulate, att-alpha, weight-curves.

Machine output is JSON (estimate, att-alpha) or CSV (simulate,
weight-curves); ``--pretty`` switches to aligned text. Exit codes: 0 on
success, 2 on validation errors (bad files, columns, flags; a
machine-readable error JSON goes to stderr), 3 on numeric failures
(separation, empty trimmed population, unstable bootstrap).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .att import solve_att_alpha
from .bootstrap import bootstrap
from .data import load_csv
from .errors import NumericError, ValidationError
from .estimators import full_pipeline
from .glm import fit_mle
from .report import EstimateReport
from .simulation import (OUTCOME_DESIGNS, PROPENSITY_DESIGNS, ScenarioConfig, run_scenario,
                         scenario_table_csv, scenario_table_text)
from .weights import FAMILIES, WeightSpec, weight

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERIC = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pstrim",
        description="Trimmed/smooth-weighted treatment-effect estimation and simulation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate an effect from a CSV dataset")
    est.add_argument("--data", required=True, help="CSV file with a header row")
    est.add_argument("--treatment", required=True, help="0/1 treatment column name")
    est.add_argument("--outcome", required=True, help="outcome column name")
    est.add_argument("--weight", default="smooth", choices=FAMILIES)
    est.add_argument("--alpha1", type=float, default=0.1)
    est.add_argument("--alpha2", type=float, default=0.9)
    est.add_argument("--alpha", type=float, default=0.1, help="ATT cutoff on 1-e")
    est.add_argument("--epsilon", type=float, default=1e-4)
    est.add_argument("--augmented", action="store_true")
    est.add_argument("--bootstrap", type=int, default=0, metavar="B")
    est.add_argument("--seed", type=int, default=0)
    est.add_argument("--ci", default="normal", choices=("normal", "percentile"))
    est.add_argument("--pretty", action="store_true")

    sim = sub.add_parser("simulate", help="run a Monte Carlo scenario")
    sim.add_argument("--design", required=True, help=f"one of {','.join(PROPENSITY_DESIGNS)}")
    sim.add_argument("--outcome", required=True, help=f"one of {','.join(OUTCOME_DESIGNS)}")
    sim.add_argument("--n", type=int, default=500)
    sim.add_argument("--reps", type=int, default=1000)
    sim.add_argument("--bootstrap", type=int, default=100, metavar="B")
    sim.add_argument("--epsilon-grid", default="1e-4,1e-5",
                     help="comma-separated smoothing scales; empty to skip smooth variants")
    sim.add_argument("--alpha1", type=float, default=0.1)
    sim.add_argument("--alpha2", type=float, default=0.9)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--out", help="write CSV here instead of stdout")
    sim.add_argument("--pretty", action="store_true")

    att = sub.add_parser("att-alpha", help="solve the optimal ATT trimming cutoff")
    att.add_argument("--data", required=True)
    att.add_argument("--treatment", required=True)
    att.add_argument("--outcome", help="optional outcome column to exclude from covariates")
    att.add_argument("--pretty", action="store_true")

    wc = sub.add_parser("weight-curves", help="emit weight-function curves as CSV")
    wc.add_argument("--alpha1", type=float, default=0.1)
    wc.add_argument("--alpha2", type=float, default=0.9)
    wc.add_argument("--alpha", type=float, default=0.1)
    wc.add_argument("--epsilon-grid", default="1e-4,1e-3")
    wc.add_argument("--points", type=int, default=999)
    wc.add_argument("--out", help="write CSV here instead of stdout")
    return parser


def _parse_grid(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(float(tok) for tok in text.split(","))
    except ValueError:
        raise ValidationError(f"bad epsilon grid {text!r}; expected comma-separated floats") from None


def _cmd_estimate(args) -> int:
    spec = WeightSpec(family=args.weight, alpha1=args.alpha1, alpha2=args.alpha2,
                      alpha=args.alpha, epsilon=args.epsilon)
    if args.bootstrap < 0:
        raise ValidationError(f"bootstrap count must be >= 0, got {args.bootstrap}")
    if args.seed < 0:
        raise ValidationError(f"seed must be >= 0, got {args.seed}")
    dataset = load_csv(args.data, args.treatment, args.outcome)
    point = full_pipeline(dataset, spec, augmented=args.augmented)
    boot = None
    if args.bootstrap > 0:
        boot = bootstrap(dataset, spec, augmented=args.augmented, b=args.bootstrap,
                         seed=args.seed, ci_method=args.ci)
    report = EstimateReport.build(point, spec, args.augmented, args.bootstrap,
                                  args.seed, args.ci, boot)
    sys.stdout.write(report.to_text() if args.pretty else report.to_json())
    return EXIT_OK


def _cmd_simulate(args) -> int:
    if args.design not in PROPENSITY_DESIGNS:
        raise ValidationError(f"unknown design {args.design!r}; choose from {PROPENSITY_DESIGNS}")
    if args.outcome not in OUTCOME_DESIGNS:
        raise ValidationError(f"unknown outcome {args.outcome!r}; choose from {OUTCOME_DESIGNS}")
    config = ScenarioConfig(
        propensity_design=args.design, outcome_design=args.outcome, n=args.n,
        reps=args.reps, bootstrap_b=args.bootstrap, epsilon_grid=_parse_grid(args.epsilon_grid),
        alpha1=args.alpha1, alpha2=args.alpha2, seed=args.seed,
    )
    rows = run_scenario(config)
    csv_text = scenario_table_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
    if args.pretty:
        sys.stdout.write(scenario_table_text(rows))
    elif not args.out:
        sys.stdout.write(csv_text)
    return EXIT_OK


def _cmd_att_alpha(args) -> int:
    # outcome column is irrelevant to the cutoff; fold it into the ignored
    # columns by loading it as the outcome when provided
    header_probe = open(args.data, encoding="utf-8").readline().strip().split(",")
    outcome = args.outcome
    if outcome is None:
        candidates = [c for c in header_probe if c.strip() != args.treatment]
        if not candidates:
            raise ValidationError("dataset needs at least one non-treatment column")
        outcome = candidates[0].strip()
    dataset = load_csv(args.data, args.treatment, outcome)
    fit = fit_mle(dataset)
    solution = solve_att_alpha(fit.scores)
    payload = {
        "alpha": solution.alpha,
        "retained_fraction": solution.retained_fraction,
        "residual": solution.residual,
        "n_total": dataset.n,
    }
    if args.pretty:
        sys.stdout.write(
            f"alpha              {solution.alpha:.6f}\n"
            f"retained fraction  {solution.retained_fraction:.4f}\n"
            f"residual           {solution.residual:.3e}\n"
        )
    else:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _cmd_weight_curves(args) -> int:
    eps_grid = _parse_grid(args.epsilon_grid)
    e = np.linspace(0.0, 1.0, args.points + 2)[1:-1]
    cols = {"e": e}
    cols["indicator"] = weight(WeightSpec("indicator", alpha1=args.alpha1, alpha2=args.alpha2), e)
    for eps in eps_grid:
        cols[f"smooth_eps={eps:g}"] = weight(
            WeightSpec("smooth", alpha1=args.alpha1, alpha2=args.alpha2, epsilon=eps), e)
    cols["overlap"] = weight(WeightSpec("overlap"), e)
    cols["att_indicator"] = weight(WeightSpec("att-indicator", alpha=args.alpha), e)
    for eps in eps_grid:
        cols[f"att_smooth_eps={eps:g}"] = weight(
            WeightSpec("att-smooth", alpha=args.alpha, epsilon=eps), e)
    lines = [",".join(cols.keys())]
    mat = np.column_stack(list(cols.values()))
    lines += [",".join(repr(float(v)) for v in row) for row in mat]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


_COMMANDS = {
    "estimate": _cmd_estimate,
    "simulate": _cmd_simulate,
    "att-alpha": _cmd_att_alpha,
    "weight-curves": _cmd_weight_curves,
}


def _error_json(exc: Exception) -> str:
    return json.dumps({"error": {"type": type(exc).__name__, "message": str(exc)}}) + "\n"


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValidationError, ValueError, OSError) as exc:
        sys.stderr.write(_error_json(exc))
        return EXIT_VALIDATION
    except NumericError as exc:
        sys.stderr.write(_error_json(exc))
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
