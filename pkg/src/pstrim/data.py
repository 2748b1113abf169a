"""Data model for observational studies and CSV ingestion.

A :class:`Dataset` holds a binary treatment vector, a real outcome vector,
and a covariate matrix whose first column is an all-ones intercept (added
at load time). Instances are immutable after construction and safe to
share across threads.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateArmError, ParseError, SchemaError
from .validation import add_intercept, check_matrix, check_vector

__all__ = ["Dataset", "load_csv", "save_csv"]


@dataclass(frozen=True)
class Dataset:
    """An observational study: (treatment, outcome, covariates-with-intercept).

    Attributes
    ----------
    a : ndarray, shape (n,)
        Binary treatment indicators.
    y : ndarray, shape (n,)
        Real outcomes.
    x : ndarray, shape (n, p)
        Covariates; column 0 is the intercept (all ones).
    covariate_names : tuple of str
        One label per column of ``x``.
    """

    a: np.ndarray
    y: np.ndarray
    x: np.ndarray
    covariate_names: tuple = field(default=())

    def __post_init__(self):
        x = check_matrix(self.x, "x")
        y = check_vector(self.y, n=x.shape[0], name="y")
        a = check_vector(self.a, n=x.shape[0], name="a")
        bad = ~((a == 0.0) | (a == 1.0))
        if np.any(bad):
            idx = int(np.nonzero(bad)[0][0])
            raise ParseError(f"treatment must be 0/1; got {a[idx]!r} in row {idx + 1}")
        if a.sum() == 0 or a.sum() == a.shape[0]:
            raise DegenerateArmError(
                f"degenerate treatment arms: {int(a.sum())} treated of {a.shape[0]} units"
            )
        names = tuple(self.covariate_names) or tuple(
            ["intercept"] + [f"x{j}" for j in range(1, x.shape[1])]
        )
        if len(names) != x.shape[1]:
            raise ValueError(f"{len(names)} covariate names for {x.shape[1]} columns")
        # freeze the arrays so shared instances stay immutable
        for arr in (a, y, x):
            arr.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "covariate_names", names)

    @property
    def n(self) -> int:
        return self.x.shape[0]

    @property
    def p(self) -> int:
        return self.x.shape[1]

    def take(self, idx) -> "Dataset":
        """Row subset/resample (used by the bootstrap)."""
        return Dataset(self.a[idx], self.y[idx], self.x[idx], self.covariate_names)


def _parse_cell(text: str, row: int, col: str) -> float:
    text = text.strip()
    if text == "":
        raise ParseError(f"missing value in row {row}, column {col!r}")
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"non-numeric value {text!r} in row {row}, column {col!r}") from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite value {text!r} in row {row}, column {col!r}")
    return value


def load_csv(path, treatment_col: str, outcome_col: str) -> Dataset:
    """Read a comma-delimited, headered CSV into a :class:`Dataset`.

    The named treatment and outcome columns are extracted; every remaining
    column is parsed as a numeric covariate, in file order, and an intercept
    column is prepended. Row order is preserved.

    Raises
    ------
    SchemaError
        If a named column is absent.
    ParseError
        For any missing / non-numeric cell or a non-0/1 treatment value;
        the message names the offending data row (1-based).
    DegenerateArmError
        If every unit is treated or every unit is control.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file, header row required") from None
        header = [h.strip() for h in header]
        for col in (treatment_col, outcome_col):
            if col not in header:
                raise SchemaError(f"{path}: column {col!r} not found (header: {header})")
        if treatment_col == outcome_col:
            raise SchemaError("treatment and outcome must be distinct columns")
        t_idx = header.index(treatment_col)
        y_idx = header.index(outcome_col)
        cov_idx = [j for j in range(len(header)) if j not in (t_idx, y_idx)]

        a_vals, y_vals, rows = [], [], []
        for i, record in enumerate(reader, start=1):
            if len(record) != len(header):
                raise ParseError(f"row {i} has {len(record)} fields, expected {len(header)}")
            a_raw = _parse_cell(record[t_idx], i, treatment_col)
            if a_raw not in (0.0, 1.0):
                raise ParseError(
                    f"treatment must be 0 or 1; got {record[t_idx].strip()!r} in row {i}"
                )
            a_vals.append(a_raw)
            y_vals.append(_parse_cell(record[y_idx], i, outcome_col))
            rows.append([_parse_cell(record[j], i, header[j]) for j in cov_idx])

    if not rows:
        raise SchemaError(f"{path}: no data rows")
    x = add_intercept(np.asarray(rows, dtype=float).reshape(len(rows), len(cov_idx)))
    names = tuple(["intercept"] + [header[j] for j in cov_idx])
    try:
        return Dataset(np.asarray(a_vals), np.asarray(y_vals), x, names)
    except DegenerateArmError:
        raise
    except ValueError as exc:  # non-finite and similar from validation
        raise ParseError(str(exc)) from None


def save_csv(dataset: Dataset, path, treatment_col: str = "a", outcome_col: str = "y") -> None:
    """Write a dataset back to CSV (intercept column dropped).

    Floats are written with ``repr`` so numeric values round-trip exactly
    through :func:`load_csv`.
    """
    cov_names = list(dataset.covariate_names[1:])
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow([treatment_col, outcome_col] + cov_names)
        for i in range(dataset.n):
            row = [repr(int(dataset.a[i])), repr(float(dataset.y[i]))]
            row += [repr(float(v)) for v in dataset.x[i, 1:]]
            writer.writerow(row)
