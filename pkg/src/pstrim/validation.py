"""Input validation helpers shared by the data model and the estimator API."""

from __future__ import annotations

import numpy as np

from .errors import DegenerateArmError


def check_matrix(x, name: str = "x") -> np.ndarray:
    """Coerce to a 2-d float array with finite entries."""
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={arr.ndim}")
    if arr.shape[0] == 0 or arr.shape[1] == 0:
        raise ValueError(f"{name} must be non-empty, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_vector(y, n: int | None = None, name: str = "y") -> np.ndarray:
    """Coerce to a finite 1-d float array, optionally of length ``n``."""
    arr = np.asarray(y, dtype=float).ravel()
    if n is not None and arr.shape[0] != n:
        raise ValueError(f"{name} has length {arr.shape[0]}, expected {n}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return arr


def check_treatment(a, n: int | None = None, name: str = "treatment") -> np.ndarray:
    """Coerce to a 0/1 float vector and require both arms to be populated."""
    arr = check_vector(a, n=n, name=name)
    bad = ~((arr == 0.0) | (arr == 1.0))
    if np.any(bad):
        idx = int(np.nonzero(bad)[0][0])
        raise ValueError(f"{name} must be binary 0/1; offending entry at index {idx}: {arr[idx]!r}")
    if arr.sum() == 0 or arr.sum() == arr.shape[0]:
        raise DegenerateArmError(
            f"{name} has all units in one arm ({int(arr.sum())} of {arr.shape[0]} treated)"
        )
    return arr


def add_intercept(x: np.ndarray) -> np.ndarray:
    """Prepend an all-ones column."""
    return np.column_stack([np.ones(x.shape[0]), x])
