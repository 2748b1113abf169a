"""Shared fixtures and the acceptance-summary terminal hook."""

from __future__ import annotations

import numpy as np
import pytest

from pstrim import Dataset
from pstrim.validation import add_intercept

# one pass/fail line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def make_dataset(n: int = 80, p_cov: int = 2, seed: int = 0, effect: float = 1.5,
                 theta=(0.2, 0.6, -0.4)) -> Dataset:
    """Well-behaved synthetic dataset: logistic treatment, linear outcome."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, p_cov))
    xi = add_intercept(x)
    theta = np.asarray(theta[: p_cov + 1])
    e = 1.0 / (1.0 + np.exp(-(xi @ theta)))
    a = (rng.random(n) < e).astype(float)
    y = effect * a + xi @ np.linspace(1.0, 0.4, p_cov + 1) + rng.standard_normal(n)
    return Dataset(a, y, xi)


@pytest.fixture
def dataset():
    return make_dataset()
