"""Exception hierarchy.

Validation problems (bad files, bad flags, malformed input) and numeric
failures (separation, empty trimmed population) are kept distinct so the
CLI can map them to different exit codes.
"""


class PstrimError(Exception):
    """Base class for all package errors."""


class ValidationError(PstrimError):
    """Bad user input: files, column names, flag combinations."""


class SchemaError(ValidationError):
    """A required CSV column is missing."""


class ParseError(ValidationError):
    """A CSV cell could not be parsed; the message names the data row."""


class NumericError(PstrimError):
    """A numeric failure during fitting or estimation."""


class DegenerateArmError(NumericError):
    """All units fall in a single treatment arm."""


class NonConvergenceError(NumericError):
    """Newton iteration hit the cap without satisfying the tolerance."""


class SeparationError(NumericError):
    """The propensity MLE diverged (fitted probabilities numerically 0/1)."""


class CollinearityError(NumericError):
    """A design matrix is numerically rank deficient."""


class InsufficientDataError(NumericError):
    """Too few units in an arm to fit the requested model."""


class EmptyPopulationError(NumericError):
    """Every unit received zero weight; the trimmed population is empty."""


class UnstableBootstrapError(NumericError):
    """More than the tolerated share of bootstrap replicates failed."""


class NoAlphaSolutionError(NumericError):
    """The ATT cutoff equation has no solution on (0, 1)."""
