"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: ConfigError -> 2, DataError -> 3,
DegeneracyError (and subclasses) -> 4.
"""


class SpecBoundsError(Exception):
    """Base class for all package errors."""


class ConfigError(SpecBoundsError):
    """Invalid configuration: bad kernel spec, preset, epsilon grid, flags."""


class DataError(SpecBoundsError):
    """Invalid input data: unreadable files, parse failures, bad labels."""


class ParseError(DataError):
    """A file failed to parse; message names the offending line."""


class DegeneracyError(SpecBoundsError):
    """A numerical precondition of a bound failed (degenerate spectrum etc.)."""


class DegenerateGapError(DegeneracyError):
    """A spectral gap required by a bound is below tolerance."""


class SingularCovarianceError(DegeneracyError):
    """Sample covariance is singular to tolerance; whitening undefined."""


class ValidityConditionError(DegeneracyError):
    """Perturbation too large for the first-order eigenvector expansion."""
