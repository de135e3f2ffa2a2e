"""Exception types shared across the toolkit."""


class SlepkitError(Exception):
    """Base class for toolkit-specific failures."""


class InvalidRegionError(SlepkitError, ValueError):
    """Region geometry is degenerate or self-intersecting."""


class NumericalError(SlepkitError, RuntimeError):
    """An eigensolve or iterative routine failed to converge."""


class ExtensionError(SlepkitError, ValueError):
    """Eigenvalue too small to support a stable Nystrom extension."""


class ConfigurationError(SlepkitError, ValueError):
    """Operator or solver configuration is unusable (e.g. empty masks)."""


class DegenerateNormalizationError(SlepkitError, ValueError):
    """A normalization denominator vanished."""
