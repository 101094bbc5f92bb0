"""Exception types shared across the package."""


class MoccaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(MoccaError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class BackendError(MoccaError, RuntimeError):
    """A compute backend was requested that cannot be provided."""


class DegenerateVarianceError(DomainError):
    """A required variance is zero.

    The circle-integral methods divide by the per-axis standard deviations,
    so a collapsed axis has to be rejected; callers that genuinely want a
    deterministic axis must inflate it with an explicit floor (1e-9 m is a
    reasonable choice) instead of relying on silent regularisation here.
    """
