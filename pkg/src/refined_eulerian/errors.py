"""Exception types raised across the package."""


class EulerianError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(EulerianError, ValueError):
    pass


class UndefinedDistribution(EulerianError, ValueError):
    """Conditioning on an event of probability zero."""


class DomainError(EulerianError, ValueError):
    """A numeric evaluation point lies outside where the check is meaningful."""


class ResourceLimitError(EulerianError):
    """A computation would exceed a configured size cap."""

    def __init__(self, what, n, cap):
        self.what = what
        self.n = n
        self.cap = cap
        super().__init__(f"{what}: n={n} exceeds cap={cap}")


class ConsistencyError(EulerianError, RuntimeError):
    """Two computations that must agree did not; indicates an arithmetic bug."""
