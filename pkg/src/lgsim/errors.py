"""Exception types raised across the package."""


class LGSimError(Exception):
    """Base class for every error raised by lgsim."""


class InvalidArgumentError(LGSimError, ValueError):
    pass


class DegenerateCollapseError(LGSimError):
    """Projection onto an outcome whose probability is (numerically) zero."""


class NumericalConsistencyError(LGSimError):
    """A computed quantity left its admissible range by more than rounding."""


class BracketFailureError(LGSimError):
    """Root search bracket does not contain a sign change."""
