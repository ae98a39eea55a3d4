class NumericalError(RuntimeError):
    """Base class for failures of a numerical procedure (not bad input)."""


class ConvergenceError(NumericalError):
    pass


class IntegrationError(NumericalError):
    """Raised when a trajectory produces non-finite values."""

    def __init__(self, message, time=None):
        super().__init__(message)
        self.time = time


class AnalysisError(ValueError):
    """A trajectory lacks the feature being measured (no crossing, no beat node)."""
