class AdhmError(Exception):
    """ Base class of every error raised by adhmkit. """


class DimensionError(AdhmError, ValueError):
    """ Raised when the shapes of the operands do not agree. """


class PreconditionError(AdhmError, ValueError):
    """ Raised when an input violates the precondition of an operation.

    Attributes
    ----------
    measured : float
        The measured quantity that violates the precondition (e.g., the norm of a commutator).

    """

    def __init__(self, message: str, measured: float = None):
        super().__init__(message)
        self.measured = measured


class ConfigError(AdhmError, ValueError):
    pass


class DecompositionError(AdhmError, RuntimeError):
    """ Raised when a matrix decomposition fails to reach the requested accuracy. """


class SpectrumSeparationError(DecompositionError):
    """ Raised when the joint spectrum recursion cannot separate a degenerate eigenspace. """
