"""Exception hierarchy shared by all modules."""


class DegpartError(Exception):
    """Base class for every error raised by this package."""


class ParseError(DegpartError):
    pass


class NotConnected(DegpartError):
    pass


class SizeGuardExceeded(DegpartError):
    pass


class GenerationFailed(DegpartError):
    pass


class BadParameter(DegpartError):
    pass


class HypothesisNotMet(DegpartError):
    """The degree targets are too small for the requested mode."""


class WitnessMissing(DegpartError):
    """A permissible family failed to produce a required witness vertex."""


class InvariantViolation(DegpartError):
    """An internal invariant of the partition engine broke.

    ``trace`` carries the move log up to the failure when available.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class NoEscape(InvariantViolation):
    pass


class ChainOverflow(InvariantViolation):
    pass


class NotCliqueFree(DegpartError):
    pass


class NotTriangleFree(NotCliqueFree):
    pass
