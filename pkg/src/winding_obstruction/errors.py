"""Exception hierarchy shared by all modules."""


class ObstructionError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(ObstructionError, ValueError):
    pass


class UnsupportedExponent(ObstructionError, ValueError):
    pass


class OutsideLogDomain(ObstructionError, ValueError):
    pass


class NotUnitary(ObstructionError, ValueError):
    pass


class BranchCut(ObstructionError, ValueError):
    """An eigenvalue sits on the negative real axis; the principal log is ambiguous."""


class NoNormalForm(ObstructionError, TypeError):
    """The group model offers no word problem solver (surface groups)."""


class InvalidGenus(ObstructionError, ValueError):
    pass


class NotACycle(ObstructionError, ValueError):
    pass


class NotARelator(ObstructionError, ValueError):
    pass


class PathTooCoarse(ObstructionError, ValueError):
    pass


class EndpointMismatch(ObstructionError, ValueError):
    pass


class DefectTooLarge(ObstructionError, ValueError):
    """A multiplicativity defect left the log domain; n is too small for this pair."""


class AmbiguousBranch(ObstructionError, ValueError):
    pass


class TraceNotPreserved(ObstructionError, ValueError):
    pass


class ConfigError(ObstructionError, ValueError):
    pass


class RouteMismatch(ObstructionError, ArithmeticError):
    """Two evaluations of the same pairing disagree beyond tolerance."""
