"""Exception hierarchy shared by all modules."""


class WMDSError(Exception):
    """Base class for every error raised by the package."""


class InputError(WMDSError, ValueError):
    """Malformed user input (bad matrix, bad tuple, bad JSON ...)."""


class NotSymmetrizable(InputError):
    pass


class NotARoot(WMDSError, KeyError):
    pass


class DepthExceeded(WMDSError):
    """A root needed by an exact formula lies beyond the generated table."""


class InconsistentSpecialization(WMDSError, ValueError):
    pass


class NonpositiveDegreeDirection(WMDSError, ValueError):
    pass


class TruncationError(WMDSError, ValueError):
    """An operation would need coefficients beyond the stored cap."""


class NegativeSupport(WMDSError):
    """A series expected to live in Q_+ has a term outside it."""


class NotCoprime(WMDSError, ValueError):
    pass


class CapExceeded(WMDSError, ValueError):
    pass


class MissingOmegaExponents(WMDSError, ValueError):
    pass


class PoleEncountered(WMDSError, ZeroDivisionError):
    pass


class RegionViolation(WMDSError, ValueError):
    pass


class NonIntegerMultiplicity(WMDSError, ArithmeticError):
    pass
