"""Exception hierarchy shared by every module of the package."""


class PVSError(Exception):
    """Base class for all errors raised by :mod:`pvs`."""


class MixedFields(PVSError, TypeError):
    """Operands belong to different prime fields."""


class DivisionByZero(PVSError, ZeroDivisionError):
    pass


class DuplicateAbscissa(PVSError, ValueError):
    pass


class InconsistentPoints(PVSError, ValueError):
    """Extra interpolation points do not lie on the interpolated polynomial."""


class DegreeViolation(PVSError, ValueError):
    pass


class DecodingFailure(PVSError):
    """No polynomial of the requested degree lies within decoding capacity."""


class BadThreshold(PVSError, ValueError):
    """Fewer than 3t+1 parties for the requested threshold t."""


class BadChoice(PVSError, ValueError):
    pass


class ConfigError(PVSError, ValueError):
    """Invalid election or scenario configuration."""


class UnequalTallies(PVSError, ValueError):
    """Privacy audit requested over vote assignments with different results."""


class ThresholdExceeded(PVSError, ValueError):
    """More colluding parties than the corruption threshold allows."""
