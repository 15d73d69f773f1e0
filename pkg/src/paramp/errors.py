"""Exception types and the accuracy annotation shared across modules."""
import enum


class Accuracy(str, enum.Enum):
    FULL = "Full"
    DEGRADED = "Degraded"


class ParampError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class InputError(ParampError, ValueError):
    pass


class ZeroMean(ParampError):
    pass


class NoBracket(ParampError):
    pass


class NegativeProbability(ParampError):
    pass


class NonConvergent(ParampError):
    pass


class TailNotConverged(ParampError):
    pass


class TruncationOverflow(ParampError):
    pass


class ConfigError(ParampError):
    """Malformed or unknown configuration; the CLI maps this to exit status 2."""


class PrecisionDegradedWarning(UserWarning):
    """A cancelling sum lost more than 12 significant digits."""
