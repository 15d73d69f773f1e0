"""Photon statistics of a nondegenerate parametric amplifier whose pump
coupling carries Gaussian fluctuations."""

from importlib.metadata import PackageNotFoundError, version as _version

try:
    __version__ = _version("artifact")
except PackageNotFoundError:  # running from a source tree
    __version__ = "0.1.0"

from .errors import (Accuracy, ConfigError, InputError, NegativeProbability, NoBracket,
                     NonConvergent, ParampError, PrecisionDegradedWarning, TailNotConverged,
                     TruncationOverflow, ZeroMean)
from .model import InputField, PumpConfig, VarianceMode

__all__ = [
    "__version__", "Accuracy", "ConfigError", "InputError", "NegativeProbability",
    "NoBracket", "NonConvergent", "ParampError", "PrecisionDegradedWarning",
    "TailNotConverged", "TruncationOverflow", "ZeroMean", "InputField", "PumpConfig",
    "VarianceMode",
]
