"""Pump and input-field parameters and the coefficient algebra built on them.

The coupling is ``g = g0 + eps * g1`` with ``eps`` Gaussian, zero mean and
variance ``sigma(t)``. ``sigma(t)`` is treated as a *variance* throughout.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, fields
from typing import Mapping

from .errors import ConfigError, InputError

__all__ = [
    "VarianceMode",
    "PumpConfig",
    "InputField",
    "CoefficientSet",
    "GammaSet",
    "reduce_angle",
    "psi",
    "sigma_t",
    "coefficient_set",
    "gamma_set",
    "effective_g",
    "config_from_mapping",
    "config_to_mapping",
    "CONFIG_KEYS",
]


class VarianceMode(str, enum.Enum):
    TIME_DEPENDENT = "time_dependent"
    TIME_INDEPENDENT = "time_independent"
    NONE = "none"

    @classmethod
    def parse(cls, value) -> "VarianceMode":
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("-", "_")
        aliases = {"timedependent": "time_dependent", "td": "time_dependent",
                   "timeindependent": "time_independent", "ti": "time_independent",
                   "usual": "none", "fixed": "none"}
        key = aliases.get(key.replace("_", ""), key)
        try:
            return cls(key)
        except ValueError:
            raise ConfigError(f"unknown variance_mode {value!r}") from None


def reduce_angle(theta: float) -> float:
    """Map an angle to (-pi, pi]."""
    r = math.remainder(float(theta), 2.0 * math.pi)
    if r <= -math.pi:
        r += 2.0 * math.pi
    return r


@dataclass(frozen=True)
class PumpConfig:
    g0: float = 1.0
    g1: float = 0.0
    sigma0: float = 0.0
    mu: float = 1.0
    phi: float = 0.0
    variance_mode: VarianceMode = VarianceMode.TIME_DEPENDENT

    def __post_init__(self):
        if self.sigma0 < 0:
            raise InputError(f"sigma0 must be >= 0, got {self.sigma0}")
        if not self.mu > 0:
            raise InputError(f"mu must be > 0, got {self.mu}")
        object.__setattr__(self, "variance_mode", VarianceMode.parse(self.variance_mode))
        object.__setattr__(self, "phi", reduce_angle(self.phi))

    @property
    def perturbative(self) -> bool:
        """True when |g1| sqrt(sigma0) is at most a tenth of |g0|."""
        return abs(self.g1) * math.sqrt(self.sigma0) <= 0.1 * abs(self.g0)

    def check_regime(self) -> list[str]:
        notes = []
        if self.variance_mode is not VarianceMode.NONE and not self.perturbative:
            notes.append(
                f"|g1|*sqrt(sigma0) = {abs(self.g1) * math.sqrt(self.sigma0):.3g} is not small "
                f"against |g0| = {abs(self.g0):.3g}; outside the perturbative regime")
        return notes

    def replace(self, **changes) -> "PumpConfig":
        values = {f.name: getattr(self, f.name) for f in fields(self)}
        values.update(changes)
        return PumpConfig(**values)


@dataclass(frozen=True)
class InputField:
    """Coherent input amplitudes and phases of signal (1) and idler (2)."""

    amp1: float = 0.0
    phase1: float = 0.0
    amp2: float = 0.0
    phase2: float = 0.0

    def __post_init__(self):
        if self.amp1 < 0 or self.amp2 < 0:
            raise InputError("coherent amplitudes must be nonnegative")
        object.__setattr__(self, "phase1", reduce_angle(self.phase1))
        object.__setattr__(self, "phase2", reduce_angle(self.phase2))

    @classmethod
    def symmetric(cls, amp: float, psi: float, pump_phi: float = 0.0) -> "InputField":
        """Equal amplitudes with the signal phase chosen to give mismatch ``psi``."""
        return cls(amp1=amp, phase1=psi + pump_phi, amp2=amp, phase2=0.0)

    @property
    def alpha1(self) -> complex:
        return self.amp1 * complex(math.cos(self.phase1), math.sin(self.phase1))

    @property
    def alpha2(self) -> complex:
        return self.amp2 * complex(math.cos(self.phase2), math.sin(self.phase2))

    @property
    def total_intensity(self) -> float:
        return self.amp1 ** 2 + self.amp2 ** 2


def psi(field: InputField, pump_phi: float) -> float:
    """Phase mismatch phase1 + phase2 - phi, reduced to (-pi, pi]."""
    return reduce_angle(field.phase1 + field.phase2 - pump_phi)


def _sin_psi(field: InputField, pump_phi: float) -> float:
    p = psi(field, pump_phi)
    # exact values at the quarter turns keep h1/h2 free of 1e-17 residue
    if p == 0.5 * math.pi:
        return 1.0
    if p == -0.5 * math.pi:
        return -1.0
    return math.sin(p)


@dataclass(frozen=True)
class CoefficientSet:
    lambda1: float
    lambda2: float
    a1: float
    a2: float
    h1: float
    h2: float


@dataclass(frozen=True)
class GammaSet:
    gamma1: float
    gamma2: float
    gamma0: float
    gamma: float


def sigma_t(pump: PumpConfig, t: float) -> float:
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    mode = pump.variance_mode
    if mode is VarianceMode.NONE:
        return 0.0
    if mode is VarianceMode.TIME_INDEPENDENT:
        return pump.sigma0
    return pump.sigma0 * -math.expm1(-pump.mu * t)


def h_pair(field: InputField, pump_phi: float) -> tuple[float, float]:
    s = field.total_intensity
    cross = 2.0 * field.amp1 * field.amp2 * _sin_psi(field, pump_phi)
    # clamp the rounding residue of (|a1| - |a2|)^2 at equal amplitudes
    return max(0.5 * (s + cross), 0.0), max(0.5 * (s - cross), 0.0)


def coefficient_set(g: float, t: float, field: InputField, pump_phi: float) -> CoefficientSet:
    """Chaotic (lambda) and coherent (A) parts of the two effective modes of W."""
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    x = 2.0 * g * t
    h1, h2 = h_pair(field, pump_phi)
    return CoefficientSet(
        lambda1=0.5 * math.expm1(-x),
        lambda2=0.5 * math.expm1(x),
        a1=h1 * math.exp(-x),
        a2=h2 * math.exp(x),
        h1=h1,
        h2=h2,
    )


def gamma_set(pump: PumpConfig, t: float, field: InputField,
              indices: tuple[int, int, int, int] = (0, 0, 0, 0)) -> GammaSet:
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")
    if any(i < 0 for i in indices):
        raise InputError("summation indices must be >= 0")
    h1, h2 = h_pair(field, pump.phi)
    e = math.exp(-2.0 * pump.g0 * t)
    gamma1 = -4.0 * (h1 - h2) * t * pump.g1 * e / (1.0 + e) ** 2
    gamma2 = 2.0 * h1 - 2.0 * (h1 - h2) / (1.0 + e)
    count = sum(indices) + 1
    return GammaSet(
        gamma1=gamma1,
        gamma2=gamma2,
        gamma0=gamma2 + 2.0 * pump.g0 * t * count,
        gamma=gamma1 + 2.0 * pump.g1 * t * count,
    )


def effective_g(pump: PumpConfig, eps: float) -> float:
    return pump.g0 + eps * pump.g1


CONFIG_KEYS = ("g0", "g1", "sigma0", "mu", "phi", "amp1", "phase1", "amp2",
               "phase2", "variance_mode")


def config_from_mapping(values: Mapping[str, object]) -> tuple[PumpConfig, InputField]:
    """Build parameters from flat key/value pairs; unknown keys are an error."""
    unknown = set(values) - set(CONFIG_KEYS)
    if unknown:
        raise ConfigError(f"unknown parameter keys: {sorted(unknown)}")
    try:
        nums = {k: float(v) for k, v in values.items() if k != "variance_mode"}
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"non-numeric parameter value: {exc}") from None
    pump_kw = {k: nums[k] for k in ("g0", "g1", "sigma0", "mu", "phi") if k in nums}
    if "variance_mode" in values:
        pump_kw["variance_mode"] = VarianceMode.parse(values["variance_mode"])
    field_kw = {k: nums[k] for k in ("amp1", "phase1", "amp2", "phase2") if k in nums}
    try:
        pump = PumpConfig(**pump_kw)
        fld = InputField(**field_kw)
    except InputError as exc:
        raise ConfigError(str(exc)) from None
    for note in pump.check_regime():
        warnings.warn(note, stacklevel=2)
    return pump, fld


def config_to_mapping(pump: PumpConfig, field: InputField) -> dict[str, object]:
    return {
        "g0": pump.g0, "g1": pump.g1, "sigma0": pump.sigma0, "mu": pump.mu,
        "phi": pump.phi, "amp1": field.amp1, "phase1": field.phase1,
        "amp2": field.amp2, "phase2": field.phase2,
        "variance_mode": pump.variance_mode.value,
    }
