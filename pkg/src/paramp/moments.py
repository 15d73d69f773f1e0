"""Mean photon numbers, mode cross-correlation and factorial moments of the
summed intensity W = W1 + W2, for a fixed coupling and averaged over the
Gaussian coupling fluctuation.

Averaging of closed forms uses <exp(a eps)> = exp(a^2 sigma / 2), applied
termwise to every exponential of g t.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import Accuracy, InputError, NoBracket, PrecisionDegradedWarning, ZeroMean
from .model import InputField, PumpConfig, VarianceMode, coefficient_set, h_pair, sigma_t
from .oracle import gauss_hermite_average
from .special_fn import _lse_parts, log_factorial, scaled_laguerre_weights

__all__ = [
    "Averaging",
    "MomentMethod",
    "CorrelationResult",
    "mean_w1_fixed",
    "mean_w2_fixed",
    "mean_w_sum",
    "mean_w1_avg",
    "mean_w2_avg",
    "cross_corr_fixed",
    "cross_corr_avg",
    "normalized_k",
    "factorial_moment_fixed",
    "factorial_moment_avg",
    "factorial_moment_closed_form",
    "reduced_factorial_moment",
    "anticorrelation_threshold",
    "threshold_by_root",
    "optimal_alpha",
    "claimed_extremum",
]


class Averaging(str, enum.Enum):
    FIXED = "fixed"
    AVERAGED = "averaged"


class MomentMethod(str, enum.Enum):
    QUADRATURE = "quadrature"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CorrelationResult:
    value: float
    normalized: float
    mean_w1: float
    mean_w2: float
    accuracy_flag: Accuracy = Accuracy.FULL


def _sin_psi(field: InputField, pump_phi: float) -> float:
    h1, h2 = h_pair(field, pump_phi)
    ab = field.amp1 * field.amp2
    if ab == 0.0:
        return 0.0
    # recover sin(psi) from h1 - h2 so every module shares one rounding
    return (h1 - h2) / (2.0 * ab)


def _check_t(t: float) -> None:
    if t < 0:
        raise InputError(f"t must be >= 0, got {t}")


def mean_w1_fixed(g: float, t: float, field: InputField, pump_phi: float) -> float:
    """<a1^dag a1> at fixed coupling for coherent inputs."""
    _check_t(t)
    x = g * t
    s2 = math.sinh(x) ** 2
    return (field.amp1 ** 2 * (1.0 + s2) + (field.amp2 ** 2 + 1.0) * s2
            - field.amp1 * field.amp2 * math.sinh(2.0 * x) * _sin_psi(field, pump_phi))


def mean_w2_fixed(g: float, t: float, field: InputField, pump_phi: float) -> float:
    swapped = InputField(field.amp2, field.phase2, field.amp1, field.phase1)
    return mean_w1_fixed(g, t, swapped, pump_phi)


def mean_w_sum(g: float, t: float, field: InputField, pump_phi: float) -> float:
    """<W> = lambda1 + lambda2 + A1 + A2."""
    _check_t(t)
    c = coefficient_set(g, t, field, pump_phi)
    return math.fsum((c.lambda1, c.lambda2, c.a1, c.a2))


def _avg_parts(pump: PumpConfig, t: float, mult: float) -> tuple[float, float, float]:
    """Log of <exp(mult g1 t eps)>, with cosh and sinh of mult g0 t.

    The averaged hyperbolic functions are exp(log_f) times the returned
    cosh/sinh; keeping the factor apart avoids overflow far outside the
    perturbative regime.
    """
    var = sigma_t(pump, t)
    log_f = 0.5 * (mult * pump.g1 * t) ** 2 * var
    x = mult * pump.g0 * t
    return log_f, math.cosh(x), math.sinh(x)


def _scale(value: float, log_f: float) -> float:
    if value == 0.0:
        return 0.0
    try:
        return value * math.exp(log_f)
    except OverflowError:
        return math.copysign(math.inf, value)


def _mean1_scaled(pump: PumpConfig, t: float, field: InputField) -> tuple[float, float]:
    log_f, ch, sh = _avg_parts(pump, t, 2.0)
    e = math.exp(-log_f)
    body = (field.amp1 ** 2 * 0.5 * (ch + e) + (field.amp2 ** 2 + 1.0) * 0.5 * (ch - e)
            - field.amp1 * field.amp2 * sh * _sin_psi(field, pump.phi))
    return body, log_f


def _swap(field: InputField) -> InputField:
    return InputField(field.amp2, field.phase2, field.amp1, field.phase1)


def mean_w1_avg(pump: PumpConfig, t: float, field: InputField) -> float:
    _check_t(t)
    return _scale(*_mean1_scaled(pump, t, field))


def mean_w2_avg(pump: PumpConfig, t: float, field: InputField) -> float:
    return mean_w1_avg(pump, t, _swap(field))


def cross_corr_fixed(g: float, t: float, field: InputField, pump_phi: float) -> float:
    """Normally ordered covariance <:dW1 dW2:> at fixed coupling."""
    _check_t(t)
    x = g * t
    s = field.total_intensity
    return (0.25 * (2.0 * s + 1.0) * math.sinh(2.0 * x) ** 2
            - 0.5 * field.amp1 * field.amp2 * math.sinh(4.0 * x) * _sin_psi(field, pump_phi))


def _cross_scaled(pump: PumpConfig, t: float, field: InputField) -> tuple[float, float]:
    log_f, ch, sh = _avg_parts(pump, t, 4.0)
    s = field.total_intensity
    body = (0.125 * (2.0 * s + 1.0) * (ch - math.exp(-log_f))
            - 0.5 * field.amp1 * field.amp2 * sh * _sin_psi(field, pump.phi))
    return body, log_f


def cross_corr_avg(pump: PumpConfig, t: float, field: InputField) -> float:
    _check_t(t)
    return _scale(*_cross_scaled(pump, t, field))


def normalized_k(pump: PumpConfig, t: float, field: InputField,
                 averaging: Averaging | str = Averaging.AVERAGED) -> CorrelationResult:
    """K = <:dW1 dW2:> / (<W1><W2>).

    ``Averaging.FIXED`` evaluates everything at g = g0; ``AVERAGED`` averages
    numerator and both means over the coupling fluctuation.
    """
    averaging = Averaging(averaging)
    if averaging is Averaging.FIXED or pump.variance_mode is VarianceMode.NONE:
        value = cross_corr_fixed(pump.g0, t, field, pump.phi)
        m1 = mean_w1_fixed(pump.g0, t, field, pump.phi)
        m2 = mean_w2_fixed(pump.g0, t, field, pump.phi)
        if m1 <= 0.0 or m2 <= 0.0:
            raise ZeroMean("a mode mean is zero; K is undefined (use t > 0 or nonzero input)")
        return CorrelationResult(value=value, normalized=value / (m1 * m2),
                                 mean_w1=m1, mean_w2=m2)
    body, log_c = _cross_scaled(pump, t, field)
    b1, log_m = _mean1_scaled(pump, t, field)
    b2, _ = _mean1_scaled(pump, t, _swap(field))
    if b1 <= 0.0 or b2 <= 0.0:
        raise ZeroMean("a mode mean is zero; K is undefined (use t > 0 or nonzero input)")
    return CorrelationResult(
        value=_scale(body, log_c),
        normalized=_scale(body / (b1 * b2), log_c - 2.0 * log_m),
        mean_w1=_scale(b1, log_m),
        mean_w2=_scale(b2, log_m),
    )


def _moment_log(k: int, g: float, t: float, field: InputField, pump_phi: float
                ) -> tuple[int, float, bool]:
    c = coefficient_set(g, t, field, pump_phi)
    s1, l1, d1 = scaled_laguerre_weights(k, c.a1, c.lambda1)
    s2, l2, d2 = scaled_laguerre_weights(k, c.a2, c.lambda2)
    sign, lg, deg = _lse_parts(s1[::-1] * s2, l1[::-1] + l2)
    return sign, lg + log_factorial(k), deg or bool(d1.any() or d2.any())


def factorial_moment_fixed(k: int, g: float, t: float, field: InputField,
                           pump_phi: float) -> float:
    """<W(W-1)...(W-k+1)> at fixed coupling.

    Equals k! * sum_l w1(k-l) w2(l) with w(n) = lam^n L_n(-A/lam) for the
    two effective modes; assembled in the signed log domain.
    """
    k = int(k)
    if k < 1:
        raise InputError("k must be >= 1")
    _check_t(t)
    sign, lg, deg = _moment_log(k, g, t, field, pump_phi)
    if deg:
        warnings.warn(f"factorial moment k={k} lost more than 12 digits to cancellation",
                      PrecisionDegradedWarning, stacklevel=2)
    if sign < 0:
        # the exact value is nonnegative; a negative result is rounding only
        return 0.0
    return 0.0 if sign == 0 else math.exp(lg)


def _fixed_moment_array(k: int, g: np.ndarray, t: float, field: InputField,
                        pump_phi: float) -> np.ndarray:
    """Plain floating-point version vectorized over g, for Monte Carlo use."""
    g = np.asarray(g, dtype=float)
    h1, h2 = h_pair(field, pump_phi)
    x = 2.0 * g * t
    lam1 = 0.5 * np.expm1(-x)
    lam2 = 0.5 * np.expm1(x)
    a1 = h1 * np.exp(-x)
    a2 = h2 * np.exp(x)

    def weights(a, lam):
        out = []
        for n in range(k + 1):
            out.append(sum(math.comb(n, j) * a ** j * lam ** (n - j) / math.factorial(j)
                           for j in range(n + 1)))
        return out

    w1 = weights(a1, lam1)
    w2 = weights(a2, lam2)
    return math.factorial(k) * sum(w1[k - l] * w2[l] for l in range(k + 1))


def factorial_moment_closed_form(k: int, pump: PumpConfig, t: float,
                                 field: InputField) -> float:
    """Fluctuation-averaged factorial moment by the four-fold expanded sum.

    The l-th term is divided by ``(k-l)! l!``. Kept as a
    cross-check of the quadrature route, not as the reference.
    """
    k = int(k)
    if k < 1:
        raise InputError("k must be >= 1")
    h1, h2 = h_pair(field, pump.phi)
    var = sigma_t(pump, t)
    x = 2.0 * pump.g0 * t
    q = 2.0 * var * (pump.g1 * t) ** 2
    lh1 = math.log(h1) if h1 > 0 else None
    lh2 = math.log(h2) if h2 > 0 else None
    signs, logs = [], []
    lf = [log_factorial(i) for i in range(k + 1)]
    for l in range(k + 1):
        for l1 in range(k - l + 1):
            if l1 and lh1 is None:
                continue
            for l2 in range(l + 1):
                if l2 and lh2 is None:
                    continue
                rest = k - l1 - l2
                for l3 in range(rest + 1):
                    m = l - l1 - l3
                    lg = (lf[k] - lf[l] - lf[k - l]
                          + lf[k - l] - lf[l1] - lf[k - l - l1]
                          + lf[l] - lf[l2] - lf[l - l2]
                          + lf[rest] - lf[l3] - lf[rest - l3]
                          + lf[k - l] + lf[l]
                          + (l1 * lh1 if l1 else 0.0) + (l2 * lh2 if l2 else 0.0)
                          - lf[l1] - lf[l2]
                          - rest * math.log(2.0)
                          + x * m + q * m * m)
                    signs.append(-1 if (k + l3 - l - l1) % 2 else 1)
                    logs.append(lg)
    sign, lg, deg = _lse_parts(np.array(signs, dtype=np.int8), np.array(logs))
    if deg:
        warnings.warn("closed-form factorial moment lost more than 12 digits",
                      PrecisionDegradedWarning, stacklevel=2)
    return 0.0 if sign == 0 else sign * math.exp(lg)


def factorial_moment_avg(k: int, pump: PumpConfig, t: float, field: InputField,
                         method: MomentMethod | str = MomentMethod.QUADRATURE,
                         nodes: int = 64) -> float:
    """Factorial moment averaged over eps ~ N(0, sigma(t)).

    Quadrature over the fixed-coupling moment is the reference route.
    """
    method = MomentMethod(method)
    _check_t(t)
    if method is MomentMethod.CLOSED_FORM:
        return factorial_moment_closed_form(k, pump, t, field)
    var = sigma_t(pump, t)
    if var == 0.0 or pump.g1 == 0.0:
        return factorial_moment_fixed(k, pump.g0, t, field, pump.phi)
    return gauss_hermite_average(
        lambda eps: factorial_moment_fixed(k, pump.g0 + eps * pump.g1, t, field, pump.phi),
        var, nodes)


def reduced_factorial_moment(k: int, pump: PumpConfig, t: float, field: InputField,
                             averaging: Averaging | str = Averaging.AVERAGED,
                             nodes: int = 64) -> float:
    """<W^k>/<W>^k - 1; negative values mean antibunching."""
    averaging = Averaging(averaging)
    if averaging is Averaging.FIXED:
        num = factorial_moment_fixed(k, pump.g0, t, field, pump.phi)
        den = factorial_moment_fixed(1, pump.g0, t, field, pump.phi)
    else:
        num = factorial_moment_avg(k, pump, t, field, nodes=nodes)
        den = factorial_moment_avg(1, pump, t, field, nodes=nodes)
    if den <= 0.0:
        raise ZeroMean("<W> is zero; the reduced moment is undefined")
    return num / den ** k - 1.0


def anticorrelation_threshold(g0: float, t: float) -> float:
    """|alpha| at which the fixed-coupling covariance changes sign (psi = pi/2)."""
    if t < 0:
        raise InputError("t must be >= 0")
    x = g0 * t
    return 0.5 * math.exp(x) * math.sqrt(math.sinh(2.0 * x))


def threshold_by_root(g0: float, t: float) -> float:
    """Same threshold found numerically by bracketing the covariance zero."""
    def cov(a):
        return cross_corr_fixed(g0, t, InputField.symmetric(a, 0.5 * math.pi), 0.0)

    hi = 1.0
    while cov(hi) > 0:
        hi *= 2.0
    return brentq(cov, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


def claimed_extremum(g0: float, t: float) -> tuple[float, float]:
    """Closed expressions for the location and value of the strongest anticorrelation.

    :func:`optimal_alpha` finds the same extremum numerically; the two disagree.
    """
    x = g0 * t
    return 0.5 * math.exp(2.0 * x) * math.sinh(4.0 * x), -0.25 * math.exp(4.0 * x) * math.sinh(2.0 * x) ** 2


def optimal_alpha(pump: PumpConfig, t: float, averaging: Averaging | str = Averaging.FIXED,
                  psi: float = 0.5 * math.pi, scan_points: int = 400,
                  tol: float = 1e-8) -> tuple[float, float]:
    """|alpha| (alpha1 = alpha2) minimizing K, and the minimum.

    A coarse scan over [0, 10 * threshold] brackets the minimum, then golden
    section refines it.
    """
    if t <= 0:
        raise InputError("t must be > 0")
    averaging = Averaging(averaging)

    def k_of(a: float) -> float:
        fld = InputField.symmetric(a, psi, pump.phi)
        return normalized_k(pump, t, fld, averaging).normalized

    hi = 10.0 * anticorrelation_threshold(pump.g0, t)
    grid = np.linspace(0.0, hi, scan_points)
    vals = np.array([k_of(a) for a in grid])
    i = int(np.argmin(vals))
    if vals[i] >= 0.0:
        raise NoBracket("K is nonnegative over the whole scanned range")
    if i == 0 or i == scan_points - 1:
        raise NoBracket("minimum lies on the scan boundary")
    res = minimize_scalar(k_of, bracket=(grid[i - 1], grid[i], grid[i + 1]),
                          method="golden", tol=tol)
    return float(res.x), float(res.fun)

