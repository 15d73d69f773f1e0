"""Stable special-function and signed-series primitives.

Everything that feeds a photon-number formula goes through here: log
factorials, Laguerre polynomials, the fused weight ``lam**n * L_n(-A/lam)``
and a sign-tracking log-sum-exp that reports how many digits a cancelling
sum has thrown away.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import InputError

__all__ = [
    "SignedLogValue",
    "from_real",
    "to_real",
    "log_factorial",
    "log_binomial",
    "laguerre",
    "scaled_laguerre_weight",
    "scaled_laguerre_weights",
    "signed_logsumexp",
    "signed_convolution",
    "LAMBDA_CUTOFF",
    "CANCELLATION_DIGITS",
]

LAMBDA_CUTOFF = 1e-14
CANCELLATION_DIGITS = 12
# a residual below this multiple of machine epsilon (relative to the larger
# group) is rounding noise: the sum is reported as exactly zero
_NOISE_FLOOR = 8.0 * np.finfo(float).eps

_SMALL_N = 32
_LOG_FACT_TABLE = [math.log(math.factorial(n)) for n in range(_SMALL_N)]


@dataclass(frozen=True)
class SignedLogValue:
    """A real number stored as ``sign * exp(log_magnitude)``.

    ``degraded`` is an accuracy annotation: it is set when the value came out
    of a cancelling sum that lost more than ``CANCELLATION_DIGITS`` digits.
    """

    sign: int
    log_magnitude: float = -math.inf
    degraded: bool = field(default=False, compare=False)

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise InputError(f"sign must be -1, 0 or +1, got {self.sign!r}")
        if self.sign == 0:
            object.__setattr__(self, "log_magnitude", -math.inf)

    def to_real(self) -> float:
        return to_real(self)

    @classmethod
    def from_real(cls, x: float) -> "SignedLogValue":
        return from_real(x)

    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(0)


def from_real(x: float) -> SignedLogValue:
    if x == 0:
        return SignedLogValue(0)
    if not math.isfinite(x):
        raise InputError(f"cannot represent non-finite value {x!r}")
    return SignedLogValue(1 if x > 0 else -1, math.log(abs(x)))


def to_real(v: SignedLogValue) -> float:
    if v.sign == 0:
        return 0.0
    return v.sign * math.exp(v.log_magnitude)


def log_factorial(n: int) -> float:
    """ln(n!), exact table for small n and log-gamma above it."""
    n = int(n)
    if n < 0:
        raise InputError(f"log_factorial needs n >= 0, got {n}")
    if n < _SMALL_N:
        return _LOG_FACT_TABLE[n]
    return math.lgamma(n + 1.0)


def _log_factorial_array(n_max: int) -> np.ndarray:
    out = np.empty(n_max + 1)
    small = min(n_max + 1, _SMALL_N)
    out[:small] = _LOG_FACT_TABLE[:small]
    if n_max >= _SMALL_N:
        from scipy.special import gammaln

        out[_SMALL_N:] = gammaln(np.arange(_SMALL_N, n_max + 1) + 1.0)
    return out


def log_binomial(n: int, k: int) -> float:
    n, k = int(n), int(k)
    if k < 0 or n < 0 or k > n:
        raise InputError(f"log_binomial needs 0 <= k <= n, got n={n}, k={k}")
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k)


def _lse_parts(signs: np.ndarray, logs: np.ndarray) -> tuple[int, float, bool]:
    """Signed log-sum-exp of a 1-d set of terms; returns (sign, log, degraded)."""
    mask = signs != 0
    if not mask.any():
        return 0, -math.inf, False
    s = signs[mask]
    lg = logs[mask]
    top = lg.max()
    scaled = np.exp(lg - top)
    pos = math.fsum(scaled[s > 0])
    neg = math.fsum(scaled[s < 0])
    big = max(pos, neg)
    diff = pos - neg
    if abs(diff) <= _NOISE_FLOOR * big:
        return 0, -math.inf, False
    degraded = abs(diff) < 10.0 ** (-CANCELLATION_DIGITS) * big
    return (1 if diff > 0 else -1), top + math.log(abs(diff)), degraded


def signed_logsumexp(terms: Iterable[SignedLogValue]) -> SignedLogValue:
    """Sum signed log-domain terms.

    The largest magnitude is factored out, the positive and negative groups
    are summed separately with ``math.fsum`` and subtracted once at the end.
    """
    terms = list(terms)
    if not terms:
        return SignedLogValue(0)
    signs = np.array([t.sign for t in terms], dtype=np.int8)
    logs = np.array([t.log_magnitude for t in terms], dtype=float)
    sign, lg, degraded = _lse_parts(signs, logs)
    degraded = degraded or any(t.degraded for t in terms)
    return SignedLogValue(sign, lg, degraded)


def laguerre(n: int, x: float) -> float:
    """Laguerre polynomial L_n(x).

    For x <= 0 every term of sum_k C(n,k) (-x)^k / k! is nonnegative and the
    sum is done in the log domain. For x > 0 the three-term recurrence is used.
    """
    n = int(n)
    if n < 0:
        raise InputError(f"laguerre needs n >= 0, got {n}")
    x = float(x)
    if n == 0:
        return 1.0
    if x == 0.0:
        return 1.0
    if x < 0.0:
        k = np.arange(n + 1)
        lf = _log_factorial_array(n)
        logs = lf[n] - lf[k] - lf[n - k] + k * math.log(-x) - lf[k]
        top = logs.max()
        return math.exp(top) * math.fsum(np.exp(logs - top))
    prev, cur = 1.0, 1.0 - x
    for k in range(1, n):
        nxt = math.fsum(((2 * k + 1) * cur, -x * cur, -k * prev)) / (k + 1)
        prev, cur = cur, nxt
    return cur


def _weight_terms(m: int, log_a: float, log_lam: float, lam_sign: int,
                  lf: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(m + 1)
    logs = lf[m] - lf[k] - lf[m - k] + k * log_a - lf[k] + (m - k) * log_lam
    signs = np.where((m - k) % 2 == 1, lam_sign, 1).astype(np.int8)
    return signs, logs


def scaled_laguerre_weight(n: int, A: float, lam: float) -> SignedLogValue:
    """lam**n * L_n(-A/lam) = sum_k C(n,k) A^k lam^(n-k) / k!, sign-tracked.

    For |lam| < LAMBDA_CUTOFF the lam -> 0 limit A**n / n! is returned.
    """
    signs, logs, degraded = scaled_laguerre_weights(n, A, lam)
    return SignedLogValue(int(signs[n]), float(logs[n]), bool(degraded[n]))


def scaled_laguerre_weights(n_max: int, A: float, lam: float
                            ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Weights for every order 0..n_max as (signs, logs, degraded) arrays."""
    n_max = int(n_max)
    if n_max < 0:
        raise InputError(f"order must be >= 0, got {n_max}")
    A = float(A)
    lam = float(lam)
    if A < 0:
        raise InputError(f"coherent part A must be >= 0, got {A}")
    lf = _log_factorial_array(n_max)
    m = np.arange(n_max + 1)
    signs = np.ones(n_max + 1, dtype=np.int8)
    degraded = np.zeros(n_max + 1, dtype=bool)
    if abs(lam) < LAMBDA_CUTOFF:
        if A == 0.0:
            logs = np.full(n_max + 1, -math.inf)
            logs[0] = 0.0
            signs[1:] = 0
            return signs, logs, degraded
        return signs, m * math.log(A) - lf, degraded
    lam_sign = 1 if lam > 0 else -1
    log_lam = math.log(abs(lam))
    if A == 0.0:
        logs = m * log_lam
        if lam_sign < 0:
            signs[m % 2 == 1] = -1
        return signs, logs, degraded
    log_a = math.log(A)
    logs = np.empty(n_max + 1)
    if lam_sign > 0:
        # all terms positive, no cancellation possible
        for j in range(n_max + 1):
            _, lg = _weight_terms(j, log_a, log_lam, 1, lf)
            top = lg.max()
            logs[j] = top + math.log(math.fsum(np.exp(lg - top)))
        return signs, logs, degraded
    # lam < 0: the explicit sum alternates and throws digits away quickly,
    # while the Laguerre recurrence written in the scaled variable,
    # (m+1) w[m+1] = ((2m+1) lam + A) w[m] - m lam^2 w[m-1],
    # stays accurate to a few ulps; rescale to keep it inside double range
    logs[0] = 0.0
    prev, cur, shift = 0.0, 1.0, 0.0
    for j in range(n_max):
        prev, cur = cur, (((2 * j + 1) * lam + A) * cur - j * lam * lam * prev) / (j + 1)
        big = max(abs(cur), abs(prev))
        if big > 1e150 or 0.0 < big < 1e-150:
            shift += math.log(big)
            prev /= big
            cur /= big
        if cur == 0.0:
            signs[j + 1] = 0
            logs[j + 1] = -math.inf
        else:
            signs[j + 1] = 1 if cur > 0 else -1
            logs[j + 1] = shift + math.log(abs(cur))
    return signs, logs, degraded


def signed_convolution(signs1: np.ndarray, logs1: np.ndarray,
                       signs2: np.ndarray, logs2: np.ndarray,
                       n_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """c[n] = sum_l a[n-l] b[l] for n <= n_max, each in sign-tracked log form."""
    out_s = np.zeros(n_max + 1, dtype=np.int8)
    out_l = np.full(n_max + 1, -math.inf)
    out_d = np.zeros(n_max + 1, dtype=bool)
    for n in range(n_max + 1):
        s = signs1[n::-1] * signs2[: n + 1]
        lg = logs1[n::-1] + logs2[: n + 1]
        out_s[n], out_l[n], out_d[n] = _lse_parts(s, lg)
    return out_s, out_l, out_d

