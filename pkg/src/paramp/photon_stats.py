"""Distribution of the total photon number n = n1 + n2.

Three routes are provided: the exact fixed-coupling distribution, its
Gauss-Hermite average over the coupling fluctuation (the reference for
fluctuating pumps), and a regularized closed form that is only trusted
after comparison with the quadrature result.
"""
from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import (Accuracy, InputError, NegativeProbability, NonConvergent,
                     PrecisionDegradedWarning, TailNotConverged, ZeroMean)
from .model import InputField, PumpConfig, coefficient_set, gamma_set, h_pair, sigma_t
from .oracle import _hermgauss
from .special_fn import _lse_parts, _log_factorial_array, scaled_laguerre_weights, signed_convolution

__all__ = [
    "Source",
    "PhotonDistribution",
    "sum_pnd_fixed",
    "sum_pnd_avg_quadrature",
    "sum_pnd_regularized",
    "distribution_stats",
    "oscillation_profile",
    "poisson_distribution",
    "total_variation",
    "NEG_TOL",
    "AUTO",
]

NEG_TOL = 1e-10
MASS_TARGET = 1e-10
BLOCK = 32
N_CAP = 20000
AUTO = "auto"


class Source(str, enum.Enum):
    FIXED_COUPLING = "fixed_coupling"
    QUADRATURE_AVG = "quadrature_avg"
    REGULARIZED = "regularized_closed_form"
    FOCK_ORACLE = "fock_oracle"
    MSV = "modified_squeezed_vacuum"
    SQUEEZED_VACUUM = "squeezed_vacuum"
    TMSV_SINGLE_MODE = "two_mode_squeezed_single_mode"
    EVEN_THERMAL = "even_thermal"
    POISSON = "poisson"


@dataclass
class PhotonDistribution:
    probs: np.ndarray
    tail_mass_bound: float
    source: Source
    accuracy_flag: Accuracy = Accuracy.FULL
    meta: dict = dc_field(default_factory=dict)

    @property
    def n_max(self) -> int:
        return len(self.probs) - 1

    @property
    def total(self) -> float:
        return math.fsum(self.probs) + self.tail_mass_bound

    def factorial_moment(self, k: int) -> float:
        n = np.arange(len(self.probs), dtype=float)
        fall = np.ones_like(n)
        for j in range(k):
            fall = fall * (n - j)
        return math.fsum(fall * self.probs)


def _as_distribution(probs: np.ndarray, source: Source, degraded: bool,
                     physical: bool = True, **meta) -> PhotonDistribution:
    if physical and np.any(probs < -NEG_TOL):
        n = int(np.argmin(probs))
        raise NegativeProbability(f"P({n}) = {probs[n]:.3g} < -{NEG_TOL:g}")
    tail = max(0.0, 1.0 - math.fsum(probs)) if physical else 0.0
    acc = Accuracy.DEGRADED if degraded else Accuracy.FULL
    return PhotonDistribution(np.asarray(probs, dtype=float), tail, source, acc, meta)


def _fixed_rows(g: float, t: float, fld: InputField, pump_phi: float, n_max: int
                ) -> tuple[np.ndarray, bool]:
    c = coefficient_set(g, t, fld, pump_phi)
    one1, one2 = 1.0 + c.lambda1, 1.0 + c.lambda2
    # (lam/(1+lam))^n L_n(-A/(lam(1+lam))) is the fused weight at scale
    # lam/(1+lam) with coherent part A/(1+lam)^2
    s1, l1, d1 = scaled_laguerre_weights(n_max, c.a1 / one1 ** 2, c.lambda1 / one1)
    s2, l2, d2 = scaled_laguerre_weights(n_max, c.a2 / one2 ** 2, c.lambda2 / one2)
    cs, cl, cd = signed_convolution(s1, l1, s2, l2, n_max)
    log_pref = -c.a1 / one1 - c.a2 / one2 - 2.0 * math.log(math.cosh(g * t))
    probs = np.where(cs != 0, cs * np.exp(cl + log_pref), 0.0)
    return probs, bool(d1.any() or d2.any() or cd.any())


def _initial_support(g: float, t: float, fld: InputField, pump_phi: float) -> int:
    from .moments import factorial_moment_fixed

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", PrecisionDegradedWarning)
        m1 = factorial_moment_fixed(1, g, t, fld, pump_phi)
        m2 = factorial_moment_fixed(2, g, t, fld, pump_phi)
    var = max(m2 + m1 - m1 * m1, 0.0)
    return int(math.ceil(m1 + 25.0 * math.sqrt(var) + BLOCK))


def _auto_rows(g: float, t: float, fld: InputField, pump_phi: float
               ) -> tuple[np.ndarray, bool]:
    n = min(_initial_support(g, t, fld, pump_phi), N_CAP)
    while True:
        probs, deg = _fixed_rows(g, t, fld, pump_phi, n)
        if math.fsum(probs) >= 1.0 - MASS_TARGET:
            return probs, deg
        if n >= N_CAP:
            raise TailNotConverged(f"mass {math.fsum(probs):.12f} at n_max={N_CAP}")
        n = min(n + BLOCK, N_CAP)


def sum_pnd_fixed(g: float, t: float, field: InputField, pump_phi: float,
                  n_max: int | str = AUTO) -> PhotonDistribution:
    """P(n) for a fixed coupling g, n = 0..n_max.

    With ``n_max="auto"`` the support grows in blocks of 32 until the
    captured mass reaches 1 - 1e-10.
    """
    if t < 0:
        raise InputError("t must be >= 0")
    if n_max == AUTO:
        probs, deg = _auto_rows(g, t, field, pump_phi)
    else:
        n = int(n_max)
        if n < 0:
            raise InputError("n_max must be >= 0")
        probs, deg = _fixed_rows(g, t, field, pump_phi, n)
    if deg:
        warnings.warn("photon-number distribution lost more than 12 digits to cancellation",
                      PrecisionDegradedWarning, stacklevel=2)
    return _as_distribution(probs, Source.FIXED_COUPLING, deg, g=g, t=t)


# quadrature nodes whose normalized weight is below this cannot move any
# probability by more than it; they are skipped and their weight is added to
# the tail bound
NODE_WEIGHT_FLOOR = 1e-15


def sum_pnd_avg_quadrature(pump: PumpConfig, t: float, field: InputField,
                           n_max: int | str = AUTO, nodes: int = 64) -> PhotonDistribution:
    """P(n) averaged over eps ~ N(0, sigma(t)) by Gauss-Hermite quadrature.

    With ``n_max="auto"`` every node gets its own converged support and the
    shorter rows are padded with zeros.
    """
    if not 8 <= nodes <= 256:
        raise InputError("nodes must lie in [8, 256]")
    var = sigma_t(pump, t)
    if var == 0.0 or pump.g1 == 0.0:
        d = sum_pnd_fixed(pump.g0, t, field, pump.phi, n_max)
        d.source = Source.QUADRATURE_AVG
        return d
    x, w = _hermgauss(nodes)
    w = w / math.sqrt(math.pi)
    keep = w >= NODE_WEIGHT_FLOOR
    skipped = math.fsum(w[~keep])
    gs = pump.g0 + math.sqrt(2.0 * var) * x[keep] * pump.g1
    rows = []
    degraded = False
    for gi in gs:
        if n_max == AUTO:
            probs, deg = _auto_rows(gi, t, field, pump.phi)
        else:
            probs, deg = _fixed_rows(gi, t, field, pump.phi, int(n_max))
        rows.append(probs)
        degraded |= deg
    acc = np.zeros(max(len(r) for r in rows))
    for wi, r in zip(w[keep], rows):
        acc[: len(r)] += wi * r
    if degraded:
        warnings.warn("averaged distribution lost more than 12 digits to cancellation",
                      PrecisionDegradedWarning, stacklevel=2)
    d = _as_distribution(acc, Source.QUADRATURE_AVG, degraded, t=t, nodes=nodes,
                         skipped_nodes=int((~keep).sum()))
    d.tail_mass_bound = max(d.tail_mass_bound, skipped)
    return d


def _alternating_pair_sums(n: int) -> np.ndarray:
    """B[l1, l2] = sum_l (-1)^l C(n-l, l1) C(l, l2) by the defining sum.

    Kept as a slow reference for :func:`_pair_sum_rows`.
    """
    out = np.zeros((n + 1, n + 1), dtype=object)
    for l in range(n + 1):
        sgn = -1 if l % 2 else 1
        for l1 in range(n - l + 1):
            c1 = math.comb(n - l, l1)
            for l2 in range(l + 1):
                out[l1, l2] += sgn * c1 * math.comb(l, l2)
    return out


def _pair_sum_rows(n_max: int):
    """Yield B(n, ., .) for n = 0..n_max as exact integer arrays.

    The generating function of B(., l1, l2) is
    (-1)^l2 x^(l1+l2) / ((1-x)^(l1+1) (1+x)^(l2+1)), which gives
    B(n, l1, l2) = B(n-1, l1, l2) + B(n-1, l1-1, l2) for l1 >= 1 and
    B(n, 0, l2) = -B(n-1, 0, l2) - B(n-1, 0, l2-1), so each row costs O(n^2).
    """
    size = n_max + 1
    cur = np.zeros((size, size), dtype=object)
    cur[0, 0] = 1
    yield cur
    for n in range(1, size):
        nxt = np.zeros((size, size), dtype=object)
        nxt[1:, :] = cur[1:, :] + cur[:-1, :]
        nxt[0, 1:] = -cur[0, 1:] - cur[0, :-1]
        nxt[0, 0] = 1 if n % 2 == 0 else 0
        cur = nxt
        yield cur


_int_log = np.frompyfunc(lambda b: math.log(abs(b)), 1, 1)


def sum_pnd_regularized(pump: PumpConfig, t: float, field: InputField,
                        n_max: int) -> PhotonDistribution:
    """Regularized closed-form average of P(n) (short-time approximation).

    The divergent l4 series of the expanded average is resummed after
    replacing g1^2 t^2 l4^2 by g1^2 t^2 (l1 + l2 + l3 + 1) l4, giving a
    negative power of 1 + exp(...). The g1-dependent ratio Gamma1 / (g1 t)
    is used in its simplified, g1-free form. The result is an
    approximation under test: negative entries are reported, not rejected.
    """
    n_max = int(n_max)
    if n_max < 0:
        raise InputError("n_max must be >= 0")
    if pump.g0 * t > 1.0:
        warnings.warn("the regularized form assumes a short interaction (g0 t small)",
                      stacklevel=2)
    h1, h2 = h_pair(field, pump.phi)
    var = sigma_t(pump, t)
    gs = gamma_set(pump, t, field)
    e = math.exp(-2.0 * pump.g0 * t)
    gamma1_over = -4.0 * (h1 - h2) * e / (1.0 + e) ** 2
    a = 2.0 * var * (pump.g1 * t) ** 2
    worst = a * (1.0 + gamma1_over + 3.0 * (n_max + 1)) - 2.0 * t * pump.g0
    if max(worst, a * (1.0 + gamma1_over + 3.0) - 2.0 * t * pump.g0) >= 0.0:
        raise NonConvergent("geometric ratio of the resummed series is >= 1; "
                            "outside the short-time regime")
    lh1 = math.log(h1) if h1 > 0 else -math.inf
    lh2 = math.log(h2) if h2 > 0 else -math.inf
    lf = _log_factorial_array(n_max + 1)
    counts_all = np.arange(1, n_max + 2, dtype=float)
    log_ratio = a * (1.0 + gamma1_over + 3.0 * counts_all) - 2.0 * t * pump.g0
    log1p_ratio = np.log1p(np.exp(log_ratio))
    tail_exp = (-2.0 * t * pump.g0 * counts_all - gs.gamma2
                + 0.5 * var * (gs.gamma1 + 2.0 * t * pump.g1 * counts_all) ** 2)
    probs = np.zeros(n_max + 1)
    degraded = False
    for n, bsum in enumerate(_pair_sum_rows(n_max)):
        l1g, l2g = np.nonzero(bsum[: n + 1, : n + 1] != 0)
        keep = l1g + l2g <= n
        if h1 == 0.0:
            keep &= l1g == 0
        if h2 == 0.0:
            keep &= l2g == 0
        l1g, l2g = l1g[keep], l2g[keep]
        if l1g.size == 0:
            continue
        b = bsum[l1g, l2g]
        b_sign = np.where(b > 0, 1, -1).astype(np.int64)
        b_log = _int_log(b).astype(float)
        rest = n - l1g - l2g
        reps = rest + 1
        l1 = np.repeat(l1g, reps)
        l2 = np.repeat(l2g, reps)
        rr = np.repeat(rest, reps)
        starts = np.repeat(np.cumsum(reps) - reps, reps)
        l3 = np.arange(l1.size) - starts
        c = l1 + l2 + l3  # count - 1
        with np.errstate(invalid="ignore"):
            pw1 = np.where(l1 > 0, l1 * lh1, 0.0)
            pw2 = np.where(l2 > 0, l2 * lh2, 0.0)
        logs = (np.repeat(b_log, reps) + lf[rr] - lf[l3] - lf[rr - l3]
                + pw1 + pw2 - lf[l1] - lf[l2]
                + (l1 + l2 + 1) * math.log(4.0)
                - (n + l1 + l2 + 2) * log1p_ratio[c] + tail_exp[c])
        parity = (n - l1 + l3) % 2
        signs = (np.repeat(b_sign, reps) * np.where(parity == 1, -1, 1)).astype(np.int8)
        s, v, deg = _lse_parts(signs, logs)
        probs[n] = 0.0 if s == 0 else s * math.exp(v)
        degraded |= deg
    negative = bool(np.any(probs < -NEG_TOL))
    if negative:
        warnings.warn("regularized distribution has negative entries", stacklevel=2)
    d = _as_distribution(probs, Source.REGULARIZED, degraded or negative, physical=False, t=t)
    d.tail_mass_bound = max(0.0, 1.0 - math.fsum(probs))
    return d


def poisson_distribution(mean: float, n_max: int) -> PhotonDistribution:
    from scipy.stats import poisson

    n = np.arange(n_max + 1)
    probs = poisson.pmf(n, mean)
    return PhotonDistribution(probs, float(poisson.sf(n_max, mean)), Source.POISSON)


def distribution_stats(dist: PhotonDistribution) -> tuple[float, float, float, float]:
    """Mean, variance, Mandel Q and Fano factor of a distribution."""
    p = np.asarray(dist.probs, dtype=float)
    n = np.arange(len(p), dtype=float)
    norm = math.fsum(p)
    mean = math.fsum(n * p) / norm
    if mean <= 0.0:
        raise ZeroMean("distribution is concentrated at n = 0")
    var = math.fsum((n - mean) ** 2 * p) / norm
    return mean, var, (var - mean) / mean, var / mean


def oscillation_profile(dist: PhotonDistribution, plateau_tol: float = 1e-12,
                        zero_tol: float = 1e-9) -> tuple[int, list[tuple[int, int]]]:
    """Number of local maxima and the interior runs of near-zero probability.

    Neighbouring values closer than ``plateau_tol`` are merged into a single
    plateau before maxima are counted; a run of entries below ``zero_tol``
    counts only when nonzero probability lies on both sides.
    """
    p = np.asarray(dist.probs, dtype=float)
    levels = [p[0]]
    for v in p[1:]:
        if abs(v - levels[-1]) > plateau_tol:
            levels.append(v)
    maxima = 0
    for i, v in enumerate(levels):
        left = levels[i - 1] if i > 0 else -math.inf
        right = levels[i + 1] if i + 1 < len(levels) else -math.inf
        if v > left and v > right:
            maxima += 1
    runs = []
    small = p < zero_tol
    i = 0
    while i < len(p):
        if small[i]:
            j = i
            while j < len(p) and small[j]:
                j += 1
            if i > 0 and j < len(p):
                runs.append((i, j - i))
            i = j
        else:
            i += 1
    return maxima, runs


def total_variation(a: PhotonDistribution, b: PhotonDistribution) -> float:
    m = max(len(a.probs), len(b.probs))
    pa = np.zeros(m)
    pb = np.zeros(m)
    pa[: len(a.probs)] = a.probs
    pb[: len(b.probs)] = b.probs
    return 0.5 * float(np.abs(pa - pb).sum()) + 0.5 * abs(a.tail_mass_bound - b.tail_mass_bound)
