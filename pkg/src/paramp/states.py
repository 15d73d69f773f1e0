"""The modified squeezed vacuum and the states it is compared with.

Pumping vacuum and keeping only the total-photon-number information
collapses the two modes onto

    |Psi> = (1/cosh x) sum_l tanh(x)^l exp(i l chi) |2l>,     x = g t,

an even state with geometric amplitude decay. Its photon statistics sit
next to the single-mode squeezed vacuum, a single mode of the two-mode
squeezed vacuum (Bose-Einstein), and the dephased "even thermal" mixture.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import eval_genlaguerre

from .errors import InputError, TailNotConverged
from .photon_stats import PhotonDistribution, Source
from .special_fn import _log_factorial_array, laguerre

__all__ = [
    "StateVectorEven",
    "msv_amplitudes",
    "msv_pnd",
    "sv_pnd",
    "tmsv_single_mode_pnd",
    "even_thermal_weights",
    "squared_ratio_trace",
    "msv_wigner",
    "wigner_numeric",
    "wigner_verdict",
    "WignerVerdict",
]


@dataclass
class StateVectorEven:
    """Amplitudes c_{2l}, l = 0..l_max, of an even-only pure state."""

    coeffs: np.ndarray
    gt: float
    chi: float
    tail: float

    @property
    def l_max(self) -> int:
        return len(self.coeffs) - 1

    def fock_vector(self) -> np.ndarray:
        v = np.zeros(2 * len(self.coeffs) - 1, dtype=complex)
        v[::2] = self.coeffs
        return v


def _check(gt: float, n: int, name: str = "n_max") -> None:
    if gt < 0:
        raise InputError("gt must be >= 0")
    if n < 0:
        raise InputError(f"{name} must be >= 0")


def msv_amplitudes(gt: float, chi: float = 0.0, l_max: int = 40) -> StateVectorEven:
    _check(gt, l_max, "l_max")
    l = np.arange(l_max + 1)
    th = math.tanh(gt)
    mag = np.where(l == 0, 1.0, th ** l) / math.cosh(gt)
    coeffs = mag * np.exp(1j * chi * l)
    # sum_{l > l_max} tanh^{2l} / cosh^2 is the geometric remainder tanh^{2(l_max+1)}
    return StateVectorEven(coeffs, gt, chi, th ** (2 * (l_max + 1)))


def msv_pnd(gt: float, n_max: int) -> PhotonDistribution:
    """P(n) = tanh^n / cosh^2 on even n, zero on odd n."""
    _check(gt, n_max)
    n = np.arange(n_max + 1)
    th = math.tanh(gt)
    probs = np.where(n % 2 == 0, np.where(n == 0, 1.0, th ** n) / math.cosh(gt) ** 2, 0.0)
    first = n_max + 1 + (n_max + 1) % 2
    return PhotonDistribution(probs, th ** first, Source.MSV, meta={"gt": gt})


def sv_pnd(gt: float, n_max: int) -> PhotonDistribution:
    """Single-mode squeezed vacuum: P(2l) = (tanh/2)^{2l} (2l)! / (l!^2 cosh)."""
    _check(gt, n_max)
    n = np.arange(n_max + 1)
    l = n // 2
    lf = _log_factorial_array(n_max)
    th = math.tanh(gt)
    if th == 0.0:
        probs = (n == 0).astype(float)
        return PhotonDistribution(probs, 0.0, Source.SQUEEZED_VACUUM, meta={"gt": gt})
    logp = 2 * l * math.log(th / 2.0) + lf[2 * l] - 2 * lf[l] - math.log(math.cosh(gt))
    probs = np.where(n % 2 == 0, np.exp(logp), 0.0)
    # successive even terms shrink by tanh^2 (2l+1)/(2l+2) < tanh^2
    first = n_max + 1 + (n_max + 1) % 2
    lf_hi = _log_factorial_array(first)
    head = math.exp(first * math.log(th / 2.0) + lf_hi[first] - 2 * lf_hi[first // 2]
                    - math.log(math.cosh(gt)))
    return PhotonDistribution(probs, head / (1.0 - th * th), Source.SQUEEZED_VACUUM,
                              meta={"gt": gt})


def tmsv_single_mode_pnd(gt: float, n_max: int) -> PhotonDistribution:
    """Reduced single mode of the two-mode squeezed vacuum (geometric)."""
    _check(gt, n_max)
    n = np.arange(n_max + 1)
    q = math.tanh(gt) ** 2
    probs = np.where(n == 0, 1.0, q ** n) / math.cosh(gt) ** 2
    return PhotonDistribution(probs, q ** (n_max + 1), Source.TMSV_SINGLE_MODE,
                              meta={"gt": gt})


def even_thermal_weights(gt: float, l_max: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Photon numbers 2l, weights (1/(m+1)) (m/(m+1))^l with m = sinh^2(gt), and tail.

    These are the populations left when the phases of the modified squeezed
    vacuum are traced out.
    """
    _check(gt, l_max, "l_max")
    nbar = math.sinh(gt) ** 2
    l = np.arange(l_max + 1)
    ratio = nbar / (nbar + 1.0)
    w = np.where(l == 0, 1.0, ratio ** l) / (nbar + 1.0)
    return 2 * l, w, ratio ** (l_max + 1)


def squared_ratio_trace(gt: float) -> float:
    """Trace of the mixture when the ratio m/(m+1) is raised to 2l instead of l.

    Equals (m+1)/(2m+1), so that form is not a normalized state for gt > 0.
    """
    nbar = math.sinh(gt) ** 2
    return (nbar + 1.0) / (2.0 * nbar + 1.0)


def msv_wigner(gt: float, x, y):
    """Closed-form Wigner function of the even (dephased) state at z = x + i y."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r2 = x * x + y * y
    e2 = math.exp(2.0 * gt)
    w = (np.exp(-gt - 2.0 * r2 / e2) + np.exp(gt - 2.0 * r2 * e2)) / (math.pi * math.cosh(gt))
    return float(w) if w.ndim == 0 else w


def _diag_wigner(pops: np.ndarray, r2: np.ndarray) -> np.ndarray:
    out = np.zeros_like(r2)
    for idx, val in np.ndenumerate(r2):
        terms = [p * (-1) ** n * laguerre(n, 4.0 * val) for n, p in enumerate(pops) if p != 0.0]
        out[idx] = math.fsum(terms)
    return 2.0 / math.pi * np.exp(-2.0 * r2) * out


def _pure_wigner(psi: np.ndarray, z: np.ndarray) -> np.ndarray:
    # W = (2/pi) sum_{m,n} rho_{nm} (-1)^n <m| D(2z) |n>
    dim = len(psi)
    lf = _log_factorial_array(dim)
    rho = np.outer(psi, psi.conj())
    occupied = np.nonzero(np.abs(psi) > 0)[0]
    out = np.zeros(z.shape)
    for idx, zz in np.ndenumerate(z):
        beta = 2.0 * zz
        b2 = abs(beta) ** 2
        total = 0.0 + 0.0j
        for m in occupied:
            for n in occupied:
                if m >= n:
                    d = math.exp(0.5 * (lf[n] - lf[m])) * beta ** (m - n) \
                        * eval_genlaguerre(n, m - n, b2)
                else:
                    d = math.exp(0.5 * (lf[m] - lf[n])) * (-beta.conjugate()) ** (n - m) \
                        * eval_genlaguerre(m, n - m, b2)
                total += rho[n, m] * (-1) ** n * d
        out[idx] = (2.0 / math.pi) * math.exp(-0.5 * b2) * total.real
    return out


def wigner_numeric(state, x, y, fock_cutoff: int | None = None) -> np.ndarray:
    """Wigner function from a Fock-basis description by kernel summation.

    ``state`` is either a 1-d array of complex amplitudes (pure state, full
    kernel) or a :class:`PhotonDistribution`-like object / tuple
    ``(populations, tail)`` describing a diagonal density matrix (Laguerre
    kernel only).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if isinstance(state, StateVectorEven):
        vec, tail = state.fock_vector(), state.tail
        diagonal = False
    elif isinstance(state, PhotonDistribution):
        vec, tail, diagonal = np.asarray(state.probs, dtype=float), state.tail_mass_bound, True
    elif isinstance(state, tuple):
        vec, tail, diagonal = np.asarray(state[0], dtype=float), float(state[1]), True
    else:
        vec = np.asarray(state, dtype=complex)
        tail = max(0.0, 1.0 - float(np.sum(np.abs(vec) ** 2)))
        diagonal = False
    if fock_cutoff is not None:
        vec = vec[: fock_cutoff]
        kept = np.sum(vec) if diagonal else np.sum(np.abs(vec) ** 2)
        tail = max(tail, 1.0 - float(np.real(kept)))
    if tail > 1e-10:
        raise TailNotConverged(f"state tail mass {tail:.3g} beyond the Fock cutoff")
    if diagonal:
        return _diag_wigner(vec, x * x + y * y)
    return _pure_wigner(vec, x + 1j * y)


@dataclass
class WignerVerdict:
    gt: float
    dephased_error: float
    pure_error: float
    matches: str  # "dephased", "pure", "both" or "neither"


def wigner_verdict(gt: float = 1.0, grid: int = 9, extent: float = 2.0,
                   tol: float = 1e-8) -> WignerVerdict:
    """Compare the closed-form Wigner function with both candidate states."""
    xs = np.linspace(-extent, extent, grid)
    xx, yy = np.meshgrid(xs, xs)
    ref = msv_wigner(gt, xx, yy)
    l_max = 8
    while math.tanh(gt) ** (2 * (l_max + 1)) > 1e-13:
        l_max += 8
    pure = msv_amplitudes(gt, 0.0, l_max)
    n, w, tail = even_thermal_weights(gt, l_max)
    pops = np.zeros(2 * l_max + 1)
    pops[n] = w
    e_deph = float(np.max(np.abs(wigner_numeric((pops, tail), xx, yy) - ref)))
    e_pure = float(np.max(np.abs(wigner_numeric(pure, xx, yy) - ref)))
    ok_d, ok_p = e_deph < tol, e_pure < tol
    matches = {(True, True): "both", (True, False): "dephased",
               (False, True): "pure", (False, False): "neither"}[(ok_d, ok_p)]
    return WignerVerdict(gt, e_deph, e_pure, matches)
