"""Figure data: default parameter sets and the curve generators built on them."""
from __future__ import annotations

import math

import numpy as np

from . import moments as mo
from .model import InputField, PumpConfig, VarianceMode

HALF_PI = 0.5 * math.pi

FIG1 = dict(t=0.5, g0=1.0, mu=1.0, g1=0.6, psi=HALF_PI, sigma0s=(0.1, 0.5), alpha_max=8.0)
FIG2 = dict(t=0.5, g0=1.0, mu=1.0, g1=0.4, psi=HALF_PI, sigma0s=(0.1, 0.3), alpha_max=8.0, k=5)
FIG3 = dict(g0=1e7, mu=1.0, amp=math.sqrt(2.0), psi=HALF_PI, t_max=5e-7)
FIG3_PAIRS = ((1e6, 10.0), (1e7, 1.0), (1e7, 10.0))
FIG4 = dict(t=0.5, g0=2.0, n_max=20)
FIG5 = dict(t=0.5, g0=2.0, extent=3.0, points=121)
FIG6A = dict(t=0.5, psi=HALF_PI, pairs=((1.0, 2.5884), (1.5, 0.87)))
FIG6B = dict(g0=1e4, t=3e-4, g1=0.06, sigma0=0.02, mu=1.0, amp=2.0, psi=HALF_PI)
# desk scale keeps g1, sigma0 and mu but shortens g0 t from 3 to 1.5 so the
# Fock engine fits in a few hundred levels per mode
DESK6B = dict(g0=3.0, t=0.5, g1=0.06, sigma0=0.02, mu=1.0, amp=2.0, psi=HALF_PI)


def _mode_tag(mode: VarianceMode) -> str:
    return "td" if mode is VarianceMode.TIME_DEPENDENT else "ti"


def fig1_curves(alphas: np.ndarray, t: float = 0.5, g0: float = 1.0, g1: float = 0.6,
                mu: float = 1.0, psi: float = HALF_PI,
                sigma0s: tuple[float, ...] = (0.1, 0.5)) -> dict[str, np.ndarray]:
    """K(|alpha|) for the plain amplifier and both fluctuation models."""
    curves = {}
    usual = PumpConfig(g0=g0, g1=g1, sigma0=0.0, mu=mu, variance_mode=VarianceMode.NONE)
    curves["usual"] = np.array([mo.normalized_k(usual, t, InputField.symmetric(a, psi),
                                                mo.Averaging.FIXED).normalized for a in alphas])
    for mode in (VarianceMode.TIME_DEPENDENT, VarianceMode.TIME_INDEPENDENT):
        for s0 in sigma0s:
            pump = PumpConfig(g0=g0, g1=g1, sigma0=s0, mu=mu, variance_mode=mode)
            curves[f"{_mode_tag(mode)}_sigma0_{s0:g}"] = np.array(
                [mo.normalized_k(pump, t, InputField.symmetric(a, psi)).normalized
                 for a in alphas])
    return curves


def fig2_curves(alphas: np.ndarray, k: int = 5, t: float = 0.5, g0: float = 1.0,
                g1: float = 0.4, mu: float = 1.0, psi: float = HALF_PI,
                sigma0s: tuple[float, ...] = (0.1, 0.3), nodes: int = 64,
                closed_form: bool = False) -> dict[str, np.ndarray]:
    """Reduced factorial moment <W^k>/<W>^k - 1 against |alpha|."""
    curves = {}
    usual = PumpConfig(g0=g0, g1=g1, sigma0=0.0, mu=mu, variance_mode=VarianceMode.NONE)

    def reduced(pump, a, averaging):
        if a == 0.0 and t == 0.0:
            return 0.0
        return mo.reduced_factorial_moment(k, pump, t, InputField.symmetric(a, psi),
                                           averaging, nodes=nodes)

    curves["usual"] = np.array([reduced(usual, a, mo.Averaging.FIXED) for a in alphas])
    for mode in (VarianceMode.TIME_DEPENDENT, VarianceMode.TIME_INDEPENDENT):
        for s0 in sigma0s:
            pump = PumpConfig(g0=g0, g1=g1, sigma0=s0, mu=mu, variance_mode=mode)
            curves[f"{_mode_tag(mode)}_sigma0_{s0:g}"] = np.array(
                [reduced(pump, a, mo.Averaging.AVERAGED) for a in alphas])
            if closed_form:
                vals = []
                for a in alphas:
                    fld = InputField.symmetric(a, psi)
                    num = mo.factorial_moment_closed_form(k, pump, t, fld)
                    den = mo.factorial_moment_closed_form(1, pump, t, fld)
                    vals.append(num / den ** k - 1.0)
                curves[f"{_mode_tag(mode)}_sigma0_{s0:g}_expanded_sum"] = np.array(vals)
    return curves


def fig3_curves(ts: np.ndarray, g0: float = 1e7, amp: float = math.sqrt(2.0), mu: float = 1.0,
                psi: float = HALF_PI,
                pairs: tuple[tuple[float, float], ...] = FIG3_PAIRS) -> dict[str, np.ndarray]:
    """K(t) on the short time scale; K -> 0 as t -> 0+ is used at t = 0."""
    curves = {}
    fld = InputField.symmetric(amp, psi)
    usual = PumpConfig(g0=g0, mu=mu, variance_mode=VarianceMode.NONE)

    def series(pump, averaging):
        return np.array([0.0 if t == 0.0 else mo.normalized_k(pump, t, fld, averaging).normalized
                         for t in ts])

    curves["usual"] = series(usual, mo.Averaging.FIXED)
    for mode in (VarianceMode.TIME_DEPENDENT, VarianceMode.TIME_INDEPENDENT):
        for g1, s0 in pairs:
            pump = PumpConfig(g0=g0, g1=g1, sigma0=s0, mu=mu, variance_mode=mode)
            curves[f"{_mode_tag(mode)}_g1_{g1:g}_sigma0_{s0:g}"] = series(pump, mo.Averaging.AVERAGED)
    return curves
