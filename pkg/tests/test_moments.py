import math

import numpy as np
import pytest

from paramp import moments as mo
from paramp import oracle as orc
from paramp.errors import ZeroMean
from paramp.model import InputField, PumpConfig, VarianceMode

HALF_PI = 0.5 * math.pi


def test_vacuum_means():
    vac = InputField()
    assert mo.mean_w1_fixed(1.0, 1.0, vac, 0.0) == pytest.approx(1.3810978455418157, rel=1e-14)
    assert mo.mean_w_sum(1.0, 1.0, vac, 0.0) == pytest.approx(2.7621956910836315, rel=1e-14)


def test_coherent_sum_mean():
    # e^{-1} * 8 + cosh(1) - 1
    fld = InputField.symmetric(2.0, HALF_PI)
    assert mo.mean_w_sum(1.0, 0.5, fld, 0.0) == pytest.approx(3.4861161641867824, rel=1e-14)


def test_vacuum_cross_correlation_and_k():
    vac = InputField()
    assert mo.cross_corr_fixed(1.0, 0.5, vac, 0.0) == pytest.approx(0.34527446138545393, rel=1e-14)
    k = mo.normalized_k(PumpConfig(), 0.5, vac, mo.Averaging.FIXED).normalized
    assert k == pytest.approx(4.6826943768311693, rel=1e-13)


def test_covariance_vanishes_at_threshold():
    thr = mo.anticorrelation_threshold(1.0, 0.5)
    assert thr == pytest.approx(0.89366213546638043, rel=1e-14)
    fld = InputField.symmetric(thr, HALF_PI)
    assert abs(mo.cross_corr_fixed(1.0, 0.5, fld, 0.0)) < 1e-9


def test_threshold_second_point():
    assert mo.anticorrelation_threshold(1.5, 0.5) == pytest.approx(1.5445685855275118, rel=1e-14)


def test_k_negative_beyond_threshold():
    fld = InputField.symmetric(1.5, HALF_PI)
    assert mo.normalized_k(PumpConfig(), 0.5, fld, mo.Averaging.FIXED).normalized < 0


def test_zero_time_vacuum_raises():
    with pytest.raises(ZeroMean):
        mo.normalized_k(PumpConfig(), 0.0, InputField(), mo.Averaging.FIXED)


def test_averaged_correlation_matches_quadrature():
    pump = PumpConfig(g0=1.0, g1=0.6, sigma0=0.1, mu=1.0)
    fld = InputField()
    var = mo.sigma_t(pump, 0.5)
    quad = orc.gauss_hermite_average(
        lambda e: mo.cross_corr_fixed(1.0 + 0.6 * e, 0.5, fld, 0.0), var, 64)
    assert mo.cross_corr_avg(pump, 0.5, fld) == pytest.approx(quad, rel=1e-10)


def test_first_averaged_moment_closed_value():
    # cosh(2 g0 t) <e^{2 eps g1 t}> - 1 with variance sigma(t)
    pump = PumpConfig(g0=1.0, g1=0.4, sigma0=0.1, mu=1.0)
    m1 = mo.factorial_moment_avg(1, pump, 0.5, InputField())
    assert m1 == pytest.approx(0.54794552689695892, rel=1e-12)


def test_factorial_moment_matches_fock_oracle():
    fld = InputField.symmetric(2.0, HALF_PI)
    m = orc.measure(orc.evolve_field(1.0, 0.5, fld, 0.0))
    assert mo.factorial_moment_fixed(5, 1.0, 0.5, fld, 0.0) == pytest.approx(m.fact_moments[5],
                                                                             rel=1e-6)


def test_reduced_second_moment_vacuum_vs_oracle():
    m = orc.measure(orc.evolve_field(1.0, 0.5, InputField(), 0.0))
    oracle = m.fact_moments[2] / m.fact_moments[1] ** 2 - 1.0
    got = mo.reduced_factorial_moment(2, PumpConfig(), 0.5, InputField(), mo.Averaging.FIXED)
    assert got == pytest.approx(oracle, abs=1e-8)


def test_k1_reduced_moment_is_zero():
    pump = PumpConfig(g0=1.0, g1=0.4, sigma0=0.1)
    fld = InputField.symmetric(2.0, HALF_PI)
    assert abs(mo.reduced_factorial_moment(1, pump, 0.5, fld)) < 1e-14


def test_closed_form_moment_matches_quadrature():
    pump = PumpConfig(g0=1.0, g1=0.4, sigma0=0.1, mu=1.0)
    fld = InputField.symmetric(2.0, HALF_PI)
    quad = mo.factorial_moment_avg(5, pump, 0.5, fld)
    closed = mo.factorial_moment_avg(5, pump, 0.5, fld, mo.MomentMethod.CLOSED_FORM)
    assert closed == pytest.approx(quad, rel=1e-8)


def test_optimal_alpha_beyond_threshold():
    a, kmin = mo.optimal_alpha(PumpConfig(), 0.5)
    assert a > mo.anticorrelation_threshold(1.0, 0.5)
    assert kmin < 0
    for step in (-0.05, 0.05):
        fld = InputField.symmetric(a + step, HALF_PI)
        assert mo.normalized_k(PumpConfig(), 0.5, fld, mo.Averaging.FIXED).normalized > kmin


@pytest.mark.parametrize("mode", [VarianceMode.TIME_DEPENDENT, VarianceMode.TIME_INDEPENDENT])
def test_fluctuations_weaken_antibunching(mode):
    fld = InputField.symmetric(4.0, HALF_PI)
    vals = [mo.reduced_factorial_moment(5, PumpConfig(g0=1.0, g1=0.4, sigma0=s, variance_mode=mode),
                                        0.5, fld) for s in (0.0, 0.1, 0.3)]
    assert vals == sorted(vals)


def test_fixed_moment_array_matches_scalar():
    fld = InputField.symmetric(1.0, 0.3)
    gs = np.array([0.8, 1.0, 1.3])
    arr = mo._fixed_moment_array(3, gs, 0.5, fld, 0.0)
    for g, v in zip(gs, arr):
        assert v == pytest.approx(mo.factorial_moment_fixed(3, g, 0.5, fld, 0.0), rel=1e-12)
