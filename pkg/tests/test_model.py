import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramp.errors import ConfigError, InputError
from paramp.model import (InputField, PumpConfig, VarianceMode, coefficient_set,
                          config_from_mapping, config_to_mapping, effective_g, gamma_set,
                          h_pair, reduce_angle, sigma_t)


def test_sigma_time_dependent_value():
    pump = PumpConfig(sigma0=0.5, mu=1.0, variance_mode="time_dependent")
    assert sigma_t(pump, 0.5) == pytest.approx(0.19673467014368329, rel=1e-14)


def test_sigma_modes():
    assert sigma_t(PumpConfig(sigma0=0.3, variance_mode="time_independent"), 4.0) == 0.3
    assert sigma_t(PumpConfig(sigma0=0.3, variance_mode="none"), 4.0) == 0.0
    assert sigma_t(PumpConfig(sigma0=0.3), 0.0) == 0.0


def test_sigma_rejects_negative_time():
    with pytest.raises(InputError):
        sigma_t(PumpConfig(), -1.0)


def test_pump_validation():
    with pytest.raises(InputError):
        PumpConfig(sigma0=-0.1)
    with pytest.raises(InputError):
        PumpConfig(mu=0.0)


def test_variance_mode_aliases():
    assert VarianceMode.parse("td") is VarianceMode.TIME_DEPENDENT
    assert VarianceMode.parse("time_independent") is VarianceMode.TIME_INDEPENDENT


def test_vacuum_coefficients():
    c = coefficient_set(1.0, 0.5, InputField(), 0.0)
    assert c.lambda1 == pytest.approx(-0.31606027941427884, rel=1e-14)
    assert c.lambda2 == pytest.approx(0.85914091422952262, rel=1e-14)
    assert c.a1 == 0.0 and c.a2 == 0.0


def test_gamma_values():
    pump = PumpConfig(g0=1.0, g1=0.5)
    # h1 = 2, h2 = 0 comes from |alpha| = 1, psi = pi/2
    fld = InputField.symmetric(1.0, 0.5 * math.pi)
    assert h_pair(fld, 0.0) == pytest.approx((2.0, 0.0))
    g = gamma_set(pump, 0.5, fld)
    assert g.gamma2 == pytest.approx(1.0757656854799805, rel=1e-14)
    assert g.gamma0 == pytest.approx(g.gamma2 + 1.0, rel=1e-15)


def test_effective_coupling():
    assert effective_g(PumpConfig(g0=2.0, g1=0.5), -0.4) == pytest.approx(1.8)


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e4, 1e4, allow_nan=False))
def test_reduce_angle_range(theta):
    r = reduce_angle(theta)
    assert -math.pi < r <= math.pi
    assert math.isclose(math.cos(r), math.cos(theta), abs_tol=1e-9)


@settings(max_examples=60, deadline=None)
@given(gt=st.floats(0.0, 4.0), a1=st.floats(0, 3), a2=st.floats(0, 3),
       p1=st.floats(-3, 3), p2=st.floats(-3, 3), phi=st.floats(-3, 3))
def test_coefficient_identities(gt, a1, a2, p1, p2, phi):
    c = coefficient_set(1.0, gt, InputField(a1, p1, a2, p2), phi)
    assert (1 + c.lambda1) * (1 + c.lambda2) == pytest.approx(math.cosh(gt) ** 2, rel=1e-12)
    assert c.h1 + c.h2 == pytest.approx(a1 * a1 + a2 * a2, rel=1e-12, abs=1e-12)
    assert c.h1 >= 0 and c.h2 >= 0


def test_config_round_trip():
    pump = PumpConfig(g0=1.5, g1=0.2, sigma0=0.1, mu=2.0, phi=0.3,
                      variance_mode=VarianceMode.TIME_INDEPENDENT)
    fld = InputField(1.0, 0.5, 2.0, -0.5)
    again = config_from_mapping(config_to_mapping(pump, fld))
    assert again == (pump, fld)


def test_config_rejects_unknown_and_non_numeric():
    with pytest.raises(ConfigError):
        config_from_mapping({"gee": 1})
    with pytest.raises(ConfigError):
        config_from_mapping({"g0": "fast"})
