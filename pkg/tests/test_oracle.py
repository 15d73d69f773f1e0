import math

import numpy as np
import pytest

from paramp import oracle as orc
from paramp.errors import InputError, TailNotConverged
from paramp.model import InputField, PumpConfig
from paramp.photon_stats import sum_pnd_avg_quadrature


def test_coherent_vector_poisson_mean():
    c, tail = orc.coherent_vector(2.0, 0.4, 40)
    assert tail < 1e-10
    n = np.arange(40)
    assert math.fsum(n * np.abs(c) ** 2) == pytest.approx(4.0, abs=1e-9)


def test_coherent_vector_single_level():
    c, _ = orc.coherent_vector(1.0, 0.0, 20)
    assert abs(c[1]) ** 2 == pytest.approx(math.exp(-1.0), rel=1e-14)


def test_coherent_vector_tail_check():
    with pytest.raises(TailNotConverged):
        orc.coherent_vector(3.0, 0.0, 5)


def test_vacuum_evolution_mean_and_distribution():
    m = orc.measure(orc.evolve_field(1.0, 1.0, InputField(), 0.0))
    assert m.mean1 == pytest.approx(math.sinh(1.0) ** 2, abs=1e-8)
    th2 = math.tanh(1.0) ** 2
    expect = np.where(np.arange(10) % 2 == 0, th2 ** (np.arange(10) // 2), 0.0) / math.cosh(1.0) ** 2
    np.testing.assert_allclose(m.sum_pnd[:10], expect, atol=1e-8)


def test_cross_correlation_matches_closed_form():
    from paramp.moments import cross_corr_fixed

    fld = InputField.symmetric(2.0, 0.5 * math.pi)
    m = orc.measure(orc.evolve_field(1.0, 0.5, fld, 0.0))
    assert m.cross_corr == pytest.approx(cross_corr_fixed(1.0, 0.5, fld, 0.0), rel=1e-8)


def test_backends_agree():
    s = orc.product_state(InputField(1.0, 0.2, 0.5, -1.0), 30)
    a = orc.evolve_two_mode(1.0, 0.4, 0.7, s, method="expm")
    b = orc.evolve_two_mode(1.0, 0.4, 0.7, s, method="ode")
    assert np.max(np.abs(a.amplitudes - b.amplitudes)) < 1e-10


def test_bogoliubov_mean_field():
    fld = InputField(1.2, 0.3, 0.7, -0.9)
    gt, phi = 0.8, 0.6
    out = orc.evolve_two_mode(1.0, gt, phi, orc.product_state(fld, orc.default_dim(1.0, gt, fld, phi)))
    expect = (fld.alpha1 * math.cosh(gt)
              + 1j * fld.alpha2.conjugate() * math.sinh(gt) * complex(math.cos(phi), math.sin(phi)))
    assert abs(orc.mean_annihilation(out, 1) - expect) < 1e-8


def test_many_couplings_match_single_evolutions():
    fld = InputField.symmetric(1.0, 0.5 * math.pi)
    gs = [0.9, 1.0, 1.1]
    many = dict(orc.evolve_field_many(gs, 0.5, fld, 0.0, dim=40))
    for g in gs:
        one = orc.evolve_two_mode(g, 0.5, orc.oracle_pump_phase(0.0), orc.product_state(fld, 40))
        assert np.max(np.abs(many[g].amplitudes - one.amplitudes)) < 1e-12


def test_averaged_fock_distribution_matches_quadrature():
    pump = PumpConfig(g0=1.0, g1=0.4, sigma0=0.1)
    fld = InputField.symmetric(1.0, 0.5 * math.pi)
    fock = orc.averaged_sum_pnd(pump, 0.5, fld, nodes=32)
    quad = sum_pnd_avg_quadrature(pump, 0.5, fld, nodes=32)
    m = min(len(fock), len(quad.probs))
    assert np.max(np.abs(fock[:m] - quad.probs[:m])) < 1e-8


def test_gaussian_moment_generating_function():
    for a, var in ((1.0, 0.5), (2.0, 1.0), (0.5, 4.0)):
        got = orc.gauss_hermite_average(lambda e: math.exp(a * e), var, 64)
        assert got == pytest.approx(math.exp(a * a * var / 2.0), rel=1e-12)


def test_monte_carlo_second_moment():
    mean, se = orc.mc_average(lambda e: e * e, 0.3, 1_000_000, seed=5)
    assert abs(mean - 0.3) < 3 * se


def test_monte_carlo_is_seeded():
    f = lambda e: np.cos(e)  # noqa: E731
    assert orc.mc_average(f, 1.0, 10_000, seed=1) == orc.mc_average(f, 1.0, 10_000, seed=1)


def test_quadrature_rejects_bad_nodes():
    with pytest.raises(InputError):
        orc.gauss_hermite_average(lambda e: e, 1.0, 4)
