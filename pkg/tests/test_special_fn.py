import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paramp.errors import InputError
from paramp.special_fn import (SignedLogValue, from_real, laguerre, log_binomial, log_factorial,
                               scaled_laguerre_weight, scaled_laguerre_weights,
                               signed_convolution, signed_logsumexp)


def exact_weight(n, a, lam):
    return sum(Fraction(math.comb(n, k)) * a ** k * lam ** (n - k) / math.factorial(k)
               for k in range(n + 1))


def test_log_factorial_values():
    assert log_factorial(10) == pytest.approx(15.104412573075515, rel=1e-15)
    assert log_factorial(0) == 0.0
    assert log_factorial(200) == pytest.approx(math.lgamma(201.0), rel=1e-15)


def test_log_binomial():
    assert log_binomial(10, 4) == pytest.approx(5.3471075307174687, rel=1e-14)
    with pytest.raises(InputError):
        log_binomial(3, 5)


def test_log_factorial_rejects_negative():
    with pytest.raises(InputError):
        log_factorial(-1)


def test_laguerre_negative_argument_exact():
    # sum_k C(5,k) 3^k / k! = 1249/10
    assert laguerre(5, -3.0) == pytest.approx(124.9, rel=1e-15)


def test_laguerre_low_orders():
    x = 0.7
    assert laguerre(0, x) == 1.0
    assert laguerre(1, x) == pytest.approx(1 - x)
    assert laguerre(2, x) == pytest.approx((x * x - 4 * x + 2) / 2)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 25), num=st.integers(-40, 40), den=st.integers(1, 8))
def test_laguerre_matches_rational_series(n, num, den):
    x = Fraction(num, den)
    exact = sum(Fraction(math.comb(n, k)) * (-x) ** k / math.factorial(k) for k in range(n + 1))
    got = laguerre(n, float(x))
    # for x > 0 the polynomial can sit near a root; compare against the term scale
    scale = sum(Fraction(math.comb(n, k)) * abs(x) ** k / math.factorial(k) for k in range(n + 1))
    assert abs(got - float(exact)) <= 1e-12 * float(scale)


def test_scaled_weight_negative_lambda_exact():
    # 3 terms of mixed sign: exactly -9/125
    w = scaled_laguerre_weight(3, 1.5, -0.3)
    assert w.to_real() == pytest.approx(-0.072, rel=1e-14)
    assert w.sign == -1


@settings(max_examples=80, deadline=None)
@given(n=st.integers(0, 40), a=st.fractions(Fraction(0), Fraction(6), max_denominator=16),
       lam=st.fractions(Fraction(-1, 2), Fraction(3), max_denominator=16))
def test_scaled_weights_match_exact_rational_sum(n, a, lam):
    signs, logs, _ = scaled_laguerre_weights(n, float(a), float(lam))
    for m in range(n + 1):
        exact = exact_weight(m, a, lam)
        got = 0.0 if signs[m] == 0 else float(signs[m]) * math.exp(logs[m])
        # error measured against the sum of absolute terms
        scale = float(exact_weight(m, abs(a), abs(lam)))
        assert abs(got - float(exact)) <= 1e-12 * max(scale, 1e-300)


def test_scaled_weight_small_lambda_limit():
    limit = 2.0 ** 7 / math.factorial(7)
    assert scaled_laguerre_weight(7, 2.0, 0.0).to_real() == pytest.approx(limit, rel=1e-15)
    assert scaled_laguerre_weight(7, 2.0, 1e-9).to_real() == pytest.approx(limit, rel=1e-6)


def test_scaled_weights_reject_negative_a():
    with pytest.raises(InputError):
        scaled_laguerre_weights(3, -1.0, 0.5)


def test_signed_logsumexp_cancels_to_zero():
    terms = [from_real(1.5), from_real(-1.5)]
    assert signed_logsumexp(terms).sign == 0


def test_signed_logsumexp_flags_heavy_cancellation():
    big = 1.0
    tiny = 1e-13
    r = signed_logsumexp([from_real(big + tiny), from_real(-big)])
    assert r.degraded


def test_signed_value_rejects_bad_sign():
    with pytest.raises(InputError):
        SignedLogValue(2, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-1e6, 1e6, allow_nan=False).filter(lambda v: v != 0.0),
                min_size=1, max_size=50), st.randoms())
def test_signed_logsumexp_matches_fsum_and_is_order_free(values, rnd):
    total = math.fsum(values)
    scale = math.fsum(abs(v) for v in values)
    got = signed_logsumexp([from_real(v) for v in values]).to_real()
    assert abs(got - total) <= 1e-12 * scale
    shuffled = list(values)
    rnd.shuffle(shuffled)
    again = signed_logsumexp([from_real(v) for v in shuffled]).to_real()
    assert abs(again - got) <= 1e-12 * scale


def test_signed_convolution_matches_numpy():
    a = np.array([1.0, -2.0, 0.5, 3.0])
    b = np.array([0.25, 1.0, -1.0, 2.0])
    sa, la = np.sign(a).astype(np.int8), np.log(np.abs(a))
    sb, lb = np.sign(b).astype(np.int8), np.log(np.abs(b))
    s, lg, _ = signed_convolution(sa, la, sb, lb, 3)
    got = s * np.exp(lg)
    np.testing.assert_allclose(got, np.convolve(a, b)[:4], rtol=1e-14)
