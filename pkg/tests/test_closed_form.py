import math

import pytest

from besselsum.closed_form import (
    ClosedFormConfig,
    f_asymptotic,
    f_mu,
    p_asymptotic,
    p_closed,
    p_closed_with_constant,
)
from besselsum.special_fn import bessel_j, bessel_y
from besselsum.summation import p_series


def test_f_mu_parity_and_mu_zero():
    assert f_mu(-3, 2.0) == pytest.approx(-f_mu(3, 2.0), rel=1e-13)
    assert f_mu(0, 1.0) == pytest.approx(0.5 * math.pi * bessel_j(0, 1.0) * bessel_y(0, 1.0), rel=1e-13)


def test_f_mu_leading_asymptote():
    assert abs(f_mu(1, 10.0) - (-math.sin(20.0) / 20.0)) <= 0.01


def test_f_asymptotic_relative_at_extrema():
    # 2x - pi/2 = k pi puts the cosine at +-1
    for k in (31, 32, 33):
        x = 0.5 * (k * math.pi + 0.5 * math.pi)
        fa = f_asymptotic(1, x)
        assert abs(f_mu(1, x) - fa) / abs(fa) <= 0.02


def test_asymptotic_reductions():
    for x in (0.3, 2.0, 17.0):
        assert p_asymptotic(1, x) == pytest.approx(-math.sin(2 * x) / (2 * x), abs=1e-15)
        assert p_asymptotic(2, x) == pytest.approx(-math.cos(2 * x) / (2 * x), abs=1e-15)
        assert x * f_asymptotic(0, x) == pytest.approx(-math.cos(2 * x) / 2, abs=1e-15)
        assert f_asymptotic(-2, x) == pytest.approx(f_asymptotic(2, x), abs=1e-15)
        assert f_asymptotic(-1, x) == pytest.approx(-f_asymptotic(1, x), abs=1e-15)


def test_mu_zero_rejected():
    with pytest.raises(ValueError, match="mu != 0"):
        p_closed(0, 1.0)


@pytest.mark.parametrize("mu", [1, 2, 3, 4])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0, 10.0])
def test_routes_agree(mu, x):
    s = p_series(mu, x)
    c = p_closed(mu, x)
    assert c.route == "closed"
    assert abs(s.value - c.value) <= max(1e-8, s.tail_bound + c.tail_bound)
    # and in practice far tighter
    assert abs(s.value - c.value) <= 1e-12 * max(1.0, abs(s.value))


def test_closed_against_oracle(golden):
    for mu, x, ref in golden["p_series"]:
        assert abs(p_closed(mu, x).value - ref) <= 1e-12 * max(1.0, abs(ref)), (mu, x)


def test_closed_parity():
    assert p_closed(-2, 1.0).value == pytest.approx(p_closed(2, 1.0).value, abs=1e-10)
    assert p_closed(-3, 1.0).value == pytest.approx(-p_closed(3, 1.0).value, abs=1e-10)


def test_large_x_asymptote():
    x = 100.0
    assert abs(x * p_closed(1, x).value - (-math.cos(2 * x - 0.5 * math.pi) / 2)) <= 2.0 / x
    assert abs(p_closed(2, 80.0).value - p_asymptotic(2, 80.0)) <= 2.0 / 80.0 ** 2


def test_nonzero_constant_breaks_agreement():
    x = 50.0
    s = p_series(2, x)
    c0 = p_closed(2, x)
    c1 = p_closed_with_constant(2, x, 1e-6)
    budget = s.tail_bound + c0.tail_bound
    assert abs(c1.value - s.value) >= 10 * budget
    assert ClosedFormConfig().constant_C == 0.0


def test_public_path_keeps_constant_zero():
    with pytest.raises(ValueError):
        p_closed(1, 1.0, ClosedFormConfig(constant_C=1e-3))
