from dataclasses import replace

import pytest

from besselsum import quadrature
from besselsum.closed_form import p_closed
from besselsum.meijer_g import (
    ContourError,
    MeijerSpec,
    first_g_spec,
    integrand,
    meijer_g_3024,
    meijer_g_3024_detail,
    p_meijer,
    second_g_spec,
)

SQRT_PI = 1.7724538509055159


def test_conjugate_symmetry():
    spec = first_g_spec(2, 2.0)
    s = spec.contour_sigma + 1.3j
    assert integrand(s, spec) == pytest.approx(integrand(s.conjugate(), spec).conjugate(), abs=1e-13)


def test_golden_first_g(golden):
    for mu, x, ref in golden["meijer_g1"]:
        assert meijer_g_3024(first_g_spec(mu, x)) == pytest.approx(ref, rel=1e-11, abs=1e-15), (mu, x)


def test_golden_second_g(golden):
    for mu, x, ref in golden["meijer_g2"]:
        assert meijer_g_3024(second_g_spec(mu, x)) == pytest.approx(ref, rel=1e-11, abs=1e-15), (mu, x)


def test_result_is_real():
    for mu in (1, 2, 3):
        for x in (0.5, 1.0, 2.0, 5.0):
            d = meijer_g_3024_detail(first_g_spec(mu, x))
            assert d.imag_residual <= 1e-10 * abs(d.value)


def test_contour_independence():
    a = meijer_g_3024(first_g_spec(1, 1.5, sigma_shift=1.0))
    b = meijer_g_3024(first_g_spec(1, 1.5, sigma_shift=2.0))
    assert a == pytest.approx(b, abs=1e-8)


@pytest.mark.parametrize("mu", [1, 2, 3])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0])
def test_node_and_height_doubling(mu, x):
    for build in (first_g_spec, second_g_spec):
        spec = build(mu, x)
        g = meijer_g_3024(spec)
        assert abs(meijer_g_3024(replace(spec, nodes=2 * spec.nodes)) - g) <= 1e-9 * abs(g)
        doubled = replace(spec, contour_height=2 * spec.contour_height, nodes=2 * spec.nodes)
        assert abs(meijer_g_3024(doubled) - g) <= 1e-10


def test_term_identification_with_tail_integrals():
    # int_x^oo f_mu/t dt = -(sqrt(pi)/4) G_1 and the same for 1/t^2 with G_2
    mu, x = 2, 1.0
    i1 = quadrature.integrate_fmu_over_t(mu, x).value
    i2 = quadrature.integrate_fmu_over_t2(mu, x).value
    assert i1 == pytest.approx(-0.25 * SQRT_PI * meijer_g_3024(first_g_spec(mu, x)), rel=1e-12)
    assert i2 == pytest.approx(-0.25 * SQRT_PI * meijer_g_3024(second_g_spec(mu, x)), rel=1e-12)


@pytest.mark.parametrize("mu", [1, 2, 3])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 5.0])
def test_meijer_matches_closed(mu, x):
    m = p_meijer(mu, x)
    assert m.route == "meijer"
    assert m.value == pytest.approx(p_closed(mu, x).value, abs=1e-6)


def test_meijer_parity():
    assert p_meijer(-1, 1.0).value == pytest.approx(-p_meijer(1, 1.0).value, abs=1e-6)


def test_spec_validation():
    with pytest.raises(ContourError):
        MeijerSpec(contour_sigma=-0.5)  # min(b) = -0.5
    with pytest.raises(ContourError):
        MeijerSpec(contour_sigma=-0.52)  # too close to the pole
    with pytest.raises(ValueError):
        MeijerSpec(z=-1.0)
    with pytest.raises(ValueError):
        MeijerSpec(a=(0.5,))


def test_short_contour_detected():
    with pytest.raises(ContourError):
        meijer_g_3024(first_g_spec(1, 20.0, contour_height=3.0))


def test_p_meijer_refusals():
    with pytest.raises(ValueError):
        p_meijer(0, 1.0)
    with pytest.raises(ValueError):
        p_meijer(1, 31.0)
