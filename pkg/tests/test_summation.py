import math
import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from besselsum.special_fn import BesselDomainError, bessel_j
from besselsum.summation import (
    ConvergenceWarning,
    TruncationPolicy,
    default_policy,
    lemma1_lhs,
    lemma2_sum,
    p_series,
)


def test_p_series_golden(golden):
    for mu, x, ref in golden["p_series"]:
        r = p_series(mu, x)
        assert r.converged and r.route == "series"
        assert abs(r.value - ref) <= 1e-13 * max(1.0, abs(ref)), (mu, x, r.value, ref)


def test_tail_bound_is_small_and_float():
    r = p_series(2, 3.0)
    assert isinstance(r.tail_bound, float)
    assert 0.0 < r.tail_bound < 1e-15


def test_parity_exact_structure():
    for mu in (1, 2, 3):
        for x in (0.7, 4.0, 12.0):
            s = (-1) ** mu
            assert p_series(-mu, x).value == pytest.approx(s * p_series(mu, x).value, rel=1e-12, abs=1e-14)


def test_lemma2_graf_sum():
    for mu in range(0, 6):
        for x in (0.5, 2.0, 10.0):
            assert lemma2_sum(mu, x).value == pytest.approx(1.0 if mu == 0 else 0.0, abs=1e-12)


def test_lemma1_neumann_identity():
    for x in (0.1, 3.0, 50.0):
        assert lemma1_lhs(0, 0, x).value == pytest.approx(1.0, abs=1e-14)


def test_lemma1_golden(golden):
    for nu, mu, x, ref in golden["lemma1"]:
        assert lemma1_lhs(nu, mu, x).value == pytest.approx(ref, abs=1e-14)


def test_policy_invariants():
    with pytest.raises(ValueError):
        TruncationPolicy(abs_floor=0.0)
    with pytest.raises(ValueError):
        TruncationPolicy(n_min=10, n_max=5)
    with pytest.raises(ValueError):
        p_series(1, 20.0, TruncationPolicy(n_min=5))


def test_default_policy_clears_turning_point():
    for mu, x in ((1, 1.0), (-4, 80.0), (10, 150.0)):
        pol = default_policy(mu, x)
        assert pol.n_min >= math.ceil(x) + abs(mu) + 10


def test_hard_cap_warns():
    pol = TruncationPolicy(abs_floor=1e-300, streak=50, n_min=40, n_max=40)
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always")
        r = p_series(1, 5.0, pol)
    assert not r.converged
    assert any(issubclass(w.category, ConvergenceWarning) for w in rec)


def test_domain_errors():
    with pytest.raises(BesselDomainError):
        p_series(1, 0.0)
    with pytest.raises(BesselDomainError):
        p_series(1.5, 1.0)
    with pytest.raises(BesselDomainError):
        p_series(65, 1.0)


def test_tiny_argument_runs():
    r = p_series(1, 1e-9)
    assert math.isfinite(r.value) and abs(r.value) < 1e-6


@settings(max_examples=40, deadline=None)
@given(st.integers(-6, 6), st.floats(0.05, 60.0))
def test_lemma2_property(mu, x):
    assert lemma2_sum(mu, x).value == pytest.approx(1.0 if mu == 0 else 0.0, abs=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 4), st.integers(0, 4), st.floats(0.1, 30.0))
def test_lemma1_brute_force_property(nu, mu, x):
    # compare with a plain loop over bessel_j
    ref = math.fsum((1 if n == 0 else 2) * bessel_j(nu + mu + n, x) * bessel_j(nu + n, x)
                    for n in range(0, 64 - nu - mu))
    assert lemma1_lhs(nu, mu, x).value == pytest.approx(ref, abs=1e-14)
