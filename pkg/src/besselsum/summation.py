"""Truncated evaluation of the infinite Bessel sums.

Three sums are provided:

* :func:`p_series` - the sum P_mu(x) = sum_{n>=1} n [ (Jh_{n-mu} J_n + J_{n-mu} Jh_n)
  + (-1)^mu (Jh_{n+mu} J_n + J_{n+mu} Jh_n) ], where Jh is the derivative
  of J with respect to its order;
* :func:`lemma1_lhs` - sum_{n>=0} eps_n J_{nu+mu+n} J_{nu+n} with eps_0 = 1,
  eps_n = 2 otherwise;
* :func:`lemma2_sum` - sum_{n>=1} (J_{n-mu} J_n + (-1)^mu J_{n+mu} J_n)
  + J_{-mu} J_0, which equals 1 for mu = 0 and 0 otherwise.

Past the turning point n ~ x the terms decay super-exponentially, so plain
truncation with a floor-and-streak rule is enough.
"""
import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import _backend
from .special_fn import ORDER_LIMIT, BesselDomainError

EPS = np.finfo(float).eps


class ConvergenceWarning(RuntimeWarning):
    """A truncated series hit its hard cap before the stopping rule fired."""


@dataclass(frozen=True)
class TruncationPolicy:
    """Stopping rule for a truncated Bessel series.

    Stop at the first index ``n >= n_min`` where the last ``streak`` terms
    are all below ``abs_floor * max(1, |partial sum|)``; never go past
    ``n_max``.
    """

    abs_floor: float = 1e-17
    streak: int = 4
    n_min: int = 0
    n_max: int = 10000

    def __post_init__(self):
        if not self.abs_floor > 0.0:
            raise ValueError("abs_floor must be > 0")
        if self.streak < 1:
            raise ValueError("streak must be >= 1")
        if self.n_max < self.n_min:
            raise ValueError("n_max must be >= n_min")

    def check(self, x, mu):
        need = math.ceil(x) + abs(mu) + 10
        if self.n_min < need:
            raise ValueError(f"n_min = {self.n_min} is below ceil(x) + |mu| + 10 = {need}")


def default_policy(mu, x, **overrides):
    """Default stopping rule: n_min = ceil(x + 1.5 x^(1/3)) + |mu| + 10."""
    n_min = math.ceil(x + 1.5 * x ** (1.0 / 3.0)) + abs(int(mu)) + 10
    kw = dict(n_min=n_min)
    kw.update(overrides)
    return TruncationPolicy(**kw)


@dataclass(frozen=True)
class SumResult:
    """Value of P_mu(x) (or one of the auxiliary sums) from one route.

    ``tail_bound`` estimates the error of ``value``: truncation for the
    series route, quadrature/contour error for the others. ``terms_used``
    counts series terms, quadrature panels or contour nodes depending on
    the route.
    """

    value: float
    terms_used: int
    tail_bound: float
    route: str
    converged: bool = True


def _check_inputs(mu, x):
    if int(mu) != mu:
        raise BesselDomainError(f"order must be an integer, got {mu!r}")
    mu = int(mu)
    if abs(mu) > ORDER_LIMIT:
        raise BesselDomainError(f"|mu| = {abs(mu)} exceeds the order limit {ORDER_LIMIT}")
    x = float(x)
    if not (math.isfinite(x) and x > 0.0):
        raise BesselDomainError(f"x must be finite and > 0, got {x!r}")
    return mu, x


class _SignedTables:
    """J and Jhat at integer orders -lo..hi for a single argument."""

    def __init__(self, x, lo, hi):
        J, Y, Jh = _backend.bessel_tables(np.array([x]), hi, ny=max(lo, 1), nh=hi)
        self.lo = lo
        j = J[0, :hi + 1]
        jh = Jh[0, :hi + 1]
        m = np.arange(lo, 0, -1)
        par = np.where(m % 2 == 1, -1.0, 1.0)
        # J_{-m} = (-1)^m J_m, Jh_{-m} = (-1)^m (pi Y_m - Jh_m)
        self.J = np.concatenate([par * j[m], j])
        self.Jh = np.concatenate([par * (np.pi * Y[0, m] - jh[m]), jh])

    def j(self, orders):
        return self.J[orders + self.lo]

    def jh(self, orders):
        return self.Jh[orders + self.lo]


def _truncate(terms, first_index, policy):
    """Index (exclusive) at which the stopping rule fires, or None."""
    partial = np.cumsum(terms)
    small = np.abs(terms) < policy.abs_floor * np.maximum(1.0, np.abs(partial))
    run = 0
    for i, ok in enumerate(small):
        run = run + 1 if ok else 0
        if run >= policy.streak and first_index + i >= policy.n_min:
            return i + 1
    return None


def _run(mu, x, policy, term_fn, first_index, lo_order, hi_extra):
    """Drive a truncated sum, growing the order table until the rule fires."""
    span = max(policy.n_min + 32, 64)
    while True:
        n_hi = min(span, policy.n_max)
        tables = _SignedTables(x, lo_order, n_hi + hi_extra)
        idx = np.arange(first_index, n_hi + 1)
        terms = term_fn(tables, idx)
        stop = _truncate(terms, first_index, policy)
        if stop is not None:
            used = terms[:stop]
            value = _backend.compensated_sum(used)
            tail = float(policy.streak * abs(used[-1]) + EPS * abs(value))
            return SumResult(value, stop, tail, "series", True)
        if n_hi >= policy.n_max:
            value = _backend.compensated_sum(terms)
            warnings.warn(
                f"series did not meet its stopping rule by n_max = {policy.n_max} "
                f"(mu={mu}, x={x})", ConvergenceWarning, stacklevel=3)
            tail = float(max(policy.streak * np.max(np.abs(terms[-policy.streak:])),
                             EPS * abs(value)))
            return SumResult(value, len(terms), tail, "series", False)
        span *= 2


def p_series(mu, x, policy=None):
    """P_mu(x) by direct summation over n = 1..N."""
    mu, x = _check_inputs(mu, x)
    policy = policy or default_policy(mu, x)
    policy.check(x, mu)
    sign = -1.0 if mu % 2 else 1.0
    a = abs(mu)

    def terms(t, n):
        jn, jhn = t.j(n), t.jh(n)
        left = t.jh(n - mu) * jn + t.j(n - mu) * jhn
        right = t.jh(n + mu) * jn + t.j(n + mu) * jhn
        return n * (left + sign * right)

    return _run(mu, x, policy, terms, 1, a, a)


def lemma1_lhs(nu, mu, x, policy=None):
    """sum_{n>=0} eps_n J_{nu+mu+n}(x) J_{nu+n}(x), nu, mu >= 0."""
    if int(nu) != nu or nu < 0 or int(mu) != mu or mu < 0:
        raise BesselDomainError("nu and mu must be non-negative integers")
    nu, mu = int(nu), int(mu)
    _, x = _check_inputs(nu + mu, x)
    policy = policy or default_policy(mu, x)
    policy.check(x, mu)

    def terms(t, n):
        eps = np.where(n == 0, 1.0, 2.0)
        return eps * t.j(nu + mu + n) * t.j(nu + n)

    return _run(mu, x, policy, terms, 0, 0, nu + mu)


def lemma2_sum(mu, x, policy=None):
    """sum_{n>=1} (J_{n-mu} J_n + (-1)^mu J_{n+mu} J_n) + J_{-mu} J_0."""
    mu, x = _check_inputs(mu, x)
    policy = policy or default_policy(mu, x)
    policy.check(x, mu)
    sign = -1.0 if mu % 2 else 1.0
    a = abs(mu)

    def terms(t, n):
        # index 0 carries the J_{-mu} J_0 term
        jn = t.j(n)
        out = t.j(n - mu) * jn + sign * t.j(n + mu) * jn
        out[0] = t.j(np.array([-mu]))[0] * t.j(np.array([0]))[0]
        return out

    return _run(mu, x, policy, terms, 0, a, a)
