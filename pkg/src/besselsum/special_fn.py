"""Bessel kernels of integer order, their order derivative, and log-gamma.

All public functions take scalars and refuse arguments outside the range in
which the underlying algorithms keep double-precision accuracy
(``|n| <= ORDER_LIMIT``, ``x <= ARG_LIMIT``).

Algorithms
----------
* J_n: backward (Miller) recurrence normalized with J_0 + 2 sum J_2k = 1.
* Y_0, Y_1: Neumann series in J_n; Y_n for n >= 2 by forward recurrence.
* dJ_nu/dnu at nu = n >= 0: Neumann series

      (log(x/2) - psi(n+1)) J_n - sum_{k>=1} (-1)^k (n+2k)/(k(n+k)) J_{n+2k},

  which stays accurate for n >> x where the finite-sum form
  (pi/2) Y_n + (n!/2) sum_k (x/2)^(k-n) J_k / (k! (n-k)) cancels
  catastrophically. The finite-sum form is kept as
  :func:`order_deriv_j_finite_sum` for cross-checking. Negative orders use
  Jhat_{-m} = (-1)^m (pi Y_m - Jhat_m).
"""
import cmath
import math
from fractions import Fraction

import numpy as np

from . import _backend

ORDER_LIMIT = 64
ARG_LIMIT = 200.0
REAL_ORDER_ARG_LIMIT = 40.0


class BesselDomainError(ValueError):
    """Order or argument outside the supported domain."""


def _check_order(n):
    if int(n) != n:
        raise BesselDomainError(f"order must be an integer, got {n!r}")
    n = int(n)
    if abs(n) > ORDER_LIMIT:
        raise BesselDomainError(f"|order| = {abs(n)} exceeds the order limit {ORDER_LIMIT}")
    return n


def _check_arg(x, positive):
    x = float(x)
    if not math.isfinite(x):
        raise BesselDomainError(f"argument must be finite, got {x!r}")
    if positive and x <= 0.0:
        raise BesselDomainError(f"argument must be > 0, got {x!r}")
    if x < 0.0:
        raise BesselDomainError(f"argument must be >= 0, got {x!r}")
    if x > ARG_LIMIT:
        raise BesselDomainError(f"argument {x!r} exceeds the limit {ARG_LIMIT}")
    return x


def _parity(n):
    return -1.0 if n % 2 else 1.0


def bessel_j(n, x):
    """Bessel function of the first kind J_n(x), integer ``n``."""
    n = _check_order(n)
    x = _check_arg(x, positive=False)
    m = abs(n)
    val = float(_backend.j_table(np.array([x]), m)[0, m])
    return _parity(m) * val if n < 0 else val


def bessel_y(n, x):
    """Bessel function of the second kind Y_n(x), integer ``n``, ``x > 0``."""
    n = _check_order(n)
    x = _check_arg(x, positive=True)
    m = abs(n)
    _, Y, _ = _backend.bessel_tables(np.array([x]), m, ny=m, nh=1)
    val = float(Y[0, m])
    return _parity(m) * val if n < 0 else val


def order_deriv_j(n, x):
    """Derivative of J_nu(x) with respect to the order, at integer nu = n.

    For ``n = 0`` this is exactly ``(pi/2) * bessel_y(0, x)``.
    """
    n = _check_order(n)
    x = _check_arg(x, positive=True)
    m = abs(n)
    _, Y, Jh = _backend.bessel_tables(np.array([x]), m, ny=m, nh=m)
    if n >= 0:
        return float(Jh[0, m])
    return _parity(m) * (math.pi * float(Y[0, m]) - float(Jh[0, m]))


def order_deriv_j_finite_sum(n, x):
    """Order derivative via (pi/2) Y_n + (n!/2) sum_{k<n} (x/2)^(k-n) J_k/(k!(n-k)).

    Well conditioned only while |Y_n| stays moderate, i.e. roughly n <= x.
    """
    n = _check_order(n)
    x = _check_arg(x, positive=True)
    if n < 0:
        raise BesselDomainError("finite-sum form is defined for n >= 0 only")
    J, Y, _ = _backend.bessel_tables(np.array([x]), n, ny=n, nh=1)
    acc = 0.0
    half = 0.5 * x
    for k in range(n):
        acc += math.exp(math.lgamma(n + 1.0) - math.lgamma(k + 1.0) + (k - n) * math.log(half)) \
            * J[0, k] / (n - k)
    return 0.5 * math.pi * float(Y[0, n]) + 0.5 * acc


def _gamma_sign(y):
    # sign of Gamma(y) for non-integer y
    if y > 0.0:
        return 1.0
    return -1.0 if math.ceil(-y) % 2 else 1.0


def bessel_j_real_order(nu, x):
    """J_nu(x) for real order by the ascending power series.

    The alternating partial sum is accumulated in exact rational arithmetic
    (the float inputs are exact binary fractions), so the cancellation that
    costs ~0.43 x decimal digits in floating point does not occur. Only the
    prefactor (x/2)^nu / Gamma(nu+1) is evaluated in floating point.
    Restricted to 0 <= x <= 40.
    """
    nu = float(nu)
    x = float(x)
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise BesselDomainError("order and argument must be finite")
    if abs(nu) > ORDER_LIMIT:
        raise BesselDomainError(f"|order| = {abs(nu)} exceeds the order limit {ORDER_LIMIT}")
    if x < 0.0 or x > REAL_ORDER_ARG_LIMIT:
        raise BesselDomainError(f"series route needs 0 <= x <= {REAL_ORDER_ARG_LIMIT}, got {x!r}")
    if nu == int(nu):
        n = int(nu)
        if n < 0:
            return _parity(-n) * bessel_j_real_order(-nu, x)
    if x == 0.0:
        if nu == 0.0:
            return 1.0
        if nu > 0.0:
            return 0.0
        return math.inf

    # sum_k (-q)^k / (k! (nu+1)_k), q = x^2/4
    q = Fraction(x) ** 2 / 4
    a = Fraction(nu) + 1
    term = Fraction(1)
    total = Fraction(1)
    k = 0
    while True:
        k += 1
        term = -term * q / (k * (a + (k - 1)))
        total += term
        if k > x and abs(float(term)) < 1e-20 * abs(float(total)):
            break
    y = nu + 1.0
    if y <= 0.0 and y == math.floor(y):  # pragma: no cover - handled above
        return 0.0
    log_pref = nu * math.log(0.5 * x) - math.lgamma(y)
    return _gamma_sign(y) * math.exp(log_pref) * float(total)


def log_gamma_complex(z):
    """Principal branch of log Gamma(z) for complex ``z``.

    Stirling series (12 Bernoulli terms) after shifting Re z >= 7, and the
    reflection formula with the branch correction of Hare (1997) for
    Re z < 0.1. On the negative real axis the limit from Im z -> 0+ is
    returned.
    """
    z = complex(z)
    if not (cmath.isfinite(z)):
        raise ValueError(f"log_gamma_complex needs a finite argument, got {z!r}")
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise ValueError(f"Gamma has a pole at {z!r}")
    return complex(_backend.loggamma(np.array([z]))[0])
