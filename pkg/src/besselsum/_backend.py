"""Kernel backend selection.

The numba kernels are used unless ``BESSELSUM_NO_JIT`` is set to a truthy
value or numba cannot be imported, in which case the vectorized numpy
kernels take over. The choice is made once, at import time.
"""
import math
import os

import numpy as np

from . import _kernels_numpy

_FLAG = os.environ.get("BESSELSUM_NO_JIT", "").strip().lower()

if _FLAG in ("1", "true", "yes", "on"):
    _impl = _kernels_numpy
    BACKEND = "numpy"
else:
    try:
        from . import _kernels_numba as _impl
        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is a declared dependency
        _impl = _kernels_numpy
        BACKEND = "numpy"


def start_order(xmax, nmax):
    """Starting order for the backward recurrence.

    Past the turning point n ~ x the Bessel functions decay on the Airy
    scale x**(1/3); 12 such widths plus a fixed margin put the start far
    enough out that J_start / J_n is below double precision for every
    order that is read back.
    """
    xmax = max(float(xmax), 0.0)
    n = max(int(nmax), int(math.ceil(xmax))) + int(math.ceil(12.0 * xmax ** (1.0 / 3.0))) + 40
    return n + (n % 2)


def bessel_tables(xs, nj, ny=1, nh=1):
    """J (orders 0..>=nj), Y (0..ny) and order-derivative (0..nh) tables."""
    xs = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    nstart = start_order(xs.max() if xs.size else 0.0, max(nj, nh))
    return _impl.bessel_tables(xs, nstart, int(ny), int(nh))


def j_table(xs, nj):
    xs = np.ascontiguousarray(xs, dtype=np.float64).ravel()
    nstart = start_order(xs.max() if xs.size else 0.0, nj)
    return _impl.j_table(xs, nstart)


def compensated_sum(terms):
    return float(_impl.compensated_sum(np.ascontiguousarray(terms, dtype=np.float64)))


def loggamma(z):
    z = np.ascontiguousarray(np.atleast_1d(z), dtype=np.complex128).ravel()
    return _impl.loggamma(z)


def meijer_integrand(s, a, b, m, n, logz):
    s = np.ascontiguousarray(s, dtype=np.complex128).ravel()
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    return _impl.meijer_integrand(s, a, b, int(m), int(n), float(logz))
