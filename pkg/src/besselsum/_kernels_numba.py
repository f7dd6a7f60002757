"""Loop-level kernels compiled with numba.

Same contracts as :mod:`besselsum._kernels_numpy`; the two are checked
against each other in the test suite.
"""
import math

import numpy as np
from numba import njit

from ._kernels_numpy import (EULER_GAMMA, HALF_LOG_2PI, LOG_PI, RESCALE_AT,
                             STIRLING, TINY_X)

_jit = njit(cache=True, nogil=True)


@_jit
def _j_lane(x, nstart, row):
    if x < TINY_X:
        if x == 0.0:
            row[:] = 0.0
            row[0] = 1.0
        else:
            lx = math.log(0.5 * x)
            for k in range(nstart + 1):
                row[k] = math.exp(k * lx - math.lgamma(k + 1.0))
        return
    b_next = 0.0
    b = 1.0
    row[nstart] = b
    norm = 2.0 * b if (nstart % 2 == 0 and nstart > 0) else 0.0
    for n in range(nstart, 0, -1):
        b_prev = (2.0 * n / x) * b - b_next
        b_next = b
        b = b_prev
        row[n - 1] = b
        if (n - 1) % 2 == 0 and n > 1:
            norm += 2.0 * b
        if abs(b) > RESCALE_AT:
            scale = 1.0 / RESCALE_AT
            for k in range(n - 1, nstart + 1):
                row[k] *= scale
            b *= scale
            b_next *= scale
            norm *= scale
    norm += row[0]
    for k in range(nstart + 1):
        row[k] /= norm


@_jit
def j_table(xs, nstart):
    m = xs.shape[0]
    out = np.empty((m, nstart + 1))
    for i in range(m):
        _j_lane(xs[i], nstart, out[i])
    return out


@_jit
def _neumann_hat(x, row, n):
    nstart = row.shape[0] - 1
    psi = -EULER_GAMMA
    for j in range(1, n + 1):
        psi += 1.0 / j
    acc = 0.0
    kmax = (nstart - n) // 2
    # smallest terms first
    for k in range(kmax, 0, -1):
        c = (n + 2.0 * k) / (k * (n + k))
        if k % 2 == 1:
            c = -c
        acc += c * row[n + 2 * k]
    return (math.log(0.5 * x) - psi) * row[n] - acc


@_jit
def bessel_tables(xs, nstart, ny, nh):
    m = xs.shape[0]
    if nh < 1:
        nh = 1
    if ny < 1:
        ny = 1
    J = np.empty((m, nstart + 1))
    Y = np.empty((m, ny + 1))
    Jh = np.empty((m, nh + 1))
    for i in range(m):
        x = xs[i]
        row = J[i]
        _j_lane(x, nstart, row)
        for n in range(1, nh + 1):
            Jh[i, n] = _neumann_hat(x, row, n)
        Y[i, 0] = (2.0 / math.pi) * _neumann_hat(x, row, 0)
        Jh[i, 0] = (0.5 * math.pi) * Y[i, 0]
        Y[i, 1] = (2.0 / math.pi) * (Jh[i, 1] - row[0] / x)
        for n in range(1, ny):
            Y[i, n + 1] = (2.0 * n / x) * Y[i, n] - Y[i, n - 1]
    return J, Y, Jh


@_jit
def compensated_sum(terms):
    # Neumaier's variant of Kahan summation
    s = 0.0
    c = 0.0
    for v in terms:
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


@_jit
def _stirling(z):
    zinv = 1.0 / z
    z2 = zinv * zinv
    acc = 0.0 + 0.0j
    for i in range(STIRLING.shape[0] - 1, -1, -1):
        acc = acc * z2 + STIRLING[i]
    return (z - 0.5) * np.log(z) - z + HALF_LOG_2PI + acc * zinv


@_jit
def _loggamma_right(z):
    shift = 0.0 + 0.0j
    while z.real < 7.0 and abs(z.imag) <= 7.0:
        shift += np.log(z)
        z += 1.0
    return _stirling(z) - shift


@_jit
def _is_pole(w):
    return w.imag == 0.0 and w.real <= 0.0 and w.real == math.floor(w.real)


@_jit
def loggamma_scalar(z):
    if _is_pole(z):
        return complex(np.nan, np.nan)
    if z.real < 0.1 and abs(z.imag) <= 7.0:
        turn = math.copysign(2.0 * math.pi, z.imag) * math.floor(0.5 * z.real + 0.25)
        return (LOG_PI + 1j * turn - np.log(np.sin(math.pi * z))
                - _loggamma_right(1.0 - z))
    return _loggamma_right(z)


@_jit
def loggamma(z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = loggamma_scalar(z[i])
    return out


@_jit
def meijer_integrand(s, a, b, m, n, logz):
    out = np.empty(s.shape[0], dtype=np.complex128)
    for i in range(s.shape[0]):
        si = s[i]
        acc = si * logz
        zero = False
        for j in range(b.shape[0]):
            if j < m:
                acc += loggamma_scalar(b[j] - si)
            else:
                w = 1.0 - b[j] + si
                if _is_pole(w):
                    zero = True
                else:
                    acc -= loggamma_scalar(w)
        for j in range(a.shape[0]):
            if j < n:
                acc += loggamma_scalar(1.0 - a[j] + si)
            else:
                w = a[j] - si
                if _is_pole(w):
                    zero = True
                else:
                    acc -= loggamma_scalar(w)
        out[i] = 0.0 if zero else np.exp(acc)
    return out
