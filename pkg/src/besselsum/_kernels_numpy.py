"""Vectorized numpy kernels.

Reference implementation of the hot loops. Every function here has a
loop-level twin in :mod:`besselsum._kernels_numba` with the same signature;
:mod:`besselsum._backend` picks one of the two at import time.
"""
import math

import numpy as np

EULER_GAMMA = 0.57721566490153286061
HALF_LOG_2PI = 0.91893853320467274178
LOG_PI = 1.14472988584940017414

# Miller recurrence lanes are rescaled once they pass this magnitude.
RESCALE_AT = 1e250
# Below this argument J_n(x) = (x/2)^n/n! to double precision.
TINY_X = 1e-8

# B_{2k} / (2k (2k-1)), k = 1..12
STIRLING = np.array([
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
    77683.0 / 5796.0,
    -236364091.0 / 1506960.0,
])


def j_table(xs, nstart):
    """J_n(x) for n = 0..nstart at every x in ``xs``.

    Backward recurrence from order ``nstart`` with the normalization
    J_0 + 2 sum_k J_2k = 1. Lanes are rescaled independently when the
    unnormalized values grow past ``RESCALE_AT``.
    """
    xs = np.asarray(xs, dtype=np.float64)
    m = xs.shape[0]
    out = np.zeros((m, nstart + 1))
    tiny = xs < TINY_X
    x = np.where(tiny, 1.0, xs)

    b_next = np.zeros(m)
    b = np.ones(m)
    out[:, nstart] = b
    norm = 2.0 * b if (nstart % 2 == 0 and nstart > 0) else np.zeros(m)
    for n in range(nstart, 0, -1):
        b_prev = (2.0 * n / x) * b - b_next
        b_next = b
        b = b_prev
        out[:, n - 1] = b
        if (n - 1) % 2 == 0 and n > 1:
            norm = norm + 2.0 * b
        big = np.abs(b) > RESCALE_AT
        if big.any():
            out[big, n - 1:] *= 1.0 / RESCALE_AT
            b[big] *= 1.0 / RESCALE_AT
            b_next[big] *= 1.0 / RESCALE_AT
            norm[big] *= 1.0 / RESCALE_AT
    norm = norm + out[:, 0]
    out /= norm[:, None]

    if tiny.any():
        idx = np.flatnonzero(tiny)
        orders = np.arange(nstart + 1)
        lg = np.array([math.lgamma(k + 1.0) for k in orders])
        for i in idx:
            xi = xs[i]
            if xi == 0.0:
                out[i] = 0.0
                out[i, 0] = 1.0
            else:
                out[i] = np.exp(orders * math.log(0.5 * xi) - lg)
    return out


def _neumann_hat(x, J, n):
    # (log(x/2) - psi(n+1)) J_n - sum_k (-1)^k (n+2k) / (k (n+k)) J_{n+2k}
    nstart = J.shape[1] - 1
    kmax = (nstart - n) // 2
    psi = -EULER_GAMMA + sum(1.0 / j for j in range(1, n + 1))
    val = (np.log(0.5 * x) - psi) * J[:, n]
    if kmax >= 1:
        k = np.arange(1, kmax + 1, dtype=np.float64)
        sign = np.where(k % 2 == 0, 1.0, -1.0)
        coef = sign * (n + 2.0 * k) / (k * (n + k))
        val = val - J[:, n + 2: n + 2 * kmax + 1: 2] @ coef
    return val


def bessel_tables(xs, nstart, ny, nh):
    """Return ``(J, Y, Jhat)`` tables.

    J has orders 0..nstart, Y has 0..ny and Jhat (the derivative of J_nu
    with respect to nu at integer nu) has 0..nh. ``ny`` and ``nh`` are at
    least 1 and ``nh <= nstart``. All x must be positive.
    """
    xs = np.asarray(xs, dtype=np.float64)
    J = j_table(xs, nstart)
    m = xs.shape[0]
    nh = max(nh, 1)
    ny = max(ny, 1)
    Jh = np.empty((m, nh + 1))
    for n in range(1, nh + 1):
        Jh[:, n] = _neumann_hat(xs, J, n)
    Y = np.empty((m, ny + 1))
    Y[:, 0] = (2.0 / np.pi) * _neumann_hat(xs, J, 0)
    Jh[:, 0] = (0.5 * np.pi) * Y[:, 0]
    Y[:, 1] = (2.0 / np.pi) * (Jh[:, 1] - J[:, 0] / xs)
    for n in range(1, ny):
        Y[:, n + 1] = (2.0 * n / xs) * Y[:, n] - Y[:, n - 1]
    return J, Y, Jh


def compensated_sum(terms):
    return math.fsum(np.asarray(terms, dtype=np.float64).tolist())


def _stirling(z):
    zinv = 1.0 / z
    z2 = zinv * zinv
    acc = np.zeros_like(z)
    for c in STIRLING[::-1]:
        acc = acc * z2 + c
    return (z - 0.5) * np.log(z) - z + HALF_LOG_2PI + acc * zinv


def _loggamma_right(z):
    # Re z >= 0.1 or |Im z| > 7: shift right until Stirling is accurate.
    z = np.array(z, dtype=np.complex128)
    shift = np.zeros_like(z)
    work = z.copy()
    need = (work.real < 7.0) & (np.abs(work.imag) <= 7.0)
    while need.any():
        shift[need] += np.log(work[need])
        work[need] += 1.0
        need = (work.real < 7.0) & (np.abs(work.imag) <= 7.0)
    return _stirling(work) - shift


def loggamma(z):
    """Principal branch of log Gamma, elementwise. Poles give nan."""
    z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    out = np.empty_like(z)
    pole = (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.floor(z.real))
    refl = (~pole) & (z.real < 0.1) & (np.abs(z.imag) <= 7.0)
    direct = ~(pole | refl)
    out[pole] = np.nan + 0j
    if direct.any():
        out[direct] = _loggamma_right(z[direct])
    if refl.any():
        zr = z[refl]
        turn = np.copysign(2.0 * np.pi, zr.imag) * np.floor(0.5 * zr.real + 0.25)
        out[refl] = (LOG_PI + 1j * turn - np.log(np.sin(np.pi * zr))
                     - _loggamma_right(1.0 - zr))
    return out


def meijer_integrand(s, a, b, m, n, logz):
    """Mellin-Barnes integrand of G^{m,n}_{p,q} at the points ``s``.

    prod_{j<m} G(b_j - s) prod_{j<n} G(1 - a_j + s)
    / (prod_{j>=m} G(1 - b_j + s) prod_{j>=n} G(a_j - s)) * z^s

    Reciprocal gammas at their zeros contribute an exact 0.
    """
    s = np.asarray(s, dtype=np.complex128)
    acc = s * logz
    zero = np.zeros(s.shape, dtype=np.bool_)
    for j in range(len(b)):
        if j < m:
            acc = acc + loggamma(b[j] - s)
        else:
            w = 1.0 - b[j] + s
            hit = (w.imag == 0.0) & (w.real <= 0.0) & (w.real == np.floor(w.real))
            zero |= hit
            acc = acc - np.where(hit, 0.0, loggamma(np.where(hit, 1.0, w)))
    for j in range(len(a)):
        if j < n:
            acc = acc + loggamma(1.0 - a[j] + s)
        else:
            w = a[j] - s
            hit = (w.imag == 0.0) & (w.real <= 0.0) & (w.real == np.floor(w.real))
            zero |= hit
            acc = acc - np.where(hit, 0.0, loggamma(np.where(hit, 1.0, w)))
    return np.where(zero, 0.0, np.exp(acc))
