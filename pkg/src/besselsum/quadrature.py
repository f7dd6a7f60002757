"""Integrals of oscillatory, algebraically decaying Bessel products.

Every integral here has an integrand of the form w(t) C_a(t) C_b(t) / t^k
with C a Bessel function of the first or second kind. The range [x, oo) is
split at a handover point T:

* [x, T] is covered by Gauss-Kronrod (7, 15) panels of length pi/2 aligned
  to the zeros of the cos(2t - phi) carrier, refined by bisection wherever
  the per-panel estimate is too large;
* [T, oo) is integrated analytically. The Hankel expansions of C_a and C_b
  turn the product into a non-oscillating part plus a cos/sin(2t - phi)
  part, each with a power series in 1/t; the power integrals are exact and
  the oscillating ones follow from repeated integration by parts.
"""
import math
from dataclasses import dataclass

import numpy as np

from . import _backend
from .special_fn import ORDER_LIMIT, BesselDomainError

EPS = np.finfo(float).eps

# Gauss-Kronrod 15-point nodes on [0, 1] (symmetric) and weights; the
# 7-point Gauss rule uses the odd-indexed Kronrod nodes.
_XGK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0,
])
_WGK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
XK = np.concatenate([-_XGK[:-1], _XGK[::-1]])
WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_GIDX = np.array([1, 3, 5, 7, 9, 11, 13])
WG = np.concatenate([_WG[:-1], _WG[::-1]])

CHUNK = 1024


class QuadratureError(RuntimeError):
    """Panel budget exhausted or requested tolerance out of reach."""


@dataclass(frozen=True)
class QuadSpec:
    rel_tol: float = 1e-11
    abs_tol: float = 1e-14
    split_point_factor: float = 4.0
    max_panels: int = 50000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("rel_tol and abs_tol must be > 0")
        if self.split_point_factor < 1.0:
            raise ValueError("split_point_factor must be >= 1")
        if self.max_panels < 1:
            raise ValueError("max_panels must be >= 1")

    def handover(self, x, orders=()):
        """Tail handover point T = factor * max(x, 30), raised if needed so
        that the Hankel expansions of the given orders converge there."""
        T = self.split_point_factor * max(x, 30.0)
        for nu in orders:
            T = max(T, hankel_min_t(nu))
        return T


@dataclass(frozen=True)
class IntegralResult:
    value: float
    err_estimate: float
    panels_used: int
    tail_method: str = "asymptotic"


# --------------------------------------------------------------------------
# panel quadrature

def _gk15(func, a, b):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    t = c[:, None] + h[:, None] * XK[None, :]
    f = func(t.ravel()).reshape(t.shape)
    resk = f @ WK
    resg = f[:, _GIDX] @ WG
    mean = 0.5 * resk
    resabs = np.abs(h) * (np.abs(f) @ WK)
    resasc = np.abs(h) * (np.abs(f - mean[:, None]) @ WK)
    err = np.abs((resk - resg) * h)
    scaled = np.where((resasc != 0) & (err != 0),
                      resasc * np.minimum(1.0, (200.0 * err / np.where(resasc == 0, 1, resasc)) ** 1.5),
                      err)
    floor = 50.0 * EPS * resabs
    return resk * h, np.maximum(scaled, floor), floor


def integrate_panels(func, breakpoints, abs_tol, rel_tol, max_panels):
    """Globally adaptive GK15 over consecutive panels.

    Returns ``(value, err_estimate, n_panels)``. ``func`` must accept a 1-d
    array of abscissae. Panels stay in positional order and are reduced
    with compensated summation, so the result is independent of how the
    refinement proceeded.
    """
    bp = np.asarray(breakpoints, dtype=np.float64)
    a, b = bp[:-1].copy(), bp[1:].copy()
    val, err, floor = _gk15(func, a, b)
    while True:
        total = _backend.compensated_sum(val)
        err_sum = float(np.sum(err))
        tol = max(abs_tol, rel_tol * abs(total))
        if err_sum <= tol:
            return total, err_sum, len(a)
        if float(np.sum(floor)) > 0.5 * tol:
            raise QuadratureError(
                f"tolerance {tol:.3g} not achievable: roundoff floor {float(np.sum(floor)):.3g}")
        if len(a) >= max_panels:
            raise QuadratureError(f"panel budget {max_panels} exhausted (err {err_sum:.3g} > {tol:.3g})")
        sel = err > (err - floor).clip(min=0).sum() / len(a)
        sel |= err == err.max()
        idx = np.flatnonzero(sel)
        mid = 0.5 * (a[idx] + b[idx])
        la, lb = a[idx], mid
        ra, rb = mid, b[idx]
        v2, e2, f2 = _gk15(func, np.concatenate([la, ra]), np.concatenate([lb, rb]))
        k = len(idx)
        keep = ~sel
        a = np.concatenate([a[keep], la, ra])
        b = np.concatenate([b[keep], lb, rb])
        val = np.concatenate([val[keep], v2[:k], v2[k:]])
        err = np.concatenate([err[keep], e2[:k], e2[k:]])
        floor = np.concatenate([floor[keep], f2[:k], f2[k:]])
        order = np.argsort(a, kind="stable")
        a, b, val, err, floor = a[order], b[order], val[order], err[order], floor[order]


def aligned_breakpoints(lo, hi, phi):
    """[lo, zeros of cos(2t - phi) strictly inside, hi], spacing pi/2."""
    k0 = math.ceil((2.0 * lo - phi - 0.5 * math.pi) / math.pi)
    k1 = math.floor((2.0 * hi - phi - 0.5 * math.pi) / math.pi)
    zeros = (phi + 0.5 * math.pi + math.pi * np.arange(k0, k1 + 1)) / 2.0
    zeros = zeros[(zeros > lo + 0.05) & (zeros < hi - 0.05)]
    return np.concatenate([[lo], zeros, [hi]])


# --------------------------------------------------------------------------
# Bessel values at quadrature nodes

def jy_at(ts, orders_j=(), orders_y=()):
    """Dict of J_n(t) and Y_n(t) arrays for non-negative integer orders."""
    ts = np.asarray(ts, dtype=np.float64)
    nj = max(list(orders_j) + [0])
    ny = max(list(orders_y) + [1])
    out_j = {n: np.empty_like(ts) for n in orders_j}
    out_y = {n: np.empty_like(ts) for n in orders_y}
    order = np.argsort(ts, kind="stable")
    for start in range(0, ts.size, CHUNK):
        sl = order[start:start + CHUNK]
        J, Y, _ = _backend.bessel_tables(ts[sl], nj, ny=ny, nh=1)
        for n in orders_j:
            out_j[n][sl] = J[:, n]
        for n in orders_y:
            out_y[n][sl] = Y[:, n]
    return out_j, out_y


# --------------------------------------------------------------------------
# analytic tails

def _hankel_coeffs(nu, T, tol=1e-18, kmax=400):
    """a_k(nu) of the Hankel expansion, truncated once a_k / T^k < tol.

    Returns ``(coeffs, omitted)``; ``omitted`` bounds the first dropped term
    at t = T, or is inf when the series starts diverging before reaching
    ``tol``.
    """
    mu4 = 4.0 * nu * nu
    coeffs = [1.0]
    a = 1.0
    prev = 1.0
    for k in range(1, kmax + 1):
        a = a * (mu4 - (2 * k - 1) ** 2) / (8.0 * k)
        term = abs(a) / T ** k
        if a == 0.0 or term < tol:
            return np.array(coeffs), term
        if term > prev and k > 2 * nu + 2:
            return np.array(coeffs), math.inf
        coeffs.append(a)
        prev = term
    return np.array(coeffs), math.inf


def hankel_min_t(nu):
    """Smallest power-of-two multiple of 30 where the Hankel series of order
    nu converges to double precision."""
    T = 30.0
    while _hankel_coeffs(nu, T)[1] == math.inf:
        T *= 2.0
    return T


def _pq(nu, T):
    a, omitted = _hankel_coeffs(nu, T)
    deg = len(a) - 1
    P = np.zeros(deg + 1)
    Q = np.zeros(deg + 1)
    for k, ak in enumerate(a):
        s = -1.0 if (k // 2) % 2 else 1.0
        if k % 2 == 0:
            P[k] = s * ak
        else:
            Q[k] = s * ak
    return P, Q, omitted


def _polymul(p, q):
    return np.convolve(p, q)


def _pad(p, n):
    return np.concatenate([p, np.zeros(n - len(p))]) if len(p) < n else p


def product_expansion(kind_a, nu_a, kind_b, nu_b, T):
    """Asymptotic form of C_a(t) C_b(t) for t >= T.

    C_a C_b = (1/(pi t)) [c(u) + A(u) cos(2t - phi) + B(u) sin(2t - phi)],
    u = 1/t. Returns ``(c, A, B, phi, omitted)`` with coefficient arrays in
    ascending powers of u.
    """
    Pa, Qa, ea = _pq(nu_a, T)
    Pb, Qb, eb = _pq(nu_b, T)
    chi_a = -0.5 * math.pi * nu_a - 0.25 * math.pi - (0.5 * math.pi if kind_a == "Y" else 0.0)
    chi_b = -0.5 * math.pi * nu_b - 0.25 * math.pi - (0.5 * math.pi if kind_b == "Y" else 0.0)
    delta = chi_a - chi_b
    phi = -(chi_a + chi_b)
    PP = _polymul(Pa, Pb)
    QQ = _polymul(Qa, Qb)
    PQ = _polymul(Pa, Qb)
    QP = _polymul(Qa, Pb)
    n = max(map(len, (PP, QQ, PQ, QP)))
    PP, QQ, PQ, QP = (_pad(v, n) for v in (PP, QQ, PQ, QP))
    c = (PP + QQ) * math.cos(delta) + (PQ - QP) * math.sin(delta)
    A = PP - QQ
    B = -(PQ + QP)
    return c, A, B, phi, ea + eb


def osc_power_integral(p, T, phi, tol=1e-20, jmax=200):
    """E = int_T^oo t^(-p) exp(i (2t - phi)) dt by repeated integration by
    parts: E = (i/2) e^{i(2T-phi)} sum_j (-i/2)^j (p)_j T^(-p-j).

    Returns ``(E, remainder_bound)``.
    """
    acc = 0.0 + 0.0j
    coef = 1.0 + 0.0j
    lead = T ** (-p)
    term_mag = lead
    for j in range(jmax):
        acc += coef * T ** (-p - j)
        nxt = coef * (-0.5j) * (p + j)
        term_mag = abs(nxt) * T ** (-p - j - 1)
        coef = nxt
        if term_mag < tol * lead:
            break
    return 0.5j * complex(math.cos(2 * T - phi), math.sin(2 * T - phi)) * acc, 0.5 * term_mag


def product_tail(weight, k, factors, T):
    """int_T^oo weight * sum_i C_a C_b / t^k dt for a list of (kind_a, nu_a,
    kind_b, nu_b) products. Returns ``(value, err_bound)``."""
    total = 0.0
    err = 0.0
    for kind_a, nu_a, kind_b, nu_b in factors:
        c, A, B, phi, omitted = product_expansion(kind_a, nu_a, kind_b, nu_b, T)
        part = 0.0
        for m in range(len(c)):
            p = m + k + 1
            if c[m] != 0.0:
                part += c[m] * T ** (1 - p) / (p - 1)
            if A[m] != 0.0 or B[m] != 0.0:
                E, rem = osc_power_integral(p, T, phi)
                part += A[m] * E.real + B[m] * E.imag
                err += (abs(A[m]) + abs(B[m])) * rem
        total += part
        # first omitted Hankel term, integrated against t^-(k+1)
        err += 2.0 * omitted * T ** (-k) / max(k, 1)
    scale = abs(weight) / math.pi
    return weight / math.pi * total, scale * err + EPS * abs(weight / math.pi * total)


# --------------------------------------------------------------------------
# the integrals

def _check_mu(mu, allow_zero=False):
    if int(mu) != mu:
        raise BesselDomainError(f"order must be an integer, got {mu!r}")
    mu = int(mu)
    if abs(mu) > ORDER_LIMIT:
        raise BesselDomainError(f"|mu| = {abs(mu)} exceeds the order limit {ORDER_LIMIT}")
    if mu == 0 and not allow_zero:
        raise BesselDomainError("mu must be nonzero")
    return mu


def _check_x(x):
    x = float(x)
    if not (math.isfinite(x) and x > 0.0):
        raise BesselDomainError(f"x must be finite and > 0, got {x!r}")
    return x


def f_mu_values(mu, ts):
    """(pi/4) (Y_mu J_0 + J_mu Y_0) at an array of points, mu >= 0."""
    a = abs(mu)
    J, Y = jy_at(ts, orders_j=(0, a), orders_y=(0, a))
    val = 0.25 * np.pi * (Y[a] * J[0] + J[a] * Y[0])
    if mu < 0 and a % 2:
        val = -val
    return val


def _fmu_integral(mu, x, spec, k):
    mu = _check_mu(mu)
    x = _check_x(x)
    spec = spec or QuadSpec()
    a = abs(mu)
    sign = -1.0 if (mu < 0 and a % 2) else 1.0
    T = spec.handover(x, orders=(a,))
    phi = 0.5 * math.pi * a
    bp = aligned_breakpoints(x, T, phi)

    def g(t):
        return f_mu_values(a, t) / t ** k

    val, err, npan = integrate_panels(g, bp, spec.abs_tol, spec.rel_tol, spec.max_panels)
    tail, tail_err = product_tail(0.25 * math.pi, k, [("Y", a, "J", 0), ("J", a, "Y", 0)], T)
    return IntegralResult(float(sign * (val + tail)), float(err + tail_err), npan, "asymptotic")


def integrate_fmu_over_t(mu, x, spec=None):
    """int_x^oo f_mu(t) / t dt, f_mu = (pi/4)(Y_mu J_0 + J_mu Y_0), mu != 0."""
    return _fmu_integral(mu, x, spec, 1)


def integrate_fmu_over_t2(mu, x, spec=None):
    """int_x^oo f_mu(t) / t^2 dt, mu != 0."""
    return _fmu_integral(mu, x, spec, 2)


def _lemma1_args(nu, mu, x):
    if int(nu) != nu or nu < 0 or int(mu) != mu or mu < 0:
        raise BesselDomainError("nu and mu must be non-negative integers")
    nu, mu = int(nu), int(mu)
    if nu + mu > ORDER_LIMIT:
        raise BesselDomainError(f"nu + mu = {nu + mu} exceeds the order limit {ORDER_LIMIT}")
    return nu, mu, _check_x(x)


def _lemma1_integrand(nu, mu):
    w = 2.0 * nu + mu

    def g(t):
        J, _ = jy_at(t, orders_j=(nu, nu + mu))
        return w * J[nu + mu] * J[nu] / t

    return g


def lemma1_integral_finite(nu, mu, x, spec=None):
    """int_0^x (2nu+mu)/t J_{nu+mu}(t) J_nu(t) dt.

    The integrand behaves like t^(2nu+mu-1) at 0, so it is bounded there;
    the Gauss-Kronrod nodes never touch t = 0.
    """
    nu, mu, x = _lemma1_args(nu, mu, x)
    spec = spec or QuadSpec()
    if nu == 0 and mu == 0:
        return IntegralResult(0.0, 0.0, 0, "none")
    bp = aligned_breakpoints(0.0, x, 0.5 * math.pi * mu)
    val, err, npan = integrate_panels(_lemma1_integrand(nu, mu), bp,
                                      spec.abs_tol, spec.rel_tol, spec.max_panels)
    return IntegralResult(float(val), float(err), npan, "none")


def lemma1_integral_tail(nu, mu, x, spec=None):
    """int_x^oo (2nu+mu)/t J_{nu+mu}(t) J_nu(t) dt."""
    nu, mu, x = _lemma1_args(nu, mu, x)
    spec = spec or QuadSpec()
    if nu == 0 and mu == 0:
        return IntegralResult(0.0, 0.0, 0, "none")
    T = spec.handover(x, orders=(nu, nu + mu))
    bp = aligned_breakpoints(x, T, 0.5 * math.pi * (2 * nu + mu) + 0.5 * math.pi)
    val, err, npan = integrate_panels(_lemma1_integrand(nu, mu), bp,
                                      spec.abs_tol, spec.rel_tol, spec.max_panels)
    tail, tail_err = product_tail(2.0 * nu + mu, 1, [("J", nu + mu, "J", nu)], T)
    return IntegralResult(float(val + tail), float(err + tail_err), npan, "asymptotic")


def lemma1_constant(mu):
    """int_0^oo (2nu+mu)/t J_{nu+mu} J_nu dt = (2/pi) sin(pi mu/2)/mu, 1 at mu = 0."""
    if mu == 0:
        return 1.0
    return 2.0 / math.pi * math.sin(0.5 * math.pi * mu) / mu
