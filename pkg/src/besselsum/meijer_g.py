"""G^{3,0}_{2,4} by Mellin-Barnes quadrature and the Meijer-G form of P_mu.

The Mellin-Barnes integrand of G^{3,0}_{2,4} grows like |t|^(sum b - sum a
- 1 - 2 sigma) along a vertical line Re s = sigma, so a vertical contour
does not converge here. The contour used instead is a loop made of two rays

    s = sigma + r exp(+-i phi),   0 <= r <= R,

leaving the real axis at ``sigma < min(b_1, b_2, b_3)`` and opening to the
right. Along these rays the gamma ratio decays faster than exponentially
and every pole b_j + k stays to the right of the loop. With the clockwise
orientation around those poles,

    G = (1 / 2 pi i) [ int_0^R F(s_+) e^{i phi} dr - int_0^R F(s_-) e^{-i phi} dr ],

which is real because F(conj s) = conj F(s). Each ray is integrated with
composite 40-point Gauss-Legendre panels.
"""
import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import _backend
from .special_fn import bessel_j, bessel_y
from .summation import SumResult

MIN_POLE_DISTANCE = 0.05
IMAG_TOL = 1e-10
TRUNCATION_TOL = 1e-15
PANEL_NODES = 40
X_LIMIT = 30.0

_GL_X, _GL_W = np.polynomial.legendre.leggauss(PANEL_NODES)


class ContourError(ValueError):
    """The contour is placed badly or the quadrature cannot be trusted."""


@dataclass(frozen=True)
class MeijerSpec:
    """Parameters of G^{3,0}_{2,4}(z | a; b) plus the contour settings.

    ``contour_height`` is the largest |Im s| reached by the rays, so the ray
    length is ``contour_height / sin(ray_angle)``. ``nodes`` is the total
    node count per ray, rounded up to whole 40-point panels.
    """

    a: tuple = (0.5, 1.0)
    b: tuple = (-0.5, 0.5, 0.5, -0.5)
    z: float = 1.0
    contour_sigma: float = -1.5
    contour_height: float = 60.0
    nodes: int = 4001
    ray_angle: float = 1.2
    m: int = field(default=3, init=False)
    n: int = field(default=0, init=False)
    p: int = field(default=2, init=False)
    q: int = field(default=4, init=False)

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if len(a) != self.p or len(b) != self.q:
            raise ValueError(f"need {self.p} a-parameters and {self.q} b-parameters")
        if not self.q > self.p:
            raise ValueError("q must exceed p")
        if not (self.z > 0.0 and math.isfinite(self.z)):
            raise ValueError(f"z must be positive and finite, got {self.z!r}")
        if not 0.0 < self.ray_angle < 0.5 * math.pi:
            raise ValueError("ray_angle must lie in (0, pi/2)")
        if self.contour_height <= 0.0 or self.nodes < 1:
            raise ValueError("contour_height and nodes must be positive")
        bmin = min(b[:self.m])
        if not self.contour_sigma < bmin:
            raise ContourError(
                f"contour_sigma = {self.contour_sigma} must lie left of min(b_1..b_3) = {bmin}")
        if self.pole_distance() < MIN_POLE_DISTANCE:
            raise ContourError(
                f"contour passes within {self.pole_distance():.3g} of a pole (minimum {MIN_POLE_DISTANCE})")

    def pole_distance(self):
        # nearest pole is min(b) on the real axis; the rays leave at angle phi
        return (min(self.b[:self.m]) - self.contour_sigma) * math.sin(self.ray_angle)

    @property
    def ray_length(self):
        return self.contour_height / math.sin(self.ray_angle)


def first_g_spec(mu, x, **contour):
    """Spec of the G-function that carries the 1/t integral, at z = x^2."""
    h = 0.5 * mu
    b = (-h, h, h, -h)
    sigma = min(b[:3]) - contour.pop("sigma_shift", 1.0)
    return MeijerSpec(a=(0.5, 1.0), b=b, z=x * x, contour_sigma=sigma, **contour)


def second_g_spec(mu, x, **contour):
    """Spec of the G-function that carries the 1/t^2 integral, at z = x^2."""
    lo, hi = -0.5 * (mu + 1), 0.5 * (mu - 1)
    b = (lo, hi, hi, lo)
    sigma = min(b[:3]) - contour.pop("sigma_shift", 1.0)
    return MeijerSpec(a=(-0.5, 1.0), b=b, z=x * x, contour_sigma=sigma, **contour)


def integrand(s, spec):
    """Mellin-Barnes integrand Gamma(b1-s)Gamma(b2-s)Gamma(b3-s) z^s
    / (Gamma(1-b4+s) Gamma(a1-s) Gamma(a2-s)) at complex ``s``."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=np.complex128))
    out = _backend.meijer_integrand(s_arr, spec.a, spec.b, spec.m, spec.n, math.log(spec.z))
    return out.reshape(np.shape(s)) if np.ndim(s) else complex(out[0])


def _ray_nodes(length, nodes):
    panels = max(1, -(-int(nodes) // PANEL_NODES))
    edges = np.linspace(0.0, length, panels + 1)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1:] - edges[:-1])
    r = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return r, w


@dataclass(frozen=True)
class MeijerResult:
    value: float
    imag_residual: float
    truncation: float
    nodes_used: int


def meijer_g_3024_detail(spec):
    """Like :func:`meijer_g_3024` but returns the diagnostics as well."""
    length = spec.ray_length
    r, w = _ray_nodes(length, spec.nodes)
    up = np.exp(1j * spec.ray_angle)
    down = np.conj(up)
    f_up = integrand(spec.contour_sigma + r * up, spec)
    f_down = integrand(spec.contour_sigma + r * down, spec)
    # both rays are summed independently so that the conjugate symmetry is
    # a check on the result rather than an assumption
    total = _backend.compensated_sum((w * (f_up * up).real))
    total -= _backend.compensated_sum((w * (f_down * down).real))
    total_im = _backend.compensated_sum((w * (f_up * up).imag))
    total_im -= _backend.compensated_sum((w * (f_down * down).imag))
    # (1 / 2 pi i)(A + iB) = (B - iA) / 2 pi
    value = total_im / (2.0 * math.pi)
    imag = -total / (2.0 * math.pi)

    end = spec.contour_sigma + length * np.array([up, down])
    f_end = np.abs(integrand(end, spec))
    # the rays decay faster than exponentially, so the integrand size at the
    # cut-off times a unit length bounds what was left out
    truncation = float(f_end.max()) / math.pi

    scale = max(abs(value), 1e-300)
    if abs(imag) > IMAG_TOL * scale and abs(imag) > 1e-300:
        raise ContourError(f"imaginary residual {abs(imag):.3g} exceeds {IMAG_TOL:g} x |G| = {IMAG_TOL * scale:.3g}")
    if truncation > TRUNCATION_TOL * max(abs(value), 1.0):
        raise ContourError(
            f"integrand has not decayed at the end of the contour (|F| ~ {truncation:.3g}); "
            "increase contour_height")
    return MeijerResult(float(value), float(abs(imag)), truncation, 2 * r.size)


def meijer_g_3024(spec):
    """G^{3,0}_{2,4}(z | a_1, a_2; b_1, b_2, b_3, b_4) by contour quadrature."""
    return meijer_g_3024_detail(spec).value


def p_meijer(mu, x, spec_defaults=None):
    """P_mu(x) from the Meijer-G form

        1/4 (-1)^(mu+1) ( pi (Y_0 J_mu + J_0 Y_mu) + sqrt(pi) mu^2 G_1
                          + sqrt(pi) (1 - mu^2) x G_2 ).

    ``spec_defaults`` supplies the contour settings (height, nodes, ray
    angle); the parameters, argument and abscissa are set per G-function.
    ``tail_bound`` comes from repeating the contour sums with half the
    panels.
    """
    if int(mu) != mu:
        raise ValueError(f"mu must be an integer, got {mu!r}")
    mu = int(mu)
    if mu == 0:
        raise ValueError("the Meijer-G form covers only mu != 0")
    x = float(x)
    if not (x > 0.0 and math.isfinite(x)):
        raise ValueError(f"x must be positive and finite, got {x!r}")
    if x > X_LIMIT:
        raise ValueError(f"x = {x} is above the contour accuracy cap {X_LIMIT}; use the closed form")
    d = spec_defaults or MeijerSpec()
    contour = dict(contour_height=d.contour_height, nodes=d.nodes, ray_angle=d.ray_angle)
    s1 = first_g_spec(mu, x, **contour)
    s2 = second_g_spec(mu, x, **contour)
    g1 = meijer_g_3024_detail(s1)
    g2 = meijer_g_3024_detail(s2)
    coarse1 = meijer_g_3024(replace(s1, nodes=max(1, d.nodes // 2)))
    coarse2 = meijer_g_3024(replace(s2, nodes=max(1, d.nodes // 2)))

    rp = math.sqrt(math.pi)
    m2 = mu * mu
    bessel_part = math.pi * (bessel_y(0, x) * bessel_j(mu, x) + bessel_j(0, x) * bessel_y(mu, x))
    sign = 1.0 if mu % 2 else -1.0
    value = 0.25 * sign * (bessel_part + rp * m2 * g1.value + rp * (1 - m2) * x * g2.value)
    err = 0.25 * rp * (m2 * (abs(g1.value - coarse1) + g1.truncation)
                       + abs(1 - m2) * x * (abs(g2.value - coarse2) + g2.truncation))
    return SumResult(float(value), g1.nodes_used + g2.nodes_used, float(err + 1e-13), "meijer")
