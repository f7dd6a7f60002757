"""Closed form of P_mu(x) and its large-x behaviour.

For integer mu != 0,

    P_mu(x) = (-1)^mu ( -f_mu(x) + mu^2 int_x^oo f_mu(t)/t dt
                        + (1 - mu^2) x int_x^oo f_mu(t)/t^2 dt + C x ),

with f_mu = (pi/4)(Y_mu J_0 + J_mu Y_0) and C = 0. At mu = 0 the derivation
picks up an extra delta_{mu,0} term and this expression does not hold, so
:func:`p_closed` refuses it.
"""
import math
from dataclasses import dataclass, field

from . import quadrature
from .quadrature import QuadSpec
from .special_fn import bessel_j, bessel_y
from .summation import SumResult

KERNEL_SLACK = 1e-12

MU_ZERO_MESSAGE = (
    "the closed form covers only mu != 0: at mu = 0 the Graf sum contributes "
    "delta_{00} = 1 and the expression for P_mu does not apply"
)


@dataclass(frozen=True)
class ClosedFormConfig:
    quad: QuadSpec = field(default_factory=QuadSpec)
    # Only the constant-estimation experiment sets this; public paths use 0.
    constant_C: float = 0.0


def f_mu(mu, x):
    """(pi/4) (Y_mu(x) J_0(x) + J_mu(x) Y_0(x))."""
    return 0.25 * math.pi * (bessel_y(mu, x) * bessel_j(0, x) + bessel_j(mu, x) * bessel_y(0, x))


def _closed(mu, x, cfg, constant_C):
    if int(mu) != mu:
        raise ValueError(f"mu must be an integer, got {mu!r}")
    mu = int(mu)
    if mu == 0:
        raise ValueError(MU_ZERO_MESSAGE)
    cfg = cfg or ClosedFormConfig()
    i1 = quadrature.integrate_fmu_over_t(mu, x, cfg.quad)
    i2 = quadrature.integrate_fmu_over_t2(mu, x, cfg.quad)
    m2 = mu * mu
    inner = -f_mu(mu, x) + m2 * i1.value + (1 - m2) * x * i2.value + constant_C * x
    sign = -1.0 if mu % 2 else 1.0
    budget = m2 * i1.err_estimate + abs(1 - m2) * x * i2.err_estimate + KERNEL_SLACK
    return SumResult(sign * inner, i1.panels_used + i2.panels_used, budget, "closed")


def p_closed(mu, x, cfg=None):
    """P_mu(x) from f_mu and the two tail integrals, with C = 0.

    ``tail_bound`` is the combined error budget: the quadrature estimates
    scaled by their prefactors plus a fixed kernel slack.
    """
    if cfg is not None and cfg.constant_C != 0.0:
        raise ValueError("p_closed always uses C = 0; use p_closed_with_constant for other values")
    return _closed(mu, x, cfg, 0.0)


def p_closed_with_constant(mu, x, constant_C, cfg=None):
    """Closed form with an explicit C x term; for the C-estimation check only."""
    return _closed(mu, x, cfg, float(constant_C))


def p_asymptotic(mu, x):
    """Leading large-x behaviour (-1)^mu cos(2x - mu pi/2) / (2x)."""
    sign = -1.0 if int(mu) % 2 else 1.0
    return sign * math.cos(2.0 * x - 0.5 * mu * math.pi) / (2.0 * x)


def f_asymptotic(mu, x):
    """Leading large-x behaviour of f_mu: -cos(2x - mu pi/2) / (2x)."""
    return -math.cos(2.0 * x - 0.5 * mu * math.pi) / (2.0 * x)
