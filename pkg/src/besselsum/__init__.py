"""Three-route evaluation of the Bessel order-derivative sum P_mu(x).

P_mu(x) = sum_{n>=1} n [ (Jh_{n-mu} J_n + J_{n-mu} Jh_n)
                         + (-1)^mu (Jh_{n+mu} J_n + J_{n+mu} Jh_n) ],

where Jh_n is the derivative of J_nu with respect to nu at nu = n. The sum
can be evaluated directly (:func:`p_series`), from a closed form built on
f_mu = (pi/4)(Y_mu J_0 + J_mu Y_0) and two tail integrals
(:func:`p_closed`), or from two Meijer G-functions (:func:`p_meijer`).
"""
from ._backend import BACKEND
from .closed_form import ClosedFormConfig, f_asymptotic, f_mu, p_asymptotic, p_closed
from .meijer_g import ContourError, MeijerSpec, meijer_g_3024, p_meijer
from .quadrature import IntegralResult, QuadratureError, QuadSpec
from .special_fn import (
    BesselDomainError,
    bessel_j,
    bessel_j_real_order,
    bessel_y,
    log_gamma_complex,
    order_deriv_j,
)
from .summation import (
    ConvergenceWarning,
    SumResult,
    TruncationPolicy,
    lemma1_lhs,
    lemma2_sum,
    p_series,
)
from .verify import CheckReport, estimate_constant_c, run_suite

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BesselDomainError", "CheckReport", "ClosedFormConfig", "ContourError",
    "ConvergenceWarning", "IntegralResult", "MeijerSpec", "QuadSpec", "QuadratureError",
    "SumResult", "TruncationPolicy", "bessel_j", "bessel_j_real_order", "bessel_y",
    "estimate_constant_c", "f_asymptotic", "f_mu", "lemma1_lhs", "lemma2_sum",
    "log_gamma_complex", "meijer_g_3024", "order_deriv_j", "p_asymptotic", "p_closed",
    "p_meijer", "p_series", "run_suite",
]
