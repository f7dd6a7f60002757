"""Named numerical checks for every identity the library relies on.

Each check compares an observed number with an expected one under a fixed
tolerance and produces a :class:`CheckReport`. Suites group the checks;
``run_suite`` never raises on a failed or crashing check, it reports it.
"""
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import product

import numpy as np

from . import quadrature
from .closed_form import f_asymptotic, f_mu, p_asymptotic, p_closed, p_closed_with_constant
from .meijer_g import first_g_spec, meijer_g_3024, p_meijer, second_g_spec
from .special_fn import bessel_j_real_order, bessel_y, order_deriv_j
from .summation import lemma1_lhs, lemma2_sum, p_series

SUITES = ("lemma1", "lemma2", "prop_routes", "eq18", "asymptotics", "constant_c", "meijer_routes")

# the claim each check_id stands for; printed in every report row
CLAIMS = {
    "lemma1_finite": "sum eps_n J_{nu+mu+n} J_{nu+n} = int_0^x (2nu+mu)/t J_{nu+mu} J_nu dt",
    "lemma1_tail": "sum eps_n J_{nu+mu+n} J_{nu+n} = (2/pi) sin(pi mu/2)/mu - int_x^oo (2nu+mu)/t J_{nu+mu} J_nu dt",
    "j1j0_integral": "int_0^oo J_1 J_0 / t dt = 2/pi",
    "lemma2": "sum_n (J_{n-mu} J_n + (-1)^mu J_{n+mu} J_n) + J_{-mu} J_0 = delta_{mu,0}",
    "routes_series_closed": "series P_mu(x) equals the closed form with C = 0",
    "parity_series": "P_{-mu} = (-1)^mu P_mu on the series route",
    "parity_closed": "P_{-mu} = (-1)^mu P_mu on the closed-form route",
    "jhat_reflection": "Jhat_{-mu} + (-1)^mu Jhat_mu - (-1)^mu pi Y_mu = 0",
    "jhat_zero": "Jhat_0 = (pi/2) Y_0",
    "jhat_fd": "Jhat_n matches a central difference of J_nu in nu",
    "p_asymptotic": "x^2 |P_mu - (-1)^mu cos(2x - mu pi/2)/(2x)| stays bounded",
    "f_asymptotic": "x^2 |f_mu + cos(2x - mu pi/2)/(2x)| stays bounded",
    "constant_c": "the integration constant C vanishes",
    "constant_c_planted": "the C estimator recovers a planted slope",
    "meijer_closed": "Meijer-G form equals the closed form",
    "meijer_parity": "P_{-mu} = (-1)^mu P_mu on the Meijer route",
    "meijer_nodes": "contour quadrature is stable under doubling the nodes",
    "meijer_sigma": "contour quadrature is stable under shifting the abscissa",
}

DEFAULT_GRIDS = {
    "lemma1": {"nu": [0, 1, 2], "mu": [1, 2, 3], "x": [0.5, 2.0, 5.0, 10.0]},
    "lemma2": {"mu": [0, 1, 2, 3, 4, 5], "x": [0.5, 1.0, 2.0, 5.0, 10.0, 25.0]},
    "prop_routes": {"mu": [1, -1, 2, -2, 3, 4], "x": [0.5, 1.0, 2.0, 5.0, 10.0, 20.0]},
    "eq18": {"mu": [0, 1, 2, 3], "x": [0.5, 2.0, 10.0]},
    "asymptotics": {"mu": [1, 2], "x": [60.0, 80.0, 100.0, 140.0]},
    "constant_c": {"mu": [1, 2, 3], "x": [30.0, 50.0, 80.0]},
    "meijer_routes": {"mu": [1, 2, 3], "x": [0.5, 1.0, 2.0, 5.0]},
}

LEMMA1_TOL = 1e-9
LEMMA2_TOL = 1e-10
ROUTE_FLOOR = 1e-8
PARITY_TOL = 1e-10
JHAT_TOL = 1e-12
FD_TOL = 1e-6
FD_STEP = 1e-5
P_ASYM_CONST = 4.0
F_ASYM_CONST = 1.0
C_TOL = 1e-6
C_PLANT = 1e-3
C_PLANT_TOL = 1e-5
MEIJER_TOL = 1e-6
MEIJER_STABILITY = 1e-8


@dataclass
class CheckReport:
    check_id: str
    params: dict
    observed: float
    expected: float
    tolerance: float
    passed: bool = field(init=False)
    elapsed: float = 0.0
    claim: str = ""
    error: str = ""

    def __post_init__(self):
        self.claim = self.claim or CLAIMS.get(self.check_id, "")
        dev = abs(self.observed - self.expected)
        self.passed = bool(not self.error and math.isfinite(dev) and dev <= self.tolerance)

    def as_dict(self):
        return asdict(self)


def estimate_constant_c(mu, xs, planted=0.0):
    """Least-squares slope (through the origin) of the series/closed-form gap.

    With d(x) = (-1)^mu [p_series(mu, x) - closed form without the C x term],
    an exact representation has d(x) = C x. ``planted`` adds a synthetic
    (-1)^mu planted x to the series values to calibrate the estimator.
    """
    mu = int(mu)
    if mu == 0:
        raise ValueError("the constant is defined only for mu != 0")
    xs = np.asarray(sorted(float(v) for v in xs))
    if xs.size < 3 or xs[-1] < 30.0:
        raise ValueError("need at least 3 points with the largest at x >= 30")
    sign = -1.0 if mu % 2 else 1.0
    gaps = []
    for x in xs:
        s = p_series(mu, x)
        if not s.converged:
            raise RuntimeError(f"series did not converge at x = {x}")
        c = p_closed_with_constant(mu, x, 0.0)
        gaps.append(sign * (s.value + sign * planted * x - c.value))
    gaps = np.asarray(gaps)
    return float(np.dot(xs, gaps) / np.dot(xs, xs))


# --------------------------------------------------------------------------
# individual checks; each returns a list of (check_id, params, obs, exp, tol)

def _lemma1(nu, mu, x):
    lhs = lemma1_lhs(nu, mu, x).value
    fin = quadrature.lemma1_integral_finite(nu, mu, x)
    tail = quadrature.lemma1_integral_tail(nu, mu, x)
    p = {"nu": nu, "mu": mu, "x": x}
    out = [("lemma1_finite", p, lhs, fin.value, LEMMA1_TOL),
           ("lemma1_tail", p, lhs, quadrature.lemma1_constant(mu) - tail.value, LEMMA1_TOL)]
    if nu == 0 and mu == 1:
        out.append(("j1j0_integral", {"x": x}, fin.value + tail.value, 2.0 / math.pi, ROUTE_FLOOR))
    return out


def _lemma2(mu, x):
    return [("lemma2", {"mu": mu, "x": x}, lemma2_sum(mu, x).value, 1.0 if mu == 0 else 0.0, LEMMA2_TOL)]


def _routes(mu, x):
    p = {"mu": mu, "x": x}
    s = p_series(mu, x)
    c = p_closed(mu, x)
    out = [("routes_series_closed", p, s.value, c.value,
            max(ROUTE_FLOOR, s.tail_bound + c.tail_bound))]
    if mu > 0:
        sign = -1.0 if mu % 2 else 1.0
        out.append(("parity_series", p, p_series(-mu, x).value, sign * s.value, PARITY_TOL))
        out.append(("parity_closed", p, p_closed(-mu, x).value, sign * c.value, PARITY_TOL))
    return out


def _eq18(mu, x):
    p = {"mu": mu, "x": x}
    sign = -1.0 if mu % 2 else 1.0
    out = []
    if mu == 0:
        out.append(("jhat_zero", p, order_deriv_j(0, x), 0.5 * math.pi * bessel_y(0, x), JHAT_TOL))
    else:
        lhs = order_deriv_j(-mu, x) + sign * order_deriv_j(mu, x) - sign * math.pi * bessel_y(mu, x)
        out.append(("jhat_reflection", p, lhs, 0.0, JHAT_TOL * max(1.0, math.pi * abs(bessel_y(mu, x)))))
    fd = (bessel_j_real_order(mu + FD_STEP, x) - bessel_j_real_order(mu - FD_STEP, x)) / (2 * FD_STEP)
    out.append(("jhat_fd", p, order_deriv_j(mu, x), fd, FD_TOL))
    return out


def _asymptotics(mu, x):
    p = {"mu": mu, "x": x}
    dp = x * x * abs(p_closed(mu, x).value - p_asymptotic(mu, x))
    df = x * x * abs(f_mu(mu, x) - f_asymptotic(mu, x))
    return [("p_asymptotic", p, dp, 0.0, P_ASYM_CONST),
            ("f_asymptotic", p, df, 0.0, F_ASYM_CONST)]


def _constant_c(mu, xs):
    p = {"mu": mu, "x": list(xs)}
    return [("constant_c", p, estimate_constant_c(mu, xs), 0.0, C_TOL),
            ("constant_c_planted", p, estimate_constant_c(mu, xs, planted=C_PLANT), C_PLANT, C_PLANT_TOL)]


def _meijer(mu, x):
    p = {"mu": mu, "x": x}
    m = p_meijer(mu, x)
    c = p_closed(mu, x)
    sign = -1.0 if mu % 2 else 1.0
    out = [("meijer_closed", p, m.value, c.value, MEIJER_TOL),
           ("meijer_parity", p, p_meijer(-mu, x).value, sign * m.value, MEIJER_TOL)]
    node_dev = 0.0
    sigma_dev = 0.0
    for build in (first_g_spec, second_g_spec):
        spec = build(mu, x)
        g = meijer_g_3024(spec)
        scale = max(abs(g), 1e-300)
        fine = meijer_g_3024(build(mu, x, nodes=2 * spec.nodes))
        shifted = meijer_g_3024(build(mu, x, sigma_shift=2.0))
        node_dev = max(node_dev, abs(fine - g) / scale)
        sigma_dev = max(sigma_dev, abs(shifted - g))
    out.append(("meijer_nodes", p, node_dev, 0.0, MEIJER_STABILITY))
    out.append(("meijer_sigma", p, sigma_dev, 0.0, MEIJER_STABILITY))
    return out


def _tasks(suite, grid):
    g = dict(DEFAULT_GRIDS[suite])
    if grid:
        g.update({k: list(v) for k, v in grid.items() if k in g})
    if suite == "lemma1":
        return [(_lemma1, (nu, mu, x)) for nu, mu, x in product(g["nu"], g["mu"], g["x"])]
    if suite == "constant_c":
        return [(_constant_c, (mu, tuple(g["x"]))) for mu in g["mu"] if mu != 0]
    fn = {"lemma2": _lemma2, "prop_routes": _routes, "eq18": _eq18,
          "asymptotics": _asymptotics, "meijer_routes": _meijer}[suite]
    mus = g["mu"]
    if suite in ("prop_routes", "asymptotics", "meijer_routes"):
        mus = [m for m in mus if m != 0]
    return [(fn, (mu, x)) for mu, x in product(mus, g["x"])]


def _execute(task):
    fn, args = task
    t0 = time.perf_counter()
    try:
        rows = fn(*args)
    except Exception as exc:  # reported, not raised
        names = fn.__name__.lstrip("_")
        return [CheckReport(names, {"args": list(args)}, math.nan, math.nan, 0.0,
                            elapsed=time.perf_counter() - t0, error=f"{type(exc).__name__}: {exc}")]
    share = (time.perf_counter() - t0) / max(len(rows), 1)
    return [CheckReport(cid, params, float(obs), float(exp), float(tol), elapsed=share)
            for cid, params, obs, exp, tol in rows]


def run_suite(suite, grid=None, threads=1):
    """Run one suite (or ``"all"``) and return its reports in a fixed order.

    ``grid`` optionally overrides the default parameter lists, e.g.
    ``{"mu": [0, 1], "x": [0.5, 2.0]}``; keys a suite does not use are
    ignored. Checks are spread over ``threads`` workers, and the result
    order never depends on completion order.
    """
    names = SUITES if suite == "all" else (suite,)
    for name in names:
        if name not in DEFAULT_GRIDS:
            raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    if grid is not None and not all(len(v) for v in grid.values()):
        raise ValueError("grid lists must be nonempty")
    tasks = [t for name in names for t in _tasks(name, grid)]
    if threads <= 1:
        batches = [_execute(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(_execute, tasks))
    return [r for batch in batches for r in batch]
