"""Build the frozen golden values used by the test-suite.

Everything here is computed with mpmath (40 significant digits, 20 for the
oscillatory integrals) and is independent of the package's own kernels.
The full run takes several minutes. Run from the repository root:

    python3 tools/oracle.py  # writes tests/data/golden.json
"""
import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40
OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "golden.json"


def ascending_j(n, x):
    # brute-force ascending series, summed until terms drop below 1e-20
    x = mp.mpf(x)
    q = (x / 2) ** 2
    term = (x / 2) ** n / mp.factorial(n)
    total = term
    k = 0
    while True:
        k += 1
        term = -term * q / (k * (n + k))
        total += term
        if abs(term) < mp.mpf("1e-20") and k > x:
            return total


def y0_series(x):
    # Y_0(x) = (2/pi)[(ln(x/2) + gamma) J_0(x) + sum_k (-1)^(k+1) H_k (x^2/4)^k / (k!)^2]
    x = mp.mpf(x)
    q = (x / 2) ** 2
    s = mp.mpf(0)
    k = 0
    term = mp.mpf(1)
    h = mp.mpf(0)
    while True:
        k += 1
        term = term * q / (k * k)
        h += mp.mpf(1) / k
        piece = (-1) ** (k + 1) * h * term
        s += piece
        if abs(piece) < mp.mpf("1e-30") and k > x:
            break
    return 2 / mp.pi * ((mp.log(x / 2) + mp.euler) * ascending_j(0, x) + s)


def jhat(n, x):
    return mp.diff(lambda v: mp.besselj(v, x), n)


def p_sum(mu, x):
    x = mp.mpf(x)
    sign = (-1) ** mu
    cache_j, cache_h = {}, {}

    def J(k):
        if k not in cache_j:
            cache_j[k] = mp.besselj(k, x)
        return cache_j[k]

    def H(k):
        if k not in cache_h:
            cache_h[k] = jhat(k, x)
        return cache_h[k]

    total = mp.mpf(0)
    n = 0
    while True:
        n += 1
        t = n * ((H(n - mu) * J(n) + J(n - mu) * H(n))
                 + sign * (H(n + mu) * J(n) + J(n + mu) * H(n)))
        total += t
        if n > x + abs(mu) + 10 and abs(t) < mp.mpf("1e-25"):
            return total


def fmu_integral(mu, x, k):
    f = lambda t: mp.pi / 4 * (mp.bessely(mu, t) * mp.besselj(0, t) + mp.besselj(mu, t) * mp.bessely(0, t))
    # 20 digits is plenty for a double-precision reference and keeps the
    # oscillatory quadrature to about a minute per integral
    with mp.workdps(20):
        return mp.quadosc(lambda t: f(t) / t ** k, [mp.mpf(x), mp.inf], period=mp.pi)


def g1(mu, z):
    h = mp.mpf(mu) / 2
    return mp.meijerg([[], [0.5, 1]], [[-h, h, h], [-h]], z)


def g2(mu, z):
    lo, hi = -(mp.mpf(mu) + 1) / 2, (mp.mpf(mu) - 1) / 2
    return mp.meijerg([[], [-0.5, 1]], [[lo, hi, hi], [lo]], z)


def lemma1(nu, mu, x):
    x = mp.mpf(x)
    total = mp.besselj(nu + mu, x) * mp.besselj(nu, x)
    n = 0
    while True:
        n += 1
        t = 2 * mp.besselj(nu + mu + n, x) * mp.besselj(nu + n, x)
        total += t
        if n > x + 10 and abs(t) < mp.mpf("1e-30"):
            return total


def main():
    f = lambda v: float(v)
    gold = {
        "bessel_j_1_1": f(ascending_j(1, 1.0)),
        "bessel_y_0_2": f(y0_series(2.0)),
        "loggamma_2p3i": [f(mp.re(mp.loggamma(2 + 3j))), f(mp.im(mp.loggamma(2 + 3j)))],
        "loggamma": [[z.real, z.imag, f(mp.re(mp.loggamma(z))), f(mp.im(mp.loggamma(z)))]
                     for z in (0.5 + 0j, 1e-3 + 0j, -2.5 + 0.1j, -7.3 - 4.2j, 3.0 + 40.0j,
                               0.25 - 120.0j, 500.0 + 3.0j, -30.5 + 0.5j, 2e5 - 7e5j)],
        "bessel_j": [[n, x, f(mp.besselj(n, x))] for n in (0, 1, 5, 17, 40, 64)
                     for x in (0.01, 0.5, 3.0, 25.0, 150.0, 200.0)],
        "bessel_y": [[n, x, f(mp.bessely(n, x))] for n in (0, 1, 2, 7, 20)
                     for x in (0.1, 1.0, 5.0, 30.0, 199.0)],
        "jhat": [[n, x, f(jhat(n, x))] for n in (0, 1, 2, 3, 10, 30)
                 for x in (0.5, 2.0, 10.0, 40.0)],
        "p_series": [[mu, x, f(p_sum(mu, x))] for mu, x in
                     ((1, 1.0), (2, 1.0), (3, 5.0), (4, 10.0), (-3, 2.0), (1, 20.0))],
        "fmu_integrals": [[mu, x, f(fmu_integral(mu, x, 1)), f(fmu_integral(mu, x, 2))]
                          for mu, x in ((1, 1.0), (2, 1.0), (3, 5.0))],
        "meijer_g1": [[mu, x, f(g1(mu, mp.mpf(x) ** 2))] for mu, x in
                      ((1, 1.0), (2, 1.0), (3, 5.0), (1, 30.0), (-2, 2.0))],
        "meijer_g2": [[mu, x, f(g2(mu, mp.mpf(x) ** 2))] for mu, x in
                      ((1, 1.0), (2, 1.0), (3, 1.0), (2, 7.0))],
        "lemma1": [[nu, mu, x, f(lemma1(nu, mu, x))] for nu, mu, x in
                   ((0, 1, 2.0), (1, 1, 2.0), (2, 3, 10.0))],
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(gold, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
