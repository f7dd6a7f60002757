"""Compare the numba kernels with the pure-numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both modules are imported directly, so the BESSELSUM_NO_JIT flag does not
matter here. Compilation (or loading the on-disk cache) happens in a
warm-up call before timing starts.
"""
import argparse
import timeit

import numpy as np

from besselsum import _backend, _kernels_numba, _kernels_numpy
from besselsum.meijer_g import first_g_spec


def _cases():
    rng = np.random.default_rng(0)
    few_x = np.array([3.7])
    many_x = np.sort(rng.uniform(0.1, 120.0, 2000))
    z = rng.uniform(-40, 40, 20000) + 1j * rng.uniform(-40, 40, 20000)
    spec = first_g_spec(2, 3.0)
    s = spec.contour_sigma + np.linspace(0, spec.ray_length, 8000) * np.exp(1j * spec.ray_angle)
    a = np.asarray(spec.a)
    b = np.asarray(spec.b)
    logz = float(np.log(spec.z))
    terms = rng.standard_normal(100000) * 10.0 ** rng.integers(-8, 8, 100000)

    def tables(x, nj):
        nstart = _backend.start_order(x.max(), nj)
        return lambda k: k.bessel_tables(x, nstart, nj, nj)

    return [
        ("bessel tables, 1 argument, orders 0..40", tables(few_x, 40)),
        ("bessel tables, 2000 arguments, orders 0..8", tables(many_x, 8)),
        ("complex log-gamma, 20000 points", lambda k: k.loggamma(z)),
        ("Meijer integrand, 8000 contour nodes", lambda k: k.meijer_integrand(s, a, b, 3, 0, logz)),
        ("compensated sum, 100000 terms", lambda k: k.compensated_sum(terms)),
    ]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    print(f"{'kernel':<44} {'numpy [ms]':>11} {'numba [ms]':>11} {'speed-up':>9}")
    for name, fn in _cases():
        fn(_kernels_numba)  # compile or load from cache
        fn(_kernels_numpy)
        t = {}
        for label, mod in (("numpy", _kernels_numpy), ("numba", _kernels_numba)):
            number = 3
            best = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            t[label] = best * 1e3
        print(f"{name:<44} {t['numpy']:>11.3f} {t['numba']:>11.3f} {t['numpy'] / t['numba']:>8.1f}x")


if __name__ == "__main__":
    main()
