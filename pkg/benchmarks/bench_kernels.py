"""Time the numba kernels against their numpy twins.

Run with ``python3 benchmarks/bench_kernels.py [--repeat N]``.  Both paths
are compiled or imported in one process regardless of
``BESSELREPS_DISABLE_NUMBA``, so the table compares them directly.  The
first numba call (JIT or cache load) is excluded by a warm-up.
"""

from __future__ import annotations

import argparse
import math
import timeit

import numpy as np

from besselreps import QuadSpec, _accel, integrate_finite, kernels


def _series_case():
    xs = np.linspace(0.0, 25.0, 2000)
    return (lambda: kernels.nb_series_sum(1.5, xs, -1, 1, 200),
            lambda: kernels.np_series_sum(1.5, xs, -1, 1, 200))


def _schlafli_case():
    xs = np.linspace(25.0, 120.0, 500)
    gx, gw = kernels.gauss_legendre(kernels.schlafli_order(xs.max()))
    tx, tw = kernels.gauss_legendre(40)
    sp = math.sin(math.pi * 0.3)
    args = (0.3, xs, sp, gx, gw, tx, tw)
    return (lambda: kernels.nb_bessel_j_integral(*args),
            lambda: kernels.np_bessel_j_integral(*args))


def _imag_case():
    spec = QuadSpec()
    cs = (0.5, 3.0, 10.0, 30.0)

    def nb():
        for c in cs:
            kernels.nb_imag_inner(c, False, 0.0, spec.rel_tol, spec.abs_tol, spec.max_depth, 4096)

    def npy():
        for c in cs:
            integrate_finite(lambda p: kernels.imag_integrand(p, c, False, 0.0), 0.0, math.pi, spec)

    return nb, npy


CASES = {
    "series_sum (2000 x, J_1.5)": _series_case,
    "bessel_j_integral (500 x > 25)": _schlafli_case,
    "imag inner quadrature (4 c)": _imag_case,
}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5, help="timing repeats, best is reported")
    ns = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        print("numba is not installed; nothing to compare")
        return 1
    print(f"{'kernel':34s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'speed-up':>9s}")
    for name, make in CASES.items():
        nb, npy = make()
        nb()  # warm-up / JIT
        npy()
        t_nb = min(timeit.repeat(nb, number=1, repeat=ns.repeat)) * 1e3
        t_np = min(timeit.repeat(npy, number=1, repeat=ns.repeat)) * 1e3
        print(f"{name:34s} {t_nb:11.3f} {t_np:11.3f} {t_np / t_nb:8.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
