"""Integrand curves whose areas are J_0(z) and I_0(z).

``g_z(phi) = (S(z sin phi) + z sin(phi) C(z sin phi)) sin(phi) / (pi z)`` on
[0, pi], with (S, C) = (sin, cos) for J_0 and (sinh, cosh) for I_0.  The
area under each curve equals the function value, which the trapezoid check
confirms from the sampled data alone.
"""

from __future__ import annotations

import csv
import io
import math

import numpy as np
from scipy.integrate import trapezoid

from . import kernels
from .errors import DomainError
from .special import bessel_i_series, bessel_j_series

FUNCTIONS = ("j0", "i0")
MIN_SAMPLES = 3
CHECK_TOL = 1e-4


def curve(function: str, z: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``g_z`` at ``samples`` equally spaced phi in [0, pi]."""
    if function not in FUNCTIONS:
        raise DomainError(f"function must be one of {FUNCTIONS}, got {function!r}")
    if samples < MIN_SAMPLES:
        raise DomainError(f"samples must be >= {MIN_SAMPLES}, got {samples}")
    if not z > 0:
        raise DomainError(f"z must be > 0, got {z}")
    phi = np.linspace(0.0, math.pi, samples)
    g = kernels.imag_integrand(phi, float(z), function == "i0") / (math.pi * z)
    # sin(pi) is 1.2e-16, not 0; pin the endpoint to the exact value
    g[-1] = 0.0
    return phi, g


def reference(function: str, z: float) -> float:
    s = bessel_i_series(0.0, z) if function == "i0" else bessel_j_series(0.0, z)
    return s.value


def check_tolerance(function: str, ref: float) -> float:
    return CHECK_TOL * abs(ref) if function == "i0" else CHECK_TOL


def figure_rows(function: str, z_values, samples: int):
    """Yield ``(z, phi, g)`` rows for every z, in order."""
    for z in z_values:
        phi, g = curve(function, z, samples)
        for p, v in zip(phi, g):
            yield float(z), float(p), float(v)


def write_csv(rows, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["z", "phi", "g"])
    for z, p, g in rows:
        w.writerow([repr(z), repr(p), repr(g)])


def to_csv(function: str, z_values, samples: int) -> str:
    buf = io.StringIO()
    write_csv(figure_rows(function, z_values, samples), buf)
    return buf.getvalue()


def trapezoid_check(rows) -> dict[float, float]:
    """Trapezoid area of each curve in a sequence of ``(z, phi, g)`` rows."""
    by_z: dict[float, tuple[list, list]] = {}
    for z, p, g in rows:
        by_z.setdefault(float(z), ([], []))
        by_z[float(z)][0].append(float(p))
        by_z[float(z)][1].append(float(g))
    return {z: float(trapezoid(gs, ps)) for z, (ps, gs) in by_z.items()}


def read_csv(text: str):
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    if header != ["z", "phi", "g"]:
        raise DomainError(f"unexpected header {header}")
    return [tuple(float(c) for c in row) for row in reader if row]
