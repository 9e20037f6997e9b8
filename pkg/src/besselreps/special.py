"""Scalar special functions and the power-series oracles for J and I.

Gamma and log-gamma wrap :func:`math.gamma` and :func:`math.lgamma`, adding
the pole and overflow errors of this package.  The Bessel series

    J_a(x) = sum_m (-1)^m (x/2)^(2m+a) / (m! Gamma(m+a+1))

and its all-positive analogue for I_a are summed in double-double arithmetic
(see :mod:`besselreps.kernels`), which keeps the J series accurate to about
1e-15 absolute up to x = 30 despite the cancellation between terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, FormatOverflowError, NonConvergenceError, PoleError
from .quadrature import QuadSpec, tanh_sinh

SERIES_X_MAX = 60.0
SERIES_TERM_CAP = 200
# J_alpha switches from the series to the Schlafli integral above this argument
SCHLAFLI_SWITCH = 25.0


@dataclass(frozen=True)
class Order:
    """A finite Bessel order.

    Operations state their own admissible range and check it with
    :meth:`require`.
    """

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not math.isfinite(a):
            raise DomainError(f"order must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    def __float__(self) -> float:
        return self.alpha

    def require(self, *, gt: float | None = None, ge: float | None = None,
                op: str = "operation") -> float:
        if gt is not None and not self.alpha > gt:
            raise DomainError(f"{op} needs alpha > {gt}, got {self.alpha}")
        if ge is not None and not self.alpha >= ge:
            raise DomainError(f"{op} needs alpha >= {ge}, got {self.alpha}")
        return self.alpha


def as_order(alpha) -> Order:
    return alpha if isinstance(alpha, Order) else Order(alpha)


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    truncation_bound: float

    def __float__(self) -> float:
        return self.value


# ---------------------------------------------------------------------------
# gamma family
# ---------------------------------------------------------------------------

def _finite_arg(x, name="x") -> float:
    x = float(x)
    if math.isnan(x):
        raise DomainError(f"{name} is NaN")
    return x


def gamma(x: float) -> float:
    """Gamma function for real ``x``.

    Raises
    ------
    PoleError
        ``x`` is zero or a negative integer.
    FormatOverflowError
        The result exceeds the binary64 range (x above about 171.6).
    """
    x = _finite_arg(x)
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError as exc:
        raise FormatOverflowError(f"gamma({x}) overflows binary64") from exc


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    x = _finite_arg(x)
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    """Complete beta function ``Gamma(a) Gamma(b) / Gamma(a+b)`` for a, b > 0."""
    a = _finite_arg(a, "a")
    b = _finite_arg(b, "b")
    if not (a > 0 and b > 0):
        raise DomainError(f"beta needs a > 0 and b > 0, got ({a}, {b})")
    if a + b < 170.0:
        return math.gamma(a) * math.gamma(b) / math.gamma(a + b)
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


_IBETA_SPEC = QuadSpec(rel_tol=1e-15, abs_tol=1e-300, max_depth=12)


def incomplete_beta(x: float, a: float, b: float) -> float:
    """Lower incomplete beta ``int_0^x u^(a-1) (1-u)^(b-1) du`` (not regularised).

    Evaluated by tanh-sinh quadrature of the defining integral after the map
    u = x s.  For a < 1 the substitution v = u^a removes the endpoint
    singularity first.  At x = 1 the complete beta function is returned.
    """
    x = _finite_arg(x)
    a = _finite_arg(a, "a")
    b = _finite_arg(b, "b")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"incomplete_beta needs 0 <= x <= 1, got {x}")
    if not (a > 0 and b > 0):
        raise DomainError(f"incomplete_beta needs a > 0 and b > 0, got ({a}, {b})")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return beta(a, b)
    xc = 1.0 - x
    if a >= 1.0:
        def f(s, _ds, dc):
            # 1 - x s = (1 - x) + x (1 - s), free of cancellation near s = 1
            return (x * s) ** (a - 1.0) * (xc + x * dc) ** (b - 1.0)

        scale = x
    else:
        def f(s, _ds, dc):
            # 1 - x s^(1/a) with 1 - s^(1/a) = -expm1(log1p(-(1 - s)) / a)
            with np.errstate(divide="ignore"):
                one_minus = -np.expm1(np.log1p(-dc) / a)
            return (xc + x * one_minus) ** (b - 1.0)

        scale = x ** a / a
    res = tanh_sinh(f, 0.0, 1.0, _IBETA_SPEC, complement=True)
    return scale * res.value


# ---------------------------------------------------------------------------
# series oracles
# ---------------------------------------------------------------------------

def _check_series_args(alpha, x, op):
    a = as_order(alpha).require(gt=-1.0, op=op)
    x = _finite_arg(x)
    if x < 0:
        raise DomainError(f"{op} needs x >= 0, got {x}")
    if x > SERIES_X_MAX:
        raise DomainError(f"{op} needs x <= {SERIES_X_MAX}, got {x}")
    return a, x


def _power_prefactor(alpha: float, x: float) -> float:
    """(x/2)^alpha / Gamma(alpha + 1)."""
    if alpha == 0.0:
        return 1.0
    if x == 0.0:
        if alpha > 0:
            return 0.0
        raise DomainError(f"order {alpha} < 0 is singular at x = 0")
    if alpha + 1.0 < 170.0:
        return math.pow(0.5 * x, alpha) / math.gamma(alpha + 1.0)
    return math.exp(alpha * math.log(0.5 * x) - math.lgamma(alpha + 1.0))


def _series(alpha, x, sign, op, max_terms, min_terms) -> SeriesResult:
    a, x = _check_series_args(alpha, x, op)
    pre = _power_prefactor(a, x)
    s, terms, tail, ok = kernels.series_sum(a, np.array([x]), sign, min_terms, max_terms)
    if not ok[0]:
        raise NonConvergenceError(f"{op}({a}, {x}) did not converge in {max_terms} terms")
    # the tail is on the scale of the bracketed sum; add a few ulps of rounding
    bound = abs(pre) * float(tail[0]) + 4.0 * kernels.EPS * abs(pre * s[0])
    if sign < 0:
        # double-double rounding grows with sum |c_m|, which is the I series
        absum = kernels.series_sum(a, np.array([x]), 1, 1, max_terms)[0][0]
        bound += 1e-31 * int(terms[0]) * abs(pre) * absum
    return SeriesResult(float(pre * s[0]), int(terms[0]), float(bound))


def bessel_j_series(alpha, x: float, *, max_terms: int = SERIES_TERM_CAP,
                    min_terms: int = 1) -> SeriesResult:
    """J_alpha(x) from its power series, for alpha > -1 and 0 <= x <= 60.

    ``truncation_bound`` is the first omitted term (the alternating-tail
    bound, valid because summation only stops once the terms decrease)
    plus a rounding allowance.  ``min_terms`` forces extra terms, which the
    tests use to build a reference from the same series.

    Raises
    ------
    DomainError
        ``alpha <= -1``, ``x < 0`` or ``x > 60``.
    NonConvergenceError
        More than ``max_terms`` terms would be needed.
    """
    return _series(alpha, x, -1, "bessel_j_series", max_terms, min_terms)


def bessel_i_series(alpha, x: float, *, max_terms: int = SERIES_TERM_CAP,
                    min_terms: int = 1) -> SeriesResult:
    """I_alpha(x) from its all-positive power series.

    Same domain as :func:`bessel_j_series`; the truncation bound comes from
    a geometric majorant of the tail.
    """
    return _series(alpha, x, 1, "bessel_i_series", max_terms, min_terms)


# ---------------------------------------------------------------------------
# vectorised helpers for integrands
# ---------------------------------------------------------------------------

def _series_array(alpha: float, xs: np.ndarray, sign: int) -> np.ndarray:
    s, _, _, ok = kernels.series_sum(alpha, xs, sign, 1, SERIES_TERM_CAP)
    if not np.all(ok):
        raise NonConvergenceError("series did not converge for some arguments")
    return s


def j0_array(xs) -> np.ndarray:
    """J_0 on an array with entries in [0, 60], from the series."""
    xs = np.asarray(xs, dtype=float)
    return _series_array(0.0, xs.ravel(), -1).reshape(xs.shape)


def i0_array(xs) -> np.ndarray:
    """I_0 on an array with entries in [0, 60], from the series."""
    xs = np.asarray(xs, dtype=float)
    return _series_array(0.0, xs.ravel(), 1).reshape(xs.shape)


def bessel_j_scaled(alpha: float, ys) -> np.ndarray:
    """``J_alpha(y) / y^alpha`` for y >= 0 and alpha >= 0.

    The series serves y <= 25 (where the quotient is an even power series
    with a finite limit at 0); larger y use the Schlafli integral.
    """
    ys = np.asarray(ys, dtype=float)
    flat = ys.ravel()
    out = np.empty_like(flat)
    small = flat <= SCHLAFLI_SWITCH
    if small.any():
        c = math.exp(-alpha * math.log(2.0) - math.lgamma(alpha + 1.0))
        out[small] = c * _series_array(alpha, flat[small], -1)
    big = ~small
    if big.any():
        yb = flat[big]
        out[big] = kernels.bessel_j_integral(alpha, yb) * np.exp(-alpha * np.log(yb))
    return out.reshape(ys.shape)


def bessel_j_values(alpha: float, ys) -> np.ndarray:
    """``J_alpha(y)`` for y >= 0 (series up to 25, Schlafli integral above)."""
    ys = np.asarray(ys, dtype=float)
    if alpha == 0.0:
        flat = ys.ravel()
        out = np.empty_like(flat)
        small = flat <= SCHLAFLI_SWITCH
        if small.any():
            out[small] = _series_array(0.0, flat[small], -1)
        if (~small).any():
            out[~small] = kernels.bessel_j_integral(0.0, flat[~small])
        return out.reshape(ys.shape)
    with np.errstate(divide="ignore"):
        return bessel_j_scaled(alpha, ys) * ys ** alpha
