"""Laplace-type integrals of Bessel functions: closed forms and quadrature.

The master identity, for alpha > 0 and a >= 0, b > 0::

    int_0^inf exp(-a t) J_alpha(b t) t^(-alpha) dt
        = (a^2+b^2)^alpha / (2^alpha b^(alpha+1) Gamma(alpha))
          * b / sqrt(a^2+b^2) * B(b^2/(a^2+b^2); alpha, 1/2)

with B the lower incomplete beta function.  Note the squared argument: it
comes from the substitution u -> u^2 applied to the upper limit
b/sqrt(a^2+b^2) of the preceding integral.

The numerical sides use exponential truncation when a > 0 and lobe
summation between the zeros of J_alpha(b t) when a = 0.
"""

from __future__ import annotations

import math
import warnings

import numpy as np

from .errors import DomainError, SlowTailWarning, UncoveredCaseError
from .quadrature import (
    DEFAULT_SPEC,
    QuadResult,
    QuadSpec,
    integrate_oscillatory_zeros,
    integrate_semi_infinite_decay,
)
from .special import as_order, bessel_j_scaled, bessel_j_values, incomplete_beta, log_gamma


def _check_ab(a, b, op: str):
    a = float(a)
    b = float(b)
    if not (math.isfinite(b) and b > 0):
        raise DomainError(f"{op} needs b > 0, got {b}")
    if not (math.isfinite(a) and a >= 0):
        raise DomainError(f"{op} needs a >= 0, got {a}")
    return a, b


def lipschitz_rhs(a: float, b: float) -> float:
    """``1 / sqrt(a^2 + b^2)``, the Laplace transform of J_0(b t) at a."""
    a, b = _check_ab(a, b, "lipschitz_rhs")
    return 1.0 / math.hypot(a, b)


def _panels(a: float, b: float) -> int:
    # about one initial panel per half oscillation over the truncated range
    return int(min(2000, max(8, math.ceil(b * 50.0 / (a * math.pi)))))


def laplace_j0_numeric(a: float, b: float, spec: QuadSpec | None = None) -> QuadResult:
    """``int_0^inf exp(-a t) J_0(b t) dt`` by quadrature.

    For a > 0 the integrand is truncated where ``exp(-a t)`` is negligible.
    For a = 0 the integral converges only conditionally and is summed lobe
    by lobe between zeros of J_0(b t), with epsilon-algorithm acceleration.
    """
    spec = spec or DEFAULT_SPEC
    a, b = _check_ab(a, b, "laplace_j0_numeric")
    if a == 0.0:
        res = integrate_oscillatory_zeros(lambda t: bessel_j_values(0.0, b * t), 0.0,
                                          0.25 * math.pi / b, spec)
        res.meta["method"] = "lobes"
        return res

    def f(t):
        return np.exp(-a * t) * bessel_j_values(0.0, b * t)

    res = integrate_semi_infinite_decay(f, a, spec, panels=_panels(a, b))
    res.meta["method"] = "decay"
    return res


def laplace_j_alpha_closed(alpha, a: float, b: float) -> float:
    """Closed form of ``int_0^inf exp(-a t) J_alpha(b t) t^(-alpha) dt``.

    The prefactor is assembled in the log domain so alpha up to 50 does not
    overflow intermediates.

    Examples
    --------
    >>> round(laplace_j_alpha_closed(1, 3, 4), 12)
    0.5
    """
    al = as_order(alpha).require(gt=0.0, op="laplace_j_alpha_closed")
    a, b = _check_ab(a, b, "laplace_j_alpha_closed")
    r2 = a * a + b * b
    log_pre = al * math.log(r2) - al * math.log(2.0) - (al + 1.0) * math.log(b) - log_gamma(al)
    # b^2/(a^2+b^2) written as 1/(1+(a/b)^2) so a = 0 gives exactly 1
    x = 1.0 / (1.0 + (a / b) ** 2)
    return math.exp(log_pre) * (b / math.sqrt(r2)) * incomplete_beta(x, al, 0.5)


def laplace_j_alpha_numeric(alpha, a: float, b: float,
                            spec: QuadSpec | None = None) -> QuadResult:
    """``int_0^inf exp(-a t) J_alpha(b t) t^(-alpha) dt`` by quadrature.

    ``J_alpha(b t) t^(-alpha)`` is evaluated as ``b^alpha * J_alpha(y)/y^alpha``
    with y = b t, which stays finite at t = 0.  When a = 0 and
    alpha <= 1/2 the tail is not absolutely integrable; a
    :class:`SlowTailWarning` is issued and lobe summation is used.
    """
    spec = spec or DEFAULT_SPEC
    al = as_order(alpha).require(gt=0.0, op="laplace_j_alpha_numeric")
    a, b = _check_ab(a, b, "laplace_j_alpha_numeric")
    scale = math.exp(al * math.log(b))
    if a == 0.0:
        if al <= 0.5:
            warnings.warn(f"integrand tail decays like t^{-al - 0.5:.3g}; the result relies on "
                          "lobe acceleration", SlowTailWarning, stacklevel=2)
        res = integrate_oscillatory_zeros(lambda t: scale * bessel_j_scaled(al, b * t), 0.0,
                                          0.25 * math.pi / b, spec)
        res.meta["method"] = "lobes"
        return res

    def f(t):
        return scale * np.exp(-a * t) * bessel_j_scaled(al, b * t)

    res = integrate_semi_infinite_decay(f, a, spec, panels=_panels(a, b))
    res.meta["method"] = "decay"
    return res


def laplace_special_case(alpha, a: float, b: float) -> float:
    """Elementary closed forms of the master integral.

    Covered cases:

    * alpha = 1/2: ``sqrt(2/(pi b)) * arcsin(b / sqrt(a^2+b^2))``
    * alpha = 1: ``(sqrt(a^2+b^2) - a) / b``
    * a = 0, alpha > 0: ``(2b)^(alpha-1) Gamma(alpha) / Gamma(2 alpha)``
    * a = 0, alpha = 0: ``1 / b``

    Raises
    ------
    UncoveredCaseError
        For any other (alpha, a); use :func:`laplace_j_alpha_closed`.
    """
    al = as_order(alpha).require(ge=0.0, op="laplace_special_case")
    a, b = _check_ab(a, b, "laplace_special_case")
    if al == 0.5:
        return math.sqrt(2.0 / (math.pi * b)) * math.atan2(b, a)
    if al == 1.0:
        # sqrt(a^2+b^2) - a rewritten without cancellation
        return b / (math.hypot(a, b) + a)
    if a == 0.0:
        if al == 0.0:
            return 1.0 / b
        return math.exp((al - 1.0) * math.log(2.0 * b) + log_gamma(al) - log_gamma(2.0 * al))
    raise UncoveredCaseError(
        f"no elementary form for alpha={al}, a={a}; covered: alpha in {{1/2, 1}} or a = 0")
