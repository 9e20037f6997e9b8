"""Integral representations of J_0, I_0, J_alpha and I_alpha.

Single forms::

    J_0(x) = 1/(pi x) int_0^pi (sin(x s) + x s cos(x s)) s dphi,   s = sin(phi)
    I_0(x) = 1/(pi x) int_0^pi (sinh(x s) + x s cosh(x s)) s dphi

Reduction forms (alpha > 0)::

    J_alpha(x) = (x/2)^alpha / Gamma(alpha) int_0^1 J_0(x sqrt(1-t)) t^(alpha-1) dt

and the same with I in place of J.  Substituting t = sin^2(theta) and the
single form for the inner J_0 gives the double forms, evaluated here as
iterated integrals.

The inner J_0 / I_0 of the reduction forms comes from the power series, not
from the single forms, so that a representation is never checked against
itself.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from ._accel import USE_NUMBA
from .errors import DomainError, FormatOverflowError
from .quadrature import DEFAULT_SPEC, QuadResult, QuadSpec, integrate_finite, tanh_sinh
from .special import (
    as_order,
    bessel_i_series,
    bessel_j_series,
    beta,
    i0_array,
    j0_array,
)

X_SERIES_SWITCH = 1e-3
J0_REP_X_MAX = 60.0
I0_REP_X_MAX = 30.0
I0_REP_X_MAX_SCALED = 300.0
REDUCTION_X_MAX = 30.0
DOUBLE_X_MAX = 20.0
_INNER_MAX_PANELS = 4096


def _check_x(x, lo_open: bool, hi: float, op: str) -> float:
    x = float(x)
    if math.isnan(x) or x < 0 or (lo_open and x == 0):
        raise DomainError(f"{op} needs x {'>' if lo_open else '>='} 0, got {x}")
    if x > hi:
        raise DomainError(f"{op} needs x <= {hi}, got {x}")
    return x


def _inner_phi(c: float, hyperbolic: bool, shift: float, spec: QuadSpec):
    """``int_0^pi sin(phi) (S(c sin phi) + c sin(phi) C(c sin phi)) dphi``."""
    if USE_NUMBA:
        v, e, n, ok = kernels.nb_imag_inner(float(c), hyperbolic, float(shift), spec.rel_tol,
                                            spec.abs_tol, spec.max_depth, _INNER_MAX_PANELS)
        return float(v), float(e), int(n), bool(ok)
    r = integrate_finite(lambda phi: kernels.imag_integrand(phi, c, hyperbolic, shift),
                         0.0, math.pi, spec)
    return r.value, r.error_estimate, r.evals, r.converged


# ---------------------------------------------------------------------------
# single forms
# ---------------------------------------------------------------------------

def _single(x: float, hyperbolic: bool, shift: float, spec: QuadSpec, meta: dict) -> QuadResult:
    v, e, n, ok = _inner_phi(x, hyperbolic, shift, spec)
    scale = 1.0 / (math.pi * x)
    return QuadResult(v * scale, e * scale, n, ok, "converged" if ok else "max_depth", meta)


def j0_rep(x: float, spec: QuadSpec | None = None) -> QuadResult:
    """J_0(x) from the single-integral representation over [0, pi].

    Below ``X_SERIES_SWITCH`` the 1/(pi x) prefactor would amplify rounding,
    so the series value is returned and ``meta["series_switch"]`` is set.

    Examples
    --------
    >>> round(j0_rep(1.0).value, 12)
    0.765197686558
    """
    spec = spec or DEFAULT_SPEC
    x = _check_x(x, False, J0_REP_X_MAX, "j0_rep")
    if x < X_SERIES_SWITCH:
        s = bessel_j_series(0.0, x)
        return QuadResult(s.value, s.truncation_bound, s.terms_used, True, "converged",
                          {"series_switch": True})
    return _single(x, False, 0.0, spec, {"series_switch": False})


def i0_rep(x: float, scaled: bool = False, spec: QuadSpec | None = None) -> QuadResult:
    """I_0(x), or ``exp(-x) I_0(x)`` when ``scaled``, from the single integral.

    The scaled variant folds ``exp(-x)`` into the hyperbolic functions, so it
    stays finite up to x = 300.  Unscaled evaluation is limited to x <= 30.
    """
    spec = spec or DEFAULT_SPEC
    limit = I0_REP_X_MAX_SCALED if scaled else I0_REP_X_MAX
    x = float(x)
    if not scaled and x > I0_REP_X_MAX and math.isfinite(x):
        raise FormatOverflowError(
            f"i0_rep unscaled is limited to x <= {I0_REP_X_MAX}; use scaled=True")
    x = _check_x(x, False, limit, "i0_rep")
    if x < X_SERIES_SWITCH:
        s = bessel_i_series(0.0, x)
        f = math.exp(-x) if scaled else 1.0
        return QuadResult(s.value * f, s.truncation_bound * f, s.terms_used, True, "converged",
                          {"series_switch": True, "scaled": scaled})
    return _single(x, True, x if scaled else 0.0, spec, {"series_switch": False, "scaled": scaled})


# ---------------------------------------------------------------------------
# reduction forms
# ---------------------------------------------------------------------------

def _prefactor(alpha: float, x: float) -> float:
    """(x/2)^alpha / Gamma(alpha)."""
    if alpha < 170.0:
        return math.pow(0.5 * x, alpha) / math.gamma(alpha)
    return math.exp(alpha * math.log(0.5 * x) - math.lgamma(alpha))


def _reduction(alpha, x, spec, hyperbolic: bool, mirrored: bool, op: str) -> QuadResult:
    spec = spec or DEFAULT_SPEC
    a = as_order(alpha).require(gt=0.0, op=op)
    x = _check_x(x, False, REDUCTION_X_MAX, op)
    if x == 0.0:
        return QuadResult(0.0, 0.0, 0, True, "converged", {"inner": "series"})
    inner = i0_array if hyperbolic else j0_array
    pre = _prefactor(a, x)

    if mirrored:
        def f(t, _dt, dc):
            return inner(x * np.sqrt(t)) * dc ** (a - 1.0)
    else:
        def f(t, _dt, dc):
            return inner(x * np.sqrt(dc)) * t ** (a - 1.0)

    inner_spec = QuadSpec(spec.rel_tol, spec.abs_tol / max(abs(pre), 1e-300),
                          spec.max_depth, spec.max_evals)
    res = tanh_sinh(f, 0.0, 1.0, inner_spec, complement=True)
    out = res.scaled(pre)
    out.meta["inner"] = "series"
    return out


def j_alpha_reduction(alpha, x: float, spec: QuadSpec | None = None) -> QuadResult:
    """J_alpha(x) from ``(x/2)^a/Gamma(a) int_0^1 J_0(x sqrt(1-t)) t^(a-1) dt``.

    Requires alpha > 0 and 0 <= x <= 30.  The t-integral is done by tanh-sinh
    so the t^(alpha-1) endpoint singularity is harmless.
    """
    return _reduction(alpha, x, spec, False, False, "j_alpha_reduction")


def i_alpha_reduction(alpha, x: float, spec: QuadSpec | None = None) -> QuadResult:
    """I_alpha(x) from the reduction integral with I_0 as the inner function."""
    return _reduction(alpha, x, spec, True, False, "i_alpha_reduction")


def j_alpha_reduction_mirrored(alpha, x: float, spec: QuadSpec | None = None) -> QuadResult:
    """The t -> 1-t image ``int_0^1 J_0(x sqrt(t)) (1-t)^(a-1) dt`` of the reduction form."""
    return _reduction(alpha, x, spec, False, True, "j_alpha_reduction_mirrored")


def i_alpha_reduction_mirrored(alpha, x: float, spec: QuadSpec | None = None) -> QuadResult:
    return _reduction(alpha, x, spec, True, True, "i_alpha_reduction_mirrored")


# ---------------------------------------------------------------------------
# double forms
# ---------------------------------------------------------------------------

def _double(alpha, x, spec, hyperbolic: bool, op: str) -> QuadResult:
    spec = spec or DEFAULT_SPEC
    a = as_order(alpha).require(gt=0.0, op=op)
    x = _check_x(x, False, DOUBLE_X_MAX, op)
    if x == 0.0:
        return QuadResult(0.0, 0.0, 0, True, "converged", {})
    pre = _prefactor(a, x) / (math.pi * x)
    outer_spec = QuadSpec(spec.rel_tol, spec.abs_tol / abs(pre), spec.max_depth, spec.max_evals)
    inner_spec = outer_spec.tightened(10.0)
    expo = 2.0 * a - 1.0
    stats = {"evals": 0, "max_err": 0.0, "ok": True}

    def outer(theta, _dt=None, _dc=None):
        vals = np.empty_like(theta)
        for i, th in enumerate(theta):
            v, e, n, ok = _inner_phi(x * math.cos(th), hyperbolic, 0.0, inner_spec)
            vals[i] = v
            stats["evals"] += n
            stats["max_err"] = max(stats["max_err"], e)
            stats["ok"] &= ok
        return 2.0 * np.sin(theta) ** expo * vals

    # sin^(2a-1) is smooth only for non-negative integer exponents
    if expo >= 0 and expo == math.floor(expo):
        res = integrate_finite(outer, 0.0, 0.5 * math.pi, outer_spec)
        rule = "gauss-kronrod"
    else:
        res = tanh_sinh(outer, 0.0, 0.5 * math.pi, outer_spec, complement=True)
        rule = "tanh-sinh"
    # weight mass of the outer integrand: int_0^{pi/2} 2 sin^(2a-1) = B(a, 1/2)
    inner_err = beta(a, 0.5) * stats["max_err"]
    ok = res.converged and stats["ok"]
    return QuadResult(
        res.value * pre,
        (res.error_estimate + inner_err) * abs(pre),
        res.evals + stats["evals"],
        ok,
        "converged" if ok else res.status if not res.converged else "inner_failure",
        {"outer_rule": rule},
    )


def j_alpha_double(alpha, x: float, spec: QuadSpec | None = None) -> QuadResult:
    """J_alpha(x) from the iterated (theta, phi) double integral.

    Requires alpha > 0 and 0 <= x <= 20.  The inner phi-integral is the
    single-form integrand at argument ``x cos(theta)``, solved to a tolerance
    ten times tighter than the outer one.
    """
    return _double(alpha, x, spec, False, "j_alpha_double")


def i_alpha_double(alpha, x: float, spec: QuadSpec | None = None) -> QuadResult:
    """Hyperbolic analogue of :func:`j_alpha_double` for I_alpha(x)."""
    return _double(alpha, x, spec, True, "i_alpha_double")


# ---------------------------------------------------------------------------
# derivative form of the single integrand, and the closed-sum lemma
# ---------------------------------------------------------------------------

def single_integrand(x, phi, hyperbolic: bool = False):
    """``(S(x s) + x s C(x s)) s`` with s = sin(phi), the expanded integrand."""
    return kernels.imag_integrand(phi, np.asarray(x, dtype=float), hyperbolic)


def derivative_integrand(x, phi, hyperbolic: bool = False):
    """``sin(phi) d/dx [x S(x sin phi)]`` by complex-step differentiation.

    This route never writes out the product rule, so agreement with
    :func:`single_integrand` checks the expanded form independently.
    """
    x = np.asarray(x, dtype=float)
    s = np.sin(np.asarray(phi, dtype=float))
    h = 1e-30
    z = x + 1j * h
    fn = np.sinh if hyperbolic else np.sin
    return s * np.imag(z * fn(z * s)) / h


def closed_sum_series(z: float, max_terms: int = 500) -> float:
    """Partial sums of ``sum_{m>=1} (-1)^(m-1) m z^m / Gamma(2m)`` to convergence."""
    z = float(z)
    if z < 0:
        raise DomainError(f"closed_sum_series needs z >= 0, got {z}")
    terms = []
    for m in range(1, max_terms + 1):
        t = (-1) ** (m - 1) * m * math.exp(m * math.log(z) - math.lgamma(2 * m)) if z > 0 else 0.0
        terms.append(t)
        if m > z and abs(t) < 1e-18 * max(1.0, abs(math.fsum(terms))):
            break
    return math.fsum(terms)


def closed_sum_rhs(z: float) -> float:
    """``(sqrt(z) sin(sqrt(z)) + z cos(sqrt(z))) / 2``."""
    r = math.sqrt(z)
    return 0.5 * (r * math.sin(r) + z * math.cos(r))
