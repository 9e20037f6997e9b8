"""Modified Bessel K: closed forms, two integral representations, Hardy-type integrals.

Representations of K_alpha(z) for z > 0::

    K_alpha(z) = Gamma(alpha+1/2) 2^alpha / (z^alpha sqrt(pi))
                 * int_0^inf cos(z u) / (u^2+1)^(alpha+1/2) du        (Basset)
    K_alpha(z) = z^(-alpha) int_0^inf (2t)^(alpha-1) exp(-t - z^2/(4t)) dt

Both follow from the Gaussian-cosine identity

    (2 Gamma(p)/sqrt(pi)) int_0^inf cos(2Rx)/(beta^2+x^2)^p dx
        = int_0^inf t^(p-3/2) exp(-beta^2 t - R^2/t) dt,

whose inner step is ``int_0^inf exp(-x^2 t) cos(2Rx) dx = sqrt(pi/t)/2 exp(-R^2/t)``.

The Hardy-type integrals are non-decaying oscillatory integrals handled by
lobe summation::

    int_0^inf sin(a u + b/u) du/u     = pi J_0(2 sqrt(ab))
    int_0^inf sin(a u^2 - b/u^2) du   = (1/(2 sqrt(a))) sqrt(pi/2) exp(-2 sqrt(ab))
                                      = (b/(4a))^(1/4) K_{1/2}(2 sqrt(ab))
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, SlowTailWarning
from .quadrature import (
    DEFAULT_SPEC,
    QuadResult,
    QuadSpec,
    combine,
    integrate_oscillatory_phase,
    integrate_semi_infinite_decay,
    tanh_sinh,
)
from .special import as_order, log_gamma

_LOG_SQRT_PI = 0.5 * math.log(math.pi)


def _positive(x, name: str, op: str) -> float:
    x = float(x)
    if not (math.isfinite(x) and x > 0):
        raise DomainError(f"{op} needs {name} > 0, got {x}")
    return x


# ---------------------------------------------------------------------------
# half-order closed forms
# ---------------------------------------------------------------------------

def k_half_closed(x: float) -> float:
    """``K_{1/2}(x) = sqrt(pi/(2x)) exp(-x)``."""
    x = _positive(x, "x", "k_half_closed")
    return math.sqrt(math.pi / (2.0 * x)) * math.exp(-x)


def i_half_closed(x: float) -> float:
    """``I_{1/2}(x) = sqrt(2/(pi x)) sinh(x)``."""
    x = _positive(x, "x", "i_half_closed")
    return math.sqrt(2.0 / (math.pi * x)) * math.sinh(x)


def i_neg_half_closed(x: float) -> float:
    """``I_{-1/2}(x) = sqrt(2/(pi x)) cosh(x)``."""
    x = _positive(x, "x", "i_neg_half_closed")
    return math.sqrt(2.0 / (math.pi * x)) * math.cosh(x)


# ---------------------------------------------------------------------------
# integral representations
# ---------------------------------------------------------------------------

def k_alpha_basset(alpha, z: float, spec: QuadSpec | None = None) -> QuadResult:
    """K_alpha(z) from the cosine integral, by lobe summation.

    The lobes are cut at the zeros of cos(z u), i.e. where ``z u + pi/2``
    crosses a multiple of pi.  The amplitude decays like u^(-2 alpha - 1);
    for alpha <= 1/2 a :class:`SlowTailWarning` flags the weak decay.
    """
    spec = spec or DEFAULT_SPEC
    al = as_order(alpha).require(ge=0.0, op="k_alpha_basset")
    z = _positive(z, "z", "k_alpha_basset")
    if al <= 0.5:
        warnings.warn(f"Basset integrand decays like u^{-2 * al - 1:.3g}", SlowTailWarning,
                      stacklevel=2)
    log_pre = log_gamma(al + 0.5) + al * math.log(2.0) - al * math.log(z) - _LOG_SQRT_PI
    pre = math.exp(log_pre)
    power = -(al + 0.5)
    inner_spec = QuadSpec(spec.rel_tol, spec.abs_tol / pre, spec.max_depth, spec.max_evals)
    res = integrate_oscillatory_phase(
        lambda u: (1.0 + u * u) ** power,
        lambda u: z * u + 0.5 * math.pi,
        lambda u: z + 0.0 * u,
        0.0,
        inner_spec,
    )
    return res.scaled(pre)


def exp_moment(nu: float, rate: float, r2: float, spec: QuadSpec | None = None) -> QuadResult:
    """``int_0^inf t^(nu-1) exp(-rate t - r2/t) dt`` for rate > 0, r2 >= 0.

    The range is split at the saddle ``sqrt(r2/rate)`` (or ``1/rate`` when
    r2 = 0).  The left part goes through tanh-sinh, which absorbs both the
    t^(nu-1) singularity and the essential zero of exp(-r2/t).  The right
    part uses exponential truncation.  The integrand is formed in the log
    domain so large |nu| cannot overflow.
    """
    spec = spec or DEFAULT_SPEC
    rate = _positive(rate, "rate", "exp_moment")
    r2 = float(r2)
    if r2 < 0 or not math.isfinite(r2):
        raise DomainError(f"exp_moment needs r2 >= 0, got {r2}")
    if r2 == 0 and not nu > 0:
        raise DomainError(f"exp_moment diverges at 0 for nu = {nu} <= 0 when r2 = 0")
    t0 = math.sqrt(r2 / rate) if r2 > 0 else 1.0 / rate

    def log_f(t):
        return (nu - 1.0) * np.log(t) - rate * t - r2 / t

    def left(u, _du, _dc):
        return np.exp(log_f(t0 * u))

    lhs = tanh_sinh(left, 0.0, 1.0, spec, complement=True).scaled(t0)
    rhs = integrate_semi_infinite_decay(lambda t: np.exp(log_f(t)), rate, spec, lo=t0)
    return combine(lhs, rhs, meta={"split": t0})


def k_alpha_exp(alpha, z: float, spec: QuadSpec | None = None) -> QuadResult:
    """K_alpha(z) from ``z^(-alpha) int_0^inf (2t)^(alpha-1) exp(-t - z^2/(4t)) dt``.

    Any real alpha with |alpha| <= 10 is accepted.
    """
    spec = spec or DEFAULT_SPEC
    al = as_order(alpha).alpha
    if abs(al) > 10:
        raise DomainError(f"k_alpha_exp needs |alpha| <= 10, got {al}")
    z = _positive(z, "z", "k_alpha_exp")
    pre = math.exp((al - 1.0) * math.log(2.0) - al * math.log(z))
    inner_spec = QuadSpec(spec.rel_tol, spec.abs_tol / pre, spec.max_depth, spec.max_evals)
    return exp_moment(al, 1.0, 0.25 * z * z, inner_spec).scaled(pre)


# ---------------------------------------------------------------------------
# Gaussian-cosine identity
# ---------------------------------------------------------------------------

@dataclass
class KernelPair:
    """Both sides of the Gaussian-cosine identity."""

    cos_form: QuadResult
    exp_form: QuadResult

    @property
    def difference(self) -> float:
        return self.cos_form.value - self.exp_form.value


def gaussian_cosine_kernel(beta2: float, p: float, R: float,
                           spec: QuadSpec | None = None) -> KernelPair:
    """Evaluate both sides of the Gaussian-cosine identity H(beta, p, R).

    Parameters
    ----------
    beta2 : float
        beta squared, > 0.
    p : float
        Power, > 1/2.
    R : float
        Frequency parameter, >= 0.

    Notes
    -----
    For R = 0 the cosine form becomes ``beta^(1-2p) int_0^{pi/2} cos^(2p-2)``
    after x = beta tan(theta) and is integrated by tanh-sinh.  For R > 0 it
    is summed over the lobes of cos(2Rx).
    """
    spec = spec or DEFAULT_SPEC
    beta2 = _positive(beta2, "beta2", "gaussian_cosine_kernel")
    p = float(p)
    if not p > 0.5:
        raise DomainError(f"gaussian_cosine_kernel needs p > 1/2, got {p}")
    R = float(R)
    if not (math.isfinite(R) and R >= 0):
        raise DomainError(f"gaussian_cosine_kernel needs R >= 0, got {R}")
    pre = 2.0 * math.exp(log_gamma(p) - _LOG_SQRT_PI)
    inner_spec = QuadSpec(spec.rel_tol, spec.abs_tol / pre, spec.max_depth, spec.max_evals)
    if R == 0.0:
        beta = math.sqrt(beta2)

        def g(_theta, _d, to_end):
            # cos(theta) = sin(pi/2 - theta) keeps precision near pi/2
            return np.sin(to_end) ** (2.0 * p - 2.0)

        cos_res = tanh_sinh(g, 0.0, 0.5 * math.pi, inner_spec, complement=True)
        cos_res = cos_res.scaled(pre * beta ** (1.0 - 2.0 * p))
    else:
        cos_res = integrate_oscillatory_phase(
            lambda x: (beta2 + x * x) ** (-p),
            lambda x: 2.0 * R * x + 0.5 * math.pi,
            lambda x: 2.0 * R + 0.0 * x,
            0.0,
            inner_spec,
        ).scaled(pre)
    exp_res = exp_moment(p - 0.5, beta2, R * R, spec)
    return KernelPair(cos_res, exp_res)


def gauss_cos_numeric(R: float, t: float, spec: QuadSpec | None = None) -> QuadResult:
    """``int_0^inf exp(-x^2 t) cos(2Rx) dx`` by truncated quadrature."""
    spec = spec or DEFAULT_SPEC
    t = _positive(t, "t", "gauss_cos_numeric")
    R = float(R)
    if not (math.isfinite(R) and R >= 0):
        raise DomainError(f"gauss_cos_numeric needs R >= 0, got {R}")
    return integrate_semi_infinite_decay(lambda x: np.exp(-t * x * x) * np.cos(2.0 * R * x),
                                         math.sqrt(t), spec)


def gauss_cos_closed(R: float, t: float) -> float:
    """``sqrt(pi/t)/2 * exp(-R^2/t)``."""
    t = _positive(t, "t", "gauss_cos_closed")
    return 0.5 * math.sqrt(math.pi / t) * math.exp(-R * R / t)


# ---------------------------------------------------------------------------
# Hardy-type oscillatory integrals
# ---------------------------------------------------------------------------

def hardy_original_check(a: float, b: float, spec: QuadSpec | None = None) -> QuadResult:
    """``int_0^inf sin(a u + b/u) du/u`` by lobe summation.

    The map u -> (b/a)/u preserves both du/u and the phase, so the branch
    below the stationary point u* = sqrt(b/a) equals the branch above it.
    The value is twice the upper branch, on which the phase increases
    monotonically from 2 sqrt(ab).
    """
    spec = spec or DEFAULT_SPEC
    a = _positive(a, "a", "hardy_original_check")
    b = _positive(b, "b", "hardy_original_check")
    ustar = math.sqrt(b / a)
    half = QuadSpec(spec.rel_tol, 0.5 * spec.abs_tol, spec.max_depth, spec.max_evals)
    res = integrate_oscillatory_phase(
        lambda u: 1.0 / u,
        lambda u: a * u + b / u,
        lambda u: a - b / (u * u),
        ustar,
        half,
    ).scaled(2.0)
    res.meta["stationary_point"] = ustar
    return res


def hardy_variant_lhs(a: float, b: float, spec: QuadSpec | None = None) -> QuadResult:
    """``int_0^inf sin(a u^2 - b/u^2) du`` by lobe summation.

    With c = (b/a)^(1/4) and k = sqrt(ab), u = c w on (c, inf) and u = c/v
    on (0, c) turn both halves into integrals over (1, inf) of the same
    phase ``k (v^2 - v^-2)``.  This keeps the lobes from piling up at 0::

        LHS = c int_1^inf (1 - v^-2) sin(k (v^2 - v^-2)) dv
    """
    spec = spec or DEFAULT_SPEC
    a = _positive(a, "a", "hardy_variant_lhs")
    b = _positive(b, "b", "hardy_variant_lhs")
    c = (b / a) ** 0.25
    k = math.sqrt(a * b)
    inner_spec = QuadSpec(spec.rel_tol, spec.abs_tol / c, spec.max_depth, spec.max_evals)
    res = integrate_oscillatory_phase(
        lambda v: 1.0 - 1.0 / (v * v),
        lambda v: k * (v * v - 1.0 / (v * v)),
        lambda v: 2.0 * k * (v + 1.0 / (v * v * v)),
        1.0,
        inner_spec,
    ).scaled(c)
    res.meta["split"] = c
    return res


def hardy_variant_rhs(a: float, b: float) -> float:
    """Closed value of ``int_0^inf sin(a u^2 - b/u^2) du``.

    Computes ``(1/(2 sqrt(a))) sqrt(pi/2) exp(-2 sqrt(ab))`` and the
    equivalent ``(b/(4a))^(1/4) K_{1/2}(2 sqrt(ab))``, and refuses to return
    unless the two agree to 1e-14 relative.
    """
    a = _positive(a, "a", "hardy_variant_rhs")
    b = _positive(b, "b", "hardy_variant_rhs")
    k = math.sqrt(a * b)
    direct = 0.5 / math.sqrt(a) * math.sqrt(0.5 * math.pi) * math.exp(-2.0 * k)
    via_k = (b / (4.0 * a)) ** 0.25 * k_half_closed(2.0 * k)
    if abs(direct - via_k) > 1e-14 * abs(direct):
        raise ArithmeticError(f"closed forms disagree: {direct!r} vs {via_k!r}")
    return direct
