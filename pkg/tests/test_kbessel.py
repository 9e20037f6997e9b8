import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from besselreps import DomainError, bessel_j_series, integrate_oscillatory_phase
from besselreps.errors import SlowTailWarning
from besselreps.kbessel import (
    exp_moment,
    gauss_cos_closed,
    gauss_cos_numeric,
    gaussian_cosine_kernel,
    hardy_original_check,
    hardy_variant_lhs,
    hardy_variant_rhs,
    i_half_closed,
    i_neg_half_closed,
    k_alpha_basset,
    k_alpha_exp,
    k_half_closed,
)

GRID4 = [0.5, 1.0, 2.0, 4.0]


def basset(alpha, z):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowTailWarning)
        return k_alpha_basset(alpha, z)


def mp_k(alpha, z):
    return float(mp.besselk(alpha, z))


# --- closed forms -------------------------------------------------------------------

def test_half_order_closed_examples():
    assert k_half_closed(1) == pytest.approx(math.sqrt(math.pi / 2) / math.e, rel=1e-15, abs=0)
    # ten-digit reference values
    assert abs(k_half_closed(1) - 0.4610685044) <= 5e-11
    assert abs(k_half_closed(2) - 0.1199377720) <= 5e-11
    assert abs(i_half_closed(1) - 0.9376748882) <= 5e-11
    # sqrt(2/pi) cosh 1, evaluated from the closed form itself
    assert abs(i_neg_half_closed(1) - 1.2312002146) <= 5e-11


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.0, 5.0])
def test_half_order_consistency(x):
    # the difference cancels like exp(2x); a few ulps of the minuend is the floor
    eps = np.finfo(float).eps
    diff = i_neg_half_closed(x) - i_half_closed(x)
    floor = 4 * eps * i_neg_half_closed(x)
    assert abs(diff - math.sqrt(2 / (math.pi * x)) * math.exp(-x)) <= floor
    assert abs(0.5 * math.pi * diff - k_half_closed(x)) <= 0.5 * math.pi * floor
    if x <= 1:
        assert abs(0.5 * math.pi * diff - k_half_closed(x)) <= 1e-14 * k_half_closed(x)
    assert k_half_closed(x) == pytest.approx(mp_k(0.5, x), rel=1e-14, abs=0)


@pytest.mark.parametrize("fn", [k_half_closed, i_half_closed, i_neg_half_closed])
def test_half_order_domain(fn):
    for bad in (0.0, -1.0):
        with pytest.raises(DomainError):
            fn(bad)


# --- K representations -------------------------------------------------------------------

def test_basset_examples():
    assert basset(0.5, 1).value == pytest.approx(k_half_closed(1), rel=1e-10, abs=0)
    assert basset(0.5, 2).value == pytest.approx(k_half_closed(2), rel=1e-10, abs=0)
    b, e = k_alpha_basset(1.5, 1), k_alpha_exp(1.5, 1)
    assert abs(b.value - e.value) <= 10 * (b.error_estimate + e.error_estimate)


def test_basset_slow_tail_warning():
    with pytest.warns(SlowTailWarning):
        k_alpha_basset(0.5, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("error", SlowTailWarning)
        k_alpha_basset(1.5, 1)


def test_basset_domain():
    with pytest.raises(DomainError):
        k_alpha_basset(-0.5, 1)
    with pytest.raises(DomainError):
        k_alpha_basset(1, 0)


def test_exp_examples():
    assert k_alpha_exp(0.5, 1).value == pytest.approx(0.4610685044, rel=1e-9, abs=0)
    assert k_alpha_exp(0.5, 4).value == pytest.approx(math.sqrt(math.pi / 8) * math.exp(-4), rel=1e-10, abs=0)
    b, e = basset(2, 1), k_alpha_exp(2, 1)
    assert abs(b.value - e.value) <= 10 * (b.error_estimate + e.error_estimate)


def test_exp_against_mpmath():
    for alpha in (-10.0, -3.5, -0.5, 0.0, 0.25, 1.0, 4.5, 10.0):
        for z in (0.1, 1.0, 7.0):
            r = k_alpha_exp(alpha, z)
            assert r.value == pytest.approx(mp_k(alpha, z), rel=1e-10, abs=0), (alpha, z)


def test_exp_domain():
    with pytest.raises(DomainError):
        k_alpha_exp(10.5, 1)
    with pytest.raises(DomainError):
        k_alpha_exp(1, -1)


def test_exp_moment_gamma_case():
    # r2 = 0 reduces to Gamma(nu)/rate^nu
    r = exp_moment(2.5, 3.0, 0.0)
    assert r.value == pytest.approx(math.gamma(2.5) / 3.0 ** 2.5, rel=1e-12, abs=0)
    with pytest.raises(DomainError):
        exp_moment(0.0, 1.0, 0.0)


def test_k_triangle():
    for z in GRID4:
        b, e, c = basset(0.5, z), k_alpha_exp(0.5, z), k_half_closed(z)
        tol = 10 * (b.error_estimate + e.error_estimate)
        assert abs(b.value - e.value) <= tol
        assert abs(b.value - c) <= tol
        assert abs(e.value - c) <= tol


def test_basset_vs_exp_non_half_orders():
    for alpha in (0.0, 1.0, 1.5, 2.5):
        for z in (0.5, 1.0, 2.0):
            b, e = basset(alpha, z), k_alpha_exp(alpha, z)
            assert abs(b.value - e.value) <= 10 * (b.error_estimate + e.error_estimate)


@given(st.floats(-10.0, 10.0),
       st.lists(st.floats(0.05, 40.0), min_size=2, max_size=5, unique=True))
def test_k_positive_and_decreasing(alpha, zs):
    zs = sorted(zs)
    vals = [k_alpha_exp(alpha, z).value for z in zs]
    assert all(v > 0 for v in vals)
    for (z0, v0), (z1, v1) in zip(zip(zs, vals), zip(zs[1:], vals[1:])):
        if z1 - z0 > 1e-9 * z1:
            assert v1 < v0


# --- Gaussian-cosine identity --------------------------------------------------------------------

def test_gaussian_kernel_examples():
    pair = gaussian_cosine_kernel(1, 1, 0)
    assert pair.cos_form.value == pytest.approx(math.sqrt(math.pi), rel=1e-12, abs=0)
    assert pair.exp_form.value == pytest.approx(math.sqrt(math.pi), rel=1e-12, abs=0)
    for args in ((1, 1, 1), (2, 1.5, 0.5)):
        assert abs(gaussian_cosine_kernel(*args).difference) <= 1e-9


def test_gaussian_kernel_grid():
    for beta2 in (0.5, 1.0, 2.0):
        for p in (0.75, 1.0, 1.5, 2.5):
            for R in (0.0, 0.5, 1.0):
                assert abs(gaussian_cosine_kernel(beta2, p, R).difference) <= 1e-9


def test_gaussian_kernel_equals_k_form():
    # with R > 0 both sides equal 2 (R/beta)^(p-1/2) K_{p-1/2}(2 beta R)
    beta2, p, R = 2.0, 1.5, 0.5
    beta = math.sqrt(beta2)
    ref = 2 * (R / beta) ** (p - 0.5) * mp_k(p - 0.5, 2 * beta * R)
    assert gaussian_cosine_kernel(beta2, p, R).exp_form.value == pytest.approx(ref, rel=1e-10, abs=0)


def test_gaussian_kernel_domain():
    with pytest.raises(DomainError):
        gaussian_cosine_kernel(1, 0.5, 0)
    with pytest.raises(DomainError):
        gaussian_cosine_kernel(0, 1, 0)
    with pytest.raises(DomainError):
        gaussian_cosine_kernel(1, 1, -1)


@pytest.mark.parametrize("R", [0.0, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.25, 0.5, 1.0, 2.0])
def test_gauss_cos_lemma(R, t):
    assert abs(gauss_cos_numeric(R, t).value - gauss_cos_closed(R, t)) <= 1e-10


# --- Hardy integrals --------------------------------------------------------------------------------

def test_hardy_original_examples():
    j02 = bessel_j_series(0, 2).value
    assert j02 == pytest.approx(0.2238907791412357, rel=1e-15, abs=0)
    assert hardy_original_check(1, 1).value == pytest.approx(math.pi * j02, abs=1e-8)
    assert hardy_original_check(0.25, 1).value == pytest.approx(
        math.pi * bessel_j_series(0, 1).value, abs=1e-8)
    for b in (1e-2, 1e-3):
        ref = math.pi * bessel_j_series(0, 2 * math.sqrt(b)).value
        assert hardy_original_check(1, b).value == pytest.approx(ref, abs=1e-6)


def test_hardy_original_grid():
    for a in GRID4:
        for b in GRID4:
            r = hardy_original_check(a, b)
            ref = math.pi * bessel_j_series(0, 2 * math.sqrt(a * b)).value
            assert abs(r.value - ref) <= max(1e-6, 10 * r.error_estimate)


def test_hardy_squared_substitution_spot_check():
    """u -> u^2 maps the original integral to (pi/2) J_0(2 sqrt(ab))."""
    a, b = 1.0, 2.0
    c = (b / a) ** 0.25
    upper = integrate_oscillatory_phase(
        lambda u: 1.0 / u, lambda u: a * u * u + b / (u * u),
        lambda u: 2 * a * u - 2 * b / u ** 3, c)
    ref = 0.5 * math.pi * bessel_j_series(0, 2 * math.sqrt(a * b)).value
    assert abs(2 * upper.value - ref) <= 1e-8


def test_hardy_variant_examples():
    assert hardy_variant_lhs(1, 1).value == pytest.approx(hardy_variant_rhs(1, 1), abs=1e-9)
    assert hardy_variant_rhs(1, 1) == pytest.approx(0.5 * math.sqrt(math.pi / 2) * math.exp(-2), rel=1e-15, abs=0)
    assert hardy_variant_rhs(0.25, 4) == pytest.approx(math.sqrt(math.pi / 2) * math.exp(-2), rel=1e-14, abs=0)
    assert hardy_variant_lhs(4, 1).value == pytest.approx(hardy_variant_rhs(4, 1), abs=1e-9)


def test_hardy_variant_printed_prefactor_is_off():
    """The (b/(2a))^(1/4) prefactor overshoots the integral by 2^(1/4)."""
    for a, b in ((1, 1), (4, 1), (0.5, 2)):
        k = 2 * math.sqrt(a * b)
        printed = (b / (2 * a)) ** 0.25 * k_half_closed(k)
        assert hardy_variant_rhs(a, b) / printed == pytest.approx(2 ** -0.25, rel=1e-14, abs=0)
        lhs = hardy_variant_lhs(a, b).value
        assert abs(lhs - hardy_variant_rhs(a, b)) <= 1e-9
        assert abs(lhs - printed) > 1e-3


def test_hardy_variant_grid():
    for a in GRID4:
        for b in GRID4:
            r = hardy_variant_lhs(a, b)
            assert abs(r.value - hardy_variant_rhs(a, b)) <= max(1e-6, 10 * r.error_estimate)


def test_hardy_variant_fresnel_boundary():
    """As b -> 0 both sides approach the Fresnel value (1/(2 sqrt a)) sqrt(pi/2)."""
    for a in (1.0, 4.0):
        fresnel = integrate_oscillatory_phase(
            lambda u: np.ones_like(u), lambda u: a * u * u, lambda u: 2 * a * u, 0.0)
        limit = 0.5 / math.sqrt(a) * math.sqrt(math.pi / 2)
        assert abs(fresnel.value - limit) <= 1e-10
        for b in (1e-4, 1e-6):
            drift = 3 * math.sqrt(a * b) * limit
            assert abs(hardy_variant_rhs(a, b) - limit) <= drift
            assert abs(hardy_variant_lhs(a, b).value - limit) <= drift


def test_hardy_domain():
    for fn in (hardy_original_check, hardy_variant_lhs, hardy_variant_rhs):
        with pytest.raises(DomainError):
            fn(0, 1)
        with pytest.raises(DomainError):
            fn(1, -1)
