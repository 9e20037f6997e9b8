import math
import warnings

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import special as sc

from besselreps import (
    BracketError,
    DomainError,
    IntegrandError,
    QuadResult,
    QuadSpec,
    find_phase_crossing,
    integrate_finite,
    integrate_oscillatory_phase,
    integrate_oscillatory_zeros,
    integrate_semi_infinite_decay,
    integrate_singular_unit,
)
from besselreps.quadrature import HintWarning, combine, shanks, tanh_sinh, wynn_epsilon

FRESNEL = 0.5 * math.sqrt(math.pi / 2)
SPEC = QuadSpec()


# --- QuadSpec / QuadResult ------------------------------------------------------

def test_quadspec_defaults_and_validation():
    s = QuadSpec()
    assert (s.rel_tol, s.abs_tol, s.max_depth, s.max_evals) == (1e-10, 1e-12, 30, 10**7)
    for bad in (dict(rel_tol=0), dict(abs_tol=-1), dict(max_depth=0), dict(max_evals=0)):
        with pytest.raises(DomainError):
            QuadSpec(**bad)
    t = s.tightened(10)
    assert t.rel_tol == pytest.approx(1e-11, rel=1e-15, abs=0) and t.max_depth == 30


def test_combine_adds_errors_and_ands_convergence():
    a = QuadResult(1.0, 1e-12, 10, True)
    b = QuadResult(2.0, 2e-12, 5, False, "max_depth")
    c = combine(a, b)
    assert c.value == 3.0 and c.error_estimate == pytest.approx(3e-12, rel=1e-15, abs=0)
    assert c.evals == 15 and not c.converged and c.status == "max_depth"


# --- finite interval ----------------------------------------------------------------

@pytest.mark.parametrize("f, lo, hi, truth", [
    (np.sin, 0.0, math.pi, 2.0),
    (np.cos, 0.0, math.pi / 2, 1.0),
    (lambda x: np.sin(x) ** 2, 0.0, math.pi, math.pi / 2),
])
def test_finite_examples(f, lo, hi, truth):
    r = integrate_finite(f, lo, hi)
    assert r.converged and r.error_estimate >= 0
    assert abs(r.value - truth) <= 1e-14
    assert r.error_estimate <= SPEC.tolerance(r.value)


def test_finite_reports_nonconvergence_with_best_estimate():
    r = integrate_finite(lambda x: np.sin(1.0 / x), 1e-6, 1.0, QuadSpec(max_depth=3))
    assert not r.converged and math.isfinite(r.value)


def test_finite_nan_raises():
    with pytest.raises(IntegrandError):
        integrate_finite(lambda x: np.where(x > 0.5, np.nan, x), 0.0, 1.0)


def test_finite_bad_interval():
    with pytest.raises(DomainError):
        integrate_finite(np.sin, 1.0, 1.0)


@given(st.sampled_from([-2.0, 0.5, 10.0]), st.floats(0.1, 5.0))
def test_finite_linearity(c, k):
    f = lambda x: np.exp(-k * x) * np.cos(3 * x)
    base = integrate_finite(f, 0.0, 2.0)
    scaled = integrate_finite(lambda x: c * f(x), 0.0, 2.0)
    tol = abs(c) * (base.error_estimate + SPEC.tolerance(base.value)) + scaled.error_estimate
    assert abs(scaled.value - c * base.value) <= tol


@given(st.floats(-3.0, 0.0), st.floats(0.01, 0.99), st.floats(0.5, 4.0))
def test_finite_additivity(a, frac, width):
    c = a + width
    b = a + frac * width
    f = lambda x: np.sin(2 * x) / (1 + x * x)
    whole = integrate_finite(f, a, c)
    left = integrate_finite(f, a, b)
    right = integrate_finite(f, b, c)
    tol = whole.error_estimate + left.error_estimate + right.error_estimate + 1e-15
    assert abs(whole.value - (left.value + right.value)) <= tol


# --- endpoint singularities ----------------------------------------------------------

def test_singular_unit_examples():
    r = integrate_singular_unit(lambda t: t ** -0.5)
    assert r.converged and abs(r.value - 2.0) <= 1e-12
    r = integrate_singular_unit(lambda t, lo, hi: lo ** -0.5 * hi ** -0.5, complement=True)
    assert r.converged and abs(r.value - math.pi) <= 1e-12
    r = integrate_singular_unit(lambda t: t ** (0.25 - 1))
    assert r.converged and abs(r.value - 4.0) <= 1e-11


def test_tanh_sinh_flags_divergent_endpoint():
    r = integrate_singular_unit(lambda t: 1.0 / t)
    assert not r.converged and r.status == "divergent"


def test_tanh_sinh_general_interval():
    r = tanh_sinh(lambda x: np.sqrt(x - 1.0), 1.0, 5.0)
    assert abs(r.value - (2 / 3) * 8.0) <= 1e-12


# --- exponentially decaying -------------------------------------------------------------

@pytest.mark.parametrize("f, hint, truth", [
    (lambda t: np.exp(-t), 1.0, 1.0),
    (lambda t: np.exp(-3 * t) * np.cos(4 * t), 3.0, 0.12),
    (lambda t: t * np.exp(-t * t), 1.0, 0.5),
])
def test_decay_examples(f, hint, truth):
    r = integrate_semi_infinite_decay(f, hint)
    assert r.converged and abs(r.value - truth) <= 1e-12
    assert r.meta["cut"] >= 50.0 / hint


def test_decay_hint_inconsistency_warns():
    with pytest.warns(HintWarning):
        integrate_semi_infinite_decay(lambda t: np.exp(-0.01 * t), 5.0)


def test_decay_bad_hint():
    with pytest.raises(DomainError):
        integrate_semi_infinite_decay(lambda t: np.exp(-t), 0.0)


# --- phase crossings -----------------------------------------------------------------------

def test_phase_crossing_examples():
    sq = lambda u: u * u
    assert find_phase_crossing(sq, 1, 0.0, 3.0) == pytest.approx(math.sqrt(math.pi), rel=1e-14, abs=0)
    assert find_phase_crossing(sq, 4, 0.0, 5.0) == pytest.approx(2 * math.sqrt(math.pi), rel=1e-14, abs=0)
    root = find_phase_crossing(lambda u: u * u - 1 / (u * u), 0, 0.5, 3.0)
    assert abs(root - 1.0) <= 1e-14


def test_phase_crossing_accuracy():
    for k in (1, 10, 100, 1000):
        u = find_phase_crossing(lambda v: v * v, k, 0.0, 200.0)
        assert abs(u * u - k * math.pi) <= 1e-12 * max(1.0, k * math.pi)


def test_phase_crossing_bracket_violation():
    with pytest.raises(BracketError):
        find_phase_crossing(lambda u: u * u, 1, 2.0, 3.0)


# --- acceleration ------------------------------------------------------------------------------

def test_wynn_on_log2_series():
    partial = np.cumsum([(-1) ** (k + 1) / k for k in range(1, 20)])
    est, spread = wynn_epsilon(partial)
    assert abs(est - math.log(2)) <= 1e-12
    assert spread >= 0


def test_shanks_geometric_exact():
    partial = np.cumsum([0.5 ** k for k in range(6)])
    assert shanks(partial) == pytest.approx(2.0, rel=1e-14, abs=0)


def test_wynn_empty():
    with pytest.raises(DomainError):
        wynn_epsilon([])


# --- oscillatory ----------------------------------------------------------------------------------

def _fresnel(a=1.0, **kw):
    return integrate_oscillatory_phase(
        lambda u: np.ones_like(u), lambda u: a * u * u, lambda u: 2 * a * u, 0.0, **kw)


def test_oscillatory_fresnel_examples():
    r = _fresnel()
    assert r.converged and abs(r.value - FRESNEL) <= 1e-10
    assert abs(r.value - FRESNEL) <= r.error_estimate
    r4 = _fresnel(4.0)
    assert r4.converged and abs(r4.value - 0.25 * math.sqrt(math.pi / 2)) <= 1e-10


def test_oscillatory_single_lobe_matches_finite():
    k = 3
    u0, u1 = math.sqrt(k * math.pi), math.sqrt((k + 1) * math.pi)
    amp, ph, dph = (lambda u: np.ones_like(u)), (lambda u: u * u), (lambda u: 2 * u)
    from_u0 = integrate_oscillatory_phase(amp, ph, dph, u0)
    from_u1 = integrate_oscillatory_phase(amp, ph, dph, u1)
    lobe = integrate_finite(lambda u: np.sin(u * u), u0, u1)
    assert abs((from_u0.value - from_u1.value) - lobe.value) <= (
        from_u0.error_estimate + from_u1.error_estimate + lobe.error_estimate)


def test_oscillatory_doubling_max_lobes():
    r = _fresnel(max_lobes=100)
    r2 = _fresnel(max_lobes=200)
    assert abs(r.value - r2.value) <= max(r.error_estimate, 1e-15)


def test_oscillatory_max_lobes_exhaustion_reported():
    r = _fresnel(max_lobes=5, min_lobes=14)
    assert not r.converged and r.status == "max_lobes"


def test_oscillatory_against_epsilon_damping():
    """Cross-check lobe summation against exp(-eps u) damping extrapolated to eps = 0."""
    amp = lambda u: 1.0 / (1.0 + u)
    lobes = integrate_oscillatory_phase(amp, lambda u: u, lambda u: np.ones_like(u), 0.0)
    epss = [0.2, 0.1, 0.05, 0.025]
    damped = [integrate_semi_infinite_decay(lambda u, e=e: np.exp(-e * u) * np.sin(u) / (1 + u),
                                            e, panels=200).value for e in epss]
    # Richardson elimination of the O(eps), O(eps^2), O(eps^3) terms, step ratio 2
    table = list(damped)
    for order in range(1, len(epss)):
        table = [(2 ** order * table[i + 1] - table[i]) / (2 ** order - 1)
                 for i in range(len(table) - 1)]
    si, ci = sc.sici(1.0)
    exact = ci * math.sin(1.0) + (math.pi / 2 - si) * math.cos(1.0)
    assert abs(lobes.value - exact) <= 1e-10
    assert abs(table[0] - exact) <= 1e-5
    assert abs(lobes.value - table[0]) <= 1e-5


def test_oscillatory_zeros_scanner():
    # int_0^inf sin(u)/u du = pi/2 with zeros found by scanning
    r = integrate_oscillatory_zeros(lambda u: np.sinc(u / math.pi), 0.0, 0.5)
    assert r.converged and abs(r.value - math.pi / 2) <= 1e-10


# --- calibration honesty ------------------------------------------------------------------------

def _calibration_suite():
    fin = integrate_finite
    return [
        ("poly3", lambda: fin(lambda x: x ** 3 - 2 * x + 1, -1.0, 2.0), 3.75 - 3.0 + 3.0),
        ("poly10", lambda: fin(lambda x: x ** 10, 0.0, 1.0), 1 / 11),
        ("exp", lambda: fin(np.exp, 0.0, 1.0), math.e - 1),
        ("exp-neg", lambda: fin(lambda x: np.exp(-x), 0.0, 10.0), 1 - math.exp(-10)),
        ("gauss", lambda: fin(lambda x: np.exp(-x * x), -3.0, 3.0), math.sqrt(math.pi) * math.erf(3)),
        ("runge", lambda: fin(lambda x: 1 / (1 + 25 * x * x), -1.0, 1.0), 0.4 * math.atan(5)),
        ("log", lambda: fin(np.log, 1.0, 2.0), 2 * math.log(2) - 1),
        ("sin-fast", lambda: fin(lambda x: np.sin(50 * x), 0.0, 1.0), (1 - math.cos(50)) / 50),
        ("sqrt-end", lambda: integrate_singular_unit(np.sqrt), 2 / 3),
        ("inv-sqrt", lambda: integrate_singular_unit(lambda t: t ** -0.5), 2.0),
        ("arcsine", lambda: integrate_singular_unit(lambda t, lo, hi: (lo * hi) ** -0.5,
                                                    complement=True), math.pi),
        ("t^-0.75", lambda: integrate_singular_unit(lambda t: t ** -0.75), 4.0),
        ("log-end", lambda: integrate_singular_unit(lambda t: -np.log(t)), 1.0),
        ("beta-2.5-0.3", lambda: integrate_singular_unit(
            lambda t, lo, hi: lo ** 1.5 * hi ** -0.7, complement=True), sc.beta(2.5, 0.3)),
        ("exp-decay", lambda: integrate_semi_infinite_decay(lambda t: np.exp(-2 * t), 2.0), 0.5),
        ("laplace-cos", lambda: integrate_semi_infinite_decay(
            lambda t: np.exp(-3 * t) * np.cos(4 * t), 3.0), 0.12),
        ("gamma-3", lambda: integrate_semi_infinite_decay(lambda t: t * t * np.exp(-t), 1.0), 2.0),
        ("fresnel", _fresnel, FRESNEL),
        ("sinc", lambda: integrate_oscillatory_phase(
            lambda u: 1.0 / u, lambda u: u, lambda u: np.ones_like(u), 1.0),
         math.pi / 2 - sc.sici(1.0)[0]),
        ("sin/(1+u)^2", lambda: integrate_oscillatory_phase(
            lambda u: 1.0 / (1 + u) ** 2, lambda u: u, lambda u: np.ones_like(u), 0.0),
         # by parts this is int_0^inf cos(u)/(1+u) du
         (math.pi / 2 - sc.sici(1.0)[0]) * math.sin(1) - sc.sici(1.0)[1] * math.cos(1)),
    ]


def test_calibration_honesty():
    suite = _calibration_suite()
    assert len(suite) == 20
    honest = 0
    for name, run, truth in suite:
        r = run()
        err = abs(r.value - truth)
        honest += err <= r.error_estimate
        if r.converged:
            assert err <= 10 * SPEC.tolerance(truth), (name, err, r.error_estimate)
    assert honest >= 19, honest


def test_determinism():
    a = _fresnel()
    b = _fresnel()
    assert (a.value, a.error_estimate, a.evals) == (b.value, b.error_estimate, b.evals)


def test_no_stray_warnings_on_clean_integrals():
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        integrate_semi_infinite_decay(lambda t: np.exp(-t), 1.0)
        integrate_singular_unit(lambda t: t ** -0.5)
