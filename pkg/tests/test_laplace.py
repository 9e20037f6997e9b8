import math
import warnings

import mpmath as mp
import pytest
from hypothesis import given
from hypothesis import strategies as st

from besselreps import DomainError, UncoveredCaseError, incomplete_beta, log_gamma
from besselreps.errors import SlowTailWarning
from besselreps.laplace import (
    laplace_j0_numeric,
    laplace_j_alpha_closed,
    laplace_j_alpha_numeric,
    laplace_special_case,
    lipschitz_rhs,
)


def mp_master(alpha, a, b):
    """Independent oracle: the defining integral done by mpmath."""
    mp.mp.dps = 20
    f = lambda t: mp.exp(-a * t) * mp.besselj(alpha, b * t) * t ** (-alpha)
    # a > 0 only: the integrand is negligible past 60/a
    cut = 60.0 / a
    return float(mp.quad(f, mp.linspace(0, cut, 1 + int(b * cut / 2) + 1)))


# --- Lipschitz -----------------------------------------------------------------------

def test_lipschitz_rhs_examples():
    assert lipschitz_rhs(3, 4) == pytest.approx(0.2, rel=1e-15, abs=0)
    assert lipschitz_rhs(0, 1) == 1.0
    assert lipschitz_rhs(0, 2.5) == pytest.approx(0.4, rel=1e-15, abs=0)
    with pytest.raises(DomainError):
        lipschitz_rhs(1, 0)
    with pytest.raises(DomainError):
        lipschitz_rhs(-1, 1)


@pytest.mark.parametrize("a, b, truth", [(3, 4, 0.2), (1, 1, 1 / math.sqrt(2)), (5, 1e-4, None)])
def test_laplace_j0_numeric_examples(a, b, truth):
    truth = lipschitz_rhs(a, b) if truth is None else truth
    r = laplace_j0_numeric(a, b)
    assert r.converged and abs(r.value - truth) <= 1e-9
    assert r.meta["method"] == "decay"


def test_laplace_j0_numeric_small_b_limit():
    assert laplace_j0_numeric(5, 1e-4).value == pytest.approx(0.2, rel=1e-8, abs=0)


def test_laplace_j0_numeric_a_zero_uses_lobes():
    for b in (1.0, 2.0):
        r = laplace_j0_numeric(0.0, b)
        assert r.meta["method"] == "lobes"
        assert abs(r.value - 1.0 / b) <= max(1e-8, 10 * r.error_estimate)


# --- master formula -------------------------------------------------------------------------

def test_closed_examples():
    assert laplace_j_alpha_closed(1, 3, 4) == pytest.approx(0.5, rel=1e-13, abs=0)
    assert laplace_j_alpha_closed(0.5, 0, 2) == pytest.approx(math.sqrt(math.pi / 4), rel=1e-13, abs=0)
    assert laplace_j_alpha_closed(2, 0, 3) == pytest.approx(1.0, rel=1e-13, abs=0)


def test_closed_against_mpmath_oracle():
    for alpha, a, b in [(0.5, 1.0, 2.0), (1.5, 0.5, 1.0), (2.0, 3.0, 0.5), (3.7, 1.0, 4.0)]:
        assert laplace_j_alpha_closed(alpha, a, b) == pytest.approx(
            mp_master(alpha, a, b), rel=1e-12, abs=0)


def test_printed_beta_argument_is_wrong():
    """Using b/sqrt(a^2+b^2) instead of its square as the beta argument misses 1/2."""
    a, b, alpha = 3.0, 4.0, 1.0
    r2 = a * a + b * b
    pre = math.exp(alpha * math.log(r2) - alpha * math.log(2) - (alpha + 1) * math.log(b)
                   - log_gamma(alpha)) * b / math.sqrt(r2)
    printed = pre * incomplete_beta(b / math.sqrt(r2), alpha, 0.5)
    assert printed == pytest.approx(0.691, abs=1e-3)
    assert laplace_j_alpha_closed(alpha, a, b) == pytest.approx(0.5, rel=1e-13, abs=0)


def test_closed_large_order_no_overflow():
    v = laplace_j_alpha_closed(50.0, 1.0, 2.0)
    assert math.isfinite(v) and v > 0
    assert v == pytest.approx(mp_master(50.0, 1.0, 2.0), rel=1e-10, abs=0)


def test_closed_domain():
    with pytest.raises(DomainError):
        laplace_j_alpha_closed(0.0, 1, 1)
    with pytest.raises(DomainError):
        laplace_j_alpha_closed(1.0, 1, 0)


@given(st.floats(0.1, 6.0), st.floats(0.2, 5.0),
       st.lists(st.floats(0.0, 20.0), min_size=2, max_size=6, unique=True))
def test_closed_decreasing_in_a(alpha, b, avals):
    avals = sorted(avals)
    vals = [laplace_j_alpha_closed(alpha, a, b) for a in avals]
    for (a0, v0), (a1, v1) in zip(zip(avals, vals), zip(avals[1:], vals[1:])):
        if a1 - a0 > 1e-6 * max(1.0, a1):
            assert v1 < v0


# --- numeric side -------------------------------------------------------------------------------

def test_numeric_examples():
    r = laplace_j_alpha_numeric(1, 3, 4)
    assert abs(r.value - 0.5) <= 1e-8
    r = laplace_j_alpha_numeric(0.5, 1, 1)
    assert abs(r.value - math.sqrt(2 / math.pi) * math.asin(1 / math.sqrt(2))) <= 1e-9
    for b in (1.0, 2.0):
        r = laplace_j_alpha_numeric(1, 0, b)
        assert abs(r.value - 1.0) <= 1e-7


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
def test_numeric_matches_closed_subgrid(alpha):
    for a in (0.5, 3.0):
        for b in (0.5, 4.0):
            r = laplace_j_alpha_numeric(alpha, a, b)
            assert abs(r.value - laplace_j_alpha_closed(alpha, a, b)) <= 10 * r.error_estimate


def test_slow_tail_warning_policy():
    with pytest.warns(SlowTailWarning):
        r = laplace_j_alpha_numeric(0.5, 0, 2)
    assert abs(r.value - math.sqrt(math.pi / 4)) <= 1e-8
    with warnings.catch_warnings():
        warnings.simplefilter("error", SlowTailWarning)
        laplace_j_alpha_numeric(1.5, 0, 2)
        laplace_j_alpha_numeric(0.5, 1, 2)


# --- special cases ----------------------------------------------------------------------------------

def test_special_case_examples():
    assert laplace_special_case(1, 3, 4) == pytest.approx(0.5, rel=1e-15, abs=0)
    for b in (0.5, 2.0):
        assert laplace_special_case(0.5, 0, b) == pytest.approx(math.sqrt(math.pi / (2 * b)), rel=1e-15, abs=0)
    assert laplace_special_case(0, 0, 2) == 0.5


def test_special_case_uncovered():
    with pytest.raises(UncoveredCaseError):
        laplace_special_case(1.5, 1.0, 1.0)
    with pytest.raises(UncoveredCaseError):
        laplace_special_case(0.0, 1.0, 1.0)


def test_master_vs_special_cases_grid():
    for alpha in (0.5, 1.0):
        for a in (0.0, 0.5, 1.0, 3.0):
            for b in (0.5, 1.0, 2.0, 4.0):
                v = laplace_special_case(alpha, a, b)
                assert abs(laplace_j_alpha_closed(alpha, a, b) - v) <= 1e-12 * abs(v)


def test_a_zero_general_order_matches_master():
    for alpha in (0.3, 1.7, 2.0, 6.5):
        for b in (0.5, 3.0):
            v = laplace_special_case(alpha, 0, b)
            assert laplace_j_alpha_closed(alpha, 0, b) == pytest.approx(v, rel=1e-12, abs=0)


def test_alpha_zero_limit():
    b = 2.0
    vals = [laplace_special_case(al, 0, b) for al in (0.1, 0.01, 0.001)]
    assert abs(vals[-1] - 1 / b) <= 0.01 * (1 / b)
    assert abs(vals[0] - 1 / b) > abs(vals[1] - 1 / b) > abs(vals[2] - 1 / b)
