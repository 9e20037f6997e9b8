"""Integral representations of Bessel functions, checked against independent oracles.

Every representation returns a :class:`~besselreps.quadrature.QuadResult`
carrying its own error estimate, and every closed form has a numerical
counterpart so the identities can be verified over parameter grids.
"""

from .errors import (
    BracketError,
    DomainError,
    FormatOverflowError,
    IntegrandError,
    NonConvergenceError,
    PoleError,
    UncoveredCaseError,
)
from .quadrature import (
    QuadResult,
    QuadSpec,
    find_phase_crossing,
    integrate_finite,
    integrate_oscillatory_phase,
    integrate_oscillatory_zeros,
    integrate_semi_infinite_decay,
    integrate_singular_unit,
)
from .special import (
    Order,
    SeriesResult,
    bessel_i_series,
    bessel_j_series,
    beta,
    gamma,
    incomplete_beta,
    log_gamma,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "DomainError",
    "FormatOverflowError",
    "IntegrandError",
    "NonConvergenceError",
    "Order",
    "PoleError",
    "QuadResult",
    "QuadSpec",
    "SeriesResult",
    "UncoveredCaseError",
    "bessel_i_series",
    "bessel_j_series",
    "beta",
    "find_phase_crossing",
    "gamma",
    "incomplete_beta",
    "integrate_finite",
    "integrate_oscillatory_phase",
    "integrate_oscillatory_zeros",
    "integrate_semi_infinite_decay",
    "integrate_singular_unit",
    "log_gamma",
]
