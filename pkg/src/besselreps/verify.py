"""Identity registry and grid sweeps.

Each registered identity pairs a left-hand side with an independent
right-hand side at one parameter point.  A point passes when

    abs_err <= max(abs_floor, tol_mult * (rel_tol * |rhs| + error_estimate))

where ``error_estimate`` is the combined estimate reported by the numerical
sides.  The default grids here are the ones the test suite uses.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import kbessel, laplace, reps, special
from .errors import DomainError, SlowTailWarning
from .quadrature import DEFAULT_SPEC, QuadSpec


@dataclass(frozen=True)
class Check:
    """One comparison at a grid point."""

    label: str
    lhs: float
    rhs: float
    error_estimate: float = 0.0
    rel_tol: float | None = None


@dataclass(frozen=True)
class PassRule:
    rel_tol: float
    tol_mult: float
    abs_floor: float

    def threshold(self, rhs: float, error_estimate: float, rel_tol: float | None = None) -> float:
        r = self.rel_tol if rel_tol is None else rel_tol
        return max(self.abs_floor, self.tol_mult * (r * abs(rhs) + error_estimate))


@dataclass(frozen=True)
class Identity:
    name: str
    description: str
    params: tuple[str, ...]
    default_grid: dict
    evaluate: Callable[[dict, QuadSpec], list[Check]]
    rule: PassRule
    validate: Callable[[dict], None] = lambda point: None


@dataclass
class PointRecord:
    params: dict
    label: str
    lhs: float
    rhs: float
    abs_err: float
    rel_err: float
    error_estimate: float
    threshold: float
    passed: bool


@dataclass
class IdentityReport:
    identity: str
    records: list[PointRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def pass_count(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def all_passed(self) -> bool:
        return self.pass_count == self.total

    @property
    def max_rel_err(self) -> float:
        return max((r.rel_err for r in self.records), default=0.0)

    @property
    def max_abs_err(self) -> float:
        return max((r.abs_err for r in self.records), default=0.0)


@dataclass
class SweepGrid:
    """Cartesian grid of parameter values for one identity."""

    identity: str
    values: dict

    def points(self) -> list[dict]:
        names = list(self.values)
        return [dict(zip(names, combo))
                for combo in itertools.product(*(self.values[n] for n in names))]

    def validate(self) -> None:
        ident = get_identity(self.identity)
        missing = [p for p in ident.params if p not in self.values]
        extra = [p for p in self.values if p not in ident.params]
        if missing or extra:
            raise DomainError(f"{self.identity} expects parameters {list(ident.params)}, "
                              f"got {list(self.values)}")
        for name, vals in self.values.items():
            if len(vals) == 0:
                raise DomainError(f"parameter {name!r} has no values")
            if not all(math.isfinite(v) for v in vals):
                raise DomainError(f"parameter {name!r} has non-finite values")
        for point in self.points():
            ident.validate(point)


# ---------------------------------------------------------------------------
# evaluators
# ---------------------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise DomainError(msg)


def _rep_vs_series(hyperbolic: bool):
    series = special.bessel_i_series if hyperbolic else special.bessel_j_series
    single = reps.i0_rep if hyperbolic else reps.j0_rep
    reduction = reps.i_alpha_reduction if hyperbolic else reps.j_alpha_reduction
    double = reps.i_alpha_double if hyperbolic else reps.j_alpha_double

    def evaluate(pt, spec):
        alpha, x = pt["alpha"], pt["x"]
        ref = series(alpha, x)
        out = []
        if alpha == 0:
            r = single(x, spec=spec)
            out.append(Check("single", r.value, ref.value,
                             r.error_estimate + ref.truncation_bound, 1e-9))
            return out
        r = reduction(alpha, x, spec)
        out.append(Check("reduction", r.value, ref.value,
                         r.error_estimate + ref.truncation_bound, 1e-9))
        if x <= reps.DOUBLE_X_MAX:
            r = double(alpha, x, spec)
            out.append(Check("double", r.value, ref.value,
                             r.error_estimate + ref.truncation_bound, 1e-7))
        return out

    def validate(pt):
        _need(pt["alpha"] >= 0, f"alpha must be >= 0, got {pt['alpha']}")
        hi = reps.I0_REP_X_MAX if hyperbolic else reps.REDUCTION_X_MAX
        _need(0 < pt["x"] <= hi, f"x must be in (0, {hi}], got {pt['x']}")

    return evaluate, validate


def _lipschitz(pt, spec):
    r = laplace.laplace_j0_numeric(pt["a"], pt["b"], spec)
    return [Check("j0", r.value, laplace.lipschitz_rhs(pt["a"], pt["b"]), r.error_estimate)]


def _ffo(pt, spec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowTailWarning)
        r = laplace.laplace_j_alpha_numeric(pt["alpha"], pt["a"], pt["b"], spec)
    return [Check("master", r.value, laplace.laplace_j_alpha_closed(pt["alpha"], pt["a"], pt["b"]),
                  r.error_estimate)]


def _special(pt, spec):
    al, a, b = pt["alpha"], pt["a"], pt["b"]
    return [Check("special", laplace.laplace_j_alpha_closed(al, a, b),
                  laplace.laplace_special_case(al, a, b))]


def _k_triangle(pt, spec):
    z = pt["z"]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowTailWarning)
        bs = kbessel.k_alpha_basset(0.5, z, spec)
    ex = kbessel.k_alpha_exp(0.5, z, spec)
    closed = kbessel.k_half_closed(z)
    return [
        Check("basset-closed", bs.value, closed, bs.error_estimate),
        Check("exp-closed", ex.value, closed, ex.error_estimate),
        Check("basset-exp", bs.value, ex.value, bs.error_estimate + ex.error_estimate),
    ]


def _basset_exp(pt, spec):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", SlowTailWarning)
        bs = kbessel.k_alpha_basset(pt["alpha"], pt["z"], spec)
    ex = kbessel.k_alpha_exp(pt["alpha"], pt["z"], spec)
    return [Check("basset-exp", bs.value, ex.value, bs.error_estimate + ex.error_estimate)]


def _gaussian(pt, spec):
    k = kbessel.gaussian_cosine_kernel(pt["beta2"], pt["p"], pt["R"], spec)
    return [Check("cos-exp", k.cos_form.value, k.exp_form.value,
                  k.cos_form.error_estimate + k.exp_form.error_estimate)]


def _gauss_lemma(pt, spec):
    r = kbessel.gauss_cos_numeric(pt["R"], pt["t"], spec)
    return [Check("f(R,t)", r.value, kbessel.gauss_cos_closed(pt["R"], pt["t"]),
                  r.error_estimate)]


def _hardy_original(pt, spec):
    a, b = pt["a"], pt["b"]
    r = kbessel.hardy_original_check(a, b, spec)
    j = special.bessel_j_series(0.0, 2.0 * math.sqrt(a * b))
    return [Check("pi*J0", r.value, math.pi * j.value,
                  r.error_estimate + math.pi * j.truncation_bound)]


def _hardy_variant(pt, spec):
    r = kbessel.hardy_variant_lhs(pt["a"], pt["b"], spec)
    return [Check("variant", r.value, kbessel.hardy_variant_rhs(pt["a"], pt["b"]),
                  r.error_estimate)]


def duplication_sides(m: float) -> tuple[float, float]:
    """``Gamma(m+1/2)`` and ``Gamma(2m) sqrt(pi) / (Gamma(m) 2^(2m-1))`` via log-gamma."""
    lhs = math.exp(special.log_gamma(m + 0.5))
    rhs = math.exp(special.log_gamma(2.0 * m) + 0.5 * math.log(math.pi)
                   - special.log_gamma(m) - (2.0 * m - 1.0) * math.log(2.0))
    return lhs, rhs


def _duplication(pt, spec):
    lhs, rhs = duplication_sides(pt["m"])
    return [Check("legendre", lhs, rhs)]


def _form_equivalence(pt, spec):
    x, phi = pt["x"], pt["phi"]
    out = []
    for hyp, label, rel in ((False, "J0", 0.0), (True, "I0", 1e-14)):
        a = float(reps.single_integrand(x, phi, hyp))
        b = float(reps.derivative_integrand(x, phi, hyp))
        out.append(Check(label, a, b, 0.0, rel))
    return out


def _closed_sum(pt, spec):
    z = pt["z"]
    return [Check("closed-sum", reps.closed_sum_series(z), reps.closed_sum_rhs(z))]


def _arange(lo, hi, step):
    n = int(round((hi - lo) / step))
    return [lo + i * step for i in range(n + 1)]


_J_EVAL, _J_VALID = _rep_vs_series(False)
_I_EVAL, _I_VALID = _rep_vs_series(True)


def _pos(*names):
    def validate(pt):
        for n in names:
            _need(pt[n] > 0, f"{n} must be > 0, got {pt[n]}")
    return validate


def _ab_valid(pt):
    _need(pt["a"] >= 0, f"a must be >= 0, got {pt['a']}")
    _need(pt["b"] > 0, f"b must be > 0, got {pt['b']}")


def _ffo_valid(pt):
    _ab_valid(pt)
    _need(pt["alpha"] > 0, f"alpha must be > 0, got {pt['alpha']}")


def _special_valid(pt):
    _ffo_valid(pt)
    _need(pt["alpha"] in (0.5, 1.0) or pt["a"] == 0,
          f"no special case for alpha={pt['alpha']}, a={pt['a']}")


def _basset_valid(pt):
    _need(pt["alpha"] >= 0, f"alpha must be >= 0, got {pt['alpha']}")
    _need(pt["z"] > 0, f"z must be > 0, got {pt['z']}")


def _gaussian_valid(pt):
    _need(pt["beta2"] > 0, f"beta2 must be > 0, got {pt['beta2']}")
    _need(pt["p"] > 0.5, f"p must be > 1/2, got {pt['p']}")
    _need(pt["R"] >= 0, f"R must be >= 0, got {pt['R']}")


def _lemma_valid(pt):
    _need(pt["R"] >= 0, f"R must be >= 0, got {pt['R']}")
    _need(pt["t"] > 0, f"t must be > 0, got {pt['t']}")


def _form_valid(pt):
    _need(0 <= pt["x"] <= 60, f"x must be in [0, 60], got {pt['x']}")


def _closed_sum_valid(pt):
    _need(pt["z"] >= 0, f"z must be >= 0, got {pt['z']}")


_REP_GRID = {"alpha": [0.0, 0.5, 1.0, 1.5, 2.0, 3.0], "x": [0.25, 0.5, 1.0, 2.0, 5.0, 10.0]}
_AB4 = [0.5, 1.0, 2.0, 4.0]

REGISTRY: dict[str, Identity] = {
    ident.name: ident
    for ident in [
        Identity("rep-vs-series-J", "single/reduction/double J forms vs the J power series",
                 ("alpha", "x"), _REP_GRID, _J_EVAL, PassRule(1e-9, 10.0, 1e-15), _J_VALID),
        Identity("rep-vs-series-I", "single/reduction/double I forms vs the I power series",
                 ("alpha", "x"), _REP_GRID, _I_EVAL, PassRule(1e-9, 10.0, 1e-15), _I_VALID),
        Identity("lipschitz", "int exp(-at) J0(bt) dt = 1/sqrt(a^2+b^2)",
                 ("a", "b"), {"a": [0.5, 1.0, 2.0, 5.0], "b": [0.5, 1.0, 2.0, 5.0]},
                 _lipschitz, PassRule(1e-10, 10.0, 1e-12), _ab_valid),
        Identity("ffo-vs-numeric", "incomplete-beta closed form vs quadrature",
                 ("alpha", "a", "b"),
                 {"alpha": [0.5, 1.0, 1.5, 2.0], "a": [0.5, 1.0, 3.0], "b": _AB4},
                 _ffo, PassRule(1e-10, 10.0, 1e-12), _ffo_valid),
        Identity("special-cases", "incomplete-beta closed form vs elementary special cases",
                 ("alpha", "a", "b"),
                 {"alpha": [0.5, 1.0], "a": [0.0, 0.5, 1.0, 3.0], "b": _AB4},
                 _special, PassRule(1e-12, 1.0, 0.0), _special_valid),
        Identity("k-triangle", "Basset, exponential and closed K_{1/2} pairwise",
                 ("z",), {"z": [0.5, 1.0, 2.0, 4.0]}, _k_triangle,
                 PassRule(1e-10, 10.0, 1e-12), _pos("z")),
        Identity("basset-vs-exp", "Basset vs exponential K_alpha",
                 ("alpha", "z"), {"alpha": [0.0, 1.0, 1.5, 2.5], "z": [0.5, 1.0, 2.0]},
                 _basset_exp, PassRule(1e-10, 10.0, 1e-12), _basset_valid),
        Identity("gaussian-kernel", "cosine and exponential forms of H(beta, p, R)",
                 ("beta2", "p", "R"),
                 {"beta2": [0.5, 1.0, 2.0], "p": [0.75, 1.0, 1.5, 2.5], "R": [0.0, 0.5, 1.0]},
                 _gaussian, PassRule(0.0, 0.0, 1e-9), _gaussian_valid),
        Identity("gauss-cos-lemma", "int exp(-x^2 t) cos(2Rx) dx = sqrt(pi/t)/2 exp(-R^2/t)",
                 ("R", "t"), {"R": [0.0, 0.5, 1.0, 2.0], "t": [0.25, 0.5, 1.0, 2.0]},
                 _gauss_lemma, PassRule(0.0, 0.0, 1e-10), _lemma_valid),
        Identity("hardy-original", "int sin(au + b/u) du/u = pi J0(2 sqrt(ab))",
                 ("a", "b"), {"a": _AB4, "b": _AB4}, _hardy_original,
                 PassRule(0.0, 10.0, 1e-6), _pos("a", "b")),
        Identity("hardy-variant", "int sin(au^2 - b/u^2) du = sqrt(pi/2)/(2 sqrt a) exp(-2 sqrt(ab))",
                 ("a", "b"), {"a": _AB4, "b": _AB4}, _hardy_variant,
                 PassRule(0.0, 10.0, 1e-6), _pos("a", "b")),
        Identity("duplication", "Legendre duplication formula for Gamma",
                 ("m",), {"m": _arange(0.5, 20.0, 0.5)}, _duplication,
                 PassRule(1e-12, 1.0, 0.0), _pos("m")),
        Identity("form-equivalence", "expanded integrand vs complex-step derivative form",
                 ("x", "phi"),
                 {"x": _arange(0.25, 10.0, 0.25), "phi": [k * math.pi / 24 for k in range(25)]},
                 _form_equivalence, PassRule(0.0, 1.0, 1e-14), _form_valid),
        Identity("closed-sum", "sum (-1)^(m-1) m z^m / Gamma(2m) in closed form",
                 ("z",), {"z": [0.1, 1.0, 4.0, 10.0]}, _closed_sum,
                 PassRule(0.0, 0.0, 1e-12), _closed_sum_valid),
    ]
}


def get_identity(name: str) -> Identity:
    try:
        return REGISTRY[name]
    except KeyError:
        raise DomainError(f"unknown identity {name!r}; known: {', '.join(REGISTRY)}") from None


def default_grid(name: str) -> SweepGrid:
    ident = get_identity(name)
    return SweepGrid(name, {k: list(v) for k, v in ident.default_grid.items()})


def run_identity(grid: SweepGrid, spec: QuadSpec | None = None, *,
                 tol_mult: float | None = None, abs_floor: float | None = None) -> IdentityReport:
    """Evaluate every grid point and apply the identity's pass rule.

    ``tol_mult`` and ``abs_floor`` override the identity's defaults.
    """
    spec = spec or DEFAULT_SPEC
    grid.validate()
    ident = get_identity(grid.identity)
    rule = PassRule(ident.rule.rel_tol,
                    ident.rule.tol_mult if tol_mult is None else tol_mult,
                    ident.rule.abs_floor if abs_floor is None else abs_floor)
    report = IdentityReport(ident.name)
    for point in grid.points():
        for chk in ident.evaluate(point, spec):
            abs_err = abs(chk.lhs - chk.rhs)
            rel_err = abs_err / abs(chk.rhs) if chk.rhs != 0 else (0.0 if abs_err == 0 else math.inf)
            thr = rule.threshold(chk.rhs, chk.error_estimate, chk.rel_tol)
            report.records.append(PointRecord(
                dict(point), chk.label, float(chk.lhs), float(chk.rhs), abs_err, rel_err,
                float(chk.error_estimate), thr, bool(np.isfinite(abs_err) and abs_err <= thr)))
    return report
