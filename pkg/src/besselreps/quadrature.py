"""One-dimensional quadrature engines.

Every integrand is called with a 1-D float array of abscissae and must return
an array of the same shape.  Scalar-only callables can be wrapped with
``numpy.vectorize``.

Engines
-------
integrate_finite
    Globally adaptive Gauss-Kronrod 7/15 with QUADPACK error heuristics.
integrate_singular_unit / tanh_sinh
    Double-exponential rule for algebraic endpoint singularities.
integrate_semi_infinite_decay
    Truncation of exponentially damped integrands plus a tail bound.
integrate_oscillatory_phase / integrate_oscillatory_zeros
    Lobe summation between consecutive zeros, accelerated with Wynn's
    epsilon algorithm (iterated Shanks transform).
"""

from __future__ import annotations

import heapq
import math
import warnings
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import BracketError, DomainError, IntegrandError
from .kernels import EPS, GK_GAUSS, GK_KRONROD, GK_NODES, TINY

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_depth: int = 30
    max_evals: int = 10_000_000

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise DomainError("QuadSpec tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("QuadSpec.max_depth must be >= 1")
        if self.max_evals < 1:
            raise DomainError("QuadSpec.max_evals must be >= 1")

    def tolerance(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def tightened(self, factor: float) -> "QuadSpec":
        """Same spec with both tolerances divided by ``factor``."""
        return replace(self, rel_tol=self.rel_tol / factor, abs_tol=self.abs_tol / factor)


DEFAULT_SPEC = QuadSpec()


@dataclass
class QuadResult:
    value: float
    error_estimate: float
    evals: int
    converged: bool
    status: str = "converged"
    meta: dict = field(default_factory=dict)

    def __float__(self) -> float:
        return float(self.value)

    def scaled(self, factor: float) -> "QuadResult":
        return replace(
            self,
            value=self.value * factor,
            error_estimate=self.error_estimate * abs(factor),
            meta=dict(self.meta),
        )


def combine(*parts: QuadResult, meta: dict | None = None) -> QuadResult:
    """Sum of independent pieces; errors add, convergence is conjunctive."""
    bad = [p.status for p in parts if not p.converged]
    return QuadResult(
        value=math.fsum(p.value for p in parts),
        error_estimate=math.fsum(p.error_estimate for p in parts),
        evals=sum(p.evals for p in parts),
        converged=not bad,
        status=bad[0] if bad else "converged",
        meta=dict(meta or {}),
    )


def _evaluate(f: Integrand, x: np.ndarray) -> np.ndarray:
    y = np.asarray(f(x), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape).astype(float)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise IntegrandError(f"integrand is not finite at x={bad!r}")
    return y


# ---------------------------------------------------------------------------
# Gauss-Kronrod
# ---------------------------------------------------------------------------

def _gk_panels(f: Integrand, a: np.ndarray, b: np.ndarray):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * GK_NODES[None, :]
    fx = _evaluate(f, x.ravel()).reshape(x.shape)
    resk = fx @ GK_KRONROD
    resg = fx @ GK_GAUSS
    resabs = np.abs(fx) @ GK_KRONROD
    resasc = np.abs(fx - 0.5 * resk[:, None]) @ GK_KRONROD
    ah = np.abs(half)
    resk = resk * half
    resabs = resabs * ah
    resasc = resasc * ah
    err = np.abs(resk - resg * half)
    with np.errstate(divide="ignore", invalid="ignore"):
        scaled = resasc * np.minimum(1.0, (200.0 * err / resasc) ** 1.5)
    err = np.where((resasc != 0.0) & (err != 0.0), scaled, err)
    err = np.where(resabs > TINY / (50.0 * EPS), np.maximum(50.0 * EPS * resabs, err), err)
    return resk, err, resabs


def integrate_finite(f: Integrand, lo: float, hi: float, spec: QuadSpec | None = None,
                     *, panels: int = 1) -> QuadResult:
    """Adaptive Gauss-Kronrod (7/15) integration of ``f`` over ``[lo, hi]``.

    The panel with the largest error estimate is bisected until the summed
    estimate meets ``spec``.  ``panels`` sets the number of equal panels of
    the first pass, which helps for integrands with many oscillations.

    Returns a :class:`QuadResult`; ``converged`` is False (with the best
    estimate) when ``max_depth`` or ``max_evals`` stops the refinement.
    """
    spec = spec or DEFAULT_SPEC
    lo = float(lo)
    hi = float(hi)
    if not (math.isfinite(lo) and math.isfinite(hi)) or not lo < hi:
        raise DomainError(f"integrate_finite needs finite lo < hi, got [{lo}, {hi}]")
    edges = np.linspace(lo, hi, int(panels) + 1)
    vals, errs, _ = _gk_panels(f, edges[:-1], edges[1:])
    evals = 15 * int(panels)
    heap = []
    counter = 0
    for a, b, v, e in zip(edges[:-1], edges[1:], vals, errs):
        heap.append((-e, counter, a, b, v, e, 0))
        counter += 1
    heapq.heapify(heap)
    frozen: list[tuple[float, float]] = []
    total = float(np.sum(vals))
    err_total = float(np.sum(errs))
    status = "converged"
    while True:
        if err_total <= spec.tolerance(total):
            break
        if not heap:
            status = "max_depth"
            break
        if evals + 30 > spec.max_evals:
            status = "max_evals"
            break
        _, _, a, b, v, e, depth = heapq.heappop(heap)
        if depth >= spec.max_depth:
            frozen.append((v, e))
            continue
        m = 0.5 * (a + b)
        cv, ce, _ = _gk_panels(f, np.array([a, m]), np.array([m, b]))
        evals += 30
        total += cv[0] + cv[1] - v
        err_total += ce[0] + ce[1] - e
        for (pa, pb), v2, e2 in zip(((a, m), (m, b)), cv, ce):
            heapq.heappush(heap, (-e2, counter, pa, pb, v2, e2, depth + 1))
            counter += 1
    # re-sum in a fixed order to shed the running-sum drift
    pieces = sorted([(item[2], item[4], item[5]) for item in heap])
    value = math.fsum([p[1] for p in pieces] + [v for v, _ in frozen])
    error = math.fsum([p[2] for p in pieces] + [e for _, e in frozen])
    converged = error <= spec.tolerance(value)
    if converged:
        status = "converged"
    elif status == "converged":
        status = "max_depth"
    return QuadResult(value, error, evals, converged, status)


# ---------------------------------------------------------------------------
# tanh-sinh
# ---------------------------------------------------------------------------

_TS_TMAX = 6.0  # pi*sinh(6) ~ 633, so the outermost nodes sit ~1e-275 from the ends
_TS_MAX_LEVEL = 12
_TS_MIN_LEVEL = 3


def _ts_nodes(t: np.ndarray):
    """Map t -> (u, 1-u, du/dt) for u = (1 + tanh(pi/2 sinh t)) / 2."""
    e = np.exp(-np.pi * np.sinh(np.abs(t)))
    small = e / (1.0 + e)
    large = 1.0 / (1.0 + e)
    u = np.where(t < 0, small, large)
    v = np.where(t < 0, large, small)
    w = np.pi * np.cosh(t) * small * large
    return u, v, w


def tanh_sinh(f: Callable, lo: float, hi: float, spec: QuadSpec | None = None,
              *, complement: bool = False) -> QuadResult:
    """Tanh-sinh quadrature over ``[lo, hi]``.

    With ``complement=True`` the integrand is called as ``f(x, x - lo, hi - x)``
    where both distances are computed without cancellation, which matters
    for singular factors such as ``(hi - x)**-0.5``.

    The level-to-level difference serves as the error estimate.  An
    integrand whose weighted values do not vanish at the outermost nodes is
    reported with ``status="divergent"``.
    """
    spec = spec or DEFAULT_SPEC
    lo = float(lo)
    hi = float(hi)
    if not lo < hi:
        raise DomainError(f"tanh_sinh needs lo < hi, got [{lo}, {hi}]")
    width = hi - lo
    max_level = min(spec.max_depth, _TS_MAX_LEVEL)

    def weighted(t):
        u, v, w = _ts_nodes(t)
        x = lo + width * u
        if complement:
            fx = _evaluate_multi(f, x, width * u, width * v)
        else:
            fx = _evaluate(f, x)
        return width * w * fx

    t0 = np.arange(-_TS_TMAX, _TS_TMAX + 0.5)
    wf = weighted(t0)
    acc = math.fsum(wf)
    acc_abs = float(np.sum(np.abs(wf)))
    end_mass = float(abs(wf[0]) + abs(wf[-1]))
    evals = t0.size
    estimates = [acc]
    diffs: list[float] = []
    h = 1.0
    status = "max_depth"
    converged = False
    err = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        n = int(round(_TS_TMAX / h))
        t = h * np.arange(-n + 1, n, 2)
        if evals + t.size > spec.max_evals:
            status = "max_evals"
            break
        wf = weighted(t)
        evals += t.size
        acc += math.fsum(wf)
        acc_abs += float(np.sum(np.abs(wf)))
        est = h * acc
        diffs.append(abs(est - estimates[-1]))
        estimates.append(est)
        err = diffs[-1] + 10.0 * EPS * h * acc_abs + end_mass
        if level >= _TS_MIN_LEVEL and err <= spec.tolerance(est):
            converged = True
            status = "converged"
            break
    value = estimates[-1]
    if not converged and status != "max_evals":
        tol = spec.tolerance(value)
        if end_mass > tol or (len(diffs) >= 3 and diffs[-1] > 0.5 * diffs[-2]):
            status = "divergent"
    return QuadResult(value, err, evals, converged, status)


def _evaluate_multi(f, x, dlo, dhi):
    y = np.asarray(f(x, dlo, dhi), dtype=float)
    if y.shape != x.shape:
        y = np.broadcast_to(y, x.shape).astype(float)
    if not np.all(np.isfinite(y)):
        bad = x[~np.isfinite(y)][0]
        raise IntegrandError(f"integrand is not finite at x={bad!r}")
    return y


def integrate_singular_unit(f: Callable, spec: QuadSpec | None = None,
                            *, complement: bool = False) -> QuadResult:
    """Integrate over [0, 1] allowing algebraic endpoint singularities.

    With ``complement=True``, ``f`` receives ``(u, u, 1 - u)`` so that factors
    like ``(1 - u)**(b - 1)`` keep full relative accuracy next to u = 1.
    """
    return tanh_sinh(f, 0.0, 1.0, spec, complement=complement)


# ---------------------------------------------------------------------------
# exponentially decaying semi-infinite integrals
# ---------------------------------------------------------------------------

class HintWarning(RuntimeWarning):
    """The sampled tail decays slower than the stated decay rate."""


def integrate_semi_infinite_decay(f: Integrand, decay_rate_hint: float,
                                  spec: QuadSpec | None = None, *, lo: float = 0.0,
                                  panels: int = 8) -> QuadResult:
    """Integrate ``f`` over ``[lo, inf)`` for ``|f(t)| <= C exp(-r t)``.

    The cut ``T`` is the larger of ``lo + 50/r`` and the first point where
    three consecutive probes fall below ``abs_tol/100``.  The neglected tail
    is bounded by ``max|f(T..)| / r`` and added to the error estimate.
    """
    spec = spec or DEFAULT_SPEC
    r = float(decay_rate_hint)
    if not r > 0:
        raise DomainError("decay_rate_hint must be positive")
    lo = float(lo)
    step = 0.5 / r
    thresh = spec.abs_tol / 100.0
    probe_cut = None
    evals = 0
    start = lo
    limit = lo + 4000.0 / r
    while start < limit:
        grid = start + step * np.arange(1, 65)
        vals = np.abs(_evaluate(f, grid))
        evals += grid.size
        below = vals < thresh
        run = 0
        for i, ok in enumerate(below):
            run = run + 1 if ok else 0
            if run == 3:
                probe_cut = grid[i - 2]
                break
        if probe_cut is not None:
            break
        start = grid[-1]
    if probe_cut is None:
        probe_cut = limit
    cut = max(lo + 50.0 / r, probe_cut)
    # probes span 5/r past the cut, long enough to see a slower decay
    probes = cut + step * np.arange(11)
    fp = np.abs(_evaluate(f, probes))
    evals += probes.size
    tail = 2.0 * float(fp.max()) / r
    meta = {"cut": cut}
    envelope = fp[0] * np.exp(-r * step * np.arange(11))
    if np.any(fp > 10.0 * envelope + thresh):
        warnings.warn(
            f"tail of integrand decays slower than the hint r={r}", HintWarning, stacklevel=2
        )
        meta["hint_warning"] = True
    body = integrate_finite(f, lo, cut, spec, panels=panels)
    err = body.error_estimate + tail
    return QuadResult(
        body.value,
        err,
        body.evals + evals,
        body.converged and err <= spec.tolerance(body.value),
        body.status if body.converged else body.status,
        meta,
    )


# ---------------------------------------------------------------------------
# sequence acceleration
# ---------------------------------------------------------------------------

def wynn_epsilon(seq) -> tuple[float, float]:
    """Wynn's epsilon table on ``seq``; returns (estimate, spread).

    The estimate is the last entry of the highest even column.  ``spread``
    is the distance to the neighbouring entries of that column and of the
    column before it, a cheap consistency measure.
    """
    s = [float(v) for v in seq]
    n = len(s)
    if n == 0:
        raise DomainError("empty sequence")
    if n < 3:
        return s[-1], (abs(s[-1] - s[-2]) if n == 2 else math.inf)
    prev = [0.0] * (n + 1)
    cur = list(s)
    evens = [cur]
    for _ in range(1, n):
        nxt = []
        stalled = False
        for j in range(len(cur) - 1):
            d = cur[j + 1] - cur[j]
            if d == 0.0:
                stalled = True
                break
            nxt.append(prev[j + 1] + 1.0 / d)
        if stalled or not nxt:
            break
        prev, cur = cur, nxt
        if len(evens) and (len(s) - len(cur)) % 2 == 0:
            evens.append(cur)
    col = evens[-1]
    est = col[-1]
    spread = 0.0
    if len(col) >= 2:
        spread = abs(col[-1] - col[-2])
    if len(evens) >= 2:
        spread = max(spread, abs(est - evens[-2][-1]))
    else:
        spread = max(spread, abs(s[-1] - s[-2]))
    return est, spread


def shanks(seq) -> float:
    """Single Shanks transform of the last three terms."""
    a, b, c = (float(v) for v in seq[-3:])
    den = (c - b) - (b - a)
    if den == 0.0:
        return c
    return c - (c - b) ** 2 / den


class _LobeAccumulator:
    """Partial sums of lobe integrals with windowed epsilon acceleration."""

    window = 24

    def __init__(self, head: float, spec: QuadSpec, min_lobes: int):
        self.partials = [head]
        self.estimates: list[float] = []
        self.spec = spec
        self.min_lobes = min_lobes
        self.lobe_err = 0.0
        self.evals = 0
        self.error = math.inf

    def add(self, lobe: QuadResult) -> bool:
        self.partials.append(self.partials[-1] + lobe.value)
        self.lobe_err += lobe.error_estimate
        self.evals += lobe.evals
        est, spread = wynn_epsilon(self.partials[-self.window:])
        self.estimates.append(est)
        if len(self.estimates) < 3 or len(self.partials) - 1 < self.min_lobes:
            return False
        e = self.estimates
        cauchy = max(abs(e[-1] - e[-2]), abs(e[-1] - e[-3]))
        floor = 10.0 * EPS * max(abs(p) for p in self.partials[-self.window:])
        self.error = max(cauchy, spread) + self.lobe_err + floor
        return self.error <= self.spec.tolerance(e[-1])

    def result(self, converged: bool, status: str, meta: dict) -> QuadResult:
        value = self.estimates[-1] if self.estimates else self.partials[-1]
        return QuadResult(value, self.error, self.evals, converged, status, meta)


# ---------------------------------------------------------------------------
# oscillatory integrals
# ---------------------------------------------------------------------------

def _scalar(fn, u: float) -> float:
    return float(np.asarray(fn(np.array([u], dtype=float)), dtype=float)[0])


def find_phase_crossing(phase: Callable, k: int, bracket_lo: float, bracket_hi: float) -> float:
    """Root of ``phase(u) = k*pi`` inside a bracket, via Brent's method.

    Raises :class:`BracketError` unless ``phase(lo) < k*pi < phase(hi)``.
    """
    target = k * math.pi
    plo = _scalar(phase, bracket_lo)
    phi = _scalar(phase, bracket_hi)
    if not (plo < target < phi):
        raise BracketError(
            f"phase({bracket_lo})={plo} and phase({bracket_hi})={phi} do not bracket {target}"
        )
    root = brentq(lambda u: _scalar(phase, u) - target, bracket_lo, bracket_hi,
                  xtol=TINY, rtol=4.0 * EPS, maxiter=500)
    return float(root)


def _bracket_above(phase, phase_deriv, u0: float, target: float) -> float:
    p0 = _scalar(phase, u0)
    d = _scalar(phase_deriv, u0)
    gap = target - p0
    if d > 0 and math.isfinite(d):
        step = 1.25 * gap / d
    else:
        step = 1e-3 * max(abs(u0), 1.0)
    step = max(step, 1e-12 * max(abs(u0), 1.0))
    hi = u0 + step
    for _ in range(200):
        if _scalar(phase, hi) > target:
            return hi
        step *= 2.0
        hi = u0 + step
    raise BracketError(f"phase never reaches {target} above u={u0}")


def integrate_oscillatory_phase(amplitude: Callable, phase: Callable, phase_deriv: Callable,
                                lo: float, spec: QuadSpec | None = None, *,
                                max_lobes: int = 200, min_lobes: int = 14) -> QuadResult:
    """``int_lo^inf amplitude(u) sin(phase(u)) du`` for increasing ``phase``.

    The half-line is cut where ``phase`` crosses multiples of pi; each lobe
    goes through :func:`integrate_finite`, and the alternating partial sums
    are extrapolated with :func:`wynn_epsilon`.
    """
    spec = spec or DEFAULT_SPEC
    lobe_spec = spec.tightened(10.0)
    lo = float(lo)

    def integrand(u):
        return amplitude(u) * np.sin(phase(u))

    p_lo = _scalar(phase, lo)
    k = math.floor(p_lo / math.pi) + 1
    hi = _bracket_above(phase, phase_deriv, lo, k * math.pi)
    u_prev = find_phase_crossing(phase, k, lo, hi)
    if u_prev - lo <= 4.0 * EPS * max(1.0, abs(lo)):
        # lo already sits on a crossing (up to rounding): no partial head lobe
        head = QuadResult(0.0, 0.0, 0, True)
    else:
        head = integrate_finite(integrand, lo, u_prev, lobe_spec)
    acc = _LobeAccumulator(head.value, spec, min_lobes)
    acc.lobe_err += head.error_estimate
    acc.evals += head.evals
    crossings = [u_prev]
    lobes_ok = head.converged
    for _ in range(max_lobes):
        k += 1
        hi = _bracket_above(phase, phase_deriv, u_prev, k * math.pi)
        u_next = find_phase_crossing(phase, k, u_prev, hi)
        lobe = integrate_finite(integrand, u_prev, u_next, lobe_spec)
        lobes_ok &= lobe.converged
        crossings.append(u_next)
        u_prev = u_next
        if acc.add(lobe):
            return acc.result(lobes_ok, "converged" if lobes_ok else "lobe_failure",
                              {"lobes": len(crossings) - 1, "last_crossing": u_prev})
    return acc.result(False, "max_lobes", {"lobes": len(crossings) - 1, "last_crossing": u_prev})


def integrate_oscillatory_zeros(f: Integrand, lo: float, scan_step: float,
                                spec: QuadSpec | None = None, *, max_lobes: int = 200,
                                min_lobes: int = 14) -> QuadResult:
    """``int_lo^inf f`` for an oscillating ``f`` with unknown zeros.

    Zeros are located by scanning with ``scan_step`` for sign changes and
    refining each with Brent's method; the step must be below half the
    smallest zero spacing.
    """
    spec = spec or DEFAULT_SPEC
    lobe_spec = spec.tightened(10.0)
    zeros = _ZeroScanner(f, float(lo), float(scan_step))
    z = zeros.next()
    head = integrate_finite(f, lo, z, lobe_spec)
    acc = _LobeAccumulator(head.value, spec, min_lobes)
    acc.lobe_err += head.error_estimate
    acc.evals += head.evals
    lobes_ok = head.converged
    count = 0
    for _ in range(max_lobes):
        z_next = zeros.next()
        lobe = integrate_finite(f, z, z_next, lobe_spec)
        lobes_ok &= lobe.converged
        count += 1
        z = z_next
        if acc.add(lobe):
            acc.evals += zeros.evals
            return acc.result(lobes_ok, "converged" if lobes_ok else "lobe_failure",
                              {"lobes": count, "last_zero": z})
    acc.evals += zeros.evals
    return acc.result(False, "max_lobes", {"lobes": count, "last_zero": z})


class _ZeroScanner:
    block = 64

    def __init__(self, f, lo, step):
        if not step > 0:
            raise DomainError("scan_step must be positive")
        self.f = f
        self.step = step
        self.pos = lo
        self.evals = 0
        self.pending: list[float] = []
        first = _scalar(f, lo)
        # a zero exactly at lo does not count as a lobe boundary
        self.last_val = first if first != 0.0 else _scalar(f, lo + 1e-3 * step)

    def next(self) -> float:
        while not self.pending:
            grid = self.pos + self.step * np.arange(1, self.block + 1)
            vals = _evaluate(self.f, grid)
            self.evals += grid.size
            prev_x = self.pos
            prev_v = self.last_val
            for x, v in zip(grid, vals):
                if v == 0.0:
                    self.pending.append(float(x))
                    v = -prev_v
                elif (v > 0) != (prev_v > 0):
                    self.pending.append(self._refine(prev_x, x))
                prev_x, prev_v = x, v
            self.pos = float(grid[-1])
            self.last_val = prev_v
        return self.pending.pop(0)

    def _refine(self, lo: float, hi: float) -> float:
        g = lambda u: _scalar(self.f, u)  # noqa: E731
        glo, ghi = g(lo), g(hi)
        # a grid point can sit on the zero itself, where scalar and batched
        # evaluation may round to opposite signs
        if glo == 0.0 or (glo > 0) == (ghi > 0):
            return float(lo if abs(glo) <= abs(ghi) else hi)
        return float(brentq(g, lo, hi, xtol=TINY, rtol=4.0 * EPS, maxiter=500))
