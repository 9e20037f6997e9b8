"""Hot numeric kernels, each with a numba path and a numpy path.

Public names (``series_sum``, ``bessel_j_integral``) dispatch on
:data:`besselreps._accel.USE_NUMBA`.  The ``nb_*`` and ``np_*`` variants are
importable directly so tests and ``benchmarks/bench_kernels.py`` can compare
them.

The power series of J and I are summed in double-double arithmetic.  Without
it the alternating J series loses about ``log10(I0(x)/|J0(x)|)`` digits to
cancellation, roughly 13 digits at x = 30.
"""

from __future__ import annotations

import math

import numpy as np

from ._accel import USE_NUMBA, njit

# Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
])
_WGK_CENTER = 0.209482141084727828012999174891714
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
])
_WG_CENTER = 0.417959183673469387755102040816327

GK_NODES = np.concatenate([-_XGK, [0.0], _XGK[::-1]])
GK_KRONROD = np.concatenate([_WGK, [_WGK_CENTER], _WGK[::-1]])
GK_GAUSS = np.zeros(15)
GK_GAUSS[[1, 3, 5]] = _WG
GK_GAUSS[7] = _WG_CENTER
GK_GAUSS[[13, 11, 9]] = _WG

EPS = float(np.finfo(float).eps)
TINY = float(np.finfo(float).tiny)

_SPLITTER = 134217729.0  # 2**27 + 1


# ---------------------------------------------------------------------------
# double-double primitives (scalar, numba)
# ---------------------------------------------------------------------------

@njit
def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


@njit
def _quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


@njit
def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


@njit
def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@njit
def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    e += al + bl
    return _quick_two_sum(s, e)


@njit
def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e += ah * bl + al * bh
    return _quick_two_sum(p, e)


@njit
def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _dd_mul(q1, 0.0, bh, bl)
    rh, rl = _dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _dd_mul(q2, 0.0, bh, bl)
    rh, rl = _dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = _quick_two_sum(q1, q2)
    return _dd_add(q1, q2, q3, 0.0)


# ---------------------------------------------------------------------------
# series sums
# ---------------------------------------------------------------------------

@njit
def _series_one(alpha, x, sign, min_terms, max_terms):
    # Sum c_m with c_0 = 1 and c_{m+1} = sign * c_m * (x/2)^2 / ((m+1)(m+1+alpha)).
    h = 0.5 * x
    qh, ql = _two_prod(h, h)
    ch, cl = 1.0, 0.0
    sh, sl = 1.0, 0.0
    biggest = 1.0
    m = 0
    while True:
        # next term c_{m+1}
        k = m + 1.0
        dh, dl = _two_sum(k, alpha)
        dh, dl = _dd_mul(dh, dl, k, 0.0)
        nh, nl = _dd_mul(ch, cl, qh, ql)
        nh, nl = _dd_div(nh, nl, dh, dl)
        if sign < 0:
            nh, nl = -nh, -nl
        terms = m + 1
        decreasing = qh < dh
        if decreasing and terms >= min_terms:
            mag = abs(nh)
            if sign < 0:
                tail = mag
            else:
                r = qh / ((k + 1.0) * (k + 1.0 + alpha))
                tail = mag / (1.0 - r) if r < 1.0 else np.inf
            if tail <= 1e-17 * abs(sh) or tail <= 1e-31 * biggest or mag == 0.0:
                return sh + sl, terms, tail, True
        if terms >= max_terms:
            return sh + sl, terms, abs(nh), False
        sh, sl = _dd_add(sh, sl, nh, nl)
        ch, cl = nh, nl
        if abs(nh) > biggest:
            biggest = abs(nh)
        m += 1


@njit
def nb_series_sum(alpha, xs, sign, min_terms, max_terms):
    """Scaled series sums over an array (numba path).

    Returns ``(S, terms, tail, ok)`` where ``S[i] = sum_m c_m`` for ``xs[i]``
    and ``tail[i]`` bounds the dropped remainder on the same scale.
    """
    n = xs.shape[0]
    out = np.empty(n)
    terms = np.empty(n, dtype=np.int64)
    tail = np.empty(n)
    ok = np.empty(n, dtype=np.bool_)
    for i in range(n):
        s, t, b, good = _series_one(alpha, xs[i], sign, min_terms, max_terms)
        out[i] = s
        terms[i] = t
        tail[i] = b
        ok[i] = good
    return out, terms, tail, ok


def _np_two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _np_quick_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _np_two_prod(a, b):
    p = a * b
    c = _SPLITTER * a
    ah = c - (c - a)
    al = a - ah
    c = _SPLITTER * b
    bh = c - (c - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _np_dd_add(ah, al, bh, bl):
    s, e = _np_two_sum(ah, bh)
    return _np_quick_two_sum(s, e + al + bl)


def _np_dd_mul(ah, al, bh, bl):
    p, e = _np_two_prod(ah, bh)
    return _np_quick_two_sum(p, e + ah * bl + al * bh)


def _np_dd_div(ah, al, bh, bl):
    q1 = ah / bh
    ph, pl = _np_dd_mul(q1, 0.0, bh, bl)
    rh, rl = _np_dd_add(ah, al, -ph, -pl)
    q2 = rh / bh
    ph, pl = _np_dd_mul(q2, 0.0, bh, bl)
    rh, rl = _np_dd_add(rh, rl, -ph, -pl)
    q3 = rh / bh
    q1, q2 = _np_quick_two_sum(q1, q2)
    return _np_dd_add(q1, q2, q3, 0.0)


def np_series_sum(alpha, xs, sign, min_terms, max_terms):
    """Vectorised numpy twin of :func:`nb_series_sum`."""
    xs = np.asarray(xs, dtype=float)
    n = xs.shape[0]
    h = 0.5 * xs
    qh, ql = _np_two_prod(h, h)
    ch = np.ones(n)
    cl = np.zeros(n)
    sh = np.ones(n)
    sl = np.zeros(n)
    biggest = np.ones(n)
    out = np.empty(n)
    terms = np.zeros(n, dtype=np.int64)
    tail = np.empty(n)
    ok = np.zeros(n, dtype=bool)
    active = np.ones(n, dtype=bool)
    m = 0
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        while active.any():
            k = m + 1.0
            dh, dl = _np_two_sum(np.full(n, k), np.full(n, float(alpha)))
            dh, dl = _np_dd_mul(dh, dl, k, 0.0)
            nh, nl = _np_dd_mul(ch, cl, qh, ql)
            nh, nl = _np_dd_div(nh, nl, dh, dl)
            if sign < 0:
                nh, nl = -nh, -nl
            nterms = m + 1
            mag = np.abs(nh)
            if sign < 0:
                tl = mag
            else:
                r = qh / ((k + 1.0) * (k + 1.0 + alpha))
                tl = np.where(r < 1.0, mag / (1.0 - r), np.inf)
            done = (
                active
                & (qh < dh)
                & (nterms >= min_terms)
                & ((tl <= 1e-17 * np.abs(sh)) | (tl <= 1e-31 * biggest) | (mag == 0.0))
            )
            out[done] = (sh + sl)[done]
            terms[done] = nterms
            tail[done] = tl[done]
            ok[done] = True
            active &= ~done
            if nterms >= max_terms:
                out[active] = (sh + sl)[active]
                terms[active] = nterms
                tail[active] = mag[active]
                break
            sh, sl = _np_dd_add(sh, sl, nh, nl)
            ch, cl = nh, nl
            biggest = np.maximum(biggest, mag)
            m += 1
    return out, terms, tail, ok


def series_sum(alpha, xs, sign, min_terms=1, max_terms=200):
    xs = np.ascontiguousarray(xs, dtype=float)
    if USE_NUMBA:
        return nb_series_sum(float(alpha), xs, int(sign), int(min_terms), int(max_terms))
    return np_series_sum(float(alpha), xs, int(sign), int(min_terms), int(max_terms))


# ---------------------------------------------------------------------------
# J_alpha for large argument from the Bessel/Schlafli integral
#   J_a(x) = (1/pi) int_0^pi cos(a t - x sin t) dt
#            - (sin(a pi)/pi) int_0^inf exp(-x sinh s - a s) ds
# ---------------------------------------------------------------------------

_GL40_X, _GL40_W = np.polynomial.legendre.leggauss(40)


def gauss_legendre(n: int):
    return np.polynomial.legendre.leggauss(int(n))


def schlafli_order(xmax: float) -> int:
    """Gauss-Legendre order that resolves ``cos(a t - x sin t)`` on [0, pi]."""
    return int(math.ceil(0.75 * xmax)) + 40


def _sin_pi(a: float) -> float:
    r = math.fmod(a, 2.0)
    if r == math.floor(r):
        return 0.0
    return math.sin(math.pi * r)


@njit
def nb_bessel_j_integral(alpha, xs, sinpi_a, gx, gw, tx, tw):
    n = xs.shape[0]
    out = np.empty(n)
    half_pi = 0.5 * np.pi
    for i in range(n):
        x = xs[i]
        s1 = 0.0
        for j in range(gx.shape[0]):
            t = half_pi * (gx[j] + 1.0)
            s1 += gw[j] * math.cos(alpha * t - x * math.sin(t))
        val = 0.5 * s1
        if sinpi_a != 0.0:
            upper = math.asinh(45.0 / x)
            s2 = 0.0
            for j in range(tx.shape[0]):
                s = 0.5 * upper * (tx[j] + 1.0)
                s2 += tw[j] * math.exp(-x * math.sinh(s) - alpha * s)
            val -= sinpi_a / np.pi * 0.5 * upper * s2
        out[i] = val
    return out


def np_bessel_j_integral(alpha, xs, sinpi_a, gx, gw, tx, tw):
    xs = np.asarray(xs, dtype=float)
    t = 0.5 * np.pi * (gx + 1.0)
    phase = alpha * t[None, :] - xs[:, None] * np.sin(t)[None, :]
    val = 0.5 * (np.cos(phase) @ gw)
    if sinpi_a != 0.0:
        upper = np.arcsinh(45.0 / xs)
        s = 0.5 * upper[:, None] * (tx[None, :] + 1.0)
        s2 = np.exp(-xs[:, None] * np.sinh(s) - alpha * s) @ tw
        val = val - sinpi_a / np.pi * 0.5 * upper * s2
    return val


def bessel_j_integral(alpha: float, xs) -> np.ndarray:
    """J_alpha(x) for x > 0 from the Schlafli integral (any x, tuned for x > 20)."""
    xs = np.ascontiguousarray(xs, dtype=float)
    if xs.size == 0:
        return np.empty(0)
    gx, gw = gauss_legendre(schlafli_order(float(xs.max())))
    sp = _sin_pi(float(alpha))
    if USE_NUMBA:
        return nb_bessel_j_integral(float(alpha), xs, sp, gx, gw, _GL40_X, _GL40_W)
    return np_bessel_j_integral(float(alpha), xs, sp, gx, gw, _GL40_X, _GL40_W)


# ---------------------------------------------------------------------------
# adaptive G7K15 for the single-integral J0/I0 integrand
#   g(phi) = sin(phi) * (S(c sin phi) + c sin(phi) C(c sin phi))
# with (S, C) = (sin, cos) or (sinh, cosh); ``shift`` multiplies the
# hyperbolic integrand by exp(-shift) without overflow.
# ---------------------------------------------------------------------------

@njit
def _imag_integrand(phi, c, hyperbolic, shift):
    s = math.sin(phi)
    y = c * s
    if hyperbolic:
        ep = math.exp(y - shift)
        em = math.exp(-y - shift)
        return s * (0.5 * (ep - em) + y * 0.5 * (ep + em))
    return s * (math.sin(y) + y * math.cos(y))


@njit
def _gk15_panel(a, b, c, hyperbolic, shift, nodes, wk, wg):
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    fv = np.empty(15)
    resk = 0.0
    resg = 0.0
    resabs = 0.0
    for j in range(15):
        f = _imag_integrand(mid + half * nodes[j], c, hyperbolic, shift)
        fv[j] = f
        resk += wk[j] * f
        resg += wg[j] * f
        resabs += wk[j] * abs(f)
    mean = 0.5 * resk
    resasc = 0.0
    for j in range(15):
        resasc += wk[j] * abs(fv[j] - mean)
    resk *= half
    resabs *= abs(half)
    resasc *= abs(half)
    err = abs((resk - resg * half))
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > TINY / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    return resk, err


@njit
def nb_imag_inner(c, hyperbolic, shift, rel_tol, abs_tol, max_depth, max_panels):
    """Integrate ``g`` over [0, pi]; returns (value, error, evals, converged)."""
    cap = max_panels
    pa = np.empty(cap)
    pb = np.empty(cap)
    pv = np.empty(cap)
    pe = np.empty(cap)
    pd = np.empty(cap, dtype=np.int64)
    live = np.zeros(cap, dtype=np.bool_)
    v, e = _gk15_panel(0.0, np.pi, c, hyperbolic, shift, GK_NODES, GK_KRONROD, GK_GAUSS)
    pa[0] = 0.0
    pb[0] = np.pi
    pv[0] = v
    pe[0] = e
    pd[0] = 0
    live[0] = True
    count = 1
    evals = 15
    while True:
        total = 0.0
        err = 0.0
        for i in range(count):
            total += pv[i]
            err += pe[i]
        if err <= max(abs_tol, rel_tol * abs(total)):
            return total, err, evals, True
        worst = -1
        werr = -1.0
        for i in range(count):
            if live[i] and pe[i] > werr:
                werr = pe[i]
                worst = i
        if worst < 0 or count + 1 > cap:
            return total, err, evals, False
        if pd[worst] >= max_depth:
            live[worst] = False
            continue
        a = pa[worst]
        b = pb[worst]
        m = 0.5 * (a + b)
        v1, e1 = _gk15_panel(a, m, c, hyperbolic, shift, GK_NODES, GK_KRONROD, GK_GAUSS)
        v2, e2 = _gk15_panel(m, b, c, hyperbolic, shift, GK_NODES, GK_KRONROD, GK_GAUSS)
        evals += 30
        d = pd[worst] + 1
        pb[worst] = m
        pv[worst] = v1
        pe[worst] = e1
        pd[worst] = d
        pa[count] = m
        pb[count] = b
        pv[count] = v2
        pe[count] = e2
        pd[count] = d
        live[count] = True
        count += 1


def imag_integrand(phi, c: float, hyperbolic: bool, shift: float = 0.0):
    """Numpy evaluation of the same integrand (used by the fallback path)."""
    phi = np.asarray(phi, dtype=float)
    s = np.sin(phi)
    y = c * s
    if hyperbolic:
        ep = np.exp(y - shift)
        em = np.exp(-y - shift)
        return s * (0.5 * (ep - em) + y * 0.5 * (ep + em))
    return s * (np.sin(y) + y * np.cos(y))
