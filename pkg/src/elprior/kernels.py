"""Hot numerical kernels.

Every function here is written in numba-compatible numpy and compiled with
``@njit`` by default.  Setting the environment variable ``ELPRIOR_NO_NUMBA=1``
(or running without numba installed) selects the pure-numpy fallback: the same
source executed by the interpreter.  ``benchmarks/bench_kernels.py`` compares
the two paths.

Kernels communicate failure through integer status codes instead of
exceptions (numba cannot raise rich exceptions); the wrappers in the public
modules translate them.

Estimating-function kinds are encoded as integers:
    0 = mean              G(x, t) = x - t
    1 = second-moment     G(x, t) = x^2 - 2 t x
    2 = exp-scale         G(x, t) = exp(x) - exp(mu + t/2)   (kp = mu)
    3 = cubic-centered    G(x, t) = (x - t)^3

Prior codes (see estimators._prior_params):
    0 = rational polynomial  sigma^2(t) = poly(num, t) / poly(den, t)^2
    1 = exp-scale            sigma^2(t) from exp-moments (pme1, pme2) and mu
    2 = flat                 sigma^2(t) = 1
"""

import math
import os

import numpy as np

_ENV_FLAG = os.environ.get("ELPRIOR_NO_NUMBA", "").strip().lower()
USE_NUMBA = _ENV_FLAG not in ("1", "true", "yes")

if USE_NUMBA:
    try:
        from numba import njit
    except ImportError:  # pragma: no cover - numba is a hard dependency
        USE_NUMBA = False

if USE_NUMBA:
    def _jit(fn):
        return njit(cache=True, nogil=True)(fn)
else:
    def _jit(fn):
        return fn

# status codes shared by the kernels
OK = 0
NO_CONVERGENCE = 1
DEGENERATE_PRIOR = 2

MEAN, SECOND_MOMENT, EXP_SCALE, CUBIC = 0, 1, 2, 3
PRIOR_POLY, PRIOR_EXP, PRIOR_FLAT = 0, 1, 2

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_TIE_EPS = 1e-12


@_jit
def g_array(x, kind, kp, theta):
    if kind == 0:
        return x - theta
    elif kind == 1:
        return x * x - 2.0 * theta * x
    elif kind == 2:
        return np.exp(x) - math.exp(kp + 0.5 * theta)
    else:
        d = x - theta
        return d * d * d


@_jit
def mean_g(x, kind, kp, theta):
    return np.mean(g_array(x, kind, kp, theta))


@_jit
def mean_g_dtheta(x, kind, kp, theta):
    if kind == 0:
        return -1.0
    elif kind == 1:
        return -2.0 * np.mean(x)
    elif kind == 2:
        return -0.5 * math.exp(kp + 0.5 * theta)
    else:
        d = x - theta
        return -3.0 * np.mean(d * d)


@_jit
def side_masses(g):
    """(w1, w2) = sum of G^2 over negative / positive G."""
    w1 = 0.0
    w2 = 0.0
    for v in g:
        if v < 0.0:
            w1 += v * v
        elif v > 0.0:
            w2 += v * v
    return w1, w2


@_jit
def lambda_residual(g, lam):
    n = g.shape[0]
    return np.sum(g / (n + lam * g)) / n


@_jit
def solve_lambda_kernel(g, tol, max_iter):
    """Bracketed Newton/bisection on the monotone multiplier equation.

    Returns (lam, iterations, status).  Caller guarantees min(g) < 0 < max(g).
    """
    n = g.shape[0]
    s = np.sum(g)
    if s == 0.0:
        return 0.0, 0, OK
    gmin = np.min(g)
    gmax = np.max(g)
    w1, w2 = side_masses(g)
    if s > 0.0:
        lo = 0.0
        hi = n * s / w1
    else:
        lo = n * s / w2
        hi = 0.0
    # keep every n + lam*g strictly positive
    shrink = 1.0 - 1e-12
    admis_hi = -n * shrink / gmin
    admis_lo = -n * shrink / gmax
    if hi > admis_hi:
        hi = admis_hi
    if lo < admis_lo:
        lo = admis_lo
    # lambda = sum(g) / sum(g^2 p) at the exact root, and at an approximate
    # one the relative defect of that identity is n^2 |r| / |sum(g)|, so the
    # stopping rule bounds exactly that quantity (tol is a relative target).
    # A bracket collapsed to ulp width is as good as it gets in doubles.
    s_abs = abs(s)
    lam = 0.5 * (lo + hi)
    for it in range(max_iter):
        r = 0.0
        dr = 0.0
        for v in g:
            d = n + lam * v
            r += v / d
            dr -= (v * v) / (d * d)
        r /= n
        dr /= n
        if abs(r) <= tol and n * n * abs(r) <= tol * s_abs:
            return lam, it + 1, OK
        if hi - lo < 4.0 * abs(lam) * 2.2e-16 + 1e-300:
            return lam, it + 1, OK
        if r > 0.0:
            lo = lam
        else:
            hi = lam
        nxt = lam - r / dr
        if nxt <= lo or nxt >= hi:
            nxt = 0.5 * (lo + hi)
        lam = nxt
    return lam, max_iter, NO_CONVERGENCE


@_jit
def log_ratio_from(g, lam):
    n = g.shape[0]
    return -np.sum(np.log1p(lam * g / n))


@_jit
def adjusted_log_ratio_kernel(g, m_threshold, c0, tol, max_iter):
    """Eq-style adjusted log EL ratio.

    Returns (value, branch, status); branch 1 means the penalty branch.
    """
    n = g.shape[0]
    w1, w2 = side_masses(g)
    if w1 > m_threshold and w2 > m_threshold:
        lam, _, st = solve_lambda_kernel(g, tol, max_iter)
        if st != OK:
            return 0.0, 0, st
        return log_ratio_from(g, lam), 0, OK
    return -c0 * n, 1, OK


@_jit
def _polyval(coeffs, t):
    # ascending coefficients
    acc = 0.0
    p = 1.0
    for c in coeffs:
        acc += c * p
        p *= t
    return acc


@_jit
def log_sigma2_kernel(theta, pcode, pnum, pden, pmu, pme1, pme2):
    """log sigma^2(theta); returns (value, status)."""
    if pcode == PRIOR_FLAT:
        return 0.0, OK
    if pcode == PRIOR_EXP:
        c = math.exp(pmu + 0.5 * theta)
        num = pme2 - 2.0 * c * pme1 + c * c
        den = -0.5 * c
    else:
        num = _polyval(pnum, theta)
        den = _polyval(pden, theta)
    if den == 0.0 or num <= 0.0:
        return 0.0, DEGENERATE_PRIOR
    s2 = num / (den * den)
    if not np.isfinite(s2) or s2 <= 0.0:
        return 0.0, DEGENERATE_PRIOR
    return math.log(s2), OK


@_jit
def penalized_objective_kernel(x, kind, kp, theta, pcode, pnum, pden,
                               pmu, pme1, pme2, m_threshold, c0,
                               lam_tol, max_iter):
    """Adjusted log EL ratio plus log prior at theta; returns (value, status)."""
    g = g_array(x, kind, kp, theta)
    lr, _, st = adjusted_log_ratio_kernel(g, m_threshold, c0, lam_tol, max_iter)
    if st != OK:
        return 0.0, st
    ls2, st = log_sigma2_kernel(theta, pcode, pnum, pden, pmu, pme1, pme2)
    if st != OK:
        return 0.0, st
    return lr - 0.5 * ls2, OK


@_jit
def penalized_argmax_kernel(x, kind, kp, lo, hi, pcode, pnum, pden,
                            pmu, pme1, pme2, m_threshold, c0,
                            lam_tol, max_iter, n_scan, width_tol):
    """Coarse scan plus golden-section refinement of the penalized objective.

    The feasible interval is shrunk by a relative margin because the log EL
    ratio diverges at the hull boundary.  Ties within 1e-12 of the best
    objective resolve to the leftmost theta.

    Returns (theta, objective, evaluations, status).
    """
    span = hi - lo
    a = lo + 1e-6 * span
    b = hi - 1e-6 * span
    best_t = a
    best_f = -np.inf
    best_i = 0
    evals = 0
    for i in range(n_scan):
        t = a + (b - a) * i / (n_scan - 1)
        f, st = penalized_objective_kernel(
            x, kind, kp, t, pcode, pnum, pden, pmu, pme1, pme2,
            m_threshold, c0, lam_tol, max_iter)
        if st != OK:
            return 0.0, 0.0, evals, st
        evals += 1
        if f > best_f + _TIE_EPS:
            best_f = f
            best_t = t
            best_i = i
    h = (b - a) / (n_scan - 1)
    aa = a + (best_i - 1) * h
    bb = a + (best_i + 1) * h
    if aa < a:
        aa = a
    if bb > b:
        bb = b
    c1 = bb - _GOLDEN * (bb - aa)
    c2 = aa + _GOLDEN * (bb - aa)
    f1, st = penalized_objective_kernel(
        x, kind, kp, c1, pcode, pnum, pden, pmu, pme1, pme2,
        m_threshold, c0, lam_tol, max_iter)
    if st != OK:
        return 0.0, 0.0, evals, st
    f2, st = penalized_objective_kernel(
        x, kind, kp, c2, pcode, pnum, pden, pmu, pme1, pme2,
        m_threshold, c0, lam_tol, max_iter)
    if st != OK:
        return 0.0, 0.0, evals, st
    evals += 2
    while bb - aa > width_tol:
        if f1 >= f2:
            bb = c2
            c2 = c1
            f2 = f1
            c1 = bb - _GOLDEN * (bb - aa)
            f1, st = penalized_objective_kernel(
                x, kind, kp, c1, pcode, pnum, pden, pmu, pme1, pme2,
                m_threshold, c0, lam_tol, max_iter)
        else:
            aa = c1
            c1 = c2
            f1 = f2
            c2 = aa + _GOLDEN * (bb - aa)
            f2, st = penalized_objective_kernel(
                x, kind, kp, c2, pcode, pnum, pden, pmu, pme1, pme2,
                m_threshold, c0, lam_tol, max_iter)
        if st != OK:
            return 0.0, 0.0, evals, st
        evals += 1
        fnew = f1 if f1 >= f2 else f2
        tnew = c1 if f1 >= f2 else c2
        if fnew > best_f + _TIE_EPS:
            best_f = fnew
            best_t = tnew
        elif fnew > best_f - _TIE_EPS and tnew < best_t:
            best_t = tnew
            if fnew > best_f:
                best_f = fnew
    return best_t, best_f, evals, OK


@_jit
def mele_kernel(x, kind, kp, lo, hi, tol, max_iter):
    """Root of the mean estimating function on the feasible interval.

    The mean of G is monotone decreasing in theta, positive at lo and
    negative at hi.  Returns (theta, iterations, status).  The residual
    tolerance is relative to the magnitude of G at the interval midpoint.
    """
    gm = g_array(x, kind, kp, 0.5 * (lo + hi))
    scale = 1.0 + np.mean(np.abs(gm))
    t = 0.5 * (lo + hi)
    a = lo
    b = hi
    for it in range(max_iter):
        r = mean_g(x, kind, kp, t)
        if abs(r) < tol * scale:
            return t, it + 1, OK
        if r > 0.0:
            a = t
        else:
            b = t
        dr = mean_g_dtheta(x, kind, kp, t)
        nxt = t - r / dr if dr != 0.0 else 0.5 * (a + b)
        if nxt <= a or nxt >= b:
            nxt = 0.5 * (a + b)
        if b - a < 4.0 * np.abs(t) * 2.2e-16 + 1e-300:
            return t, it + 1, OK
        t = nxt
    return t, max_iter, NO_CONVERGENCE


@_jit
def cubic_root_kernel(y, tol, max_iter):
    """Unique root of theta -> sum (y_i - theta)^3, bracketed on [min, max]."""
    a = np.min(y)
    b = np.max(y)
    if a == b:
        return a, 0, OK
    t = 0.5 * (a + b)
    for it in range(max_iter):
        d = y - t
        h = np.sum(d * d * d)
        scale = np.sum(np.abs(d) ** 3) + 1e-300
        if abs(h) < tol * scale:
            return t, it + 1, OK
        if h > 0.0:
            a = t
        else:
            b = t
        dh = -3.0 * np.sum(d * d)
        nxt = t - h / dh if dh != 0.0 else 0.5 * (a + b)
        if nxt <= a or nxt >= b:
            nxt = 0.5 * (a + b)
        if b - a < 4.0 * np.abs(t) * 2.2e-16 + 1e-300:
            return t, it + 1, OK
        t = nxt
    return t, max_iter, NO_CONVERGENCE
