"""Hot numeric loops.

Every kernel exists in two flavors: a loop form compiled with numba
(the default) and a pure-numpy form.  Setting the environment variable
``MEANBALL_NO_NUMBA=1`` (or running without numba installed) selects the
numpy path everywhere.  ``benchmarks/bench_kernels.py`` compares the two.

Kernels assume Euclidean geometry and float64 C-contiguous arrays; the
generic-norm reference implementation lives in the engine and streams
modules.
"""

from __future__ import annotations

import math
import os

import numpy as np


def _numba_requested() -> bool:
    flag = os.environ.get("MEANBALL_NO_NUMBA", "").strip().lower()
    return flag in ("", "0", "false", "no")


NUMBA_ENABLED = False
if _numba_requested():
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        pass

if NUMBA_ENABLED:
    def _jit(fn):
        return _njit(cache=True)(fn)
else:
    def _jit(fn):
        return fn


def kernel_mode() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"


# Schedule codes shared with tuning.Schedule (see schedule_code below).
K_FIXED = 0
K_BATCH = 1
K_CS = 2

LAMBDA_FLOOR = 1e-12  # weights are clamped here before use

_E_RATIO_CUT = 1e-6  # below this, (e^a - a - 1)/a^2 switches to its series


# ---------------------------------------------------------------------------
# scalar helpers (compiled when numba is on; plain Python otherwise)
# ---------------------------------------------------------------------------

def _psi_impl(lam):
    return -math.log1p(-lam) - lam


def _e_ratio_impl(a):
    # (exp(a) - a - 1) / a^2 with its removable singularity at a = 0
    if abs(a) < _E_RATIO_CUT:
        return 0.5 + a / 6.0 + a * a / 24.0 + a * a * a / 120.0
    return (math.expm1(a) - a) / (a * a)


psi_f = _jit(_psi_impl)
e_ratio_f = _jit(_e_ratio_impl)


def _gap_impl(x, lam, d):
    p = psi_f(lam)
    px2 = p * x * x
    a = lam * x / d - px2
    s = lam * x + px2
    return s * s * e_ratio_f(a) - px2


gap_f = _jit(_gap_impl)


def penalty_gap_scalar(x: float, lam: float, d: float) -> float:
    """Float64 evaluation of the variance-penalty inequality slack."""
    return float(gap_f(float(x), float(lam), float(d)))


# ---------------------------------------------------------------------------
# grid scans
# ---------------------------------------------------------------------------

def _penalty_scan_impl(lams, xs, ds):
    best = -1e300
    wl = 0.0
    wx = 0.0
    wd = 0.0
    for k in range(ds.shape[0]):
        d = ds[k]
        for i in range(lams.shape[0]):
            lam = lams[i]
            for j in range(xs.shape[0]):
                g = gap_f(xs[j], lam, d)
                if g > best:
                    best = g
                    wl = lam
                    wx = xs[j]
                    wd = d
    return best, wl, wx, wd


_penalty_scan_loop = _jit(_penalty_scan_impl)


def _penalty_scan_np(lams, xs, ds):
    p = -np.log1p(-lams) - lams
    best = -np.inf
    worst = (0.0, 0.0, 0.0)
    for d in ds:
        px2 = p[:, None] * xs[None, :] ** 2
        a = lams[:, None] * xs[None, :] / d - px2
        s = lams[:, None] * xs[None, :] + px2
        small = np.abs(a) < _E_RATIO_CUT
        a_safe = np.where(small, 1.0, a)
        series = 0.5 + a / 6.0 + a * a / 24.0 + a**3 / 120.0
        ratio = np.where(small, series, (np.expm1(a_safe) - a_safe) / (a_safe * a_safe))
        gap = s * s * ratio - px2
        k = int(np.argmax(gap))
        val = float(gap.flat[k])
        if val > best:
            i, j = divmod(k, xs.shape[0])
            best = val
            worst = (float(lams[i]), float(xs[j]), float(d))
    return best, worst[0], worst[1], worst[2]


def penalty_gap_grid(lams, xs, ds):
    """Max of the inequality slack over a (lambda, x, D) grid.

    Returns (max_gap, worst_lambda, worst_x, worst_d).
    """
    lams = np.ascontiguousarray(lams, dtype=np.float64)
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ds = np.ascontiguousarray(ds, dtype=np.float64)
    if NUMBA_ENABLED:
        return _penalty_scan_loop(lams, xs, ds)
    return _penalty_scan_np(lams, xs, ds)


def _cosh_sinh_scan_impl(xs, ys):
    best = -1e300
    wx = 0.0
    wy = 0.0
    for i in range(xs.shape[0]):
        x = xs[i]
        y = ys[i]
        g = math.cosh(y + x) - x * math.sinh(y + x) - math.cosh(y)
        if g > best:
            best = g
            wx = x
            wy = y
    return best, wx, wy


_cosh_sinh_scan_loop = _jit(_cosh_sinh_scan_impl)


def _cosh_sinh_scan_np(xs, ys):
    g = np.cosh(ys + xs) - xs * np.sinh(ys + xs) - np.cosh(ys)
    k = int(np.argmax(g))
    return float(g[k]), float(xs[k]), float(ys[k])


def cosh_sinh_grid(xs, ys):
    """Max of cosh(y+x) - x sinh(y+x) - cosh(y) over paired points."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    if NUMBA_ENABLED:
        return _cosh_sinh_scan_loop(xs, ys)
    return _cosh_sinh_scan_np(xs, ys)


def _q_scan_impl(ys):
    worst = 1e300
    wy = 0.0
    for i in range(ys.shape[0]):
        y = ys[i]
        q = 1.0 + y + y * y / 2.0 + y**3 / 6.0 + y**4 / 18.0
        g = q - math.exp(y)
        if g < worst:
            worst = g
            wy = y
    return worst, wy


_q_scan_loop = _jit(_q_scan_impl)


def _q_scan_np(ys):
    g = 1.0 + ys + ys * ys / 2.0 + ys**3 / 6.0 + ys**4 / 18.0 - np.exp(ys)
    k = int(np.argmin(g))
    return float(g[k]), float(ys[k])


def q_majorization_grid(ys):
    """Min of q(y) - e^y over the grid (nonnegative on [-1, 1])."""
    ys = np.ascontiguousarray(ys, dtype=np.float64)
    if NUMBA_ENABLED:
        return _q_scan_loop(ys)
    return _q_scan_np(ys)


# ---------------------------------------------------------------------------
# stream replay (weighted mean, quadratic variation, penalty, radius)
# ---------------------------------------------------------------------------

def _replay_impl(xs, mu, b, dsm, log2a, c1, c2, kind, n_ci, lam_fixed):
    n, d = xs.shape
    lam_out = np.empty(n)
    sumlam_out = np.empty(n)
    v_out = np.empty(n)
    pen_out = np.empty(n)
    radius_out = np.empty(n)
    dist_out = np.empty(n)
    wsum = np.zeros(d)
    sumlam = 0.0
    v = 0.0
    pen = 0.0
    fb = 4.0 * b
    sig2 = c2 * b * b
    num = 2.0 * fb * fb * log2a
    for t in range(1, n + 1):
        if kind == K_FIXED:
            lam = lam_fixed
        else:
            if kind == K_BATCH:
                den = sig2 * n_ci
            else:
                den = sig2 * t * math.log1p(float(t))
            lam = math.sqrt(num / den)
            if lam > c1:
                lam = c1
        if lam < LAMBDA_FLOOR:
            lam = LAMBDA_FLOOR
        z2 = 0.0
        if t == 1:
            for j in range(d):
                z2 += xs[0, j] * xs[0, j]
        else:
            for j in range(d):
                diff = xs[t - 1, j] - wsum[j] / sumlam
                z2 += diff * diff
        v += z2
        pen += psi_f(lam) * z2
        sumlam += lam
        for j in range(d):
            wsum[j] += lam * xs[t - 1, j]
        sig2 = (c2 * b * b + v) / (t + 1)
        dist2 = 0.0
        for j in range(d):
            diff = wsum[j] / sumlam - mu[j]
            dist2 += diff * diff
        lam_out[t - 1] = lam
        sumlam_out[t - 1] = sumlam
        v_out[t - 1] = v
        pen_out[t - 1] = pen
        radius_out[t - 1] = dsm * (pen / fb + fb * log2a) / sumlam
        dist_out[t - 1] = math.sqrt(dist2)
    return lam_out, sumlam_out, v_out, pen_out, radius_out, dist_out


_replay_py = _replay_impl
replay_kernel = _jit(_replay_impl)


def replay(xs, mu, b, dsm, log2a, c1, c2, kind, n_ci=0, lam_fixed=0.0):
    """Run a Euclidean stream through a schedule.

    Returns per-step arrays (lambda, sum_lambda, quad_variation, penalty,
    radius, distance of the weighted mean to ``mu``).
    """
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    return replay_kernel(
        xs, mu, float(b), float(dsm), float(log2a), float(c1), float(c2),
        int(kind), int(n_ci), float(lam_fixed),
    )


# ---------------------------------------------------------------------------
# supermartingale trace
# ---------------------------------------------------------------------------

def _trace_impl(xs, mu, lams, b, dsm):
    n, d = xs.shape
    m_norm = np.empty(n)
    r_log = np.empty(n)
    s_out = np.empty(n)
    m = np.zeros(d)
    wsum = np.zeros(d)
    sumlam = 0.0
    rl = 0.0
    fb = 4.0 * b
    for t in range(1, n + 1):
        lam = lams[t - 1]
        z2 = 0.0
        if t == 1:
            for j in range(d):
                z2 += xs[0, j] * xs[0, j]
        else:
            for j in range(d):
                diff = xs[t - 1, j] - wsum[j] / sumlam
                z2 += diff * diff
        rl -= psi_f(lam) * z2 / (fb * fb)
        mn2 = 0.0
        for j in range(d):
            m[j] += lam * (xs[t - 1, j] - mu[j]) / (fb * dsm)
            mn2 += m[j] * m[j]
        sumlam += lam
        for j in range(d):
            wsum[j] += lam * xs[t - 1, j]
        mn = math.sqrt(mn2)
        m_norm[t - 1] = mn
        r_log[t - 1] = rl
        s_out[t - 1] = math.cosh(mn) * math.exp(rl)
    return m_norm, r_log, s_out


_trace_py = _trace_impl
trace_kernel = _jit(_trace_impl)


def trace(xs, mu, lams, b, dsm):
    """Per-step (||M_t||, log R_t, S_t) of the certificate process."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    lams = np.ascontiguousarray(lams, dtype=np.float64)
    return trace_kernel(xs, mu, lams, float(b), float(dsm))


# ---------------------------------------------------------------------------
# unweighted-mean path (iterated-logarithm sequences)
# ---------------------------------------------------------------------------

def _lil_path_impl(xs, mu):
    n, d = xs.shape
    dist_out = np.empty(n)
    v_out = np.empty(n)
    s = np.zeros(d)
    v = 0.0
    for t in range(1, n + 1):
        z2 = 0.0
        if t == 1:
            for j in range(d):
                z2 += xs[0, j] * xs[0, j]
        else:
            for j in range(d):
                diff = xs[t - 1, j] - s[j] / (t - 1)
                z2 += diff * diff
        v += z2
        dist2 = 0.0
        for j in range(d):
            s[j] += xs[t - 1, j]
            diff = s[j] / t - mu[j]
            dist2 += diff * diff
        dist_out[t - 1] = math.sqrt(dist2)
        v_out[t - 1] = v
    return dist_out, v_out


_lil_path_loop = _jit(_lil_path_impl)


def _lil_path_np(xs, mu):
    n = xs.shape[0]
    csum = np.cumsum(xs, axis=0)
    t = np.arange(1, n + 1)[:, None]
    means = csum / t
    prev_means = np.vstack([np.zeros((1, xs.shape[1])), means[:-1]])
    v = np.cumsum(np.sum((xs - prev_means) ** 2, axis=1))
    dist = np.sqrt(np.sum((means - mu[None, :]) ** 2, axis=1))
    return dist, v


def lil_path(xs, mu):
    """Per-step (||mean_t - mu||, V_t) with the *unweighted* running mean."""
    xs = np.ascontiguousarray(xs, dtype=np.float64)
    mu = np.ascontiguousarray(mu, dtype=np.float64)
    if NUMBA_ENABLED:
        return _lil_path_loop(xs, mu)
    return _lil_path_np(xs, mu)


def schedule_code(schedule) -> tuple[int, int, float]:
    """Map a tuning.Schedule onto (kind, n, fixed_lambda) kernel args."""
    from . import tuning

    if schedule.kind == tuning.FIXED:
        return K_FIXED, 0, schedule.lam
    if schedule.kind == tuning.BATCH_CI:
        return K_BATCH, schedule.n, 0.0
    return K_CS, 0, 0.0
