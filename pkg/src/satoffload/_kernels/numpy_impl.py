"""Pure-numpy reference implementations of the numeric kernels.

Every public function here has a twin with the same signature and
semantics in numba_impl; the package picks one backend at import time
(see the package __init__).  Kernels report diagnostics alongside their
values: the largest number of series terms or fraction iterations
consumed, or -1 when a cap was hit before the term tolerance was met.
Callers translate -1 into NonConvergence; kernels never raise.
"""

import numpy as np

__all__ = [
    "i0e_vec",
    "alt_series_vec",
    "asym_series_vec",
    "pos_series_vec",
    "kummer_ratio_vec",
    "cf_w_lentz",
    "zseries_pdf_vec",
    "zseries_cdf_vec",
    "dist_ratio_cdf_vec",
    "count_occupied",
]


def i0e_vec(x):
    """Exponentially scaled modified Bessel function e^{-x} I0(x) for x >= 0."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    small = x <= 15.0
    xs = x[small]
    if xs.size:
        # power series sum_k (x/2)^{2k} / (k!)^2, scaled afterwards
        q = 0.25 * xs * xs
        t = np.ones_like(xs)
        s = np.ones_like(xs)
        for k in range(1, 64):
            t = t * q / (k * k)
            s = s + t
            if np.all(t <= 1e-17 * s):
                break
        out[small] = s * np.exp(-xs)
    xl = x[~small]
    if xl.size:
        # asymptotic sum_k ((2k-1)!!)^2 / (k! (8x)^k), cut at the smallest term
        t = np.ones_like(xl)
        s = np.ones_like(xl)
        prev = np.full_like(xl, np.inf)
        active = np.ones(xl.shape, dtype=bool)
        for k in range(1, 64):
            tk = t * (2.0 * k - 1.0) ** 2 / (8.0 * k * xl)
            active &= np.abs(tk) < prev
            t = np.where(active, tk, t)
            s = np.where(active, s + tk, s)
            prev = np.where(active, np.abs(tk), prev)
            active &= np.abs(t) > 1e-17 * s
            if not active.any():
                break
        out[~small] = s / np.sqrt(2.0 * np.pi * xl)
    return out


def alt_series_vec(n, d, max_terms, term_tol):
    """M(1, n+1, -d) by its alternating series; intended for d <= 0.8(n+1)."""
    d = np.asarray(d, dtype=np.float64)
    s = np.ones_like(d)
    t = np.ones_like(d)
    for k in range(1, max_terms + 1):
        t = t * (-d) / (n + k)
        s = s + t
        if np.all(np.abs(t) <= term_tol * np.abs(s)):
            return s, k
    return s, -1


def asym_series_vec(n, d, max_terms, term_tol):
    """(n/d) sum_k (1-n)_k / d^k for d >= max(50n, 30).

    The series is asymptotic: each element stops at its smallest term
    (truncation error ~ e^{-d} <= 1e-13 on the allowed domain), or
    earlier once the term tolerance is met.
    """
    d = np.asarray(d, dtype=np.float64)
    t = np.ones_like(d)
    s = np.ones_like(d)
    prev = np.full_like(d, np.inf)
    active = np.ones(d.shape, dtype=bool)
    for k in range(1, max_terms + 1):
        tk = t * (k - n) / d
        active &= np.abs(tk) < prev
        t = np.where(active, tk, t)
        s = np.where(active, s + tk, s)
        prev = np.where(active, np.abs(tk), prev)
        active &= np.abs(t) > term_tol * np.abs(s)
        if not active.any():
            return n / d * s, k
    return n / d * s, -1


def pos_series_vec(n, d, max_terms, term_tol):
    """e^{-d} sum_k [n/(n+k)] d^k/k!; reached only with n in (0,1], d < 50."""
    d = np.asarray(d, dtype=np.float64)
    u = np.exp(-d)
    s = u.copy()
    for k in range(1, max_terms + 1):
        u = u * d / k
        s = s + u * (n / (n + k))
        if np.all((u <= term_tol * s) & (k > d)):
            return s, k
    return s, -1


def kummer_ratio_vec(n, d, max_terms, term_tol):
    """e^{-d} M(n, n+1, d) elementwise for n > 0, d >= 0.

    Branches: alternating series for d <= 0.8(n+1); smallest-term
    asymptotic series for d >= max(50n, 30); in between, an exact
    recurrence walks to a region where one of the series converges.
    Recurrence steps are not series terms and do not count against
    max_terms.  Returns (values, max terms used) with -1 on a cap hit.
    """
    d = np.asarray(d, dtype=np.float64)
    out = np.ones_like(d)  # d == 0 -> 1
    used = 0
    hi = max(50.0 * n, 30.0)
    m_alt = (d > 0.0) & (d <= 0.8 * (n + 1.0))
    m_asym = (d >= hi) & ~m_alt & (d > 0.0)
    m_mid = (d > 0.0) & ~m_alt & ~m_asym
    m_down = m_mid & (d <= n + 1.0)
    m_up = m_mid & (d > n + 1.0)

    if m_alt.any():
        out[m_alt], k = alt_series_vec(n, d[m_alt], max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
    if m_asym.any():
        out[m_asym], k = asym_series_vec(n, d[m_asym], max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
    if m_down.any():
        # start the alternating series at n_top = n + j where it converges,
        # then walk down; each step damps errors by d/m <= 1
        for i in np.nonzero(m_down)[0]:
            di = float(d[i])
            j = int(np.ceil(1.25 * di - 1.0 - n))
            y_arr, k = alt_series_vec(n + j, np.array([di]), max_terms, term_tol)
            if k < 0:
                return out, -1
            used = max(used, k)
            y = float(y_arr[0])
            m = n + j
            for _ in range(j):
                y = 1.0 - di * y / m
                m -= 1.0
            out[i] = y
    if m_up.any():
        # reduce to n0 in (0,1] and walk up; each step damps since d > n+1 >= m+1
        steps = int(np.ceil(n)) - 1
        n0 = n - steps
        du = d[m_up]
        y = np.empty_like(du)
        if abs(n0 - 1.0) < 1e-13:
            y[:] = -np.expm1(-du) / du
        else:
            big = du >= max(50.0 * n0, 30.0)
            if big.any():
                y[big], k = asym_series_vec(n0, du[big], max_terms, term_tol)
                if k < 0:
                    return out, -1
                used = max(used, k)
            if (~big).any():
                y[~big], k = pos_series_vec(n0, du[~big], max_terms, term_tol)
                if k < 0:
                    return out, -1
                used = max(used, k)
        m = n0
        for _ in range(steps):
            y = (m + 1.0) * (1.0 - y) / du
            m += 1.0
        out[m_up] = y
    return out, used


def cf_w_lentz(n, d, max_iters, cf_tol):
    """Continued fraction W(n; d) = n+1 - d/(n+2 + (n+1)d/(n+3 - 2d/(n+4 + ...))).

    Modified Lentz evaluation; partial numerators alternate
    a_{2m-1} = -m d, a_{2m} = (n+m) d with denominators b_j = n+1+j.
    Returns (value, iterations) with -1 iterations on a cap hit.
    """
    if d == 0.0:
        return n + 1.0, 0
    tiny = 1e-300
    f = n + 1.0
    if f == 0.0:
        f = tiny
    c = f
    e = 0.0
    for j in range(1, max_iters + 1):
        if j % 2 == 1:
            a = -((j + 1) // 2) * d
        else:
            a = (n + j // 2) * d
        b = n + 1.0 + j
        e = b + a * e
        if e == 0.0:
            e = tiny
        c = b + a / c
        if c == 0.0:
            c = tiny
        e = 1.0 / e
        delta = c * e
        f *= delta
        if abs(delta - 1.0) < cf_tol:
            return f, j
    return f, -1


def zseries_pdf_vec(g, k, max_terms, term_tol):
    """sum_z z k^{2z-1} g^{z-1} / ((z-1)! (gk+1)^{z+1}) elementwise, g >= 0.

    The e^{-k} prefactor is left to the caller.  Terms are positive and
    unimodal with mode near z ~ k; the running-ratio recurrence keeps
    every intermediate bounded.
    """
    g = np.asarray(g, dtype=np.float64)
    gk1 = g * k + 1.0
    t = k / (gk1 * gk1)  # z = 1 term
    s = t.copy()
    for z in range(2, max_terms + 1):
        t = t * (k * k * g / gk1) * z / ((z - 1.0) * (z - 1.0))
        s = s + t
        if np.all(t <= term_tol * np.maximum(s, 1e-300)):
            return s, z
    return s, -1


def zseries_cdf_vec(g, k, max_terms, term_tol):
    """sum_z [k^{2z-1}/(z-1)!] (g/(gk+1))^z elementwise, g >= 0.

    Antiderivative of zseries_pdf_vec; e^{-k} prefactor left to caller.
    """
    g = np.asarray(g, dtype=np.float64)
    q = g / (g * k + 1.0)
    t = k * q  # z = 1 term
    s = t.copy()
    kkq = k * k * q
    for z in range(2, max_terms + 1):
        t = t * kkq / (z - 1.0)
        s = s + t
        if np.all(t <= term_tol * np.maximum(s, 1e-300)):
            return s, z
    return s, -1


def dist_ratio_cdf_vec(r, n, pre_coef, d_factor, neg_two_over_eta,
                       max_terms, term_tol):
    """Distance-ratio CDF e^{-pre} * kummer_ratio(n, pre * d_factor) per element.

    pre = pre_coef * r^{-2/eta}.  When pre > 745 the exponential factor
    underflows below the smallest double and the result is exactly 0; the
    kummer factor (<= 1) is skipped, which also bounds its argument.
    Returns (values, max series terms used).
    """
    r = np.asarray(r, dtype=np.float64)
    out = np.zeros_like(r)
    used = 0
    pos = r > 0.0
    if not pos.any():
        return out, used
    pre = pre_coef * r[pos] ** neg_two_over_eta
    live = pre <= 745.0
    vals = np.zeros_like(pre)
    if live.any():
        kv, used = kummer_ratio_vec(n, pre[live] * d_factor, max_terms, term_tol)
        if used < 0:
            return out, -1
        vals[live] = np.exp(-pre[live]) * kv
    out[pos] = vals
    return out, used


def count_occupied(sats, users):
    """Number of rows of sats that are the nearest (chord metric) to >= 1 user.

    Both arrays are unit vectors, shape (n, 3) and (m, 3); nearest in
    chord distance equals largest dot product.
    """
    if users.shape[0] == 0:
        return 0
    idx = np.argmax(users @ sats.T, axis=1)
    return int(np.unique(idx).size)
