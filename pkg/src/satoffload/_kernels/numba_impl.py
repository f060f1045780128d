"""Jit-compiled kernels; same surface and semantics as numpy_impl.

Scalar inner loops compiled with numba; first call pays the compile
cost, cached on disk afterwards.  Diagnostics convention matches
numpy_impl: -1 signals a cap hit, callers raise.
"""

import numpy as np
from numba import njit

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


@njit(cache=True)
def _i0e_scalar(x):
    if x <= 15.0:
        q = 0.25 * x * x
        t = 1.0
        s = 1.0
        for k in range(1, 64):
            t = t * q / (k * k)
            s += t
            if t <= 1e-17 * s:
                break
        return s * np.exp(-x)
    t = 1.0
    s = 1.0
    prev = np.inf
    for k in range(1, 64):
        tk = t * (2.0 * k - 1.0) ** 2 / (8.0 * k * x)
        if abs(tk) >= prev:
            break
        t = tk
        s += t
        prev = abs(t)
        if abs(t) <= 1e-17 * s:
            break
    return s / np.sqrt(2.0 * np.pi * x)


@njit(cache=True)
def i0e_vec(x):
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        out[i] = _i0e_scalar(x[i])
    return out


@njit(cache=True)
def _alt_scalar(n, d, max_terms, term_tol):
    s = 1.0
    t = 1.0
    for k in range(1, max_terms + 1):
        t = t * (-d) / (n + k)
        s += t
        if abs(t) <= term_tol * abs(s):
            return s, k
    return s, -1


@njit(cache=True)
def _asym_scalar(n, d, max_terms, term_tol):
    t = 1.0
    s = 1.0
    prev = np.inf
    for k in range(1, max_terms + 1):
        tk = t * (k - n) / d
        if abs(tk) >= prev:
            return n / d * s, k  # smallest term reached, error ~ e^{-d}
        t = tk
        s += t
        prev = abs(t)
        if abs(t) <= term_tol * abs(s):
            return n / d * s, k
    return n / d * s, -1


@njit(cache=True)
def _pos_scalar(n, d, max_terms, term_tol):
    u = np.exp(-d)
    s = u
    for k in range(1, max_terms + 1):
        u = u * d / k
        s += u * (n / (n + k))
        if u <= term_tol * s and k > d:
            return s, k
    return s, -1


@njit(cache=True)
def _kummer_scalar(n, d, max_terms, term_tol):
    if d == 0.0:
        return 1.0, 0
    if d <= 0.8 * (n + 1.0):
        return _alt_scalar(n, d, max_terms, term_tol)
    hi = max(50.0 * n, 30.0)
    if d >= hi:
        return _asym_scalar(n, d, max_terms, term_tol)
    if d <= n + 1.0:
        # start where the alternating series converges, walk down
        j = int(np.ceil(1.25 * d - 1.0 - n))
        y, k = _alt_scalar(n + j, d, max_terms, term_tol)
        if k < 0:
            return y, -1
        m = n + j
        for _ in range(j):
            y = 1.0 - d * y / m
            m -= 1.0
        return y, k
    # reduce to n0 in (0,1], walk up; damped since d > n+1 >= m+1
    steps = int(np.ceil(n)) - 1
    n0 = n - steps
    if abs(n0 - 1.0) < 1e-13:
        y = -np.expm1(-d) / d
        k = 0
    elif d >= max(50.0 * n0, 30.0):
        y, k = _asym_scalar(n0, d, max_terms, term_tol)
        if k < 0:
            return y, -1
    else:
        y, k = _pos_scalar(n0, d, max_terms, term_tol)
        if k < 0:
            return y, -1
    m = n0
    for _ in range(steps):
        y = (m + 1.0) * (1.0 - y) / d
        m += 1.0
    return y, k


@njit(cache=True)
def alt_series_vec(n, d, max_terms, term_tol):
    out = np.empty_like(d)
    used = 0
    for i in range(d.shape[0]):
        out[i], k = _alt_scalar(n, d[i], max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
    return out, used


@njit(cache=True)
def asym_series_vec(n, d, max_terms, term_tol):
    out = np.empty_like(d)
    used = 0
    for i in range(d.shape[0]):
        out[i], k = _asym_scalar(n, d[i], max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
    return out, used


@njit(cache=True)
def pos_series_vec(n, d, max_terms, term_tol):
    out = np.empty_like(d)
    used = 0
    for i in range(d.shape[0]):
        out[i], k = _pos_scalar(n, d[i], max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
    return out, used


@njit(cache=True)
def kummer_ratio_vec(n, d, max_terms, term_tol):
    out = np.empty_like(d)
    used = 0
    for i in range(d.shape[0]):
        out[i], k = _kummer_scalar(n, d[i], max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
    return out, used


@njit(cache=True)
def cf_w_lentz(n, d, max_iters, cf_tol):
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


@njit(cache=True)
def zseries_pdf_vec(g, k, max_terms, term_tol):
    out = np.empty_like(g)
    used = 0
    for i in range(g.shape[0]):
        gi = g[i]
        gk1 = gi * k + 1.0
        t = k / (gk1 * gk1)
        s = t
        terms = -1
        for z in range(2, max_terms + 1):
            t = t * (k * k * gi / gk1) * z / ((z - 1.0) * (z - 1.0))
            s += t
            if t <= term_tol * max(s, 1e-300):
                terms = z
                break
        if terms < 0:
            return out, -1
        out[i] = s
        used = max(used, terms)
    return out, used


@njit(cache=True)
def zseries_cdf_vec(g, k, max_terms, term_tol):
    out = np.empty_like(g)
    used = 0
    for i in range(g.shape[0]):
        gi = g[i]
        q = gi / (gi * k + 1.0)
        t = k * q
        s = t
        kkq = k * k * q
        terms = -1
        for z in range(2, max_terms + 1):
            t = t * kkq / (z - 1.0)
            s += t
            if t <= term_tol * max(s, 1e-300):
                terms = z
                break
        if terms < 0:
            return out, -1
        out[i] = s
        used = max(used, terms)
    return out, used


@njit(cache=True)
def dist_ratio_cdf_vec(r, n, pre_coef, d_factor, neg_two_over_eta,
                       max_terms, term_tol):
    out = np.zeros_like(r)
    used = 0
    for i in range(r.shape[0]):
        ri = r[i]
        if ri <= 0.0:
            continue
        pre = pre_coef * ri ** neg_two_over_eta
        if pre > 745.0:
            continue  # e^{-pre} underflows; kummer factor <= 1
        kv, k = _kummer_scalar(n, pre * d_factor, max_terms, term_tol)
        if k < 0:
            return out, -1
        used = max(used, k)
        out[i] = np.exp(-pre) * kv
    return out, used


@njit(cache=True)
def count_occupied(sats, users):
    m = users.shape[0]
    n = sats.shape[0]
    if m == 0:
        return 0
    hit = np.zeros(n, dtype=np.bool_)
    for u in range(m):
        best = -2.0
        arg = 0
        for s in range(n):
            dp = (users[u, 0] * sats[s, 0] + users[u, 1] * sats[s, 1]
                  + users[u, 2] * sats[s, 2])
            if dp > best:
                best = dp
                arg = s
        hit[arg] = True
    count = 0
    for s in range(n):
        if hit[s]:
            count += 1
    return count
