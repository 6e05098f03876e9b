"""Compiled inner loops.

Every kernel is nogil so the charsum layer can fan partitions out over a
thread pool; every integer accumulator is int64.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def jacobi(a, n):
    a = a % n
    t = 1
    while a != 0:
        while (a & 1) == 0:
            a >>= 1
            r = n & 7
            if r == 3 or r == 5:
                t = -t
        a, n = n, a
        if (a & 3) == 3 and (n & 3) == 3:
            t = -t
        a = a % n
    return t if n == 1 else 0


@njit(cache=True, nogil=True)
def jacobi_row(n):
    """(a/n) for a = 0..n-1, each evaluated independently."""
    out = np.empty(n, dtype=np.int8)
    for a in range(n):
        out[a] = jacobi(a, n)
    return out


@njit(cache=True, nogil=True)
def direct_block(m_lo, m_hi, y, ell):
    """Sum of (m / ell*n) over odd m in [m_lo, m_hi] and odd n <= y."""
    s = 0
    for m in range(m_lo, m_hi + 1, 2):
        for n in range(1, y + 1, 2):
            s += jacobi(m, ell * n)
    return s


@njit(cache=True, nogil=True)
def _fill_modulus_table(chi, q, spf):
    # chi[a] = (a/q) for 0 <= a < q, completely multiplicative in a
    chi[0] = 1 if q == 1 else 0
    if q > 1:
        chi[1] = 1
    for a in range(2, q):
        p = spf[a]
        if p == a:
            chi[a] = jacobi(a, q)
        else:
            chi[a] = chi[p] * chi[a // p]


@njit(cache=True, nogil=True)
def periodic_by_n_block(n_lo, n_hi, x, ell, spf):
    """Sum over odd n in [n_lo, n_hi] of sum_{odd m <= x} (m / ell*n).

    For q = ell*n the m-sum runs over m = 2j+1, which is periodic in j with
    period q; one period of (a/q) is built per n.
    """
    count = (x + 1) // 2
    chi = np.empty(ell * n_hi + 1, dtype=np.int64)
    s = 0
    for n in range(n_lo, n_hi + 1, 2):
        q = ell * n
        _fill_modulus_table(chi, q, spf)
        full, rem = count // q, count % q
        period = 0
        partial = 0
        idx = 1 % q
        for j in range(q):
            v = chi[idx]
            period += v
            if j < rem:
                partial += v
            idx += 2
            if idx >= q:
                idx -= q
        s += full * period + partial
    return s


@njit(cache=True, nogil=True)
def periodic_by_m_block(m_lo, m_hi, y, ell, spf):
    """Sum over odd m in [m_lo, m_hi] of (m/ell) * sum_{odd n <= y} (m/n).

    For fixed odd m, n -> (m/n) is completely multiplicative on odd n and
    periodic mod 4m, i.e. with period 2m in i where n = 2i+1.
    """
    count = (y + 1) // 2
    chi = np.empty(4 * m_hi + 1, dtype=np.int64)
    s = 0
    for m in range(m_lo, m_hi + 1, 2):
        twist = jacobi(m, ell)
        if twist == 0:
            continue
        top = 4 * m
        chi[1] = 1
        for n in range(3, top, 2):
            p = spf[n]
            if p == n:
                chi[n] = jacobi(m, n)
            else:
                chi[n] = chi[p] * chi[n // p]
        period_len = 2 * m
        full, rem = count // period_len, count % period_len
        period = 0
        partial = 0
        for i in range(period_len):
            v = chi[2 * i + 1]
            period += v
            if i < rem:
                partial += v
        s += twist * (full * period + partial)
    return s


@njit(cache=True, nogil=True)
def _two_product(a, b):
    # Dekker's error-free product: a*b == p + e exactly
    c = 134217729.0 * a
    ah = c - (c - a)
    al = a - ah
    c = 134217729.0 * b
    bh = c - (c - b)
    bl = b - bh
    p = a * b
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


@njit(cache=True, nogil=True)
def riemann_partial(x, k_max):
    """sum_{k=1}^{k_max} sin(pi k^2 x) / k^2 with exact phase reduction mod 2.

    k^2 is exact in binary64 for k < 9.4e7; the product k^2 * x is split
    into hi + lo, hi reduced mod 2 exactly by fmod, and the terms are added
    with Neumaier compensation in ascending k.
    """
    s = 0.0
    comp = 0.0
    for k in range(1, k_max + 1):
        kk = float(k) * float(k)
        hi, lo = _two_product(kk, x)
        phase = np.fmod(hi, 2.0) + lo
        term = np.sin(np.pi * phase) / kk
        t = s + term
        if abs(s) >= abs(term):
            comp += (s - t) + term
        else:
            comp += (term - t) + s
        s = t
    return s + comp
