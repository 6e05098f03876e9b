"""Exact real-character double sums S_ell(X, Y) and the partial sums built on G_k(n)."""

from __future__ import annotations

import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Literal

import numpy as np

from . import _kernels
from .arith import (
    factorize,
    factorize_with_spf,
    jacobi_symbol,
    multiplicative_values,
    smallest_prime_factors,
    totients_up_to,
)
from .gauss import gauss_g

PAIR_GUARD = 10**12
PARTIAL_SUM_CAP = 10**6
PHI_SQUARE_CAP = 10**12
SPF_TABLE_CAP = 4 * 10**7

# Measured per-unit costs (ns) of the compiled kernels: one Jacobi symbol per
# pair for direct, one table slot per residue for the periodic variants.
_DIRECT_COST = 110.0
_PERIODIC_N_COST = 28.0
_PERIODIC_M_COST = 22.0

Algorithm = Literal["direct", "periodic", "auto"]


@dataclass(frozen=True)
class SumJob:
    x_limit: int
    y_limit: int
    ell: int = 1
    algorithm: Algorithm = "auto"
    thread_count: int = 1

    def __post_init__(self):
        if self.x_limit < 1 or self.y_limit < 1:
            raise ValueError("X and Y must be positive integers")
        if self.x_limit * self.y_limit > PAIR_GUARD:
            raise ValueError(f"X*Y = {self.x_limit * self.y_limit} exceeds the {PAIR_GUARD:.0e} guard")
        _require_odd_squarefree(self.ell)
        if self.algorithm not in ("direct", "periodic", "auto"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.thread_count < 1:
            raise ValueError("thread_count must be positive")


@dataclass(frozen=True)
class SumResult:
    value: int
    pairs_evaluated: int
    algorithm_used: str
    elapsed_seconds: float


def _require_odd(v: int, name: str) -> None:
    if v < 1 or v % 2 == 0:
        raise ValueError(f"{name} must be odd and positive, got {v}")


def _require_odd_squarefree(ell: int) -> None:
    _require_odd(ell, "ell")
    if multiplicative_values(ell).mu == 0:
        raise ValueError(f"ell={ell} is not squarefree")


def _odd_count(limit: int) -> int:
    return (limit + 1) // 2


_spf_lock = threading.Lock()
_spf_table = smallest_prime_factors(1)


def _spf(limit: int) -> np.ndarray:
    # grow-only cache; published arrays are never mutated
    global _spf_table
    if len(_spf_table) <= limit:
        with _spf_lock:
            if len(_spf_table) <= limit:
                _spf_table = smallest_prime_factors(max(limit, 2 * (len(_spf_table) - 1)))
    return _spf_table


def _odd_blocks(top: int, parts: int) -> list[tuple[int, int]]:
    """Split the odd numbers 1..top into at most ``parts`` contiguous [lo, hi] runs."""
    count = _odd_count(top)
    parts = max(1, min(parts, count))
    bounds = [count * i // parts for i in range(parts + 1)]
    return [(2 * bounds[i] + 1, 2 * bounds[i + 1] - 1) for i in range(parts) if bounds[i + 1] > bounds[i]]


def _plan(job: SumJob) -> str:
    x, y, ell = job.x_limit, job.y_limit, job.ell
    by_n = _PERIODIC_N_COST * ell * y * y / 4 if ell * y <= SPF_TABLE_CAP else math.inf
    by_m = _PERIODIC_M_COST * x * x if 4 * x <= SPF_TABLE_CAP else math.inf
    if job.algorithm == "periodic":
        if math.isinf(by_n) and math.isinf(by_m):
            raise ValueError("periodic algorithm needs ell*Y or 4X within the sieve cap")
        return "periodic-n" if by_n <= by_m else "periodic-m"
    if job.algorithm == "direct":
        return "direct"
    direct = _DIRECT_COST * _odd_count(x) * _odd_count(y)
    best = min(by_n, by_m)
    if best < direct:
        return "periodic-n" if by_n <= by_m else "periodic-m"
    return "direct"


def double_sum(job: SumJob) -> SumResult:
    """Exact S_ell(X, Y) = sum over odd m <= X, odd n <= Y of (m / ell n).

    Work is partitioned into contiguous blocks of the outer index, one per
    thread; each block returns an exact int64 partial and the partials are
    added in block order, so the value does not depend on thread_count.
    """
    start = time.perf_counter()
    plan = _plan(job)
    x, y, ell = job.x_limit, job.y_limit, job.ell
    if plan == "direct":
        blocks = _odd_blocks(x, job.thread_count)
        work = [(_kernels.direct_block, lo, hi, y, ell) for lo, hi in blocks]
    elif plan == "periodic-n":
        spf = _spf(max(ell * y, 2))
        blocks = _odd_blocks(y, job.thread_count)
        work = [(_kernels.periodic_by_n_block, lo, hi, x, ell, spf) for lo, hi in blocks]
    else:
        spf = _spf(max(4 * x, 2))
        blocks = _odd_blocks(x, job.thread_count)
        work = [(_kernels.periodic_by_m_block, lo, hi, y, ell, spf) for lo, hi in blocks]
    if len(work) == 1:
        partials = [work[0][0](*work[0][1:])]
    else:
        with ThreadPoolExecutor(max_workers=len(work)) as pool:
            futures = [pool.submit(fn, *args) for fn, *args in work]
            partials = [f.result() for f in futures]
    value = sum(int(v) for v in partials)
    return SumResult(
        value=value,
        pairs_evaluated=_odd_count(x) * _odd_count(y),
        algorithm_used=plan,
        elapsed_seconds=time.perf_counter() - start,
    )


def default_threads() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# one-sided inner sums


def _periodic_odd_sum(chi_of, period: int, limit: int) -> int:
    # sum of chi_of(j) over j < count, chi_of periodic in j with the given period
    count = _odd_count(limit)
    full, rem = divmod(count, period)
    values = [chi_of(j) for j in range(period)]
    return full * sum(values) + sum(values[:rem])


def inner_sum_m(n: int, x_limit: int) -> int:
    """Exact sum over odd m <= X of (m/n)."""
    _require_odd(n, "n")
    if x_limit < 0:
        raise ValueError("X must be nonnegative")
    # m = 2j+1 is periodic mod n in j
    return _periodic_odd_sum(lambda j: jacobi_symbol((2 * j + 1) % n, n), n, x_limit)


def inner_sum_n(m: int, y_limit: int) -> int:
    """Exact sum over odd n <= Y of (m/n)."""
    _require_odd(m, "m")
    if y_limit < 0:
        raise ValueError("Y must be nonnegative")
    # (m/n) is periodic mod 4m in n, i.e. mod 2m in j for n = 2j+1
    return _periodic_odd_sum(lambda j: jacobi_symbol(m, 2 * j + 1), 2 * m, y_limit)


# ---------------------------------------------------------------------------
# partial sums of G_k


def _check_partial_cap(x_limit: int) -> None:
    if x_limit < 1:
        raise ValueError("x must be a positive integer")
    if x_limit > PARTIAL_SUM_CAP:
        raise ValueError(f"x={x_limit} exceeds the {PARTIAL_SUM_CAP} cap")


def is_twice_square(k: int) -> bool:
    return k >= 0 and k % 2 == 0 and math.isqrt(k // 2) ** 2 == k // 2


def _odd_terms(k: int, x_limit: int, scale: int = 1):
    """Yield (n, G_k(scale*n)) for odd n <= x in increasing order."""
    spf = _spf(max(scale * x_limit, 2))
    for n in range(1, x_limit + 1, 2):
        m = scale * n
        yield n, gauss_g(k, m, factorize_with_spf(m, spf))


def lemma2_partial(k: int, x_limit: int) -> float:
    """sum over odd n <= x of G_k(n) (2/n) / sqrt(n), for k not twice a square."""
    if is_twice_square(k):
        raise ValueError(f"k={k} is twice a square")
    _check_partial_cap(x_limit)
    return _running_sum(lemma2_terms(k, x_limit))


def lemma2_terms(k: int, x_limit: int) -> np.ndarray:
    """Per-n terms of ``lemma2_partial``; entry i belongs to n = 2i+1."""
    out = np.empty(_odd_count(x_limit))
    for i, (n, g) in enumerate(_odd_terms(k, x_limit)):
        two = 1 if n % 8 in (1, 7) else -1
        out[i] = two * g.r * math.sqrt(g.d / n)
    return out


def _running_sum(terms: np.ndarray) -> float:
    # strict left-to-right accumulation in index order
    s = 0.0
    for t in terms.tolist():
        s += t
    return s


def gk2_mean_sqrt_terms(k: int, x_limit: int) -> np.ndarray:
    out = np.empty(_odd_count(x_limit))
    for i, (n, g) in enumerate(_odd_terms(k * k, x_limit)):
        out[i] = g.r * math.sqrt(g.d / n)
    return out


def gk2_mean_sqrt(k: int, x_limit: int) -> float:
    """sum over odd n <= x of G_{k^2}(n) / sqrt(n)."""
    _check_partial_cap(x_limit)
    return _running_sum(gk2_mean_sqrt_terms(k, x_limit))


def gk2_mean_twisted(k: int, ell: int, x_limit: int) -> float:
    """sum over odd n <= x of G_{k^2}(ell n)."""
    _require_odd_squarefree(ell)
    _check_partial_cap(x_limit)
    s = 0.0
    for _, g in _odd_terms(k * k, x_limit, scale=ell):
        s += float(g)
    return s


def phi_square_mean(x_limit: int) -> float:
    """sum over odd squares n <= x of phi(n)/n, i.e. over odd m <= sqrt(x) of phi(m)/m."""
    if x_limit < 1:
        raise ValueError("x must be a positive integer")
    if x_limit > PHI_SQUARE_CAP:
        raise ValueError(f"x={x_limit} exceeds the {PHI_SQUARE_CAP:.0e} cap")
    top = math.isqrt(x_limit)
    phi = totients_up_to(top)
    s = 0.0
    for m in range(1, top + 1, 2):
        s += int(phi[m]) / m
    return s


def phi_square_mean_direct(x_limit: int) -> float:
    """Same sum, each square factored independently (slow path used as a cross-check)."""
    s = 0.0
    m = 1
    while m * m <= x_limit:
        s += multiplicative_values(factorize(m * m)).phi / (m * m)
        m += 2
    return s
