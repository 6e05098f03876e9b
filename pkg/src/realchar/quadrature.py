"""Oscillatory tail integrals  F(t) = int_t^inf u^(-s) exp(i w u) du.

The range [t, U] is cut into whole periods of the oscillation, each
integrated by adaptive Gauss-Legendre bisection; [U, inf) is taken from the
asymptotic expansion obtained by repeated integration by parts,

    F(U) = exp(i w U) * sum_j  -(s)_j / (i w)^(j+1) * U^(-s-j),

whose remainder after J terms is bounded by (s)_J / w^J * 2 U^(-s-J) / w.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np


class ConvergenceError(ArithmeticError):
    """A series or quadrature could not meet its error budget within its caps."""


GL_ORDER = 12
MAX_ASYMPTOTIC_TERMS = 14
# relative floor below which bisection cannot improve a cell
ROUNDOFF = 1e-14


@lru_cache(maxsize=None)
def _gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def _gl(fn, a: float, b: float) -> complex:
    x, w = _gauss_legendre(GL_ORDER)
    half = 0.5 * (b - a)
    return complex(half * np.dot(w, fn(half * x + 0.5 * (a + b))))


def adaptive_gauss(fn, a: float, b: float, budget: float, max_depth: int) -> complex:
    """Integrate a vectorised fn over [a, b] to an absolute error of about budget."""

    def rec(lo, hi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        left, right = _gl(fn, lo, mid), _gl(fn, mid, hi)
        both = left + right
        if abs(both - whole) <= max(eps, ROUNDOFF * abs(both)):
            return both
        if depth >= max_depth:
            raise ConvergenceError(f"quadrature depth {max_depth} exhausted on [{lo}, {hi}]")
        return rec(lo, mid, left, eps / 2, depth + 1) + rec(mid, hi, right, eps / 2, depth + 1)

    return rec(a, b, _gl(fn, a, b), budget, 0)


def _pochhammer(s: float, j: int) -> float:
    out = 1.0
    for i in range(j):
        out *= s + i
    return out


def tail_bound(s: float, omega: float, t: float) -> float:
    """|F(t)| <= 2 t^(-s) / omega (one integration by parts)."""
    return 2.0 * t ** (-s) / omega


def _asymptotic(s: float, omega: float, u: float, budget: float) -> complex | None:
    """Asymptotic value of F(u), or None if no truncation meets the budget."""
    iw = 1j * omega
    total = 0j
    for j in range(MAX_ASYMPTOTIC_TERMS):
        total += -_pochhammer(s, j) / iw ** (j + 1) * u ** (-s - j)
        remainder = _pochhammer(s, j + 1) / omega ** (j + 1) * 2.0 * u ** (-s - j - 1) / omega
        if remainder <= budget:
            return complex(np.exp(iw * u)) * total
    return None


def oscillatory_tail(t: float, s: float, omega: float, budget: float, max_depth: int = 40) -> complex:
    """int_t^inf u^(-s) exp(i omega u) du to absolute error <= budget (t > 0, s > 0)."""
    if t <= 0:
        raise ValueError("lower limit must be positive")
    far = _asymptotic(s, omega, t, budget / 2)
    if far is not None:
        return far
    period = 2 * math.pi / omega
    cells = 1
    while True:
        u = t + cells * period
        far = _asymptotic(s, omega, u, budget / 2)
        if far is not None:
            break
        cells += 1
        if cells > 10**6:
            raise ConvergenceError("asymptotic tail never met its budget")

    def fn(x):
        return x ** (-s) * np.exp(1j * omega * x)

    per_cell = budget / (2 * cells)
    near = 0j
    for c in range(cells):
        near += adaptive_gauss(fn, t + c * period, t + (c + 1) * period, per_cell, max_depth)
    return near + far
