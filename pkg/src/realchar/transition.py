"""The transition function C(alpha), its derivative, and Riemann's function f(x).

Both series for C are rewritten with u = k^2 / y so that the k-th integral
becomes k * int_T^inf u^(-5/2) (oscillation) du, which is handed to
``quadrature.oscillatory_tail``.  In the first series the non-oscillatory
part of 1 - cos + sin integrates in closed form and sums to
(pi/18) alpha^(3/2) over all k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

import numpy as np
from scipy.special import zeta

from . import _kernels
from .gauss import gauss_quadratic_direct
from .quadrature import ConvergenceError, oscillatory_tail

Rational = Fraction
Real = float | Fraction

# Largest denominator evaluated through the exact periodic route in riemann_f.
EXACT_DENOMINATOR_CAP = 10**6
# k*k stays exact in binary64 below this.
_EXACT_SQUARE_K = 94_906_265
VANISH_TOL = 1e-8


@dataclass(frozen=True)
class EvalConfig:
    tolerance: float = 1e-8
    k_max_cap: int = 10**8
    quad_max_depth: int = 40

    def __post_init__(self):
        if not self.tolerance >= 1e-12:
            raise ValueError(f"tolerance must be >= 1e-12, got {self.tolerance}")
        if not 1 <= self.k_max_cap <= 10**8:
            raise ValueError("k_max_cap must lie in [1, 1e8]")
        if self.quad_max_depth < 1:
            raise ValueError("quad_max_depth must be positive")

    def tighter(self, factor: float) -> EvalConfig:
        return EvalConfig(max(self.tolerance / factor, 1e-12), self.k_max_cap, self.quad_max_depth)


DEFAULT = EvalConfig()


def _terms_needed(bound_coeff: float, power: int, budget: float, cap: int) -> int:
    # smallest K with bound_coeff / K**power <= budget
    k = max(1, math.ceil((bound_coeff / budget) ** (1.0 / power)))
    if k > cap:
        raise ConvergenceError(f"series needs {k} terms, cap is {cap}")
    return k


def c_expr1(alpha: float, cfg: EvalConfig = DEFAULT) -> float:
    """C(alpha) from the first series (integrals over [0, alpha])."""
    alpha = float(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    if alpha == 0:
        return 0.0
    tol = cfg.tolerance
    # |k-th oscillatory term| <= sqrt(2)/(2 pi^2) alpha^(5/2) / k^4, tail sum <= that / (3 K^3)
    coeff = math.sqrt(2) / (2 * math.pi**2) * alpha**2.5 / 3
    k_max = _terms_needed(coeff, 3, tol / 2, cfg.k_max_cap)
    per_term = tol / 2 / k_max
    total = 0.0
    for k in range(1, k_max + 1):
        # term contributes k/(2 pi) * (Im F - Re F), |Im F - Re F| <= sqrt(2) |F|
        budget = per_term * 2 * math.pi / (k * math.sqrt(2))
        f = oscillatory_tail(k * k / alpha, 2.5, 2 * math.pi, budget, cfg.quad_max_depth)
        total += k * (f.imag - f.real)
    return math.sqrt(alpha) + math.pi / 18 * alpha**1.5 + total / (2 * math.pi)


def c_expr2(alpha: float, cfg: EvalConfig = DEFAULT) -> float:
    """C(alpha) from the second series (integrals over [0, 1/alpha])."""
    alpha = float(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    tol = cfg.tolerance
    scale = alpha**1.5 * 2 / math.pi
    # |k-th term| <= scale * k * 2 (k^2 alpha)^(-5/2) / (pi/2) = (8/pi^2) / (alpha k^4)
    coeff = 8 / math.pi**2 / alpha / 3
    k_max = _terms_needed(coeff, 3, tol / 2, cfg.k_max_cap)
    per_term = tol / 2 / k_max
    total = 0.0
    for k in range(1, k_max + 1):
        f = oscillatory_tail(k * k * alpha, 2.5, math.pi / 2, per_term / (scale * k), cfg.quad_max_depth)
        total += k * f.imag
    return alpha + scale * total


SWITCHOVER = 1.0


def c_value(alpha: float, cfg: EvalConfig = DEFAULT) -> float:
    alpha = float(alpha)
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return c_expr1(alpha, cfg) if alpha <= SWITCHOVER else c_expr2(alpha, cfg)


def c_asymptotic(alpha: float, regime: Literal["small", "large"]) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if regime == "small":
        return math.sqrt(alpha) + math.pi / 18 * alpha**1.5
    if regime == "large":
        return float(alpha)
    raise ValueError(f"unknown regime {regime!r}")


# ---------------------------------------------------------------------------
# Riemann's function


def _riemann_rational(x: Fraction) -> float:
    # sin(pi k^2 p/q) depends only on k mod 2q, and the k = v (mod 2q) part of
    # sum 1/k^2 is zeta(2, v/2q) / (2q)^2.
    p, q = x.numerator, x.denominator
    period = 2 * q
    v = np.arange(1, period + 1, dtype=np.int64)
    r = (v * v % period) * (p % period) % period
    terms = np.sin(np.pi * r / q) * zeta(2.0, v / period)
    return 2 / math.pi * math.fsum(terms) / period**2


def riemann_f(x: Real, cfg: EvalConfig = DEFAULT) -> float:
    """f(x) = (2/pi) sum_{k>=1} sin(pi k^2 x) / k^2.

    A Fraction (or int) with denominator <= 10**6 is summed exactly through
    its period in k; anything else uses the truncated series with
    K >= 2/(pi tol), the argument first reduced mod 2.
    """
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        if x.denominator <= EXACT_DENOMINATOR_CAP:
            return _riemann_rational(x % 2)
        x = float(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    x = math.remainder(x, 2.0)
    # 10% of the budget is left for rounding
    k_max = math.ceil(2 / (math.pi * 0.9 * cfg.tolerance))
    if k_max > min(cfg.k_max_cap, _EXACT_SQUARE_K):
        raise ConvergenceError(f"f(x) needs {k_max} terms, cap is {cfg.k_max_cap}")
    return 2 / math.pi * _kernels.riemann_partial(x, k_max)


def c_prime(alpha: Real, cfg: EvalConfig = DEFAULT) -> float:
    """C'(alpha) = (3/(2 alpha)) C(alpha) - 1/2 - f(alpha/2) / alpha."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    half = alpha / 2 if isinstance(alpha, (int, Fraction)) else float(alpha) / 2
    a = float(alpha)
    return 1.5 / a * c_value(a, cfg) - 0.5 - riemann_f(half, cfg) / a


# ---------------------------------------------------------------------------
# local structure of f at rationals

# Sign of the sqrt term for h -> 0-: f(c+h) = f(c) - h - left * sqrt(2|h|).
# Frozen after comparing against direct evaluation of f at c = 1/2.
LEFT_BRANCH_SIGN = -1


@dataclass(frozen=True)
class LocalExpansion:
    """f(c + h) = f(c) - h + (branch coefficient) * sqrt(2|h|) + O(|h|^(3/2))."""

    center: Fraction
    value_at_center: float
    linear_coeff: float
    sqrt_coeff_right: float
    sqrt_coeff_left: float

    def predict(self, h: float) -> float:
        if h >= 0:
            branch = self.sqrt_coeff_right
        else:
            branch = LEFT_BRANCH_SIGN * self.sqrt_coeff_left
        return self.value_at_center + self.linear_coeff * h + branch * math.sqrt(2 * abs(h))


def _as_fraction(center) -> Fraction:
    c = Fraction(center)
    if c.numerator == 0:
        raise ValueError("center p/q needs p != 0")
    return c


def f_local_expansion(center: Fraction) -> LocalExpansion:
    c = _as_fraction(center)
    p, q = c.numerator, c.denominator
    g = gauss_quadratic_direct(p, q)
    return LocalExpansion(
        center=c,
        value_at_center=riemann_f(c),
        linear_coeff=-1.0,
        sqrt_coeff_right=(g.re - g.im) / (2 * q),
        sqrt_coeff_left=(g.re + g.im) / (2 * q),
    )


@dataclass(frozen=True)
class Verdict:
    kind: Literal["differentiable", "right_only", "left_only", "neither"]
    witness: dict = field(default_factory=dict)


def classify_f(center: Fraction) -> Verdict:
    """Differentiability of f at p/q from the two one-sided sqrt coefficients."""
    c = _as_fraction(center)
    p, q = c.numerator, c.denominator
    g = gauss_quadratic_direct(p, q)
    right = (g.re - g.im) / (2 * q)
    left = (g.re + g.im) / (2 * q)
    # coefficients are O(1/sqrt q); compare after scaling by sqrt q
    right_flat = abs(right) * math.sqrt(q) <= VANISH_TOL
    left_flat = abs(left) * math.sqrt(q) <= VANISH_TOL
    if right_flat and left_flat:
        kind = "differentiable"
    elif right_flat:
        kind = "right_only"
    elif left_flat:
        kind = "left_only"
    else:
        kind = "neither"
    witness = {
        "p": p,
        "q": q,
        "re_g": g.re,
        "im_g": g.im,
        "sqrt_coeff_right": right,
        "sqrt_coeff_left": left,
        "right_vanishes": right_flat,
        "left_vanishes": left_flat,
    }
    return Verdict(kind, witness)


def classify_c_prime(alpha: Fraction) -> Verdict:
    """Differentiability of C' at a positive rational.

    C' = (3/(2a)) C - 1/2 - f(a/2)/a with C differentiable, so each
    one-sided derivative of C' at a exists exactly when f has it at a/2.
    """
    a = Fraction(alpha)
    if a <= 0:
        raise ValueError("alpha must be positive")
    inner = classify_f(a / 2)
    witness = dict(inner.witness)
    witness["alpha"] = str(a)
    witness["parity_rule"] = a.numerator % 4 == 2 and a.denominator % 2 == 1
    return Verdict(inner.kind, witness)
