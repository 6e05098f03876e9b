"""Gauss-type sums G_k(n), tau_k(n) and the quadratic Gauss sum G(p/q).

``gauss_g`` evaluates G_k(n) exactly from the prime-power case table; the
``*_direct`` / ``*_oracle`` functions sum the defining series term by term
and exist to check it.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .arith import Factorization, factorize, jacobi_symbol, multiplicative_values

ORACLE_CAP = 10**6
QUADRATIC_DIRECT_CAP = 10**5
ORACLE_IMAG_TOL = 1e-6


class GaussConsistencyError(ArithmeticError):
    """The direct tau sum did not reduce to a real G_k(n)."""


@dataclass(frozen=True)
class RootInteger:
    """The exact real number r * sqrt(d) with d squarefree."""

    r: int
    d: int = 1

    def __post_init__(self):
        if self.d < 1 or multiplicative_values(self.d).mu == 0:
            raise ValueError(f"radicand {self.d} is not squarefree")
        if self.r == 0 and self.d != 1:
            object.__setattr__(self, "d", 1)

    def __mul__(self, other: RootInteger | int) -> RootInteger:
        if isinstance(other, int):
            return RootInteger(self.r * other, self.d)
        g = math.gcd(self.d, other.d)
        return RootInteger(self.r * other.r * g, (self.d // g) * (other.d // g))

    __rmul__ = __mul__

    def __neg__(self) -> RootInteger:
        return RootInteger(-self.r, self.d)

    def __float__(self) -> float:
        return self.r * math.sqrt(self.d)

    def __str__(self) -> str:
        return str(self.r) if self.d == 1 else f"{self.r}*sqrt({self.d})"


ONE = RootInteger(1, 1)
ZERO = RootInteger(0, 1)


@dataclass(frozen=True)
class ComplexValue:
    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("complex components must be finite")

    @classmethod
    def of(cls, z: complex) -> ComplexValue:
        return cls(float(z.real), float(z.imag))

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __abs__(self) -> float:
        return math.hypot(self.re, self.im)


def _require_odd(n: int) -> None:
    if n < 1 or n % 2 == 0:
        raise ValueError(f"modulus must be odd and positive, got {n}")


def _local_factor(k: int, p: int, b: int) -> RootInteger:
    # G_k(p^b), b >= 1, k >= 0
    if k == 0:
        a = math.inf
    else:
        a = 0
        while k % p == 0:
            k //= p
            a += 1
    # k is now k / p^a when a is finite
    if b <= a:
        return RootInteger(p**b - p ** (b - 1)) if b % 2 == 0 else ZERO
    if b == a + 1:
        pa = p**a
        if b % 2 == 0:
            return RootInteger(-pa)
        return RootInteger(jacobi_symbol(k % p, p) * pa, p)
    return ZERO


def gauss_g(k: int, n: int, factors: Factorization | None = None) -> RootInteger:
    """Exact G_k(n) for odd n as a product of prime-power local factors.

    Negative k goes through G_k(n) = (-1/n) G_{-k}(n).  ``factors`` may be
    supplied by callers that already hold the factorization of n.
    """
    _require_odd(n)
    if k < 0:
        value = gauss_g(-k, n, factors)
        return value if jacobi_symbol(n - 1, n) == 1 else -value
    fac = factors if factors is not None else factorize(n)
    if fac.n != n:
        raise ValueError("factorization does not belong to n")
    out = ONE
    for p, b in fac:
        local = _local_factor(k, p, b)
        if local.r == 0:
            return ZERO
        out = out * local
    return out


def _check_oracle_size(n: int) -> None:
    _require_odd(n)
    if n > ORACLE_CAP:
        raise ValueError(f"direct summation capped at n <= {ORACLE_CAP}, got {n}")


def _tau_many(ks, n: int) -> np.ndarray:
    """tau_k(n) for each k in ks, by direct summation over a mod n."""
    chi = _kernels.jacobi_row(n).astype(np.float64)
    a = np.arange(n, dtype=np.int64)
    out = np.empty(len(ks), dtype=np.complex128)
    for i, k in enumerate(ks):
        r = (a * (k % n)) % n
        out[i] = np.sum(chi * np.exp(2j * np.pi * r / n))
    return out


def tau_k_direct(k: int, n: int) -> ComplexValue:
    _check_oracle_size(n)
    return ComplexValue.of(complex(_tau_many([k], n)[0]))


def _prefactor(n: int) -> complex:
    # (1+i)/2 + (-1/n)(1-i)/2
    return 1.0 if n % 4 == 1 else 1j


def gauss_g_oracle(k: int, n: int) -> float:
    """G_k(n) recovered from the directly summed tau_k(n)."""
    _check_oracle_size(n)
    return _oracle_from_tau(complex(_tau_many([k], n)[0]), n)


def _oracle_from_tau(tau: complex, n: int) -> float:
    g = tau / _prefactor(n)
    if abs(g.imag) > ORACLE_IMAG_TOL:
        raise GaussConsistencyError(f"tau/prefactor has imaginary part {g.imag:.3e} at n={n}")
    return g.real


def gauss_g_oracle_many(ks, n: int) -> np.ndarray:
    """Vectorised ``gauss_g_oracle`` over several k sharing one modulus."""
    _check_oracle_size(n)
    return np.array([_oracle_from_tau(t, n) for t in _tau_many(ks, n)])


# ---------------------------------------------------------------------------
# quadratic Gauss sum G(p/q) = sum_{v mod 2q} exp(pi i p v^2 / q)


def _check_coprime(p: int, q: int) -> None:
    if q < 1:
        raise ValueError(f"denominator must be positive, got {q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p={p} and q={q} are not coprime")


def gauss_quadratic_direct(p: int, q: int) -> ComplexValue:
    _check_coprime(p, q)
    if q > QUADRATIC_DIRECT_CAP:
        raise ValueError(f"direct summation capped at q <= {QUADRATIC_DIRECT_CAP}")
    v = np.arange(2 * q, dtype=np.int64)
    r = ((v * v) % (2 * q)) * (p % (2 * q)) % (2 * q)
    z = np.exp(1j * np.pi * r / q)
    return ComplexValue(math.fsum(z.real), math.fsum(z.imag))


_ROOT_HALF = 1 / math.sqrt(2)


class GaussValue(enum.Enum):
    """Possible values of G(p/q) / (2 sqrt(q))."""

    ZERO = "zero"
    PLUS_ONE = "plus_one"
    MINUS_ONE = "minus_one"
    PLUS_I = "plus_i"
    MINUS_I = "minus_i"
    PLUS_ROOT_HALF_1PI = "plus_root_half_(1+i)"
    MINUS_ROOT_HALF_1PI = "minus_root_half_(1+i)"
    PLUS_ROOT_HALF_1MI = "plus_root_half_(1-i)"
    MINUS_ROOT_HALF_1MI = "minus_root_half_(1-i)"

    @property
    def complex(self) -> complex:
        return _GAUSS_COMPLEX[self]

    @classmethod
    def nearest(cls, z: complex) -> GaussValue:
        return min(cls, key=lambda g: abs(g.complex - z))


_GAUSS_COMPLEX = {
    GaussValue.ZERO: 0j,
    GaussValue.PLUS_ONE: 1 + 0j,
    GaussValue.MINUS_ONE: -1 + 0j,
    GaussValue.PLUS_I: 1j,
    GaussValue.MINUS_I: -1j,
    GaussValue.PLUS_ROOT_HALF_1PI: (1 + 1j) * _ROOT_HALF,
    GaussValue.MINUS_ROOT_HALF_1PI: -(1 + 1j) * _ROOT_HALF,
    GaussValue.PLUS_ROOT_HALF_1MI: (1 - 1j) * _ROOT_HALF,
    GaussValue.MINUS_ROOT_HALF_1MI: -(1 - 1j) * _ROOT_HALF,
}


@dataclass(frozen=True)
class GaussTableEntry:
    """Normalized G(p/q)/(2 sqrt q) plus the residue table's reading.

    ``normalized`` is the classical evaluation; ``table_value`` is what the
    residue table gives under a literal residue-search reading, and
    ``agrees_with_table`` flags the pairs where the two differ.
    """

    normalized: GaussValue
    case_label: str
    table_value: GaussValue
    table_label: str

    @property
    def agrees_with_table(self) -> bool:
        return self.normalized is self.table_value


def _is_square_mod(a: int, m: int) -> bool:
    a %= m
    return any(v * v % m == a for v in range(m))


def gauss_table_literal(p: int, q: int) -> tuple[GaussValue, str]:
    """The residue table read literally, residue tests by exhaustive search."""
    _check_coprime(p, q)
    p %= 2 * q
    if p % 2 and q % 2:
        return GaussValue.ZERO, "p, q odd"
    if q % 2 == 0:
        if _is_square_mod(p, 2 * q):
            return GaussValue.PLUS_ROOT_HALF_1PI, "q even, p square mod 2q"
        return GaussValue.MINUS_ROOT_HALF_1PI, "q even, p non-square mod 2q"
    half_sq = _is_square_mod(p // 2, q)
    if q % 4 == 1:
        if half_sq:
            return GaussValue.PLUS_ONE, "q = 1 mod 4, p/2 square mod q"
        return GaussValue.MINUS_ONE, "q = 1 mod 4, p/2 non-square mod q"
    if half_sq:
        return GaussValue.PLUS_I, "q = 3 mod 4, p/2 square mod q"
    return GaussValue.MINUS_I, "q = 3 mod 4, p/2 non-square mod q"


def gauss_quadratic_closed(p: int, q: int) -> GaussTableEntry:
    """Classify G(p/q)/(2 sqrt q) without summing.

    q odd, p = 2p' even: the sum over v mod 2q is twice the classical sum
    mod q, giving (p'/q) * eps_q with eps_q = 1 or i as q = 1 or 3 mod 4.
    q even, p odd: the modulus 2q is divisible by 4 and the classical
    evaluation gives (1+i)/sqrt(2) * (2q/p) / eps_p.
    """
    _check_coprime(p, q)
    table_value, table_label = gauss_table_literal(p, q)
    if p < 0:
        # G(-p/q) is the complex conjugate of G(p/q)
        pos = gauss_quadratic_closed(-p, q)
        value = GaussValue.nearest(pos.normalized.complex.conjugate())
        return GaussTableEntry(value, f"conjugate of {pos.case_label}", table_value, table_label)
    p %= 2 * q
    if p % 2 and q % 2:
        value, label = GaussValue.ZERO, "p, q odd"
    elif q % 2:
        sym = jacobi_symbol((p // 2) % q, q)
        z = sym * (1 if q % 4 == 1 else 1j)
        value = GaussValue.nearest(z)
        label = f"q = {q % 4} mod 4, (p/2 | q) = {sym:+d}"
    else:
        sym = jacobi_symbol((2 * q) % p, p)
        eps_inv = 1 if p % 4 == 1 else -1j
        value = GaussValue.nearest((1 + 1j) * _ROOT_HALF * sym * eps_inv)
        label = f"q even, p = {p % 4} mod 4, (2q | p) = {sym:+d}"
    return GaussTableEntry(value, label, table_value, table_label)
