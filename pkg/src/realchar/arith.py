"""Exact integer number theory: Jacobi symbols, factorization, multiplicative functions."""

from __future__ import annotations

import math
import random
import threading
from dataclasses import dataclass, field
from functools import reduce

import numpy as np

TRIAL_DIVISION_BOUND = 10**6
FACTOR_LIMIT = 2**63

# Witness set that makes Miller-Rabin deterministic below 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def jacobi_symbol(m: int, n: int) -> int:
    """Jacobi symbol (m/n) for odd n >= 1, by the binary algorithm.

    Neither argument is factored: powers of two are stripped from the top
    using the supplementary law for (2/n) and the remaining odd pair is
    flipped by reciprocity.  (0/1) is 1 and (m/n) is 0 whenever
    gcd(m, n) > 1.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    if m < 0:
        raise ValueError(f"Jacobi symbol numerator must be nonnegative, got {m}")
    m %= n
    t = 1
    while m:
        tz = (m & -m).bit_length() - 1
        m >>= tz
        if tz & 1 and n & 7 in (3, 5):
            t = -t
        m, n = n, m
        if m & 3 == 3 and n & 3 == 3:
            t = -t
        m %= n
    return t if n == 1 else 0


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion, for an odd prime p."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


# ---------------------------------------------------------------------------
# prime tables

_prime_lock = threading.Lock()
_small_primes: tuple[int, ...] | None = None


def primes_up_to(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (sieve of Eratosthenes)."""
    if limit < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(limit) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def _trial_primes() -> tuple[int, ...]:
    global _small_primes
    if _small_primes is None:
        with _prime_lock:
            if _small_primes is None:
                _small_primes = tuple(int(p) for p in primes_up_to(TRIAL_DIVISION_BOUND))
    return _small_primes


def smallest_prime_factors(limit: int) -> np.ndarray:
    """spf[k] = least prime factor of k for 2 <= k <= limit (spf[0] = 0, spf[1] = 1)."""
    spf = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 1:
        spf[1] = 1
    if limit >= 2:
        spf[2::2] = 2
    for p in range(3, math.isqrt(limit) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p :: 2 * p]
            block[block == 0] = p
    odd = spf[3::2]
    unset = odd == 0
    odd[unset] = np.arange(3, limit + 1, 2)[unset]
    return spf


def totients_up_to(limit: int) -> np.ndarray:
    """phi[k] for 0 <= k <= limit, via the product formula over a prime sieve."""
    phi = np.arange(limit + 1, dtype=np.int64)
    for p in primes_up_to(limit):
        p = int(p)
        phi[p::p] -= phi[p::p] // p
    return phi


# ---------------------------------------------------------------------------
# factorization


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random) -> int:
    """A nontrivial factor of the odd composite n."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def _split_cofactor(n: int, out: list[int], rng: random.Random) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out.append(n)
        return
    d = _pollard_brent(n, rng)
    _split_cofactor(d, out, rng)
    _split_cofactor(n // d, out, rng)


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise ValueError("primes must be strictly increasing")
        if any(e < 1 for _, e in self.factors):
            raise ValueError("exponents must be positive")
        if reduce(lambda acc, pe: acc * pe[0] ** pe[1], self.factors, 1) != self.n:
            raise ValueError("factors do not multiply to n")

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def factorize(n: int) -> Factorization:
    """Complete prime factorization of 1 <= n <= 2**63.

    Trial division by primes up to 10**6 (stopping early once p*p exceeds the
    remaining cofactor), then Pollard-Brent rho on whatever composite is left.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    if n > FACTOR_LIMIT:
        raise ValueError(f"{n} exceeds the 2**63 factoring limit")
    found: dict[int, int] = {}
    rest = n
    for p in _trial_primes():
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            found[p] = e
    if rest > 1:
        if rest < TRIAL_DIVISION_BOUND**2 or is_probable_prime(rest):
            found[rest] = found.get(rest, 0) + 1
        else:
            # fixed seed keeps the call pure
            pieces: list[int] = []
            _split_cofactor(rest, pieces, random.Random(n))
            for p in pieces:
                found[p] = found.get(p, 0) + 1
    return Factorization(n, tuple(sorted(found.items())))


def factorize_with_spf(n: int, spf: np.ndarray) -> Factorization:
    """Factor n using a precomputed smallest-prime-factor table (n < len(spf))."""
    found: list[tuple[int, int]] = []
    rest = n
    while rest > 1:
        p = int(spf[rest])
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        found.append((p, e))
    return Factorization(n, tuple(found))


# ---------------------------------------------------------------------------
# multiplicative functions


@dataclass(frozen=True)
class MultiplicativeBundle:
    phi: int
    sigma: int
    mu: int
    tau: int
    is_square: bool
    squarefree_kernel: int


def multiplicative_values(n: int | Factorization) -> MultiplicativeBundle:
    fac = n if isinstance(n, Factorization) else factorize(n)
    phi = sigma = tau = kernel = 1
    mu = 1
    square = True
    for p, e in fac:
        phi *= p ** (e - 1) * (p - 1)
        sigma *= (p ** (e + 1) - 1) // (p - 1)
        tau *= e + 1
        kernel *= p
        mu = 0 if e > 1 else -mu
        square = square and e % 2 == 0
    return MultiplicativeBundle(phi, sigma, mu, tau, square, kernel)


def is_squarefree(n: int) -> bool:
    return multiplicative_values(n).mu != 0


def divisor_sigma(n: int) -> int:
    return multiplicative_values(n).sigma


def divisor_count(n: int) -> int:
    return multiplicative_values(n).tau
