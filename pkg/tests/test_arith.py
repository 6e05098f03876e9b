import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from realchar.arith import (
    Factorization,
    factorize,
    factorize_with_spf,
    is_probable_prime,
    jacobi_symbol,
    legendre_euler,
    multiplicative_values,
    primes_up_to,
    smallest_prime_factors,
    totients_up_to,
)

odd_moduli = st.integers(min_value=0, max_value=5000).map(lambda v: 2 * v + 1)


def jacobi_by_euler(m, n):
    # product of Legendre symbols computed by Euler's criterion
    out = 1
    for p, e in factorize(n):
        out *= legendre_euler(m, p) ** e
    return out


@pytest.mark.parametrize("m,n,expected", [(1, 9, 1), (7, 1, 1), (2, 15, 1), (3, 9, 0)])
def test_jacobi_examples(m, n, expected):
    assert jacobi_symbol(m, n) == expected


@pytest.mark.parametrize("n", [0, -3, 2, 10])
def test_jacobi_rejects_bad_modulus(n):
    with pytest.raises(ValueError):
        jacobi_symbol(1, n)


@given(st.integers(min_value=0, max_value=10**6), odd_moduli)
def test_jacobi_matches_euler_criterion(m, n):
    assert jacobi_symbol(m, n) == jacobi_by_euler(m, n)


@given(st.integers(min_value=0, max_value=10**6), odd_moduli)
def test_jacobi_periodic_in_top(m, n):
    assert jacobi_symbol(m, n) == jacobi_symbol(m + n, n)


@given(st.integers(min_value=0, max_value=10**4), odd_moduli, odd_moduli)
def test_jacobi_multiplicative_in_bottom(m, n1, n2):
    assert jacobi_symbol(m, n1 * n2) == jacobi_symbol(m, n1) * jacobi_symbol(m, n2)


@given(odd_moduli, odd_moduli)
def test_quadratic_reciprocity(m, n):
    if math.gcd(m, n) != 1:
        return
    sign = -1 if m % 4 == 3 and n % 4 == 3 else 1
    assert jacobi_symbol(m, n) == sign * jacobi_symbol(n, m)


def test_supplementary_laws():
    for n in range(1, 400, 2):
        assert jacobi_symbol(n - 1, n) == (1 if n % 4 == 1 else -1)
        assert jacobi_symbol(2, n) == (1 if n % 8 in (1, 7) else -1)


def test_factorize_examples():
    assert factorize(1).factors == ()
    assert factorize(45).factors == ((3, 2), (5, 1))
    assert factorize(9699690).factors == tuple((p, 1) for p in (2, 3, 5, 7, 11, 13, 17, 19))


def test_factorize_rejects_zero():
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_large_semiprime():
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    assert factorize(p * p * 7).factors == ((7, 1), (p, 2))


@given(st.integers(min_value=1, max_value=2**62))
def test_factorize_multiplies_back(n):
    fac = factorize(n)
    assert math.prod(p**e for p, e in fac) == n
    assert all(is_probable_prime(p) for p, _ in fac)


def test_factorization_invariants():
    with pytest.raises(ValueError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(ValueError):
        Factorization(10, ((2, 1), (3, 1)))
    assert factorize(360).valuation(2) == 3
    assert factorize(360).valuation(7) == 0


def test_spf_factorization_agrees():
    spf = smallest_prime_factors(5000)
    for n in range(1, 5000):
        assert factorize_with_spf(n, spf) == factorize(n)


def test_primes_and_totients():
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    phi = totients_up_to(300)
    for n in range(1, 301):
        assert phi[n] == sum(1 for a in range(1, n + 1) if math.gcd(a, n) == 1)


@pytest.mark.parametrize(
    "n,phi,sigma,mu,tau,square,kernel",
    [(1, 1, 1, 1, 1, True, 1), (9, 6, 13, 0, 3, True, 3), (15, 8, 24, 1, 4, False, 15)],
)
def test_multiplicative_examples(n, phi, sigma, mu, tau, square, kernel):
    b = multiplicative_values(n)
    assert (b.phi, b.sigma, b.mu, b.tau, b.is_square, b.squarefree_kernel) == (phi, sigma, mu, tau, square, kernel)


def test_multiplicative_values_brute_force():
    for n in range(1, 400):
        b = multiplicative_values(n)
        divisors = [d for d in range(1, n + 1) if n % d == 0]
        assert b.sigma == sum(divisors)
        assert b.tau == len(divisors)
        assert b.is_square == (math.isqrt(n) ** 2 == n)
        # Moebius inversion: sum of mu(d) over d | n is [n == 1]
        assert sum(multiplicative_values(d).mu for d in divisors) == (n == 1)


def test_multiplicative_rejects_zero():
    with pytest.raises(ValueError):
        multiplicative_values(0)


@given(st.integers(0, 10**4 - 1), st.integers(0, 10**4 - 1), st.integers(0, 5000 - 1).map(lambda v: 2 * v + 1))
def test_jacobi_multiplicative_in_top(m1, m2, n):
    assert jacobi_symbol(m1 * m2, n) == jacobi_symbol(m1, n) * jacobi_symbol(m2, n)


def test_bundle_against_enumeration_to_ten_thousand():
    top = 10**4
    sigma = np.zeros(top + 1, dtype=np.int64)
    tau = np.zeros(top + 1, dtype=np.int64)
    for d in range(1, top + 1):
        sigma[d::d] += d
        tau[d::d] += 1
    # mu from sum over d | n of mu(d) = [n == 1]
    mu = np.zeros(top + 1, dtype=np.int64)
    mu[1] = 1
    for d in range(1, top + 1):
        mu[2 * d :: d] -= mu[d]
    for n in range(1, top + 1):
        b = multiplicative_values(n)
        assert (b.sigma, b.tau, b.mu) == (sigma[n], tau[n], mu[n])
        assert (b.mu**2 == 1) == all(n % (p * p) for p in range(2, math.isqrt(n) + 1))
    for n in range(1, top + 1, 37):
        b = multiplicative_values(n)
        assert b.phi == int(np.sum(np.gcd(np.arange(1, n + 1), n) == 1))
        assert sum(multiplicative_values(d).phi for d in range(1, n + 1) if n % d == 0) == n
        kernel = math.prod(p for p, _ in factorize(n))
        assert b.squarefree_kernel == kernel
