import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from realchar import charsum
from realchar.arith import legendre_euler, factorize
from realchar.charsum import (
    SumJob,
    double_sum,
    gk2_mean_sqrt,
    gk2_mean_twisted,
    inner_sum_m,
    inner_sum_n,
    lemma2_partial,
    phi_square_mean,
    phi_square_mean_direct,
)
from realchar.gauss import gauss_g


def symbol(m, n):
    out = 1
    for p, e in factorize(n):
        out *= legendre_euler(m, p) ** e
    return out


def brute_sum(x, y, ell):
    return sum(symbol(m, ell * n) for m in range(1, x + 1, 2) for n in range(1, y + 1, 2))


@pytest.mark.parametrize("x,y,ell,expected", [(1, 1, 1, 1), (3, 3, 1, 3), (5, 5, 1, 3), (3, 1, 3, 1)])
def test_double_sum_examples(x, y, ell, expected):
    for algo in ("direct", "periodic", "auto"):
        assert double_sum(SumJob(x, y, ell, algo)).value == expected


@given(st.integers(1, 80), st.integers(1, 80), st.sampled_from([1, 3, 5, 15, 21]), st.integers(1, 4))
def test_double_sum_matches_brute_force(x, y, ell, threads):
    expected = brute_sum(x, y, ell)
    for algo in ("direct", "periodic"):
        assert double_sum(SumJob(x, y, ell, algo, threads)).value == expected


def test_both_periodic_orientations():
    # shapes that push the planner to each orientation
    assert double_sum(SumJob(3000, 50)).algorithm_used == "periodic-n"
    assert double_sum(SumJob(50, 3000)).algorithm_used == "periodic-m"
    for x, y in ((3000, 50), (50, 3000), (999, 1001)):
        direct = double_sum(SumJob(x, y, 1, "direct")).value
        assert double_sum(SumJob(x, y, 1, "periodic")).value == direct


def test_result_fields():
    r = double_sum(SumJob(10, 7))
    assert r.pairs_evaluated == 5 * 4
    assert r.elapsed_seconds >= 0


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(x_limit=0, y_limit=3),
        dict(x_limit=3, y_limit=0),
        dict(x_limit=10**7, y_limit=10**6),
        dict(x_limit=3, y_limit=3, ell=2),
        dict(x_limit=3, y_limit=3, ell=9),
        dict(x_limit=3, y_limit=3, algorithm="magic"),
        dict(x_limit=3, y_limit=3, thread_count=0),
    ],
)
def test_job_validation(kwargs):
    with pytest.raises(ValueError):
        SumJob(**kwargs)


def test_odd_blocks_cover_once():
    for top in (1, 2, 9, 100, 101):
        for parts in (1, 2, 3, 8, 200):
            covered = [m for lo, hi in charsum._odd_blocks(top, parts) for m in range(lo, hi + 1, 2)]
            assert covered == list(range(1, top + 1, 2))


def test_inner_sum_examples():
    assert inner_sum_m(9, 18) == 6
    assert inner_sum_m(3, 3) == 1
    assert inner_sum_m(1, 10) == 5
    assert inner_sum_n(1, 7) == 4
    assert inner_sum_n(9, 10) == 3
    assert inner_sum_n(3, 5) == 0
    with pytest.raises(ValueError):
        inner_sum_m(4, 10)
    with pytest.raises(ValueError):
        inner_sum_n(4, 10)


@given(st.integers(0, 150).map(lambda v: 2 * v + 1), st.integers(1, 2000))
def test_inner_sums_brute_force(a, limit):
    assert inner_sum_m(a, limit) == sum(symbol(m, a) for m in range(1, limit + 1, 2))
    assert inner_sum_n(a, limit) == sum(symbol(a, n) for n in range(1, limit + 1, 2))


def test_partial_sum_examples():
    assert lemma2_partial(1, 1) == 1.0
    assert lemma2_partial(1, 3) == pytest.approx(0.0, abs=1e-15)
    expected = 0.0
    for n in (1, 3, 5, 7, 9):
        expected += float(gauss_g(3, n)) * (1 if n % 8 in (1, 7) else -1) / math.sqrt(n)
    assert lemma2_partial(3, 9) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("k", [0, 2, 8, 18, 50])
def test_partial_sum_rejects_twice_squares(k):
    with pytest.raises(ValueError):
        lemma2_partial(k, 10)


def test_partial_sum_is_deterministic():
    assert lemma2_partial(7, 20001) == lemma2_partial(7, 20001)


def test_partial_sum_cap():
    with pytest.raises(ValueError):
        lemma2_partial(1, charsum.PARTIAL_SUM_CAP + 1)


def test_gk2_examples():
    assert gk2_mean_sqrt(1, 1) == 1.0
    assert gk2_mean_sqrt(1, 5) == pytest.approx(3.0)
    assert gk2_mean_twisted(0, 1, 1) == 1.0
    assert gk2_mean_twisted(1, 1, 3) == pytest.approx(1 + math.sqrt(3))
    with pytest.raises(ValueError):
        gk2_mean_twisted(1, 9, 10)
    with pytest.raises(ValueError):
        gk2_mean_twisted(1, 4, 10)


def test_phi_square_mean():
    assert phi_square_mean(1) == 1.0
    assert phi_square_mean(9) == pytest.approx(1 + 6 / 9)
    for x in (1, 50, 12345, 10**6):
        assert phi_square_mean(x) == pytest.approx(phi_square_mean_direct(x), rel=1e-13)


def test_phi_square_mean_main_term():
    x = 10**6
    assert abs(phi_square_mean(x) - 4 / math.pi**2 * math.sqrt(x)) <= 10 * math.log(x)


@given(st.integers(1, 2000), st.integers(1, 2000), st.sampled_from([1, 3, 15]))
def test_algorithms_agree_to_2000(x, y, ell):
    direct = double_sum(SumJob(x, y, ell, "direct")).value
    assert double_sum(SumJob(x, y, ell, "periodic")).value == direct
    for t in (2, 8):
        assert double_sum(SumJob(x, y, ell, "auto", t)).value == direct


@settings(max_examples=25)
@given(st.integers(1, 500), st.integers(1, 500))
def test_double_sum_equals_inner_sums(x, y):
    s = double_sum(SumJob(x, y)).value
    assert s == sum(inner_sum_m(n, x) for n in range(1, y + 1, 2))
    assert s == sum(inner_sum_n(m, y) for m in range(1, x + 1, 2))


def test_square_modulus_inner_sums():
    from realchar.arith import multiplicative_values

    for root in range(1, 45, 2):
        n = root * root
        density = multiplicative_values(n).phi / n
        for x in (1, 999, 12345, 10**5):
            assert abs(inner_sum_m(n, x) - x / 2 * density) <= 3 * math.sqrt(n) * math.log(3 * n)
