"""Larger-sieve estimate and the prime-window pipeline."""

import math
import random
from fractions import Fraction

import pytest

from diotuple.errors import InputError
from diotuple.sieve import (
    euler_phi,
    gallagher_bound,
    primes_in_class,
    primes_up_to,
    sieve_pipeline,
)


def test_euler_phi():
    assert [euler_phi(k) for k in range(1, 13)] == [
        1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]
    assert euler_phi(360) == 96
    with pytest.raises(InputError):
        euler_phi(0)


def test_euler_phi_vs_gcd_count():
    for k in range(1, 200):
        assert euler_phi(k) == sum(1 for a in range(1, k + 1)
                                   if math.gcd(a, k) == 1)


def test_primes_up_to():
    assert primes_up_to(1) == []
    assert primes_up_to(2) == [2]
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    got = primes_up_to(2000)
    assert len(got) == 303
    assert all(all(p % d for d in range(2, math.isqrt(p) + 1)) for p in got)


def test_primes_in_class():
    assert primes_in_class(113.1, 3, 100) == [
        7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103, 109]
    # p | n is excluded: 7 | 49
    assert 7 not in primes_in_class(50, 3, 49)
    assert primes_in_class(2.56, 3, 2) == []
    with pytest.raises(InputError):
        primes_in_class(100, 3, 0)
    with pytest.raises(InputError):
        primes_in_class(100, 1, 5)


def test_gallagher_single_element():
    # one element occupies one residue everywhere: numerator == denominator
    ev = gallagher_bound([7], 10, [3, 5, 7])
    want = math.log(3 * 5 * 7) - math.log(10)
    assert ev.numerator == pytest.approx(2.351375257163477, rel=1e-12)
    assert ev.denominator == pytest.approx(want, rel=1e-12)
    assert ev.bound == pytest.approx(1.0, rel=1e-12)
    assert ev.occupied == {3: 1, 5: 1, 7: 1}
    assert ev.size == 1


def test_gallagher_saturated_set():
    # the full interval occupies every residue; denominator goes negative
    ev = gallagher_bound(range(1, 11), 10, [3, 5, 7])
    assert ev.denominator == pytest.approx(-1.3365062501337637, rel=1e-12)
    assert ev.bound is None
    assert ev.occupied == {3: 3, 5: 5, 7: 7}


def test_gallagher_bound_is_sound_when_finite():
    # whenever the bound exists it must dominate |A|
    rng = random.Random(808)
    pool = primes_up_to(500)
    for _ in range(200):
        N = rng.randint(10, 3000)
        size = rng.randint(1, 40)
        A = rng.sample(range(1, N + 1), min(size, N))
        P = rng.sample(pool, rng.randint(1, 20))
        ev = gallagher_bound(A, N, P)
        assert ev.size == len(set(A))
        for p, occ in ev.occupied.items():
            assert 1 <= occ <= min(p, len(A))
        if ev.bound is not None:
            assert ev.bound >= ev.size - 1e-9


def test_gallagher_denominator_grows_as_a_shrinks():
    # removing elements can only free residues, so the denominator can
    # only grow (log N fixed, |A_p| non-increasing)
    rng = random.Random(2)
    for _ in range(40):
        N = 2000
        A = rng.sample(range(1, N + 1), 30)
        P = rng.sample(primes_up_to(300), 10)
        full = gallagher_bound(A, N, P)
        small = gallagher_bound(A[:15], N, P)
        assert small.denominator >= full.denominator - 1e-12


def test_gallagher_errors():
    with pytest.raises(InputError):
        gallagher_bound([], 10, [3])
    with pytest.raises(InputError):
        gallagher_bound([11], 10, [3])
    with pytest.raises(InputError):
        gallagher_bound([0], 10, [3])
    with pytest.raises(InputError):
        gallagher_bound([5], 10, [])
    with pytest.raises(InputError):
        gallagher_bound([5], 10, [4])


def test_pipeline_frozen():
    res = sieve_pipeline([2, 9, 28], 100, 3, 1)
    assert res.Q == pytest.approx(113.10715969020585, rel=1e-12)
    assert res.primes == (7, 13, 19, 31, 37, 43, 61, 67, 73, 79, 97, 103, 109)
    assert res.cap == 100
    assert not res.degenerate
    assert res.evaluation is not None
    assert res.evaluation.size == 3
    assert res.L == "1"


def test_pipeline_degenerate():
    # tiny window: no primes = 1 mod 3 below Q = 2.56...
    res = sieve_pipeline([1], 2, 3, 1)
    assert res.Q == pytest.approx(2.5624160742304074, rel=1e-12)
    assert res.degenerate
    assert res.primes == ()
    assert res.evaluation is None
    # diagnostics are still reported for a degenerate window
    assert res.diagnostics["sum_log_p"] == 0.0


def test_pipeline_exact_cap():
    # 8^(2/3) = 4 exactly; a float ceil would give 4.000000000000001 -> 5
    res = sieve_pipeline([1, 2], 8, 2, Fraction(2, 3))
    assert res.cap == 4
    # non-integer power rounds up: 10^(3/2) = 31.62... -> 32
    res = sieve_pipeline([1], 10, 2, Fraction(3, 2))
    assert res.cap == 32
    # huge denominators fall back to float ceil
    res = sieve_pipeline([1], 10, 2, Fraction(101, 67))
    assert res.cap == math.ceil(10 ** (101 / 67))


def test_pipeline_diagnostics_keys_and_drag():
    res = sieve_pipeline([2, 9, 28], 100, 3, 1)
    assert set(res.diagnostics) == {
        "sum_log_p", "window_over_phi", "sum_log_p_over_sqrt_p",
        "two_sqrt_window_over_phi", "sum_log_p_over_sqrt_p_per_k",
        "asymptotic_target", "shift_prime_drag",
    }
    # n = 100 = 2^2 5^2: drag = log2/sqrt2 + log5/sqrt5
    want = math.log(2) / math.sqrt(2) + math.log(5) / math.sqrt(5)
    assert res.diagnostics["shift_prime_drag"] == pytest.approx(
        1.2098915872878744, rel=1e-12)
    assert res.diagnostics["shift_prime_drag"] == pytest.approx(want, rel=1e-12)
    assert res.diagnostics["asymptotic_target"] == pytest.approx(
        4 * 2 / 3 * math.log(100), rel=1e-12)
    assert res.diagnostics["sum_log_p"] == pytest.approx(
        sum(math.log(p) for p in res.primes), rel=1e-12)


def test_pipeline_errors():
    with pytest.raises(InputError):
        sieve_pipeline([1], 1, 3, 1)  # |n| < 2
    with pytest.raises(InputError):
        sieve_pipeline([1], 100, 1, 1)  # k < 2
    with pytest.raises(InputError):
        sieve_pipeline([1], 100, 3, Fraction(1, 2))  # L <= 1/2
