"""Larger-sieve machinery over primes in a fixed residue class.

The estimate used throughout: for A a set of integers in [1, N] and P a set
of primes, |A| <= (sum log p - log N) / (sum log p / |A_p| - log N) whenever
the denominator is positive, where |A_p| is the number of residues mod p
that A occupies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .exact import integer_kth_root, is_prime, trial_factor


def euler_phi(k: int) -> int:
    if k < 1:
        raise InputError(f"totient argument must be >= 1, got {k}")
    phi = 1
    for p, e in trial_factor(k):
        phi *= (p - 1) * p ** (e - 1)
    return phi


def primes_up_to(limit: int) -> list[int]:
    """Eratosthenes; empty below 2."""
    if limit < 2:
        return []
    mark = bytearray([1]) * (limit + 1)
    mark[0] = mark[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if mark[p]:
            mark[p * p::p] = bytearray(len(mark[p * p::p]))
    return [p for p in range(2, limit + 1) if mark[p]]

def primes_in_class(Q: float, k: int, n: int) -> list[int]:
    """Primes p <= floor(Q) with p = 1 (mod k) and p not dividing n."""
    if n == 0:
        raise InputError("shift n must be nonzero")
    if k < 2:
        raise InputError(f"class modulus k must be >= 2, got {k}")
    return [p for p in primes_up_to(math.floor(Q))
            if p % k == 1 and n % p != 0]


@dataclass(frozen=True)
class SieveEvaluation:
    size: int
    numerator: float
    denominator: float
    bound: float | None  # None whenever the denominator is not positive
    occupied: dict[int, int]  # prime -> number of residues A touches


def gallagher_bound(A: Iterable[int], N: int, P: Iterable[int]) -> SieveEvaluation:
    """Evaluate the larger-sieve estimate for A inside [1, N] over primes P."""
    elems = sorted(set(A))
    if not elems:
        raise InputError("the sieved set must be nonempty")
    if elems[0] < 1 or elems[-1] > N:
        raise InputError(f"elements must lie in [1, {N}]")
    primes = sorted(set(P))
    if not primes:
        raise InputError("need at least one sieving prime")
    for p in primes:
        if p < 2 or not is_prime(p):
            raise InputError(f"{p} is not prime")
    log_n = math.log(N)
    occupied = {p: len({a % p for a in elems}) for p in primes}
    numerator = sum(math.log(p) for p in primes) - log_n
    denominator = sum(math.log(p) / occupied[p] for p in primes) - log_n
    bound = numerator / denominator if denominator > 0 else None
    return SieveEvaluation(len(elems), numerator, denominator, bound, occupied)


@dataclass(frozen=True)
class PipelineResult:
    n: int
    k: int
    L: str  # the height exponent, kept in exact form
    Q: float
    cap: int  # ceil(|n|^L), the box the set is measured against
    primes: tuple[int, ...]
    degenerate: bool  # no usable sieving primes below Q
    evaluation: SieveEvaluation | None
    diagnostics: dict[str, float]


def _ceil_power(base: int, expo: Fraction) -> int:
    """ceil(base^expo) exactly for rational expo with a small denominator."""
    p, q = expo.numerator, expo.denominator
    power = base ** p
    root = integer_kth_root(power, q) if q > 1 else power
    if q > 1 and root ** q < power:
        root += 1
    return root


def sieve_pipeline(A: Sequence[int], n: int, k: int, L) -> PipelineResult:
    """Size up a set of candidate tuple elements below |n|^L via the sieve.

    Q = (4/k) (phi(k) L log|n|)^2 picks the prime window; the sieving primes
    are those <= Q in the class 1 mod k and coprime to n.  Diagnostics expose
    the log-weight sums against their asymptotic comparators.
    """
    if abs(n) < 2:
        raise InputError("pipeline needs |n| >= 2")
    if k < 2:
        raise InputError(f"degree must be >= 2, got {k}")
    Lf = Fraction(L)
    if Lf <= Fraction(1, 2):
        raise InputError(f"height exponent must exceed 1/2, got {L}")
    phi = euler_phi(k)
    log_n = math.log(abs(n))
    Lfloat = Lf.numerator / Lf.denominator
    Q = (4 / k) * (phi * Lfloat * log_n) ** 2
    if Lf.denominator <= 64:
        cap = _ceil_power(abs(n), Lf)
    else:
        cap = math.ceil(abs(n) ** Lfloat)
    primes = primes_in_class(Q, k, n)
    diagnostics = {
        "sum_log_p": sum(math.log(p) for p in primes),
        "window_over_phi": Q / phi,
        "sum_log_p_over_sqrt_p": sum(math.log(p) / math.sqrt(p) for p in primes),
        "two_sqrt_window_over_phi": 2 * math.sqrt(Q) / phi,
        "sum_log_p_over_sqrt_p_per_k": sum(math.log(p) / math.sqrt(p / k)
                                           for p in primes),
        "asymptotic_target": 4 * Lfloat * phi / k * log_n,
        "shift_prime_drag": sum(math.log(p) / math.sqrt(p)
                                for p, _ in trial_factor(abs(n))),
    }
    if not primes:
        return PipelineResult(n, k, str(Lf), Q, cap, (), True, None, diagnostics)
    evaluation = gallagher_bound(A, cap, primes)
    return PipelineResult(n, k, str(Lf), Q, cap, tuple(primes), False,
                          evaluation, diagnostics)
