"""Exact integer and rational primitives.

Arbitrary-precision k-th roots, perfect-power tests, canonical decimal and
fraction string forms, trial-division factoring, and a deterministic
primality test for word-sized integers.  Floats appear only as Newton seeds
or behind a guard band; every answer is settled in exact arithmetic.
"""

from __future__ import annotations

import re
from fractions import Fraction

from mpmath import mp

from .errors import InputError

# Natural numbers are plain Python ints (>= 0); exact rationals are
# fractions.Fraction, which already guarantees the canonical reduced form.
ExactRational = Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/\d+)?$")

# Deterministic Miller-Rabin bases for n < 3.3 * 10^24 (covers all of u64).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def integer_kth_root(m: int, k: int) -> int:
    """floor(m ** (1/k)) for m >= 0, k >= 2, in exact integer arithmetic."""
    if k < 2:
        raise InputError(f"root degree must be >= 2, got {k}")
    if m < 0:
        raise InputError(f"radicand must be >= 0, got {m}")
    if m == 0:
        return 0
    bits = m.bit_length()
    if bits <= 512:
        # float seed; the 1e-9 margin keeps the seed at or above the root
        r = int((m ** (1.0 / k)) * (1.0 + 1e-9)) + 1
    else:
        r = 1 << (bits // k + 1)
    # Newton from above converges monotonically down to the floor root
    while True:
        t = ((k - 1) * r + m // r ** (k - 1)) // k
        if t >= r:
            break
        r = t
    # exact correction; never trusts the float path
    while r ** k > m:
        r -= 1
    while (r + 1) ** k <= m:
        r += 1
    return r


def is_perfect_kth_power(m: int, k: int) -> int | None:
    """The x >= 1 with x**k == m, else None.

    Powers here are powers of positive naturals, so m <= 0 (including 0)
    never qualifies.
    """
    if k < 2:
        raise InputError(f"power degree must be >= 2, got {k}")
    if m < 1:
        return None
    r = integer_kth_root(m, k)
    return r if r ** k == m else None


def format_natural(value: int) -> str:
    if value < 0:
        raise InputError(f"natural expected, got {value}")
    return str(value)


def parse_natural(text: str) -> int:
    s = text.strip()
    if not s.isdigit():
        raise InputError(f"not a decimal natural: {text!r}")
    return int(s)


def format_rational(value: Fraction) -> str:
    """Canonical 'p/q' form; the denominator is always written."""
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    s = text.strip()
    if not _RATIONAL_RE.match(s):
        raise InputError(f"not a rational 'p' or 'p/q': {text!r}")
    if "/" in s:
        num, den = s.split("/")
        if int(den) == 0:
            raise InputError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def trial_factor(m: int) -> list[tuple[int, int]]:
    """Prime factorization of m >= 1 by trial division, as (p, e) pairs."""
    if m < 1:
        raise InputError(f"can only factor naturals >= 1, got {m}")
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        out.append((m, 1))
    return out


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; valid for n < 2**64 (and well beyond)."""
    if n >= 1 << 64:
        raise InputError("primality test is deterministic only below 2**64")
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
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


def compare_value_to_power(value: int, base: int, expo: Fraction) -> int:
    """sign(value - base**expo) for value >= 1, base >= 1, expo > 0.

    Decided at 80-bit precision first; anything inside a 1e-12 relative
    guard band falls back to exact integer cross-powering when the
    exponent's denominator is small, and to escalating precision
    otherwise.  A tie that survives the escalation cap is a genuine
    equality for the integer inputs we feed this.
    """
    if value < 1 or base < 1:
        raise InputError("comparison defined for positive integers only")
    if expo <= 0:
        raise InputError(f"exponent must be positive, got {expo}")
    if base == 1:
        return (value > 1) - (value < 1)
    p, q = expo.numerator, expo.denominator
    # cheap exact path: small denominator and a result that fits in memory
    if q <= 64 and p * base.bit_length() <= 1 << 22:
        lhs = value ** q
        rhs = base ** p
        return (lhs > rhs) - (lhs < rhs)
    guard = 1e-12
    for prec in (80, 160, 320, 640, 1280):
        with mp.workprec(prec):
            lhs = mp.log(value)
            rhs = mp.mpf(p) / q * mp.log(base)
            diff = lhs - rhs
            scale = max(abs(rhs), mp.mpf(1))
            if abs(diff) / scale > (guard if prec == 80 else mp.mpf(2) ** (20 - prec)):
                return 1 if diff > 0 else -1
    return 0
