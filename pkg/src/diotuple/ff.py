"""Power classes in prime fields and the exhaustive scans built on them.

Three experiments live here: two-sided product sets whose shifted products
land in the k-th power classes (with the size inequality checked on every
scanned instance), the one-set pairwise variant driven by an exact max-clique
search, and multiplicative character sums over a discrete-log table.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .errors import InputError, InvariantViolation
from .exact import is_prime, trial_factor

logger = logging.getLogger(__name__)

DLOG_CAP = 10 ** 6
CLIQUE_CAP = 500
BIPARTITE_SIDE_CAP = 6


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod p."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if p == 2:
        return 1
    prime_divisors = [q for q, _ in trial_factor(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in prime_divisors):
            return g
    raise InvariantViolation(f"no generator found below {p}")


def power_classes(p: int, k: int) -> set[int]:
    """The nonzero k-th powers mod p; k must divide p - 1 (k = 1 allowed)."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if k < 1 or (p - 1) % k != 0:
        raise InputError(f"need k >= 1 dividing p-1, got k={k}, p={p}")
    return {pow(x, k, p) for x in range(1, p)}


@dataclass(frozen=True)
class FieldConfig:
    """A prime field with a chosen power degree, shift, and generator."""

    p: int
    k: int
    lam: int = 1
    g: int = 0  # 0 means: take the smallest primitive root

    def __post_init__(self):
        if not is_prime(self.p):
            raise InputError(f"{self.p} is not prime")
        if self.k < 2 or (self.p - 1) % self.k != 0:
            raise InputError(
                f"degree must be >= 2 and divide p-1, got k={self.k}, p={self.p}")
        if not 1 <= self.lam <= self.p - 1:
            raise InputError(f"shift must be in [1, p-1], got {self.lam}")
        if self.g == 0:
            object.__setattr__(self, "g", primitive_root(self.p))
        elif not self._generates(self.g):
            raise InputError(f"{self.g} does not generate the group mod {self.p}")

    def _generates(self, g: int) -> bool:
        if not 1 <= g <= self.p - 1:
            return False
        if self.p == 2:
            return g == 1
        return all(pow(g, (self.p - 1) // q, self.p) != 1
                   for q, _ in trial_factor(self.p - 1))

    @property
    def class_size(self) -> int:
        return (self.p - 1) // self.k


def ff_verify(A: Iterable[int], B: Iterable[int], config: FieldConfig) -> bool:
    """True iff every product a*b + lam lands in the power classes or at 0."""
    p = config.p
    sa, sb = set(A), set(B)
    for side in (sa, sb):
        for x in side:
            if not 1 <= x <= p - 1:
                raise InputError(f"element {x} outside [1, {p - 1}]")
    good = power_classes(p, config.k) | {0}
    return all((a * b + config.lam) % p in good for a in sa for b in sb)


@dataclass(frozen=True)
class FieldScanResult:
    p: int
    k: int
    lam: int
    class_size: int
    scanned: int  # sides A whose maximal partner set had >= 2 elements
    max_product: int  # largest |A||B| seen
    extremal: tuple[tuple[int, ...], tuple[int, ...]] | None
    min_slack: int | None  # tightest margin of the size inequality
    violations: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def ff_scan_bipartite(config: FieldConfig, max_side: int) -> FieldScanResult:
    """Exhaust small sides A, pair each with its maximal partner set B.

    For fixed A the inequality |A||B| <= |S_k| + |B o (-lam A^-1)| + |A| - 1
    is tightest at the maximal B (removing one b costs the left side |A| >= 2
    and the right side at most 2), so checking the maximal partner set per A
    covers every admissible pair.  Both role assignments are checked.
    """
    if not 2 <= max_side <= BIPARTITE_SIDE_CAP:
        raise InputError(f"side cap must be in [2, {BIPARTITE_SIDE_CAP}]")
    p, k, lam = config.p, config.k, config.lam
    good = power_classes(p, k) | {0}
    # comp[a] = bitmask of partners b with a*b + lam in the allowed classes
    comp = [0] * p
    for a in range(1, p):
        row = 0
        for b in range(1, p):
            if (a * b + lam) % p in good:
                row |= 1 << b
        comp[a] = row
    class_size = config.class_size
    neg_inv = [0] * p  # a -> -lam / a mod p
    for a in range(1, p):
        neg_inv[a] = (-lam * pow(a, -1, p)) % p

    scanned = 0
    max_product = 0
    extremal = None
    min_slack = None
    violations: list = []

    def check(side: tuple[int, ...], mask: int, nb: int):
        nonlocal scanned, max_product, extremal, min_slack
        scanned += 1
        B = tuple(_bits(mask))
        na = len(side)
        product = na * nb
        corr_b = sum(1 for a in side if mask >> neg_inv[a] & 1)
        in_a = set(side)
        corr_a = sum(1 for b in B if neg_inv[b] in in_a)
        slack = min(class_size + corr_b + na - 1 - product,
                    class_size + corr_a + nb - 1 - product)
        if product > max_product:
            max_product, extremal = product, (side, B)
        if min_slack is None or slack < min_slack:
            min_slack = slack
        if slack < 0:
            violations.append((side, B))
            logger.error("size inequality failed at p=%d k=%d lam=%d A=%s B=%s",
                         p, k, lam, side, B)

    def grow(side: tuple[int, ...], mask: int):
        nb = mask.bit_count()
        if nb < 2:
            return  # partner sets only shrink below; nothing admissible here
        if len(side) >= 2:
            check(side, mask, nb)
        if len(side) < max_side:
            for a in range(side[-1] + 1, p):
                grow(side + (a,), mask & comp[a])

    for a in range(1, p):
        grow((a,), comp[a])

    return FieldScanResult(p, k, lam, class_size, scanned, max_product,
                           extremal, min_slack, tuple(violations))


@dataclass(frozen=True)
class CliqueScanResult:
    p: int
    k: int
    lam: int
    max_size: int
    witness: tuple[int, ...]
    bound: float  # sqrt(2(p-1)/k) + 4
    violation: bool  # max_size above the bound; must never happen


def ff_scan_clique(config: FieldConfig) -> CliqueScanResult:
    """Exact maximum size of a set with every pairwise product shifted into
    the power classes (a branch-and-bound clique search with greedy-coloring
    pruning), checked against sqrt(2(p-1)/k) + 4."""
    p, k, lam = config.p, config.k, config.lam
    if p > CLIQUE_CAP:
        raise InputError(f"clique scan capped at p <= {CLIQUE_CAP}, got {p}")
    good = power_classes(p, k) | {0}
    adj = [0] * p
    for a in range(1, p):
        for b in range(a + 1, p):
            if (a * b + lam) % p in good:
                adj[a] |= 1 << b
                adj[b] |= 1 << a

    best = 0
    witness: tuple[int, ...] = ()

    def coloring(cands: int) -> tuple[list[int], list[int]]:
        order, limits = [], []
        color = 0
        rest = cands
        while rest:
            color += 1
            avail = rest
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= ~(adj[v] | (1 << v))
                rest &= ~(1 << v)
                order.append(v)
                limits.append(color)
        return order, limits

    def expand(clique: list[int], cands: int):
        nonlocal best, witness
        if not cands:
            if len(clique) > best:
                best = len(clique)
                witness = tuple(sorted(clique))
            return
        order, limits = coloring(cands)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + limits[i] <= best:
                return
            v = order[i]
            clique.append(v)
            expand(clique, cands & adj[v])
            clique.pop()
            cands &= ~(1 << v)

    expand([], (1 << p) - 2)

    # exact form of max_size > sqrt(2(p-1)/k) + 4
    violation = best > 4 and (best - 4) ** 2 * k > 2 * (p - 1)
    if violation:
        logger.error("pairwise bound failed at p=%d k=%d lam=%d: size %d",
                     p, k, lam, best)
    return CliqueScanResult(p, k, lam, best, witness,
                            math.sqrt(2 * (p - 1) / k) + 4, violation)


@dataclass(frozen=True)
class CharacterSumResult:
    p: int
    k: int
    size_a: int
    size_b: int
    counts: tuple[int, ...]  # per power of the root of unity among chi(a+b)
    zero_hits: int  # pairs with a + b = 0
    magnitude: float
    exponent: float | None  # log(magnitude / (|A||B|)) / log p; None at 0

    def __post_init__(self):
        if sum(self.counts) + self.zero_hits != self.size_a * self.size_b:
            raise InvariantViolation("character counts do not cover all pairs")


def dlog_table(config: FieldConfig) -> list[int]:
    """index table over the configured generator; entry 0 is unused."""
    p, g = config.p, config.g
    if p > DLOG_CAP:
        raise InputError(f"discrete-log table capped at p <= {DLOG_CAP}")
    table = [0] * p
    x = 1
    for i in range(p - 1):
        table[x] = i
        x = x * g % p
    return table


def char_sum(A: Iterable[int], B: Iterable[int],
             config: FieldConfig) -> CharacterSumResult:
    """Sum the order-k character over all pairwise sums a + b.

    Values are carried as exponents mod k; only the final magnitude touches
    floating point, so full cancellation is detected exactly (all classes
    equally filled => magnitude is 0.0, not an epsilon).
    """
    p, k = config.p, config.k
    sa, sb = set(A), set(B)
    for side in (sa, sb):
        for x in side:
            if not 0 <= x <= p - 1:
                raise InputError(f"element {x} outside [0, {p - 1}]")
    if not sa or not sb:
        raise InputError("both sets must be nonempty")
    table = dlog_table(config)
    counts = [0] * k
    zero_hits = 0
    for a in sa:
        for b in sb:
            s = (a + b) % p
            if s == 0:
                zero_hits += 1
            else:
                counts[table[s] % k] += 1
    floor = min(counts)
    if max(counts) == floor:
        magnitude = 0.0
    else:
        total = sum((c - floor) * cmath.exp(2j * cmath.pi * j / k)
                    for j, c in enumerate(counts))
        magnitude = abs(total)
    pairs = len(sa) * len(sb)
    exponent = math.log(magnitude / pairs) / math.log(p) if magnitude > 0 else None
    return CharacterSumResult(p, k, len(sa), len(sb), tuple(counts),
                              zero_hits, magnitude, exponent)
