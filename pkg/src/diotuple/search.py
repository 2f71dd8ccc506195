"""Height-bounded search for shifted-product tuples and bipartite pairs.

The kernel: for a fixed multiplier a, every cofactor b with a*b + n = x^k
comes from an x with x^k ≡ n (mod a), so candidates are enumerated on the
power side and mapped back, never by scanning b.  Tuple search is
depth-first extension over intersected candidate sets; an exact
gap-principle floor cross-checks every deep extension.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import (BipartitePair, DiophantineTuple, TupleConfig,
                   gap_lower_bound)
from .errors import InputError, InvariantViolation
from .exact import integer_kth_root, trial_factor

logger = logging.getLogger(__name__)

# residue classes are found by direct scan up to here, by CRT above
SCAN_LIMIT = 10 ** 6
# the quadratic reference search refuses heights beyond this
ORACLE_CAP = 10 ** 4


@dataclass(frozen=True)
class SearchBudget:
    """Caps for a search run.

    height: largest element considered (N); min_size: smallest tuple (or
    A-side) emitted; min_partner: smallest B-side emitted (bipartite only);
    max_results: output cap, exceeding it sets the truncation flag;
    parallelism: worker hint, never affects output bytes.
    """

    height: int
    min_size: int = 2
    min_partner: int = 2
    max_results: int = 10 ** 5
    parallelism: int = 1

    def __post_init__(self):
        if self.height < 1:
            raise InputError(f"height must be >= 1, got {self.height}")
        if self.min_size < 1 or self.min_partner < 1:
            raise InputError("size floors must be >= 1")
        if self.max_results < 1:
            raise InputError("max_results must be >= 1")
        if self.parallelism < 1:
            raise InputError("parallelism hint must be >= 1")


@dataclass(frozen=True)
class SearchOutcome:
    results: tuple
    truncated: bool


def _crt_pair(r1: int, m1: int, r2: int, m2: int) -> int:
    # m1, m2 coprime
    inv = pow(m1, -1, m2)
    return (r1 + (r2 - r1) * inv % m2 * m1) % (m1 * m2)


@lru_cache(maxsize=1 << 15)
def kth_power_residues(modulus: int, k: int, target: int) -> tuple[int, ...]:
    """Sorted x mod modulus with x^k ≡ target (mod modulus)."""
    target %= modulus
    if modulus == 1:
        return (0,)
    if modulus <= SCAN_LIMIT:
        return tuple(x for x in range(modulus) if pow(x, k, modulus) == target)
    factors = [p ** e for p, e in trial_factor(modulus)]
    if len(factors) == 1 or max(factors) > SCAN_LIMIT:
        # prime-power too big to split; fall back to the full scan
        return tuple(x for x in range(modulus) if pow(x, k, modulus) == target)
    roots = [kth_power_residues(f, k, target % f) for f in factors]
    out = []
    for combo in itertools.product(*roots):
        r, m = combo[0], factors[0]
        for r2, m2 in zip(combo[1:], factors[1:]):
            r = _crt_pair(r, m, r2, m2)
            m *= m2
        out.append(r)
    return tuple(sorted(out))


@lru_cache(maxsize=1 << 15)
def _candidates_single(a: int, k: int, n: int, N: int) -> tuple[int, ...]:
    """All b in [1, N] with a*b + n a k-th power of a positive integer."""
    limit = a * N + n
    if limit < 1:
        return ()
    xmax = integer_kth_root(limit, k)
    if xmax < 1:
        return ()
    out = []
    if a == 1:
        xs = range(1, xmax + 1)
    elif a > xmax:
        # fewer powers than residue classes: test each x directly
        target = n % a
        xs = (x for x in range(1, xmax + 1) if pow(x, k, a) == target)
    else:
        xs = []
        for r in kth_power_residues(a, k, n):
            start = r if r >= 1 else a
            xs.extend(range(start, xmax + 1, a))
        xs.sort()
    for x in xs:
        v = x ** k - n
        if v >= a and v % a == 0:
            b = v // a
            if b <= N:
                out.append(b)
    return tuple(sorted(out))


def candidates_for(A, config: TupleConfig, N: int) -> list[int]:
    """Exactly {b <= N : a*b + n is a positive k-th power for every a in A}."""
    elems = sorted(set(A))
    if not elems:
        raise InputError("need at least one multiplier")
    if elems[0] < 1:
        raise InputError(f"multipliers must be positive, got {elems[0]}")
    if N < 1:
        raise InputError(f"height must be >= 1, got {N}")
    sets = sorted((set(_candidates_single(a, config.k, config.n, N))
                   for a in elems), key=len)
    out = sets[0]
    for s in sets[1:]:
        out &= s
        if not out:
            break
    return sorted(out)


def _gap_floor_check(chain: list[int], ext: list[int], config: TupleConfig):
    """Cross-check deep extensions against the exact gap floor.

    With x < y < z the three largest chosen elements and w > z a candidate
    compatible with all of them, the quadruple (x, y, z, w) satisfies the
    gap principle's hypotheses once x*z >= 2|n|, so y*w must reach the
    bound.  A candidate below the floor contradicts a theorem.
    """
    if len(chain) < 3:
        return
    x, y, z = chain[-3], chain[-2], chain[-1]
    if x * z < 2 * abs(config.n):
        return
    bound = gap_lower_bound(x, z, config)
    for w in ext:
        if Fraction(y * w) < bound:
            raise InvariantViolation(
                f"candidate {w} extends {chain} yet y*w = {y * w} sits below "
                f"the gap floor {bound} (k={config.k}, n={config.n})")


def search_tuples(config: TupleConfig, budget: SearchBudget) -> SearchOutcome:
    """All maximal tuples with elements <= height, smallest first.

    Maximal means no single element <= height extends the tuple.  Output
    order is lexicographic and independent of the parallelism hint.
    """
    N, k, n = budget.height, config.k, config.n

    def extend(chain: list[int], cand: set[int], sink: list):
        ext = sorted(c for c in cand if c > chain[-1])
        _gap_floor_check(chain, ext, config)
        if not (cand - set(chain)):
            if len(chain) >= budget.min_size:
                sink.append(tuple(chain))
            return
        for w in ext:
            extend(chain + [w],
                   cand & set(_candidates_single(w, k, n, N)), sink)

    def per_leading(c1: int) -> list:
        sink = []
        extend([c1], set(_candidates_single(c1, k, n, N)), sink)
        return sink

    if budget.parallelism > 1:
        with ThreadPoolExecutor(max_workers=budget.parallelism) as pool:
            chunks = list(pool.map(per_leading, range(1, N + 1)))
    else:
        chunks = [per_leading(c1) for c1 in range(1, N + 1)]
    found = sorted(t for chunk in chunks for t in chunk)
    truncated = len(found) > budget.max_results
    found = found[:budget.max_results]
    return SearchOutcome(
        tuple(DiophantineTuple(config, t) for t in found), truncated)


def brute_force_tuples(config: TupleConfig, N: int, min_size: int) -> SearchOutcome:
    """Reference search: quadratic pair table, then maximal-clique walk.

    Same contract as search_tuples but a different arithmetic route (a
    precomputed power table instead of residue enumeration), so the two
    must agree exactly.  Refuses N beyond ORACLE_CAP.
    """
    if N > ORACLE_CAP:
        raise InputError(f"reference search capped at N = {ORACLE_CAP}")
    if N < 1 or min_size < 1:
        raise InputError("need N >= 1 and min_size >= 1")
    k, n = config.k, config.n
    powers = set()
    x = 1
    while x ** k <= N * N + n:
        powers.add(x ** k)
        x += 1
    adj: dict[int, set[int]] = {i: set() for i in range(1, N + 1)}
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            if i * j + n in powers:
                adj[i].add(j)
                adj[j].add(i)
    found: list[tuple[int, ...]] = []

    def walk(clique: list[int], common: set[int], excluded: set[int]):
        if not common and not excluded:
            if len(clique) >= min_size:
                found.append(tuple(clique))
            return
        for v in sorted(common):
            walk(clique + [v], common & adj[v], excluded & adj[v])
            common = common - {v}
            excluded = excluded | {v}

    # isolated vertices are maximal singletons; keep the walk on the rest
    edged = {v for v in adj if adj[v]}
    if min_size <= 1:
        found.extend((v,) for v in range(1, N + 1) if v not in edged)
    walk([], edged, set())
    found.sort()
    return SearchOutcome(
        tuple(DiophantineTuple(config, t) for t in found), False)


def search_bipartite(config: TupleConfig, budget: SearchBudget) -> SearchOutcome:
    """All A-side-maximal bipartite pairs with elements <= height.

    The enumerated side grows one element at a time; its partner side is
    always the full candidate set.  A pair is emitted when no further
    element keeps the partner side at min_partner, then oriented
    canonically and deduplicated.
    """
    N, k, n = budget.height, config.k, config.n
    min_a, min_b = budget.min_size, budget.min_partner

    def partners(v: int) -> set[int]:
        return set(_candidates_single(v, k, n, N))

    def extend(side: list[int], partner: set[int], sink: list):
        viable = {}
        reachable = set().union(*(partners(b) for b in partner)) - set(side)
        for ap in sorted(reachable):
            shrunk = partner & partners(ap)
            if len(shrunk) >= min_b:
                viable[ap] = shrunk
        if not viable:
            if len(side) >= min_a and len(partner) >= min_b:
                sink.append((tuple(side), tuple(sorted(partner))))
            return
        for ap, shrunk in viable.items():
            if ap > side[-1]:
                extend(side + [ap], shrunk, sink)

    def per_leading(a1: int) -> list:
        first = partners(a1)
        if len(first) < min_b:
            return []
        sink = []
        extend([a1], first, sink)
        return sink

    if budget.parallelism > 1:
        with ThreadPoolExecutor(max_workers=budget.parallelism) as pool:
            chunks = list(pool.map(per_leading, range(1, N + 1)))
    else:
        chunks = [per_leading(a1) for a1 in range(1, N + 1)]
    oriented = set()
    for chunk in chunks:
        for A, B in chunk:
            if (min(B), B) < (min(A), A):
                A, B = B, A
            oriented.add((A, B))
    found = sorted(oriented)
    truncated = len(found) > budget.max_results
    found = found[:budget.max_results]
    return SearchOutcome(
        tuple(BipartitePair(config, A, B) for A, B in found), truncated)
