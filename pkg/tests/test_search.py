"""Search engine: candidate enumeration, maximal tuples, bipartite pairs."""

import math
import random

import pytest

from diotuple.core import TupleConfig
from diotuple.errors import InputError, InvariantViolation
from diotuple.exact import is_perfect_kth_power
from diotuple.search import (
    SearchBudget,
    brute_force_tuples,
    candidates_for,
    kth_power_residues,
    search_bipartite,
    search_tuples,
)
from diotuple.search import _candidates_single, _gap_floor_check


# ---------------------------------------------------------------- reference

def _kth_root_floor(m, k):
    if m <= 0:
        return 0
    r = int(round(m ** (1.0 / k)))
    while r**k > m:
        r -= 1
    while (r + 1) ** k <= m:
        r += 1
    return r


def _is_kth_power(m, k):
    if m < 1:
        return None
    r = _kth_root_floor(m, k)
    return r if r**k == m else None


def _cands_naive(a, k, n, N):
    return [b for b in range(1, N + 1) if _is_kth_power(a * b + n, k)]


def _cands_fast(a, k, n, N):
    out = []
    limit = a * N + n
    if limit < 1:
        return out
    for x in range(1, _kth_root_floor(limit, k) + 1):
        v = x**k - n
        if v >= a and v % a == 0:
            out.append(v // a)
    return out


def bipartite_oracle(k, n, N, minA, minB, capA=6):
    """A-side-maximal pairs by breadth-first set growth; independent of
    the engine under test."""

    def B_of(A):
        sets = [set(_cands_fast(a, k, n, N)) for a in A]
        out = set.intersection(*sets) if sets else set()
        return frozenset(b for b in out if b <= N)

    seen = set()
    frontier = []
    for a in range(1, N + 1):
        A = frozenset([a])
        if len(B_of(A)) >= minB:
            frontier.append(A)
            seen.add(A)
    maximal = []
    while frontier:
        nxt = []
        for A in frontier:
            B = B_of(A)
            ext = [ap for ap in range(1, N + 1)
                   if ap not in A and len(B_of(A | {ap})) >= minB]
            if not ext:
                if len(A) >= minA and len(B) >= minB:
                    maximal.append((tuple(sorted(A)), tuple(sorted(B))))
            else:
                for ap in ext:
                    A2 = A | {ap}
                    if A2 not in seen and len(A2) <= capA:
                        seen.add(A2)
                        nxt.append(A2)
        frontier = nxt
    out = set()
    for A, B in maximal:
        if (min(B), list(B)) < (min(A), list(A)):
            A, B = B, A
        out.add((A, B))
    return sorted(out)


# ---------------------------------------------------------------- residues

def test_kth_power_residues_vs_brute():
    rng = random.Random(7)
    for _ in range(120):
        m = rng.randint(1, 200)
        k = rng.randint(2, 6)
        t = rng.randint(-m, m)
        want = sorted(x for x in range(m) if pow(x, k, m) == t % m)
        assert sorted(kth_power_residues(m, k, t)) == want


def test_kth_power_residues_composite_anchor():
    # x^3 = 1 mod 9 forces x = 1, 4, 7
    assert sorted(kth_power_residues(9, 3, 1)) == [1, 4, 7]
    assert sorted(kth_power_residues(625, 2, 4)) == sorted(
        x for x in range(625) if pow(x, 2, 625) == 4)


# --------------------------------------------------------------- candidates

def test_candidates_frozen():
    assert candidates_for([1], TupleConfig(k=3, n=1), 100) == [7, 26, 63]
    assert candidates_for([1, 2], TupleConfig(k=3, n=1), 400) == []
    assert candidates_for([1], TupleConfig(k=3, n=-1), 30) == [2, 9, 28]


def test_candidates_errors():
    cfg = TupleConfig(k=3, n=1)
    with pytest.raises(InputError):
        candidates_for([], cfg, 10)
    with pytest.raises(InputError):
        candidates_for([0], cfg, 10)
    with pytest.raises(InputError):
        candidates_for([1], cfg, 0)


def test_candidates_single_all_paths_vs_naive():
    # a == 1, a within the power range, and a beyond it are separate code
    # paths; all must agree with the definitional loop
    for a, k, n, N in [
        (1, 3, 1, 300),
        (8, 3, 1, 10_000),  # residue stepping (a <= xmax)
        (72, 3, -5, 10_000),
        (977, 4, 3, 500),  # direct x scan (a > xmax)
        (1_562_500, 3, 1, 200),  # far beyond the table cap
    ]:
        got = list(_candidates_single(a, k, n, N))
        assert got == _cands_naive(a, k, n, N)


def test_candidates_random_vs_naive():
    rng = random.Random(2024)
    for _ in range(60):
        a = rng.randint(1, 500)
        k = rng.randint(2, 5)
        n = rng.choice([1, -1, 2, -2, 5, -7, 24])
        N = rng.randint(1, 400)
        assert list(_candidates_single(a, k, n, N)) == _cands_naive(a, k, n, N)


def test_candidates_anti_monotone():
    # adding a multiplier can only shrink the candidate set
    rng = random.Random(5)
    cfg = TupleConfig(k=3, n=-1)
    for _ in range(30):
        base = rng.sample(range(1, 40), rng.randint(1, 3))
        extra = rng.randint(1, 40)
        big = set(candidates_for(base, cfg, 500))
        small = set(candidates_for(base + [extra], cfg, 500))
        assert small <= big


# ------------------------------------------------------------ tuple search

def _elems(outcome):
    return [t.elements for t in outcome.results]


def test_search_tuples_frozen():
    cases = {
        (3, -1, 10): [(1, 2), (1, 9), (4, 7)],
        (3, 1, 30): [(1, 7), (1, 26), (2, 13), (3, 21), (7, 9), (18, 19),
                     (26, 28)],
        (3, 1, 5): [],
        (9, 1, 100): [(7, 73)],
        (3, -1, 30): [(1, 2), (1, 9), (1, 28), (2, 14), (4, 7), (5, 13),
                      (6, 21), (7, 18), (9, 14), (19, 27)],
        (4, -3, 100): [(1, 4), (1, 19), (1, 84), (2, 42), (3, 28), (4, 21),
                       (6, 14), (7, 12), (7, 37)],
    }
    for (k, n, N), want in cases.items():
        out = search_tuples(TupleConfig(k=k, n=n), SearchBudget(height=N))
        assert _elems(out) == want
        assert not out.truncated


def test_search_matches_brute_force():
    for k in (3, 4):
        for n in (1, -1, 2, -3):
            cfg = TupleConfig(k=k, n=n)
            got = _elems(search_tuples(cfg, SearchBudget(height=60)))
            want = _elems(brute_force_tuples(cfg, 60, 2))
            assert got == want, (k, n)


def test_search_results_are_maximal():
    cfg = TupleConfig(k=3, n=-1)
    N = 50
    out = search_tuples(cfg, SearchBudget(height=N))
    for t in out.results:
        others = candidates_for(t.elements, cfg, N)
        assert not (set(others) - set(t.elements)), t.elements


def test_brute_force_isolated_singletons():
    # with no edges at all, min_size=1 reports every vertex alone
    out = brute_force_tuples(TupleConfig(k=3, n=1), 5, 1)
    assert _elems(out) == [(1,), (2,), (3,), (4,), (5,)]
    # and min_size=2 reports nothing
    assert _elems(brute_force_tuples(TupleConfig(k=3, n=1), 5, 2)) == []


def test_brute_force_caps():
    cfg = TupleConfig(k=3, n=1)
    with pytest.raises(InputError):
        brute_force_tuples(cfg, 10**4 + 1, 2)
    with pytest.raises(InputError):
        brute_force_tuples(cfg, 0, 2)


def test_search_parallel_determinism():
    cfg = TupleConfig(k=3, n=-1)
    seq = search_tuples(cfg, SearchBudget(height=40, parallelism=1))
    par = search_tuples(cfg, SearchBudget(height=40, parallelism=4))
    assert _elems(seq) == _elems(par)
    assert seq.truncated == par.truncated


def test_search_truncation():
    cfg = TupleConfig(k=3, n=1)
    full = search_tuples(cfg, SearchBudget(height=30))
    cut = search_tuples(cfg, SearchBudget(height=30, max_results=2))
    assert cut.truncated and not full.truncated
    assert _elems(cut) == _elems(full)[:2]


def test_search_budget_validation():
    with pytest.raises(InputError):
        SearchBudget(height=0)
    with pytest.raises(InputError):
        SearchBudget(height=10, min_size=0)
    with pytest.raises(InputError):
        SearchBudget(height=10, max_results=0)
    with pytest.raises(InputError):
        SearchBudget(height=10, parallelism=0)


def test_gap_floor_check_trips_on_fabricated_candidate():
    # (x,y,z,w) = (1,2,9,10): y*w = 20 sits under the exact floor 2187/16,
    # so a search offering that extension must abort loudly
    cfg = TupleConfig(k=3, n=-1)
    with pytest.raises(InvariantViolation):
        _gap_floor_check([1, 2, 9], [10], cfg)
    # too-short chains and small x*z are out of the check's hypotheses
    _gap_floor_check([1, 2], [10], cfg)
    _gap_floor_check([1, 2, 9], [10], TupleConfig(k=3, n=-300))


# -------------------------------------------------------- bipartite search

def _pairs(outcome):
    return [(p.A, p.B) for p in outcome.results]


def test_search_bipartite_frozen():
    out = search_bipartite(
        TupleConfig(k=3, n=-1),
        SearchBudget(height=30, min_size=1, min_partner=3))
    assert _pairs(out) == [((1,), (2, 9, 28))]

    out = search_bipartite(
        TupleConfig(k=3, n=-1),
        SearchBudget(height=30, min_size=2, min_partner=2))
    assert _pairs(out) == [((1, 14), (2, 9))]

    out = search_bipartite(
        TupleConfig(k=3, n=1),
        SearchBudget(height=50, min_size=1, min_partner=2))
    assert _pairs(out) == [
        ((1,), (7, 26)), ((1, 9), (7,)), ((1, 28), (26,)),
        ((7, 38), (9,)), ((9, 35), (38,)),
    ]


def test_search_bipartite_matches_oracle():
    for k, n, N, minA, minB in [
        (3, 1, 30, 1, 2),
        (3, -1, 30, 1, 2),
        (3, -1, 25, 2, 2),
        (3, 2, 30, 1, 2),
        (4, -3, 40, 1, 2),
    ]:
        got = _pairs(search_bipartite(
            TupleConfig(k=k, n=n),
            SearchBudget(height=N, min_size=minA, min_partner=minB)))
        assert got == bipartite_oracle(k, n, N, minA, minB), (k, n, N)


def test_search_bipartite_pairs_verify():
    out = search_bipartite(
        TupleConfig(k=3, n=-1),
        SearchBudget(height=40, min_size=1, min_partner=2))
    for p in out.results:
        assert min(p.A) <= min(p.B)
        for a in p.A:
            for b in p.B:
                assert is_perfect_kth_power(a * b - 1, 3)


def test_search_bipartite_parallel_determinism():
    cfg = TupleConfig(k=3, n=1)
    budget = dict(height=50, min_size=1, min_partner=2)
    seq = search_bipartite(cfg, SearchBudget(parallelism=1, **budget))
    par = search_bipartite(cfg, SearchBudget(parallelism=4, **budget))
    assert _pairs(seq) == _pairs(par)
