"""Fundamental-solution enumeration against independent brute force."""

import random

import pytest

from normsurf.errors import ResourceLimitExceeded
from normsurf.hilbert import (brute_force_solutions, enumerate_fundamental,
                              filter_admissible)
from normsurf.matching import MatchingSystem, is_admissible

from oracles import (bounded_solutions, decomposes_over, minimal_nonzero,
                     random_quad_system)

from tables import reference_solutions


def plain_system(n, equations, forced=frozenset()):
    return MatchingSystem(
        variable_count=n, equations=tuple(equations),
        forced_zeros=frozenset(forced), quad_triples=(),
        equation_labels=tuple(f"e{i}" for i in range(len(equations))))


def test_empty_system_basis_is_unit_vectors():
    fs = enumerate_fundamental(plain_system(4, []))
    assert fs.vectors == ((0, 0, 0, 1), (0, 0, 1, 0),
                          (0, 1, 0, 0), (1, 0, 0, 0))


def test_single_equation_basis():
    # x0 + x1 = x2 + x3 has the four obvious pairings and nothing else
    fs = enumerate_fundamental(plain_system(4, [(0, 1, 2, 3)]))
    assert fs.vectors == ((0, 1, 0, 1), (0, 1, 1, 0),
                          (1, 0, 0, 1), (1, 0, 1, 0))


def test_forced_zeros_collapse_one_side():
    # with x2 = x3 = 0 the equation reads x0 + x1 = 0: no nonzero solution
    fs = enumerate_fundamental(plain_system(4, [(0, 1, 2, 3)],
                                            forced={2, 3}))
    assert fs.vectors == ()


def test_two_term_equality_merges_variables():
    # with x1 = x3 = 0 the equation reads x0 = x2
    fs = enumerate_fundamental(plain_system(4, [(0, 1, 2, 3)],
                                            forced={1, 3}))
    assert fs.vectors == ((1, 0, 1, 0),)


def test_vectors_are_lex_sorted_and_fingerprint_stable():
    sys = plain_system(4, [(0, 1, 2, 3)])
    a = enumerate_fundamental(sys)
    b = enumerate_fundamental(sys)
    assert a.vectors == tuple(sorted(a.vectors))
    assert a.system_fingerprint == b.system_fingerprint
    other = plain_system(4, [(0, 2, 1, 3)])
    assert (enumerate_fundamental(other).system_fingerprint
            != a.system_fingerprint)


def test_candidate_cap_raises():
    sys = plain_system(
        12, [(i, (i + 1) % 12, (i + 2) % 12, (i + 3) % 12)
             for i in range(6)])
    with pytest.raises(ResourceLimitExceeded) as info:
        enumerate_fundamental(sys, max_candidates=3)
    assert info.value.candidates > 3
    assert info.value.elapsed >= 0.0


def test_time_budget_raises():
    sys = plain_system(
        12, [(i, (i + 1) % 12, (i + 2) % 12, (i + 3) % 12)
             for i in range(6)])
    with pytest.raises(ResourceLimitExceeded):
        enumerate_fundamental(sys, time_budget=0.0)


def test_random_systems_match_brute_force():
    """Quick version of the deep oracle run in the acceptance suite."""
    rng = random.Random(1)
    for _ in range(30):
        sys = random_quad_system(rng, max_vars=6)
        sols = bounded_solutions(sys, 4)
        if len(sols) > 1200:
            continue
        basis = enumerate_fundamental(sys).vectors
        assert {b for b in basis if max(b) <= 4} == minimal_nonzero(sols)


def test_package_brute_force_agrees_with_oracle():
    rng = random.Random(7)
    for _ in range(20):
        sys = random_quad_system(rng, max_vars=5)
        oracle_set = bounded_solutions(sys, 3)
        if len(oracle_set) > 800:
            continue
        assert brute_force_solutions(sys, 3) == oracle_set


def test_every_bounded_solution_decomposes():
    rng = random.Random(3)
    checked = 0
    while checked < 10:
        sys = random_quad_system(rng, max_vars=5)
        sols = bounded_solutions(sys, 3)
        if not 1 < len(sols) <= 400:
            continue
        basis = enumerate_fundamental(sys).vectors
        for s in sols:
            assert decomposes_over(s, basis), (sys, s)
        checked += 1


def test_admissible_only_equals_filtered_full_basis():
    rng = random.Random(11)
    for _ in range(15):
        n_blocks = rng.randint(1, 2)
        n = 7 * n_blocks
        eqs = []
        for _ in range(rng.randint(2, 6)):
            eqs.append(tuple(rng.randrange(n) for _ in range(4)))
        sys = MatchingSystem(
            variable_count=n, equations=tuple(eqs),
            forced_zeros=frozenset(),
            quad_triples=tuple((7 * t + 4, 7 * t + 5, 7 * t + 6)
                               for t in range(n_blocks)),
            equation_labels=tuple(f"e{i}" for i in range(len(eqs))))
        full = enumerate_fundamental(sys)
        only = enumerate_fundamental(sys, admissible_only=True)
        assert only.vectors == filter_admissible(full).vectors
        assert all(is_admissible(v) for v in only.vectors)


def test_restricted_fixture_has_exactly_the_three_reference_solutions(
        tri12, fund_restricted):
    assert set(fund_restricted.vectors) == set(reference_solutions(tri12))
    assert len(fund_restricted.vectors) == 3
