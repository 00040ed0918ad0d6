from itertools import combinations_with_replacement
from math import prod

import pytest
from hypothesis import given, settings, strategies as st

from pgon_lattices.diophantine import (easy_solutions, exists_m_condition, is_solution,
                                       no_solution_prime_power, obstruction_3qn, order2_mod,
                                       prime_power, solve_explained, solve_unimod, three_q_power)


def brute(v, k):
    return [c for c in combinations_with_replacement(range(1, v), k) if prod(c) == prod(v - a for a in c)]


@pytest.mark.parametrize("v", range(2, 12))
@pytest.mark.parametrize("k", [1, 2, 3])
def test_solver_matches_brute_force(v, k):
    assert solve_unimod(v, k).solutions == brute(v, k)


@pytest.mark.parametrize("v,k", [(15, 4), (9, 4), (20, 3), (21, 3)])
def test_solver_matches_brute_force_larger(v, k):
    assert solve_unimod(v, k).solutions == brute(v, k)


def test_v15_k3():
    res = solve_unimod(15, 3)
    assert res.solutions == [(3, 10, 10), (5, 5, 12)]
    assert 5 * 5 * 12 == 300 == 3 * 10 * 10
    assert res.ordered_count == len(res.expanded()) == 6


def test_first_mode_and_budget():
    assert solve_unimod(15, 3, "first").count == 1
    res = solve_unimod(33, 5, budget=10)
    assert res.truncated


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 200), st.integers(1, 9))
def test_easy_solutions_are_solutions(v, k):
    sol = easy_solutions(v, k)
    if k % 2 == 0 or v % 2 == 0:
        assert sol is not None
    if sol is not None:
        assert len(sol) == k and is_solution(v, sol)


def test_easy_examples():
    assert easy_solutions(7, 4) == (1, 6, 2, 5)
    assert easy_solutions(15, 5) == (12, 5, 5, 1, 14)
    assert easy_solutions(30, 3) == (15, 15, 15)
    assert easy_solutions(9, 3) is None


def test_number_theory():
    assert prime_power(27) == (3, 3) and prime_power(12) is None
    assert three_q_power(33) == (11, 1) and three_q_power(15) == (5, 1) and three_q_power(9) == (3, 1)
    assert order2_mod(11) == 10 and order2_mod(7) == 3
    assert exists_m_condition(7) == 3
    assert exists_m_condition(11) is None
    assert no_solution_prime_power(25, 3) and not no_solution_prime_power(25, 4)
    assert obstruction_3qn(33, 3) and not obstruction_3qn(15, 3)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43]))
def test_exists_m_definition(q):
    m = exists_m_condition(q)
    hits = [m for m in range(2 * order2_mod(q)) if pow(2, m, q) == (-1) ** (m + 1) % q]
    assert m == (hits[0] if hits else None)


@pytest.mark.parametrize("v", range(3, 34))
@pytest.mark.parametrize("k", [3, 5])
def test_predictions_hold(v, k):
    ex = solve_explained(v, k)
    if ex.predicted_none:
        assert ex.result.count == 0
    if v % 2 == 0:
        assert ex.result.count > 0


def test_listed_examples():
    assert (3, 3, 3) in solve_unimod(6, 3).solutions
    assert solve_unimod(5, 3).count == 0
    assert no_solution_prime_power(27, 5) and not no_solution_prime_power(27, 4)
    assert not no_solution_prime_power(15, 3)
    assert not obstruction_3qn(21, 3) and not obstruction_3qn(33, 4)
    with pytest.raises(ValueError):
        order2_mod(9)


@pytest.mark.parametrize("v", [v for v in range(3, 34, 2)])
def test_predicates_exact_where_they_apply(v):
    for k in (3, 5):
        covered = no_solution_prime_power(v, k) or obstruction_3qn(v, k)
        if covered:
            assert solve_unimod(v, k).count == 0


@pytest.mark.parametrize("v,k", [(15, 3), (6, 3), (21, 5), (4, 3)])
def test_multiples_keep_solutions(v, k):
    sol = solve_unimod(v, k, "first").solutions[0]
    for c in (2, 3, 5):
        assert is_solution(c * v, tuple(c * a for a in sol))
        assert solve_unimod(c * v, k, "first").count == 1
