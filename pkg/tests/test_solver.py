import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isingmaps import kernels
from isingmaps.diffops import omega_n
from isingmaps.exact_poly import NB, NW, S, Poly
from isingmaps.solver import (SolveState, compute_up_to, genus_cap, partition_polynomial,
                              pde_residual, rhs_coefficient, rooted_polynomial, solve_degree)


def test_three_edges(checked24):
    assert partition_polynomial(1, 0, checked24) == 120 * (2 + 4 * NW**3 + 4 * NB**3 + 6 * NB * NW)
    assert partition_polynomial(1, 1, checked24) == 120 * (2 + NW**3 + NB**3)
    assert rooted_polynomial(1, 0, checked24) == 2 + 4 * NW**3 + 4 * NB**3 + 6 * NB * NW
    assert checked24.J[3] == Fraction(1, 6) * (2 + 4 * NW**3 + 4 * NB**3 + 6 * NB * NW) \
        + Fraction(1, 6) * S * (2 + NW**3 + NB**3)


def test_grades_off_multiples_of_three_vanish(checked24):
    assert all(not p for n, p in checked24.J.items() if n % 3)


def test_fast_and_checked_agree(checked24, state36):
    assert {n: v for n, v in state36.rooted.items() if n <= 24} == checked24.rooted


def test_structure(state36):
    for e, V in state36.rooted.items():
        for (a, b, g), c in V.items():
            assert c > 0
            assert V[(b, a, g)] == c
            assert a + b <= e and (a - b) % 3 == 0
            assert g <= genus_cap(e)


def test_top_genus_reached(state36):
    assert max(g for (_, _, g) in state36.rooted[36]) == 6


def test_uncolored_limit_counts_cubic_maps(state36):
    # at nb = nw = 1 every coloring weighs 1: I_{n,g}(1,1) = 2^(2n) times the labeled cubic maps
    from isingmaps.oracle import map_counts
    for g, count in map_counts(2).items():
        assert partition_polynomial(2, g, state36).evaluate(1, 1, 0) == 2**4 * count


def test_pde_residual_zero(state36):
    residual = pde_residual(state36)
    assert residual.trunc == 38
    assert residual.is_zero()


def test_solve_degree_inverts_omega():
    target = omega_n(6, NW**6 + NB**6 + 2 * NB**3 * NW**3)
    assert solve_degree(6, target) == NW**6 + NB**6 + 2 * NB**3 * NW**3


def test_rhs_uses_earlier_grades_only(checked24):
    fresh = compute_up_to(9)
    for n in (3, 6, 9, 12):
        assert rhs_coefficient(n, fresh) == rhs_coefficient(n, checked24)
    with pytest.raises(Exception):
        rhs_coefficient(15, fresh)


def test_backends_agree():
    if "compiled" not in kernels.available():
        pytest.skip("extension not built")
    a = compute_up_to(30, "fast", "python")
    b = compute_up_to(30, "fast", "compiled")
    assert a.rooted == b.rooted


def test_thread_budget_does_not_change_output(monkeypatch, state36):
    monkeypatch.setenv("ISING_THREADS", "3")
    assert compute_up_to(36, "fast").rooted == state36.rooted


def test_resume_matches_single_run(state36):
    part = compute_up_to(18, "fast")
    resumed = SolveState.from_rooted(18, part.rooted, "fast").extend(36)
    assert resumed.rooted == state36.rooted


def test_bad_arguments(checked24):
    with pytest.raises(ValueError):
        SolveState("sloppy")
    with pytest.raises(ValueError):
        compute_up_to(-1)
    with pytest.raises(IndexError):
        rooted_polynomial(9, 0, checked24)
    with pytest.raises(ValueError):
        rooted_polynomial(0, 0, checked24)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 12), st.integers(0, 4),
       st.sampled_from([(Fraction(1, 2), Fraction(3)), (Fraction(2), Fraction(1, 3)), (1, 1)]))
def test_color_swap_symmetry(state36, n, g, point):
    p = rooted_polynomial(n, g, state36)
    assert p.evaluate(point[0], point[1], 0) == p.evaluate(point[1], point[0], 0)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 12), st.integers(0, 6))
def test_labeled_counts_are_divisible_integers(state36, n, g):
    p = partition_polynomial(n, g, state36)
    assert all(c.denominator == 1 for c in p.terms.values())
    # (6n-1)! rootings: every coefficient is a multiple of it
    assert all(c % math.factorial(6 * n - 1) == 0 for c in p.terms.values())
