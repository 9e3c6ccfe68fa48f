import pytest
from hypothesis import given, settings, strategies as st

from isingmaps.exact_poly import NB, NW, Poly
from isingmaps.oracle import (PermPair, canonical_sigma, cycles, genus, involutions, is_transitive,
                              ising_polynomials, ising_polynomials_exhaustive, map_counts,
                              sigma_count)
from isingmaps.solver import partition_polynomial


def test_one_vertex_pair():
    brute = ising_polynomials(1)
    assert brute[0] == 120 * (2 + 4 * NW**3 + 4 * NB**3 + 6 * NB * NW)
    assert brute[1] == 120 * (2 + NW**3 + NB**3)


def test_conjugacy_reduction_is_exact():
    assert ising_polynomials_exhaustive(1) == ising_polynomials(1)


def test_two_vertex_pairs_against_solver(checked24):
    brute = ising_polynomials(2)
    for g in range(3):
        assert partition_polynomial(2, g, checked24) == brute.get(g, Poly())


def test_counts():
    assert sum(1 for _ in involutions(6)) == 15
    assert sigma_count(1) == 40
    assert map_counts(1) == {0: 480, 1: 120}


@settings(max_examples=30)
@given(st.permutations(range(12)))
def test_genus_is_conjugation_invariant(perm):
    sigma = canonical_sigma(2)
    alpha = next(a for a in involutions(12) if is_transitive(sigma, a))
    inv = [0] * 12
    for i, p in enumerate(perm):
        inv[p] = i
    conj = lambda f: tuple(perm[f[inv[x]]] for x in range(12))
    assert genus(PermPair(sigma, tuple(alpha))) == genus(PermPair(conj(sigma), conj(alpha)))


def test_invalid_pairs_rejected():
    with pytest.raises(ValueError):
        PermPair(tuple(range(6)), (1, 0, 3, 2, 5, 4))
    with pytest.raises(ValueError):
        ising_polynomials(4)


def test_cycles_cover_points():
    assert sorted(x for c in cycles(canonical_sigma(2)) for x in c) == list(range(12))
