from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from isingmaps.exact_poly import NB, NW, ONE, S, ZERO, Poly, TSeries

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
monomials = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(0, 2))
polys = st.dictionaries(monomials, coeffs, max_size=6).map(Poly)
points = st.tuples(coeffs, coeffs, coeffs)


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == ZERO
    assert p * ONE == p


@given(polys, polys, points)
def test_evaluation_is_a_homomorphism(p, q, x):
    assert (p * q).evaluate(*x) == p.evaluate(*x) * q.evaluate(*x)
    assert (p + q).evaluate(*x) == p.evaluate(*x) + q.evaluate(*x)


@given(polys, polys, st.integers(0, 2))
def test_leibniz(p, q, var):
    assert (p * q).diff(var) == p.diff(var) * q + p * q.diff(var)
    assert (p * q).euler(var) == p.euler(var) * q + p * q.euler(var)


@given(polys)
def test_swap_is_an_involution(p):
    assert p.swap_colors().swap_colors() == p
    assert (p * NB).swap_colors() == p.swap_colors() * NW


def test_zero_coefficients_are_dropped():
    p = Poly({(1, 0, 0): 2, (0, 1, 0): 0})
    assert len(p) == 1
    assert p - Poly.monomial(1, 0, 0, 2) == ZERO
    assert not ZERO


def test_s_slices():
    p = (1 + S) * (NB + 2 * S)
    assert p.s_degree() == 2
    assert p.s_coefficient(1) == NB + 2
    assert p.s_slice(0) == NB


def test_display_and_exact_division():
    assert (NB**2 * Fraction(1, 3)).to_string() == "1/3*nb^2"
    assert (NB * 4) / 2 == NB * 2
    with pytest.raises(ZeroDivisionError):
        NB / 0


@given(st.dictionaries(st.integers(0, 6), polys, max_size=4),
       st.dictionaries(st.integers(0, 6), polys, max_size=4))
def test_series_product_truncates_and_commutes(a, b):
    A, B = TSeries(6, a), TSeries(6, b)
    assert A * B == B * A
    assert all(n <= 6 for n in (A * B).grades())
    assert (A + B) - B == A


def test_series_truncation_mismatch_rejected():
    with pytest.raises(ValueError):
        TSeries(3) + TSeries(4)
