from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isingmaps import parametrization as pm
from isingmaps.solver import rooted_polynomial

small = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@settings(max_examples=30)
@given(st.lists(small, min_size=12, max_size=12), small.filter(bool))
def test_inverse(coeffs, c0):
    N, K = 2, 3
    s = pm.BiSeries.const(N, K, c0)
    for idx, c in enumerate(coeffs[1:]):
        i, k = divmod(idx + 1, K + 1)
        s = s + pm.BiSeries.monomial(N, K, i, k, c)
    assert s * s.inverse() == pm.BiSeries.const(N, K, 1)


def test_inverse_needs_a_constant_term():
    with pytest.raises(pm.ParamError):
        pm.BiSeries.monomial(2, 2, 1, 0).inverse()


@pytest.mark.parametrize("point", [(1, 1), (Fraction(1, 2), Fraction(1, 3))])
def test_planar_coefficients_match_solver(state36, point):
    coeffs = pm.planar_param_oracle(8, *point)
    assert coeffs[0] == 0
    for n in range(1, 9):
        assert coeffs[n] == rooted_polynomial(n, 0, state36).evaluate(point[0], point[1], 0)


def test_first_coefficient_at_one():
    assert pm.planar_param_oracle(3, 1, 1)[:2] == [0, 16]


def test_printed_coefficient_is_rejected():
    with pytest.raises(pm.ParamError):
        pm.planar_param_series(4, 1, 1, aw3=pm.PRINTED_AW3)


def test_second_base_point_is_singular():
    eqs = pm._system()
    values = [pm.BiSeries.const(2, 6, 0)] * 2 + [pm.BiSeries.monomial(2, 6, 1, 0)]
    with pytest.raises(pm.ParamError):
        pm._lift(eqs, values, pm.BASE_CANDIDATES[1], 2, 6)
