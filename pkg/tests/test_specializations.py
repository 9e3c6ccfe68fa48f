import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from isingmaps import specializations as sp
from isingmaps.exact_poly import NB, NW


def test_monochromatic_recursion_values():
    M = sp.gj_numbers(3)
    assert (M[(1, 0)], M[(1, 1)], M[(2, 0)], M[(2, 1)]) == (4, 1, 32, 28)


def test_monochromatic_against_solver(state36):
    report = sp.monochromatic_check(state36, 12)
    assert report.ok, report
    assert sp.r_series_check(12).ok


def test_r_series_detects_a_wrong_value():
    M = dict(sp.gj_numbers(6))
    M[(4, 1)] += 1
    assert not sp.r_series_check(6, M).ok


def test_planar(state36):
    assert sp.planar_white_number(1) == 4
    assert sp.planar_white_number(2) == 32
    report = sp.planar_check(state36, 12)
    assert report.ok, report


def test_planar_residual_rejects_perturbation(state36):
    from isingmaps.exact_poly import TSeries
    P = TSeries(state36.N, {n: p.s_slice(0) for n, p in state36.J.items()})
    bad = P + TSeries(P.trunc, {9: NB * NW})
    assert not sp.planar_residual(bad).is_zero()


def test_unicellular_table_equations_and_solver(state36):
    table = sp.unicellular(8)
    assert table[1] == sp.U1
    assert sp.unicellular_residuals(table).ok
    assert sp.unicellular_vs_solver(table, state36).ok


def test_unicellular_monochromatic_count():
    table = sp.unicellular(8)
    for g in range(2, 9):
        n = 2 * g - 1
        want = Fraction(math.factorial(6 * g - 4), 12**g * math.factorial(g) * math.factorial(3 * g - 2))
        assert table[g].coeff(3 * n, 0) == want


def test_closed_forms_with_few_monochromatic_one_genus_down():
    report = sp.unicellular_closed_forms(sp.unicellular(8), few_shift=1)
    assert report.ok, report


def test_few_monochromatic_forms_as_stated_disagree():
    # recorded discrepancy: read at n = 2g - 1 these four forms are off by one genus
    table = sp.unicellular(8)
    for label in sp.FEW_MONOCHROMATIC:
        report = sp.unicellular_closed_forms(table, labels=(label,))
        assert not report.ok


def test_unicellular_rejects_bad_genus():
    with pytest.raises(ValueError):
        sp.unicellular(0)


def test_inequality_grid(state36):
    report = sp.inequality_grid(state36, 5, 12)
    assert report.ok, report
    assert report.checked == 9 * sum(sp.genus_cap(3 * n) + 1 for n in range(5, 13))


def test_inequality_domain(state36):
    with pytest.raises(ValueError):
        sp.inequality_check(state36, 4, 0, 1, 1)
    with pytest.raises(ValueError):
        sp.inequality_check(state36, 6, 0, 0, 1)


@settings(max_examples=30, deadline=None)
@given(st.integers(5, 12), st.integers(0, 6),
       st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10),
       st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=10))
def test_inequality_off_grid(state36, n, g, nb, nw):
    if g <= sp.genus_cap(3 * n):
        assert sp.inequality_check(state36, n, g, nb, nw)


def test_report_formatting():
    r = sp.Report("x")
    r.record(True, "a")
    r.record(False, "b")
    assert str(r) == "FAIL x: 2 checks; first failure: b"
    assert r.to_dict()["failures"] == ["b"]
