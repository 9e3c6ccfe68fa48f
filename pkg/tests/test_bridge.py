from fractions import Fraction

import pytest

from isingmaps import bridge as br
from isingmaps.exact_poly import Poly


@pytest.fixture(scope="module")
def b16(state36):
    return br.b_series(state36, 16)


def test_low_coefficients(b16):
    assert b16[1] == Poly()
    assert b16[2] == br.PQ * br.U_**2 * Fraction(1, 2)
    assert b16[3] == (br.U_**3 + br.U_) * Fraction(1, 3)


def test_bipartite_equation(b16):
    assert br.kp_bip_residual(b16).is_zero()


def test_residual_detects_perturbations(b16):
    bad = b16 + br.ZSeries(16, {7: Poly.monomial(1, 1, 1)})
    assert min(br.kp_bip_residual(bad).grades()) == 8
    doubled = br.ZSeries(16, {m: 2 * p if m == 6 else p for m, p in b16.coeffs.items()})
    assert not br.kp_bip_residual(doubled).is_zero()


def test_support_and_symmetry(b16):
    assert br.support_report(b16).ok


def test_inverse_substitution_recovers_low_grades(b16, state36):
    report = br.phi_spot_check(b16, state36, 6)
    assert report.ok, report
    assert report.checked > 0


def test_geometric_expansion():
    g = br.geometric(6, 2) * br.ZSeries(6, {0: Poly.const(1), 2: -br.PQ})
    assert g == br.geometric(6, 1)


def test_needs_enough_coefficients(state36):
    with pytest.raises(ValueError):
        br.psi_substitute(state36, 40)
