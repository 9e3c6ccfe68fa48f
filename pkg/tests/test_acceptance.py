"""
Acceptance criteria 1-10, each at its stated tolerance and time budget.

Every test tags itself with its criterion number; ``conftest.py`` prints one
PASS/FAIL line per criterion at the end of the run.
"""
import json
import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from isingmaps import bridge, oracle, parametrization, specializations as sp
from isingmaps.exact_poly import NB, NW, Poly
from isingmaps.solver import compute_up_to, partition_polynomial, pde_residual, rooted_polynomial


def tag(record_property, number, title):
    record_property("criterion", str(number))
    record_property("title", title)


@pytest.fixture(scope="module")
def state():
    return compute_up_to(36, mode="fast")


def test_1_exact_small_values(record_property):
    tag(record_property, 1, "I_{1,0}, I_{1,1} exact, < 1 s")
    start = time.perf_counter()
    st = compute_up_to(3, mode="checked")
    I10, I11 = partition_polynomial(1, 0, st), partition_polynomial(1, 1, st)
    elapsed = time.perf_counter() - start
    assert I10 == 120 * (2 + 4 * NW**3 + 4 * NB**3 + 6 * NB * NW)
    assert I11 == 120 * (2 + NW**3 + NB**3)
    assert elapsed < 1


def test_2_oracle_equivalence(record_property):
    tag(record_property, 2, "enumeration equals solver at 3 and 6 edges, < 1 min")
    st = compute_up_to(6, mode="checked")
    start = time.perf_counter()
    brute = {n: oracle.ising_polynomials(n) for n in (1, 2)}
    assert time.perf_counter() - start < 60
    for n, table in brute.items():
        for g in range(max(table) + 2):
            assert partition_polynomial(n, g, st) == table.get(g, Poly())


def test_3_pde_residual(record_property):
    tag(record_property, 3, "PDE residual identically zero through 36 edges, < 1 min")
    start = time.perf_counter()
    residual = pde_residual(compute_up_to(36, mode="checked"))
    assert residual.is_zero()
    assert time.perf_counter() - start < 60


def test_4_monochromatic_recursion(record_property, state):
    tag(record_property, 4, "white-monochromatic counts and R-series identity for n <= 12, < 10 s")
    start = time.perf_counter()
    mono = sp.monochromatic_check(state, 12)
    rser = sp.r_series_check(12)
    assert time.perf_counter() - start < 10
    assert mono.ok, mono
    assert rser.ok, rser


@pytest.mark.xfail(strict=True, raises=AssertionError, reason="the four few-monochromatic forms U[n,0,3], U[n,1,1], "
                   "U[n,1,4], U[n,2,2] do not hold at n = 2g-1 as stated")
def test_5_unicellular_closed_forms(record_property):
    tag(record_property, 5, "unicellular recursion vs all stated closed forms for 2 <= g <= 8; linear PDE")
    table = sp.unicellular(8)
    pde = sp.unicellular_residuals(table)
    assert pde.ok, pde
    forms = sp.unicellular_closed_forms(table, gmin=2, gmax=8)
    assert forms.ok, forms


def test_5_supplement_forms_read_one_genus_down(record_property, state):
    tag(record_property, "5.1", "all closed forms hold once the four few-monochromatic ones are read at n = 2g-3")
    table = sp.unicellular(8)
    assert sp.unicellular_residuals(table).ok
    assert sp.unicellular_closed_forms(table, gmin=2, gmax=8, few_shift=1).ok
    as_stated = sp.unicellular_closed_forms(table, gmin=2, gmax=8)
    assert {f.split(" at ")[0] for f in as_stated.failures} == set(sp.FEW_MONOCHROMATIC)
    assert sp.unicellular_vs_solver(table, state).ok


def test_6_planar(record_property, state):
    tag(record_property, 6, "planar equation residual zero; white planar numbers for n <= 12")
    report = sp.planar_check(state, 12)
    assert report.ok, report


def test_7_inequality(record_property, state):
    tag(record_property, 7, "inequality on the 9-point grid for 5 <= n <= 12, all genera, < 1 min")
    start = time.perf_counter()
    report = sp.inequality_grid(state, 5, 12)
    assert time.perf_counter() - start < 60
    assert report.ok, report


def test_8_bipartite_bridge(record_property):
    tag(record_property, 8, "[z^2]B, [z^3]B and bipartite equation residual through z^12, < 1 min")
    start = time.perf_counter()
    st = compute_up_to(12, mode="checked")
    b = bridge.b_series(st, 12)
    assert b[2] == bridge.PQ * bridge.U_**2 * Fraction(1, 2)
    assert b[3] == (bridge.U_**3 + bridge.U_) * Fraction(1, 3)
    assert bridge.kp_bip_residual(b).is_zero()
    assert time.perf_counter() - start < 60


def test_9_parametrization(record_property, state):
    tag(record_property, 9, "Newton-lifted planar coefficients through t^8 at (1,1), (1/2,1/3), < 1 min")
    start = time.perf_counter()
    for nb, nw in ((Fraction(1), Fraction(1)), (Fraction(1, 2), Fraction(1, 3))):
        coeffs = parametrization.planar_param_oracle(8, nb, nw)
        assert coeffs == [Fraction(0)] + [rooted_polynomial(n, 0, state).evaluate(nb, nw, 0)
                                          for n in range(1, 9)]
        if nb == nw == 1:
            assert coeffs[1] == 16
    assert time.perf_counter() - start < 60


def _compute(tmp_path, max_edges, mode):
    path = tmp_path / f"{mode}-{max_edges}.json"
    start = time.perf_counter()
    subprocess.run([sys.executable, "-m", "isingmaps", "compute", "--max-edges", str(max_edges),
                    "--mode", mode, "--cache", str(path)], check=True, capture_output=True,
                   env=dict(os.environ))
    return path, time.perf_counter() - start


@pytest.mark.slow
def test_10_performance(record_property, tmp_path):
    tag(record_property, 10, "fast mode: 72 edges <= 5 min, 120 edges <= 60 min with genus 20; "
                             "checked and fast byte-identical")
    fast72, t72 = _compute(tmp_path, 72, "fast")
    assert t72 <= 300
    checked72, _ = _compute(tmp_path, 72, "checked")
    assert fast72.read_bytes() == checked72.read_bytes()
    fast120, t120 = _compute(tmp_path, 120, "fast")
    assert t120 <= 3600
    rows = json.loads(fast120.read_text())["rows"]
    assert max(r[1] for r in rows if r[0] == 120) == 20
    checked120, _ = _compute(tmp_path, 120, "checked")
    assert fast120.read_bytes() == checked120.read_bytes()
