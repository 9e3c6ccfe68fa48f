r"""
From Ising cubic maps to bipartite maps with vertex degrees 2 and 3.

Inserting alternating chains of degree-2 vertices on the edges of an Ising
cubic map gives a bipartite map; at the level of series this is the change
of variables

    t -> u^(1/3) z / (1 - z^2 p2 q2),  s -> u^-2,  nb -> z p2,  nw -> z q2,

and the bipartite series is ``B = (u^2/2) log 1/(1 - z^2 p2 q2) + u^2 Psi(I)``.
Series in ``z`` reuse :class:`TSeries` with :class:`Poly` coefficients in
``(p2, q2, u)``. All rational factors are expanded as truncated geometric
series.
"""
from __future__ import annotations

import math
from fractions import Fraction

from .exact_poly import Poly, TSeries
from .solver import SolveState
from .specializations import Report

ZSeries = TSeries
P2, Q2, U = 0, 1, 2
NAMES = ("p2", "q2", "u")
PQ = Poly.monomial(1, 1, 0)
P2_ = Poly.monomial(1, 0, 0)
Q2_ = Poly.monomial(0, 1, 0)
U_ = Poly.monomial(0, 0, 1)


def geometric(trunc: int, power: int = 1) -> ZSeries:
    """``(1 - z^2 p2 q2)^(-power)`` through ``z^trunc``."""
    return ZSeries(trunc, {2 * k: PQ**k * math.comb(k + power - 1, power - 1)
                           for k in range(trunc // 2 + 1)})


def psi_substitute(state: SolveState, zmax: int) -> ZSeries:
    """``u^2 Psi(I)`` through ``z^zmax`` (needs ``J_n`` for ``n <= zmax``).

    ``Psi(I)`` alone may carry ``u^-1``; the ``u^2`` factor keeps exponents nonnegative.
    """
    if state.N < zmax:
        raise ValueError(f"need the series through t^{zmax}, state holds {state.N}")
    out = ZSeries(zmax)
    for n3, J in state.J.items():
        if not J or n3 > zmax:
            continue
        n = n3 // 3
        block: dict[int, dict] = {}
        for (a, b, g), c in J.terms.items():
            m = n3 + a + b
            if m <= zmax:
                slot = block.setdefault(m, {})
                key = (a, b, n - 2 * g + 2)
                if key[2] < 1:
                    raise ValueError("negative power of u: genus above its bound")
                slot[key] = slot.get(key, 0) + c
        image = ZSeries(zmax, {m: Poly(d) for m, d in block.items()})
        out = out + image * geometric(zmax, n3)
    return out


def log_term(zmax: int) -> ZSeries:
    """``(u^2/2) log 1/(1 - z^2 p2 q2)``."""
    return ZSeries(zmax, {2 * k: Poly.monomial(k, k, 2, Fraction(1, 2 * k))
                          for k in range(1, zmax // 2 + 1)})


def b_series(state: SolveState, zmax: int) -> ZSeries:
    return log_term(zmax) + psi_substitute(state, zmax)


# the bipartite equation --------------------------------------------------------------

def op_L(f: ZSeries) -> ZSeries:
    """``2/(1 - z^2 p2 q2) (z^2 q2 d/dp2 + z d/dq2)``."""
    N = f.trunc
    raw: dict[int, Poly] = {}
    for m, p in f.coeffs.items():
        for shift, q in ((2, p.diff(P2) * Q2_), (1, p.diff(Q2))):
            if m + shift <= N and q:
                raw[m + shift] = raw.get(m + shift, Poly()) + q
    return ZSeries(N, raw).scale(2) * geometric(N)


def euler_z(f: ZSeries) -> ZSeries:
    return ZSeries(f.trunc, {m: p * m for m, p in f.coeffs.items()})


def r_term(zmax: int) -> ZSeries:
    """``(1/2)(u z^2 q2/(1 - z^2 p2 q2))^2 + z^6 u (q2^5 z^4 + 2 q2^2 z + p2)/(1 - z^2 p2 q2)^5``."""
    first = ZSeries(zmax, {4: U_**2 * Q2_**2 * Fraction(1, 2)}) * geometric(zmax, 2)
    second = ZSeries(zmax, {10: U_ * Q2_**5, 7: 2 * U_ * Q2_**2, 6: U_ * P2_}) * geometric(zmax, 5)
    return first + second


def kp_bip_residual(b: ZSeries) -> ZSeries:
    """Left minus right side of the bipartite equation; zero through ``b.trunc`` for the true ``B``."""
    N = b.trunc
    LB = op_L(b)
    L2 = op_L(LB)
    L4 = op_L(op_L(L2))
    lhs = euler_z(LB) - LB.map(lambda p: 2 * p.euler(P2)) - LB
    lhs = lhs.scale(Fraction(1, 3))
    chain = ZSeries(N, {2: U_ * Q2_}) * geometric(N)
    rhs = b.map(lambda p: p.diff(P2).diff(P2)) + L4.scale(Fraction(1, 12)) \
        + (L2 * L2).scale(Fraction(1, 2)) + chain * L2 + r_term(N)
    return lhs - rhs


def support_report(b: ZSeries) -> Report:
    """Degree in ``(p2, q2)`` bounded by the ``z`` grade, symmetry, and ``u`` range."""
    report = Report("bipartite-support")
    for m, p in b.coeffs.items():
        report.record(all(a + c <= m for a, c, _ in p.terms), f"z^{m}: p2,q2 degree exceeds {m}")
        report.record(p == p.swap_colors(), f"z^{m}: not symmetric in p2, q2")
        report.record(all(1 <= e <= m for _, _, e in p.terms), f"z^{m}: u exponent outside [1, {m}]")
    return report


# inverse direction, on low grades only ------------------------------------------------

def phi_spot_check(b: ZSeries, state: SolveState, tmax: int = 6) -> Report:
    r"""
    Apply the inverse substitution to truncated ``B`` and compare ``s Phi(B) - (1/2) log 1/(1 - nb nw)``
    with ``I`` for ``t``-grades ``<= tmax``.

    A monomial ``z^m p2^a q2^b u^c`` goes to
    ``s^((m-a-b)/6 - c/2) t^(m-a-b) (1 - nb nw)^(m-a-b) nb^a nw^b``, so grade ``t^k`` is exact in
    ``(nb, nw)``-degree up to ``zmax - k``; fractional powers of ``s`` must cancel there.
    """
    zmax = b.trunc
    acc: dict[tuple[int, int, int, Fraction], Fraction] = {}

    def add(key, c):
        acc[key] = acc.get(key, 0) + c

    for m, p in b.coeffs.items():
        for (a, c2, e), coef in p.terms.items():
            k = m - a - c2
            if k > tmax:
                continue
            bound = zmax - k
            s_exp = Fraction(k, 6) - Fraction(e, 2) + 1
            for j in range(k + 1):
                if a + c2 + 2 * j > bound:
                    break
                add((k, a + j, c2 + j, s_exp), coef * math.comb(k, j) * (-1) ** j)
    for k in range(1, zmax // 2 + 1):
        add((0, k, k, Fraction(0)), -Fraction(1, 2 * k))
    report = Report("phi-round-trip")
    J = state.J
    for (k, a, c2, s_exp), coef in sorted(acc.items()):
        if not coef:
            continue
        if s_exp.denominator != 1:
            report.record(False, f"fractional s^{s_exp} survives at t^{k} nb^{a} nw^{c2}")
            continue
        want = J[k].coeff(a, c2, int(s_exp)) if 0 < k <= state.N else Fraction(0)
        report.record(coef == want, f"t^{k} nb^{a} nw^{c2} s^{s_exp}: {coef} vs {want}")
    for k in range(1, min(tmax, state.N) + 1):
        for (a, c2, g), coef in J[k].terms.items():
            if a + c2 <= zmax - k:
                got = acc.get((k, a, c2, Fraction(g)), 0)
                report.record(got == coef, f"t^{k} nb^{a} nw^{c2} s^{g} missing from the image")
    return report
