"""
Independent cross-checks of the solver through special cases.

* white monochromatic maps, which must follow the classical triangulation
  recursion for rooted cubic maps (and its compact differential form);
* planar maps (genus 0 slice) and the known planar white numbers;
* unicellular maps, grown genus by genus by a third order operator, with
  their hypergeometric closed forms;
* the lower bound inequality between rooted polynomials.

Each check returns a :class:`Report` that serializes to JSON.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from .diffops import apply, lambda_op, omega_op, upsilon_ops
from .exact_poly import NB, NW, ONE, S, ZERO, Poly, TSeries
from .solver import SMALL_Q, SolveState, genus_cap, rooted_polynomial


@dataclass
class Report:
    name: str
    ok: bool = True
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def record(self, passed: bool, what: str) -> None:
        self.checked += 1
        if not passed:
            self.ok = False
            self.failures.append(what)

    def to_dict(self) -> dict:
        return asdict(self)

    def __str__(self):
        status = "PASS" if self.ok else "FAIL"
        first = f"; first failure: {self.failures[0]}" if self.failures else ""
        return f"{status} {self.name}: {self.checked} checks{first}"


def _fact(k: int) -> int:
    if k < 0:
        raise ValueError(f"factorial of negative {k} in a numerator")
    return math.factorial(k)


def _inv_fact(k: int) -> Fraction:
    """``1/k!`` with the convention ``1/k! = 0`` for negative ``k``."""
    return Fraction(0) if k < 0 else Fraction(1, math.factorial(k))


# white monochromatic maps ----------------------------------------------------------

def gj_numbers(N: int) -> dict[tuple[int, int], Fraction]:
    """
    Rooted cubic maps with ``3n`` edges and genus ``g`` for ``-1 <= n <= N``.

    The ``n = -1`` entry is the seed ``-1/2``; every other entry is a
    non-negative integer.
    """
    M: dict[tuple[int, int], Fraction] = {(-1, 0): Fraction(-1, 2), (0, 0): Fraction(1)}

    def get(n, g):
        return M.get((n, g), Fraction(0))

    for n in range(1, N + 1):
        for g in range((n + 1) // 2 + 1):
            total = 4 * n * (3 * n - 2) * (3 * n - 4) * get(n - 2, g - 1)
            for i in range(-1, n):
                j = n - 2 - i
                for h in range(g + 1):
                    total += 4 * (3 * i + 2) * (3 * j + 2) * get(i, h) * get(j, g - h)
            value = total / (n + 1)
            if value:
                M[(n, g)] = value
    return M


def monochromatic_check(state: SolveState, N: int) -> Report:
    """``[nb^0 nw^(3n)]`` of the rooted polynomials against :func:`gj_numbers`."""
    report = Report("monochromatic")
    M = gj_numbers(N)
    for n in range(1, N + 1):
        for g in range(genus_cap(3 * n) + 1):
            got = rooted_polynomial(n, g, state).coeff(0, 3 * n)
            want = M.get((n, g), Fraction(0))
            report.record(got == want, f"(n={n}, g={g}): solver {got}, recursion {want}")
    return report


def r_series_check(N: int, table: dict | None = None) -> Report:
    """
    The series ``R = sum M_{n,g} t^(3n+2) s^g`` (``n >= -1``) satisfies
    ``R = 12 t^6 R'^2 + 4 s t^9 R''' + 36 s t^8 R'' + t (60 s t^6 - 1) R'``
    through ``t^(3N+2)``.
    """
    M = gj_numbers(N) if table is None else table
    top = 3 * N + 2
    R = {(3 * n + 2, g): c for (n, g), c in M.items() if n <= N}

    def deriv(f):
        return {(e - 1, g): e * c for (e, g), c in f.items() if e}

    def add(acc, f, c=1, de=0, dg=0):
        for (e, g), v in f.items():
            if e + de <= top:
                acc[(e + de, g + dg)] = acc.get((e + de, g + dg), 0) + c * v

    R1 = deriv(R)
    R2 = deriv(R1)
    R3 = deriv(R2)
    square: dict = {}
    for (e1, g1), c1 in R1.items():
        for (e2, g2), c2 in R1.items():
            if e1 + e2 + 6 <= top:
                key = (e1 + e2, g1 + g2)
                square[key] = square.get(key, 0) + c1 * c2
    residual: dict = {}
    add(residual, R)
    add(residual, square, -12, 6)
    add(residual, R3, -4, 9, 1)
    add(residual, R2, -36, 8, 1)
    add(residual, R1, -60, 7, 1)
    add(residual, R1, 1, 1)
    report = Report("r-series")
    for key in sorted(k for k in set(R) | set(residual) if k[0] <= top):
        v = residual.get(key, 0)
        report.record(v == 0, f"t^{key[0]} s^{key[1]}: residual {v}")
    report.details["seed"] = str(R[(-1, 0)])
    return report


# planar maps --------------------------------------------------------------------------

Q0_PARTS = {3: 2 * NW * SMALL_Q, 6: 2 * SMALL_Q**2}


def planar_residual(P: TSeries, trunc: int | None = None) -> TSeries:
    """``Omega P - (1/2)(Lambda^2 P)^2 - t (nw + 2 t^3 q) Lambda^2 P - t^5 Q0``."""
    T = (P.trunc + 2) if trunc is None else trunc
    P = P.truncate(T)
    lam = lambda_op()
    L2 = apply(lam @ lam, P, T)
    rhs = (L2 * L2).scale(Fraction(1, 2)) + L2.scale(NW).shift(1) + L2.scale(2 * SMALL_Q).shift(4)
    rhs = rhs + TSeries(T, {n + 2: q for n, q in Q0_PARTS.items()})
    return apply(omega_op(), P, T) - rhs


def planar_white_number(n: int) -> Fraction:
    """``2 * 8^n / ((n+1)(n+2)) * binom(3n/2, n)`` with a falling-factorial binomial."""
    top = Fraction(3 * n, 2)
    binom = Fraction(1)
    for k in range(n):
        binom *= top - k
    binom /= math.factorial(n)
    return 2 * Fraction(8) ** n / ((n + 1) * (n + 2)) * binom


def planar_check(state: SolveState, N: int) -> Report:
    report = Report("planar")
    P = TSeries(state.N, {n: p.s_slice(0) for n, p in state.J.items()})
    residual = planar_residual(P)
    report.record(residual.is_zero(), f"planar equation residual nonzero at grades {residual.grades()}")
    for n in range(1, N + 1):
        got = rooted_polynomial(n, 0, state).coeff(0, 3 * n)
        want = planar_white_number(n)
        report.record(got == want, f"n={n}: solver {got}, formula {want}")
    return report


# unicellular maps ---------------------------------------------------------------------

U1 = (NW**3 + NB**3 + 2) * Fraction(1, 6)
UNICELLULAR_SOURCE = NW**5 + 2 * NW**2 + NB


def unicellular(gmax: int) -> dict[int, Poly]:
    """``{g: [t^(3(2g-1))] U}`` for ``1 <= g <= gmax``."""
    if gmax < 1:
        raise ValueError("gmax must be at least 1")
    white, black = upsilon_ops()
    table = {1: U1}
    for g in range(2, gmax + 1):
        n = 3 * (2 * g - 3)
        total = ZERO
        for op in (white, black):
            p = table[g - 1]
            for step in range(3):
                p = op.grade_action(n + 2 * step, p)
            total = total + p
        table[g] = total * Fraction(1, 12 * g)
    return table


def unicellular_series(table: dict[int, Poly], trunc: int | None = None) -> TSeries:
    top = max(3 * (2 * g - 1) for g in table)
    trunc = top if trunc is None else trunc
    return TSeries(trunc, {3 * (2 * g - 1): p for g, p in table.items()})


def unicellular_residuals(table: dict[int, Poly]) -> Report:
    """The fourth and third order linear equations on the assembled series."""
    report = Report("unicellular-pde")
    top = max(3 * (2 * g - 1) for g in table)
    U = unicellular_series(table, top + 2)
    lam = lambda_op()
    L4 = apply(lam @ lam @ lam @ lam, U)
    fourth = apply(omega_op(), U) - L4.scale(Fraction(1, 12)) - TSeries(top + 2, {5: UNICELLULAR_SOURCE})
    report.record(fourth.is_zero(), f"fourth order residual at grades {fourth.grades()}")
    white, black = upsilon_ops()
    W3 = apply(white @ white @ white, U)
    B3 = apply(black @ black @ black, U)
    third = U.map(lambda p: p * 6) + TSeries(U.trunc, {n: p * (2 * n) for n, p in U.coeffs.items()}) - W3 - B3
    # grade 3 carries the initial condition, not the equation
    third = TSeries(top, {n: p for n, p in third.coeffs.items() if n != 3})
    report.record(third.is_zero(), f"third order residual at grades {third.grades()}")
    return report


def closed_forms() -> list[tuple[str, Callable[[int, int], tuple[int, int]], Callable[[int], Fraction]]]:
    """(label, (g, n) -> (k, l) exponents of (nb, nw), g -> value)."""
    F, IF = _fact, _inv_fact
    forms = [
        ("U[n,3n,0]", lambda g, n: (3 * n, 0),
         lambda g: Fraction(F(6 * g - 4)) / (12**g * F(g) * F(3 * g - 2))),
        ("U[n,3n-3,0]", lambda g, n: (3 * n - 3, 0),
         lambda g: Fraction(2, 3) * F(6 * g - 3) / (12**g * F(g) * F(3 * g - 2))),
        ("U[n,3n-2,1]", lambda g, n: (3 * n - 2, 1), lambda g: Fraction(0)),
        ("U[n,3n-4,2]", lambda g, n: (3 * n - 4, 2),
         lambda g: Fraction(6 * F(6 * g - 6)) / (12**g * F(g - 1) * F(3 * g - 3))),
        ("U[n,3n-5,1]", lambda g, n: (3 * n - 5, 1),
         lambda g: Fraction((12 * g * g - 18 * g + 5) * 6 * F(6 * g - 6)) / (12**g * F(g) * F(3 * g - 3))),
        ("U[n,3n-6,0]", lambda g, n: (3 * n - 6, 0),
         lambda g: Fraction((4 * g - 5) * (12 * g * g - 19 * g + 6) * 2 * F(6 * g - 6))
         / (12**g * F(g) * F(3 * g - 3))),
        ("U[n,0,0]", lambda g, n: (0, 0),
         lambda g: 2 * Fraction(F(3 * g - 2) * F(2 * g - 3), 3**g) * IF(g) * IF(g - 1) * IF(g - 2)),
        ("U[n,0,3]", lambda g, n: (0, 3),
         lambda g: Fraction(3 * g - 5, 4) * F(3 * g - 4) * F(2 * g - 3) / Fraction(3) ** (g - 1)
         * IF(g - 1) * IF(g - 2) ** 2),
        ("U[n,1,1]", lambda g, n: (1, 1),
         lambda g: Fraction(1, 2) * F(3 * g - 5) * F(2 * g - 3) / Fraction(3) ** (g - 3)
         * IF(g - 1) * IF(g - 2) * IF(g - 3)),
        ("U[n,1,4]", lambda g, n: (1, 4),
         lambda g: Fraction(18 * g**3 - 75 * g**2 + 75 * g - 2, 32) * F(3 * g - 4) * F(2 * g - 3)
         / Fraction(3) ** (g - 2) * IF(g) * IF(g - 2) * IF(g - 3)),
        ("U[n,2,2]", lambda g, n: (2, 2),
         lambda g: Fraction(54 * g**3 - 225 * g**2 + 231 * g - 4, 16) * F(3 * g - 5) * F(2 * g - 3)
         / Fraction(3) ** (g - 2) * IF(g) * IF(g - 2) * IF(g - 3)),
    ]
    return forms


def one_bicolored_edge(g: int, l: int) -> Fraction:
    """``U[n, 3n-6l+1, 6l-2]``: maps with a single bicolored edge."""
    return (Fraction(_fact(6 * l - 2), _fact(l) * _fact(3 * l - 1))
            * Fraction(_fact(6 * g - 6 * l - 2), 12**g * _fact(g - l) * _fact(3 * g - 3 * l - 1)))


FEW_MONOCHROMATIC = ("U[n,0,3]", "U[n,1,1]", "U[n,1,4]", "U[n,2,2]")


def unicellular_closed_forms(table: dict[int, Poly], gmax: int | None = None, gmin: int = 2,
                             few_shift: int = 0, labels=None) -> Report:
    """
    Compare the table with every closed form, for ``gmin <= g <= gmax``.

    ``few_shift`` evaluates the few-monochromatic forms at ``g + few_shift``
    instead of ``g``; with the default they are read exactly as stated, for
    ``n = 2g - 1``.
    """
    gmax = max(table) if gmax is None else gmax
    report = Report("unicellular-closed-forms")
    report.details["few_shift"] = few_shift
    for g in range(gmin, gmax + 1):
        n = 2 * g - 1
        U = table[g]
        for label, expo, value in closed_forms():
            if labels is not None and label not in labels:
                continue
            k, l = expo(g, n)
            at = g + few_shift if label in FEW_MONOCHROMATIC else g
            got, want = U.coeff(k, l), value(at)
            report.record(got == want, f"{label} at g={g}: table {got}, formula {want}")
        if labels is None:
            for l in range(1, g):
                got, want = U.coeff(3 * n - 6 * l + 1, 6 * l - 2), one_bicolored_edge(g, l)
                report.record(got == want, f"U[n,3n-6l+1,6l-2] at g={g}, l={l}: table {got}, formula {want}")
    return report


def unicellular_vs_solver(table: dict[int, Poly], state: SolveState) -> Report:
    """``U_g`` equals the top genus part of ``J_{3(2g-1)}``."""
    report = Report("unicellular-vs-solver")
    J = state.J
    for g, U in table.items():
        n = 3 * (2 * g - 1)
        if n <= state.N:
            report.record(J[n].s_coefficient(g) == U, f"g={g}")
    return report


# inequality -----------------------------------------------------------------------------

def inequality_constant(nb, nw) -> Fraction:
    nb, nw = Fraction(nb), Fraction(nw)
    return min(nw * nw, nb) ** 4 / (nw * nw + nb + nw / nb + 1 / nw)


def inequality_sides(state: SolveState, n: int, g: int, nb, nw) -> tuple[Fraction, Fraction]:
    """Both sides ``(n vecI_{n,g}, C (n^3 vecI_{n-2,g-1} + sum i vecI_{i,h} j vecI_{j,k}))``."""
    nb, nw = Fraction(nb), Fraction(nw)

    def val(m, h):
        if m < 1 or h < 0:
            return Fraction(0)
        return rooted_polynomial(m, h, state).evaluate(nb, nw, 0)

    left = n * val(n, g)
    right = n**3 * val(n - 2, g - 1)
    for i in range(1, n - 2):
        j = n - 2 - i
        for h in range(g + 1):
            right += i * val(i, h) * j * val(j, g - h)
    return left, inequality_constant(nb, nw) * right


def inequality_check(state: SolveState, n: int, g: int, nb, nw) -> bool:
    if n < 5:
        raise ValueError("the inequality is asserted only for n >= 5")
    if Fraction(nb) <= 0 or Fraction(nw) <= 0:
        raise ValueError("weights must be positive")
    left, right = inequality_sides(state, n, g, nb, nw)
    return left >= right


GRID = tuple((Fraction(a), Fraction(b)) for a in (Fraction(1, 2), 1, 2) for b in (Fraction(1, 2), 1, 2))


def inequality_grid(state: SolveState, nmin: int = 5, nmax: int = 12, points=GRID) -> Report:
    report = Report("inequality")
    for n in range(nmin, nmax + 1):
        for g in range(genus_cap(3 * n) + 1):
            for nb, nw in points:
                if n >= 5:
                    ok = inequality_check(state, n, g, nb, nw)
                else:
                    left, right = inequality_sides(state, n, g, nb, nw)
                    ok = left >= right
                report.record(ok, f"n={n}, g={g}, (nb, nw)=({nb}, {nw})")
    return report
