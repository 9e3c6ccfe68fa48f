r"""
Degree-by-degree solver for the Ising map series ``I = sum_n J_n t^n``.

At each grade ``n`` the coefficient ``J_n`` is the unique symmetric solution
of ``Omega_n(J_n) = rhs_n``, where ``rhs_n`` is the ``t^(n+2)`` coefficient of

    (s/12) Lambda^4 I + (1/2) (Lambda^2 I)^2 + t (nw + 2 t^3 q) Lambda^2 I + t^5 Q

and only involves ``J_k`` for ``k <= n - 3``.

Internally the solver works with the integer polynomials ``V_n = 2n J_n``
(``[s^g] V_{3m}`` is the rooted count polynomial of genus ``g`` with ``3m``
edges), so the heavy products run over integers. The equation becomes
``3 Omega_n(V_n) = 6n rhs_n``; the right side is assembled as ``N / D`` with
``N`` an integer polynomial, and every division in the sweep is exact.

EXAMPLES::

    >>> from isingmaps.solver import compute_up_to, partition_polynomial
    >>> state = compute_up_to(3)
    >>> partition_polynomial(1, 1, state)
    Poly(240 + 120*nw^3 + 120*nb^3)
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from . import kernels
from .diffops import omega_n
from .exact_poly import NB, NW, S, ZERO, Poly, TSeries

IntPoly = dict  # {(a, b, g): int}

MODES = ("checked", "fast")


class SolverError(RuntimeError):
    pass


class VerificationError(SolverError):
    """A solved coefficient failed the exact post-solve check."""


# fixed polynomials of the equation -------------------------------------------

SMALL_Q = 2 * NW**4 + NB * NW**2 + 2 * NB**2 + 3 * NW
_Q_GENUS = (16 * NW**8 + 5 * NW**6 * NB + 10 * NB**2 * NW**4 + 16 * NB**3 * NW**2
            + 59 * NW**5 + 16 * NB**4 + 54 * NB * NW**3 + 37 * NB**2 * NW
            + 32 * NW**2 + 11 * NB)
# t^5 Q = t^5 Q_PARTS[3] + t^8 Q_PARTS[6]; keys are the grade n they feed
Q_PARTS: Mapping[int, Poly] = {
    3: 2 * NW * SMALL_Q + (NW**5 + 2 * NW**2 + NB) * S,
    6: 2 * SMALL_Q**2 + 2 * _Q_GENUS * S,
}


def genus_cap(n: int) -> int:
    """Largest genus present in ``J_n``."""
    return (n // 3 + 1) // 2


# integer polynomial helpers ---------------------------------------------------

def to_int_poly(p: Poly) -> IntPoly:
    out = {}
    for m, c in p.terms.items():
        if c.denominator != 1:
            raise SolverError(f"non-integer coefficient {c} at {m}")
        out[m] = c.numerator
    return out


def from_int_poly(d: Mapping, scale=1) -> Poly:
    scale = Fraction(scale)
    return Poly({m: c * scale for m, c in d.items()})


def _add_into(acc: dict, d: Mapping, w: int = 1) -> None:
    for m, c in d.items():
        acc[m] = acc.get(m, 0) + w * c


def lambda_int(n: int, P: Mapping) -> IntPoly:
    """``Lambda`` on ``t^n P`` with the factor ``t^2`` stripped."""
    out: dict = {}
    get = out.get
    for (a, b, g), c in P.items():
        c2 = 2 * c
        for key, w in (((a, b + 2, g), n - a), ((a + 1, b, g), n - b),
                       ((a - 1, b + 1, g), a), ((a, b - 1, g), b)):
            if w:
                out[key] = get(key, 0) + w * c2
    return {m: c for m, c in out.items() if c}


def three_omega_int(n: int, P: Mapping) -> IntPoly:
    """``3 Omega_n(P)`` for an integer polynomial, from the termwise expansion."""
    out: dict = {}
    get = out.get
    for (i, j, g), c in P.items():
        for key, w in (((i + 1, j, g), 2 * (j - n) * (i - j - n)),
                       ((i, j + 2, g), -(i - n) * (i + 2 * j - n + 3)),
                       ((i, j - 1, g), -2 * j * (i - j - n)),
                       ((i - 1, j + 1, g), 2 * i * (2 * i + j - 2 * n)),
                       ((i - 2, j, g), -3 * i * (i - 1))):
            if w:
                out[key] = get(key, 0) + w * c
    return {m: c for m, c in out.items() if c}


# the sweep --------------------------------------------------------------------

def _sweep(n: int, R: Mapping, D, fast: bool) -> dict:
    """
    Solve ``3 Omega_n(P) = R / D`` for symmetric ``P`` of degree ``<= n``.

    Works slice by slice in ``s``. With integer ``R`` and ``D`` every division
    must be exact (a remainder raises); with Fraction data it is plain division.
    """
    exact = isinstance(D, int) and all(isinstance(c, int) for c in R.values())

    def div(num, den):
        if not exact:
            return Fraction(num) / den
        q, r = divmod(num, den)
        if r:
            raise SolverError(f"non-integral coefficient at grade {n}: {num}/{den}")
        return q

    out = {}
    for g in sorted({m[2] for m in R}):
        p: dict = {}
        get = p.get
        top = R.get((0, n + 2, g), 0)
        if top:
            v = div(top, D * n * (n + 3))
            p[(0, n)] = p[(n, 0)] = v
        for i in range(n - 1, -1, -1):
            for j in range(0, n - i + 1):
                if (i == 0 and j == n) or (fast and (i - j) % 3):
                    continue
                combo = ((i + 1 - n) * (i + 2 * j - n) * get((i + 1, j - 2), 0)
                         + 2 * (j + 1) * (i - j - n) * get((i + 1, j + 1), 0)
                         - 2 * (i + 2) * (2 * i + 3 + j - 2 * n) * get((i + 2, j - 1), 0)
                         + 3 * (i + 3) * (i + 2) * get((i + 3, j), 0))
                num = R.get((i + 1, j, g), 0) + D * combo
                if num:
                    p[(i, j)] = div(num, D * 2 * (n - j) * (n - i + j))
        for (a, b), c in p.items():
            if c:
                out[(a, b, g)] = c
    return out


def solve_degree(n: int, rhs: Poly) -> Poly:
    """
    The unique symmetric ``P`` of degree ``<= n`` with ``Omega_n(P) = rhs``.

    Exact over the rationals; the result is checked against ``rhs`` before it
    is returned.
    """
    if n < 1:
        raise ValueError("grade must be positive")
    R = {m: 3 * c for m, c in rhs.terms.items()}
    P = Poly(_sweep(n, R, 1, fast=False))
    if omega_n(n, P) != rhs:
        raise VerificationError(f"grade {n}: Omega_n(solution) differs from the right-hand side")
    return P


# state and driver -------------------------------------------------------------

class SolveState:
    r"""
    Coefficients computed so far.

    ``rooted[n]`` holds ``V_n = 2n J_n`` as an integer polynomial; ``J`` and
    ``rhsCache`` expose the rational views.
    """

    def __init__(self, mode: str = "checked", backend: str | None = None):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.mode = mode
        self.N = 0
        self.rooted: dict[int, IntPoly] = {}
        self.rhsCache: dict[int, Poly] = {}
        self._backend = kernels.get_backend(backend)
        self._threads = kernels.thread_budget()
        self._X: dict[int, IntPoly] = {}
        self._Y: dict[int, IntPoly] = {}
        self._prepared: dict = {}
        self._J: dict[int, Poly] = {}

    @property
    def backend(self) -> str:
        return self._backend.NAME

    @property
    def J(self) -> dict[int, Poly]:
        for n in range(1, self.N + 1):
            if n not in self._J:
                V = self.rooted.get(n)
                self._J[n] = from_int_poly(V, Fraction(1, 2 * n)) if V else ZERO
        return dict(self._J)

    def series(self, trunc: int | None = None) -> TSeries:
        trunc = self.N if trunc is None else trunc
        return TSeries(trunc, {n: p for n, p in self.J.items() if n <= trunc})

    @classmethod
    def from_rooted(cls, N: int, rooted: Mapping[int, IntPoly], mode: str = "checked",
                    backend: str | None = None) -> "SolveState":
        """Resume from stored ``V_n`` (used by the on-disk cache)."""
        state = cls(mode, backend)
        for n, V in sorted(rooted.items()):
            if n > N:
                raise ValueError(f"stored grade {n} exceeds truncation {N}")
            if V:
                state._store(n, dict(V))
        state.N = N
        return state

    # cached derived polynomials

    def _store(self, n: int, V: IntPoly) -> None:
        self._J.pop(n, None)
        if V:
            self.rooted[n] = V
            self._X[n] = lambda_int(n + 2, lambda_int(n, V))

    def _lambda2(self, k: int) -> IntPoly:
        return self._X.get(k, {})

    def _lambda4(self, k: int) -> IntPoly:
        if k not in self._Y:
            X = self._lambda2(k)
            self._Y[k] = lambda_int(k + 6, lambda_int(k + 4, X)) if X else {}
        return self._Y[k]

    def _prep(self, key, poly: IntPoly):
        if key not in self._prepared:
            self._prepared[key] = self._backend.prepare(poly)
        return self._prepared[key]

    # assembly

    def scaled_rhs(self, n: int) -> tuple[IntPoly, int]:
        """``(N, D)`` with ``N / D = 6n rhs_n = 3 Omega_n(V_n)``."""
        if n - 3 > self.N:
            raise SolverError(f"grade {n} needs coefficients up to {n - 3}, have {self.N}")
        weighted: list[tuple[Fraction, object, object]] = []
        k = n - 6
        if k > 0 and self._lambda2(k):
            Y = self._lambda4(k)
            if Y:
                weighted.append((Fraction(n, 4 * k), self._prep("s", to_int_poly(S)),
                                 self._prep(("Y", k), Y)))
            weighted.append((Fraction(6 * n, k), self._prep("q", to_int_poly(SMALL_Q)),
                             self._prep(("X", k), self._lambda2(k))))
        for k1 in range(1, (n - 6) // 2 + 1):
            k2 = n - 6 - k1
            if self._lambda2(k1) and self._lambda2(k2):
                w = Fraction(3 * n, 4 * k1 * k1) if k1 == k2 else Fraction(3 * n, 2 * k1 * k2)
                weighted.append((w, self._prep(("X", k1), self._lambda2(k1)),
                                 self._prep(("X", k2), self._lambda2(k2))))
        k = n - 3
        if k > 0 and self._lambda2(k):
            weighted.append((Fraction(3 * n, k), self._prep("nw", to_int_poly(NW)),
                             self._prep(("X", k), self._lambda2(k))))
        D = math.lcm(1, *(w.denominator for w, _, _ in weighted))
        pairs = [(int(w * D), P, Q) for w, P, Q in weighted]
        N = self._backend.convolve_sum(pairs, genus_cap(n) + 1, self._threads) if pairs else {}
        if n in Q_PARTS:
            _add_into(N, to_int_poly(Q_PARTS[n]), 6 * n * D)
            N = {m: c for m, c in N.items() if c}
        return N, D

    def _solve(self, n: int) -> None:
        fast = self.mode == "fast"
        N, D = self.scaled_rhs(n)
        V = _sweep(n, N, D, fast=fast)
        lhs = three_omega_int(n, V)
        if {m: c * D for m, c in lhs.items()} != N:
            raise VerificationError(f"grade {n}: 3 Omega_n(V_n) does not reproduce the right-hand side")
        if not fast:
            self._check_structure(n, V, N, D)
        self._store(n, V)

    def _check_structure(self, n: int, V: IntPoly, N: IntPoly, D: int) -> None:
        if n % 3 and V:
            raise VerificationError(f"grade {n} is not a multiple of 3 but J_{n} != 0")
        for (a, b, g), c in V.items():
            if V.get((b, a, g)) != c:
                raise VerificationError(f"J_{n} is not color symmetric at {(a, b, g)}")
            if a + b > n or (a - b) % 3:
                raise VerificationError(f"J_{n} has a monomial {(a, b, g)} outside its support")
            if c < 0:
                raise VerificationError(f"J_{n} has a negative coefficient at {(a, b, g)}")
        # independent check through the rational operator
        J = from_int_poly(V, Fraction(1, 2 * n))
        rhs = from_int_poly(N, Fraction(1, 6 * n * D))
        if omega_n(n, J) != rhs:
            raise VerificationError(f"grade {n}: Omega_n(J_n) differs from rhs_n")

    def extend(self, N: int) -> "SolveState":
        for n in range(self.N + 1, N + 1):
            if self.mode == "checked" or n % 3 == 0:
                self._solve(n)
            self.N = n
        return self


def rhs_coefficient(n: int, state: SolveState) -> Poly:
    """``[t^(n+2)]`` of the right-hand side, built from ``J_k`` with ``k <= n - 3``."""
    if n < 1:
        raise ValueError("grade must be positive")
    if n not in state.rhsCache:
        N, D = state.scaled_rhs(n)
        state.rhsCache[n] = from_int_poly(N, Fraction(1, 6 * n * D))
    return state.rhsCache[n]


def compute_up_to(N: int, mode: str = "checked", backend: str | None = None,
                  state: SolveState | None = None) -> SolveState:
    """Compute ``J_1 .. J_N`` (``N`` is the number of edges). ``N = 0`` gives an empty state."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    if state is None:
        state = SolveState(mode, backend)
    return state.extend(N)


def _check_range(n: int, g: int, state: SolveState) -> None:
    if n < 1 or g < 0:
        raise ValueError(f"invalid index (n={n}, g={g})")
    if 3 * n > state.N:
        raise IndexError(f"need {3 * n} edges, state holds {state.N}")


def rooted_polynomial(n: int, g: int, state: SolveState) -> Poly:
    """Rooted counts: ``[s^g] V_{3n}`` with ``n`` vertex pairs (``3n`` edges)."""
    _check_range(n, g, state)
    V = state.rooted.get(3 * n, {})
    return Poly({(a, b, 0): c for (a, b, h), c in V.items() if h == g})


def partition_polynomial(n: int, g: int, state: SolveState) -> Poly:
    """Labeled counts ``I_{n,g} = (6n)! [s^g] J_{3n} = (6n-1)! [s^g] V_{3n}``."""
    return rooted_polynomial(n, g, state) * math.factorial(6 * n - 1)


def pde_residual(state: SolveState) -> TSeries:
    """Left minus right side of the equation on the computed series, through grade ``N + 2``."""
    from .diffops import apply, lambda_op, omega_op

    T = state.N + 2
    J = state.series().truncate(T)
    lam = lambda_op()
    L2 = apply(lam @ lam, J, T)
    L4 = apply(lam @ lam, L2, T)
    rhs = L4.scale(S * Fraction(1, 12)) + (L2 * L2).scale(Fraction(1, 2))
    rhs = rhs + L2.scale(NW).shift(1) + L2.scale(2 * SMALL_Q).shift(4)
    rhs = rhs + TSeries(T, {n + 2: q for n, q in Q_PARTS.items()})
    return apply(omega_op(), J, T) - rhs
