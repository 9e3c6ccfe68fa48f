r"""
Planar rooted Ising series from its rational parametrization.

The parameters ``(Ab, Aw, G)`` are tied to ``(nb, nw, T)`` with
``T = t (1 - nb nw)^3`` by three rational relations, and the planar rooted
series is ``W / T^2``. At ``nb nw = 1`` the relation for ``T`` degenerates,
so the weights are scaled by an auxiliary variable: ``nb = lam nb0`` and
``nw = lam nw0``. Everything is then a truncated series in ``(t, lam)`` and
the requested point is recovered at ``lam = 1`` (each ``t^n`` coefficient is
a polynomial of degree ``<= 3n`` in ``lam``, which is checked).

With ``Ab = G x`` and ``Aw = G y`` the relations become polynomial with a
nonsingular Jacobian at the origin, and the parameters are lifted from there
by Newton iteration with exact rational arithmetic.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_poly import Poly

# variables of the symbolic part: (Ab, Aw, G), later (x, y, G)
AB = Poly.monomial(1, 0, 0)
AW = Poly.monomial(0, 1, 0)
G_ = Poly.monomial(0, 0, 1)
PRINTED_AW3 = 4  # coefficient of Aw^3 G^2 inside T as printed with the parametrization
DERIVED_AW3 = 1  # the same coefficient in the derivation from the dual model


class ParamError(RuntimeError):
    pass


# truncated bivariate series ----------------------------------------------------

class BiSeries:
    r"""
    Series in ``(t, lam)`` modulo ``(t^(N+1), lam^(K+1))``.

    Stored as one integer numerator per monomial over a shared denominator,
    which keeps products in plain integer arithmetic.
    """

    __slots__ = ("N", "K", "num", "den")

    def __init__(self, N: int, K: int, num: list[int] | None = None, den: int = 1):
        self.N, self.K = N, K
        self.num = num if num is not None else [0] * ((N + 1) * (K + 1))
        self.den = den

    @classmethod
    def const(cls, N, K, c) -> "BiSeries":
        c = Fraction(c)
        s = cls(N, K, den=c.denominator)
        s.num[0] = c.numerator
        return s

    @classmethod
    def monomial(cls, N, K, i, k, c=1) -> "BiSeries":
        c = Fraction(c)
        s = cls(N, K, den=c.denominator)
        if i <= N and k <= K:
            s.num[i * (K + 1) + k] = c.numerator
        return s

    def coeff(self, i: int, k: int) -> Fraction:
        return Fraction(self.num[i * (self.K + 1) + k], self.den)

    def constant(self) -> Fraction:
        return Fraction(self.num[0], self.den)

    def _reduce(self) -> "BiSeries":
        g = math.gcd(self.den, *self.num)
        if g > 1:
            self.num = [c // g for c in self.num]
            self.den //= g
        return self

    def _like(self, num, den) -> "BiSeries":
        return BiSeries(self.N, self.K, num, den)._reduce()

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries.const(self.N, self.K, other)
        d = math.lcm(self.den, other.den)
        u, v = d // self.den, d // other.den
        return self._like([u * a + v * b for a, b in zip(self.num, other.num)], d)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries(self.N, self.K, [-a for a in self.num], self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, BiSeries) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "BiSeries":
        c = Fraction(c)
        return self._like([a * c.numerator for a in self.num], self.den * c.denominator)

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            return self.scale(other)
        N, K, W = self.N, self.K, self.K + 1
        A, B = self.num, other.num
        out = [0] * len(A)
        for i1 in range(N + 1):
            for k1 in range(W):
                a = A[i1 * W + k1]
                if not a:
                    continue
                for i2 in range(N + 1 - i1):
                    row = (i1 + i2) * W + k1
                    src = i2 * W
                    for k2 in range(W - k1):
                        b = B[src + k2]
                        if b:
                            out[row + k2] += a * b
        return self._like(out, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "BiSeries":
        """Multiplicative inverse (the constant term must be nonzero), by Newton doubling."""
        c0 = self.constant()
        if not c0:
            raise ParamError("series is not invertible: zero constant term")
        g = BiSeries.const(self.N, self.K, 1 / c0)
        for _ in range((self.N + self.K + 1).bit_length() + 1):
            g = g * (2 - self * g)
        return g

    def t_coefficient(self, i: int) -> list[Fraction]:
        """The polynomial in ``lam`` multiplying ``t^i``, as a coefficient list."""
        return [self.coeff(i, k) for k in range(self.K + 1)]

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self.N, self.K) == (other.N, other.K) and \
            all(a * other.den == b * self.den for a, b in zip(self.num, other.num))


def evaluate(p: Poly, X: Sequence[BiSeries], cache: dict | None = None) -> BiSeries:
    """Substitute three series for the three variables of ``p``."""
    N, K = X[0].N, X[0].K
    cache = {} if cache is None else cache

    def power(var, e):
        key = (var, e)
        if key not in cache:
            cache[key] = BiSeries.const(N, K, 1) if e == 0 else power(var, e - 1) * X[var]
        return cache[key]

    total = BiSeries(N, K)
    for (a, b, c), coef in p.items():
        total = total + (power(0, a) * power(1, b) * power(2, c)).scale(coef)
    return total


# the parametrization ------------------------------------------------------------

def t_polynomial(aw3: int) -> Poly:
    """The bracket in ``T = -G / (4G^2 - Ab Aw)^2 * (...)``."""
    return (32 * G_**5 - 16 * G_**4 - 16 * G_**3 * AB * AW
            + 4 * (AB**2 * AW**2 + AB**3 + aw3 * AW**3 + 3 * AB * AW) * G_**2
            - 2 * (AB**4 * AW + AB * AW**4 + 3 * AB**2 * AW**2 + AB**3 + AW**3) * G_
            + AB * AW * (AB**2 * AW**2 + AB**3 + AW**3))


def w_polynomial() -> Poly:
    """The bracket in ``W = G / (Ab Aw - 4G^2)^3 * (...)``."""
    A, B, G = AB, AW, G_
    return (384 * G**9 - 128 * G**8 + 32 * (16 * A**3 + 16 * B**3 + 15 * A * B) * G**7
            - 32 * (3 * A**2 * B**2 + 5 * A**3 + 5 * B**3) * G**6
            + 8 * (8 * A**6 + 8 * B**6 - 30 * A**4 * B - 30 * A * B**4 - 39 * A**2 * B**2
                   + 2 * A**3 + 2 * B**3) * G**5
            - 8 * (4 * A**5 * B**2 + 4 * A**2 * B**5 + 4 * A**6 - 4 * A**3 * B**3 + 4 * B**6
                   - 14 * A**4 * B - 14 * A * B**4 - 9 * A**2 * B**2) * G**4
            - 2 * (16 * A**7 * B + 8 * A**4 * B**4 + 16 * A * B**7 + 10 * A**5 * B**2
                   + 10 * A**2 * B**5 + 4 * A**6 + 35 * A**3 * B**3 + 4 * B**6
                   + 18 * A**4 * B + 18 * A * B**4) * G**3
            + 2 * (14 * A**6 * B**3 + 14 * A**3 * B**6 + 12 * A**7 * B + 39 * A**4 * B**4
                   + 12 * A * B**7 + 15 * A**5 * B**2 + 15 * A**2 * B**5 + 2 * A**6
                   + 4 * A**3 * B**3 + 2 * B**6) * G**2
            + 2 * B * A * (A**7 * B + A * B**7 - 4 * A**4 * B**4 - 6 * A**5 * B**2
                           - 6 * A**2 * B**5 - 2 * A**6 - 4 * A**3 * B**3 - 2 * B**6) * G
            - A**2 * B**2 * (A + B) * (A**2 - A * B + B**2) * (A**2 * B**2 + A**3 + B**3))


@dataclass(frozen=True)
class Fractional:
    """``num / den`` with both sides polynomial in ``(Ab, Aw, G)``."""
    num: Poly
    den: Poly


def relations(aw3: int = DERIVED_AW3) -> dict[str, Fractional]:
    """``nw``, ``nb``, ``T`` and the planar rooted series as rational functions."""
    D = 4 * G_**2 - AB * AW
    nw = Fractional(-(AW**2 - 2 * G_ * (AB + AW**2) + 8 * AB * G_**2 - AB**2 * AW), D)
    nb = Fractional(-(AB**2 - 2 * G_ * (AB**2 + AW) + 8 * AW * G_**2 - AB * AW**2), D)
    T = Fractional(-G_ * t_polynomial(aw3), D**2)
    W = Fractional(G_ * w_polynomial(), (AB * AW - 4 * G_**2) ** 3)
    rooted = Fractional(W.num * T.den**2, W.den * T.num**2)
    return {"nw": nw, "nb": nb, "T": T, "rooted": rooted}


def _scaled(p: Poly) -> tuple[Poly, int]:
    """Substitute ``Ab = G x``, ``Aw = G y``; return the result divided by its largest power of ``G``."""
    terms = {}
    for (a, b, c), coef in p.items():
        terms[(a, b, a + b + c)] = terms.get((a, b, a + b + c), 0) + coef
    q = Poly(terms)
    low = min(c for _, _, c in q.terms) if q else 0
    return q.shift(0, 0, -low) if low else q, low


def _scaled_pair(f: Fractional) -> tuple[Poly, Poly, int]:
    """``f = G^e num / den`` after the substitution, with ``den(0) != 0`` expected."""
    n, dn = _scaled(f.num)
    d, dd = _scaled(f.den)
    return n, d, dn - dd


@dataclass
class ParamPoint:
    """Lifted parameters ``Ab = G x``, ``Aw = G y``, ``G`` as series in ``(t, lam)``."""
    x: BiSeries
    y: BiSeries
    G: BiSeries
    base: tuple[Fraction, Fraction, Fraction]

    @property
    def Ab(self) -> BiSeries:
        return self.G * self.x

    @property
    def Aw(self) -> BiSeries:
        return self.G * self.y


def _system(aw3: int = DERIVED_AW3):
    """Polynomial equations ``F_i = num_i - value_i * den_i`` in ``(x, y, G)``."""
    rel = relations(aw3)
    eqs = []
    for key in ("nw", "nb", "T"):
        n, dn = _scaled(rel[key].num)
        d, dd = _scaled(rel[key].den)
        low = min(dn, dd)
        eqs.append((key, n.shift(0, 0, dn - low), d.shift(0, 0, dd - low)))
    return eqs


BASE_CANDIDATES = ((0, 0, 0), (2, 2, 0))


def _lift(eqs, values, base, N, K, steps=None) -> ParamPoint:
    X = [BiSeries.const(N, K, c) for c in base]
    partial = [[(num.diff(v), den.diff(v)) for v in range(3)] for _, num, den in eqs]
    steps = steps or (N + K + 1).bit_length() + 1
    for _ in range(steps):
        cache: dict = {}
        F = [evaluate(num, X, cache) - values[i] * evaluate(den, X, cache)
             for i, (_, num, den) in enumerate(eqs)]
        J = [[evaluate(dn, X, cache) - values[i] * evaluate(dd, X, cache)
              for dn, dd in partial[i]] for i in range(3)]
        det, adj = _det_adj(J)
        if not det.constant():
            raise ParamError(f"singular Jacobian at base {base}")
        inv = det.inverse()
        X = [X[r] - inv * sum((adj[r][c] * F[c] for c in range(3)), BiSeries(N, K)) for r in range(3)]
    cache = {}
    for i, (key, num, den) in enumerate(eqs):
        if evaluate(num, X, cache) - values[i] * evaluate(den, X, cache) != BiSeries(N, K):
            raise ParamError(f"lifting did not converge for the {key} relation")
    return ParamPoint(X[0], X[1], X[2], tuple(Fraction(c) for c in base))


def _det_adj(J):
    (a, b, c), (d, e, f), (g, h, i) = J
    adj = [[e * i - f * h, c * h - b * i, b * f - c * e],
           [f * g - d * i, a * i - c * g, c * d - a * f],
           [d * h - e * g, b * g - a * h, a * e - b * d]]
    det = a * adj[0][0] + b * adj[1][0] + c * adj[2][0]
    return det, adj


@dataclass
class ParamResult:
    coefficients: list[Fraction]
    point: ParamPoint
    aw3: int


def planar_param_series(N: int, nb0, nw0, aw3: int = DERIVED_AW3) -> ParamResult:
    """
    Rooted planar coefficients ``[t^0 .. t^N]`` at ``(nb0, nw0)`` from the parametrization.

    Each candidate base point is lifted; the branch kept is the one whose
    expansion is a genuine polynomial in ``lam`` per power of ``t``, has zero
    constant term and the known 3-edge coefficient.
    """
    nb0, nw0 = Fraction(nb0), Fraction(nw0)
    K = 3 * N
    lam = BiSeries.monomial(N, K, 0, 1)
    t = BiSeries.monomial(N, K, 1, 0)
    one = BiSeries.const(N, K, 1)
    T = t * (one - (lam * lam).scale(nb0 * nw0)) * (one - (lam * lam).scale(nb0 * nw0)) \
        * (one - (lam * lam).scale(nb0 * nw0))
    values = [lam.scale(nw0), lam.scale(nb0), T]
    eqs = _system(aw3)
    num, den, e = _scaled_pair(relations(aw3)["rooted"])
    expected_t1 = 2 + 4 * nw0**3 + 4 * nb0**3 + 6 * nb0 * nw0
    failures = []
    for base in BASE_CANDIDATES:
        try:
            P = _lift(eqs, values, base, N, K)
            coeffs = _rooted_coefficients(P, num, den, e, N, K)
        except ParamError as exc:
            failures.append(f"{base}: {exc}")
            continue
        if coeffs[0] != 0 or (N >= 1 and coeffs[1] != expected_t1):
            failures.append(f"{base}: t^0, t^1 coefficients {coeffs[:2]} fail validation")
            continue
        return ParamResult(coeffs, P, aw3)
    raise ParamError("no branch passed validation: " + "; ".join(failures))


def _rooted_coefficients(P: ParamPoint, num, den, e, N, K) -> list[Fraction]:
    if e < 0:
        raise ParamError("expansion has a pole in G at this base")
    X = [P.x, P.y, P.G]
    cache: dict = {}
    D = evaluate(den, X, cache)
    if not D.constant():
        raise ParamError("denominator vanishes at the base point")
    series = evaluate(num, X, cache) * D.inverse()
    for _ in range(e):
        series = series * P.G
    out = []
    for n in range(N + 1):
        poly = series.t_coefficient(n)
        if any(poly[3 * n + 1:]):
            raise ParamError(f"t^{n} coefficient is not a polynomial of degree <= {3 * n} in the weights")
        out.append(sum(poly, Fraction(0)))
    return out


def planar_param_oracle(N: int, nb0, nw0, aw3: int = DERIVED_AW3) -> list[Fraction]:
    return planar_param_series(N, nb0, nw0, aw3).coefficients
