r"""
Linear differential operators acting on truncated series in ``t``.

An operator is built from :class:`OpTerm` atoms ``t^k * factor * word`` where
``word`` is a sequence of basic derivations applied right to left (the last
letter acts first). Sums, scalar multiples and compositions are kept lazy:
composing ``Lambda`` with itself four times is cheaper applied than expanded.

EXAMPLES::

    >>> from isingmaps.exact_poly import TSeries, NW
    >>> from isingmaps.diffops import lambda_op, apply
    >>> apply(lambda_op(), TSeries(5, {3: NW**3}))[5]
    Poly(6*nw^2 + 6*nw^5)
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact_poly import NB, NW, ONE, ZERO, Poly, TSeries

BLACK, WHITE, GENUS = 0, 1, 2


class Derivation(enum.Enum):
    Dt = "Dt"                        # t d/dt, multiplies grade n by n
    Dcirc = "Dcirc"                  # nw d/dnw
    Dbullet = "Dbullet"              # nb d/dnb
    PartialCirc = "PartialCirc"      # d/dnw
    PartialBullet = "PartialBullet"  # d/dnb

    def act(self, p: Poly, grade: int) -> Poly:
        if self is Derivation.Dt:
            return p * grade
        if self is Derivation.Dcirc:
            return p.euler(WHITE)
        if self is Derivation.Dbullet:
            return p.euler(BLACK)
        if self is Derivation.PartialCirc:
            return p.diff(WHITE)
        return p.diff(BLACK)


Dt = Derivation.Dt
Dcirc = Derivation.Dcirc
Dbullet = Derivation.Dbullet
PartialCirc = Derivation.PartialCirc
PartialBullet = Derivation.PartialBullet


@dataclass(frozen=True)
class OpTerm:
    tshift: int
    factor: Poly
    word: tuple[Derivation, ...] = ()

    def act(self, p: Poly, grade: int) -> Poly:
        for d in reversed(self.word):
            if not p:
                return p
            p = d.act(p, grade)
        return p * self.factor


class Operator:
    """Base class: anything that maps a TSeries to a TSeries linearly."""

    def apply(self, f: TSeries, trunc: int | None = None) -> TSeries:
        raise NotImplementedError

    def __call__(self, f: TSeries, trunc: int | None = None) -> TSeries:
        return self.apply(f, trunc)

    def __add__(self, other: "Operator") -> "Operator":
        return SumOp((self, other))

    def __sub__(self, other: "Operator") -> "Operator":
        return SumOp((self, ScaledOp(Fraction(-1), other)))

    def __rmul__(self, c) -> "Operator":
        return ScaledOp(Fraction(c), self)

    def __matmul__(self, other: "Operator") -> "Operator":
        """``A @ B`` is the composition ``A o B`` (``B`` acts first)."""
        return ComposedOp((self, other))

    def __pow__(self, k: int) -> "Operator":
        return ComposedOp((self,) * k)


class LinOp(Operator):
    r"""Finite sum of :class:`OpTerm` atoms."""

    def __init__(self, terms: Sequence[OpTerm]):
        self.terms = tuple(terms)

    def apply(self, f: TSeries, trunc: int | None = None) -> TSeries:
        N = f.trunc if trunc is None else trunc
        out: dict[int, Poly] = {}
        for n, p in f.coeffs.items():
            for term in self.terms:
                m = n + term.tshift
                if m > N:
                    continue
                r = term.act(p, n)
                if r:
                    out[m] = out.get(m, ZERO) + r
        return TSeries(N, out)

    def grade_action(self, n: int, p: Poly) -> Poly:
        """Image of ``t^n p`` with the power of ``t`` stripped (all terms must share one shift)."""
        shifts = {term.tshift for term in self.terms}
        if len(shifts) > 1:
            raise ValueError("operator is not homogeneous in t")
        total = ZERO
        for term in self.terms:
            total = total + term.act(p, n)
        return total


class SumOp(Operator):
    def __init__(self, parts: Sequence[Operator]):
        self.parts = tuple(parts)

    def apply(self, f, trunc=None):
        N = f.trunc if trunc is None else trunc
        out = TSeries(N)
        for op in self.parts:
            out = out + op.apply(f, N)
        return out


class ScaledOp(Operator):
    def __init__(self, c: Fraction, op: Operator):
        self.c, self.op = c, op

    def apply(self, f, trunc=None):
        return self.op.apply(f, trunc).scale(self.c)


class ComposedOp(Operator):
    def __init__(self, chain: Sequence[Operator]):
        self.chain = tuple(chain)

    def apply(self, f, trunc=None):
        N = f.trunc if trunc is None else trunc
        # inner results are kept up to N: every operator here only raises grades
        g = f.truncate(N)
        for op in reversed(self.chain):
            g = op.apply(g, N)
        return g


def apply(op: Operator, f: TSeries, trunc: int | None = None) -> TSeries:
    return op.apply(f, trunc)


def _term(tshift, factor, *word):
    if isinstance(factor, int):
        factor = Poly.const(factor)
    return OpTerm(tshift, factor, tuple(word))


def derivation_op(d: Derivation) -> LinOp:
    return LinOp([_term(0, ONE, d)])


def lambda_op() -> LinOp:
    r"""
    ``2 t^2 ((nw^2 + nb) Dt + nw (1 - nb nw) d/dnb + (1 - nb nw) d/dnw)``.
    """
    one_minus = ONE - NB * NW
    return LinOp([
        _term(2, 2 * (NW**2 + NB), Dt),
        _term(2, 2 * NW * one_minus, PartialBullet),
        _term(2, 2 * one_minus, PartialCirc),
    ])


def _left_factor() -> LinOp:
    # Dt + Dcirc - Dbullet - 1
    return LinOp([
        _term(0, ONE, Dt), _term(0, ONE, Dcirc),
        _term(0, -ONE, Dbullet), _term(0, -ONE),
    ])


def _square_root_part() -> LinOp:
    # t nw Dt + t (1 - nb nw) d/dnb
    return LinOp([_term(1, NW, Dt), _term(1, ONE - NB * NW, PartialBullet)])


def omega_op() -> Operator:
    r"""
    ``(1/3)(Dt + Dcirc - Dbullet - 1) o Lambda - (t nw Dt + t (1 - nb nw) d/dnb)^2``.
    """
    B = _square_root_part()
    return Fraction(1, 3) * (_left_factor() @ lambda_op()) - (B @ B)


def omega_n(n: int, p: Poly) -> Poly:
    r"""
    The grade-``n`` action of ``omega_op``: ``omega(t^n p) = t^(n+2) omega_n(n, p)``.

    Written from the explicit two-part form (a first-order operator composed
    with ``n + 1 + Dcirc - Dbullet`` minus a product of two first-order
    operators), not extracted from :func:`omega_op`.
    """
    one_minus = ONE - NB * NW
    inner = (NW**2 + NB) * p * n + NW * one_minus * p.diff(BLACK) + one_minus * p.diff(WHITE)
    first = (inner * (n + 1) + inner.euler(WHITE) - inner.euler(BLACK)) * Fraction(2, 3)
    q = NW * p * n + one_minus * p.diff(BLACK)
    second = NW * q * (n + 1) + one_minus * q.diff(BLACK)
    return first - second


def upsilon_ops() -> tuple[LinOp, LinOp]:
    r"""
    The pair ``(Upsilon_white, Upsilon_black)`` that grows unicellular maps.

    ``Upsilon_white = 2t^2((nb + nw^2)(Dt - Dcirc - Dbullet) + (nb^2 + nw) d/dnb + (1 + nw^3) d/dnw)``
    and ``Upsilon_black`` is its image under the color exchange.
    """
    def build(x: Poly, y: Poly, dx, dy) -> LinOp:
        # x is the variable whose square enters the first factor
        w = 2 * (y + x**2)
        return LinOp([
            _term(2, w, Dt), _term(2, -w, Dcirc), _term(2, -w, Dbullet),
            _term(2, 2 * (y**2 + x), dy),
            _term(2, 2 * (ONE + x**3), dx),
        ])

    white = build(NW, NB, PartialCirc, PartialBullet)
    black = build(NB, NW, PartialBullet, PartialCirc)
    return white, black
