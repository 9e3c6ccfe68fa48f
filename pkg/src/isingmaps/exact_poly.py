r"""
Exact sparse polynomials in three variables and truncated series over them.

A :class:`Poly` is a canonical sparse mapping from exponent triples to
rationals. For the Ising series the three variables are ``(nu_b, nu_w, s)``
(black weight, white weight, genus); the bipartite bridge reuses the same
class with variables ``(p2, q2, u)``.

EXAMPLES::

    >>> from isingmaps.exact_poly import NB, NW, S, Poly
    >>> (NB + NW) * (NB - NW) == NB**2 - NW**2
    True
    >>> (1 + S) * (2 + S)
    Poly(2 + 3*s + s^2)
"""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Mapping, Tuple

Rational = Fraction
Monomial = Tuple[int, int, int]

_NAMES = ("nb", "nw", "s")


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Poly:
    r"""
    Immutable sparse polynomial with rational coefficients.

    Zero coefficients are never stored, so two polynomials are equal exactly
    when their term mappings are equal. Iteration order is sorted by
    exponent, which keeps every printed or serialized form reproducible.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None, *, _trusted=False):
        if _trusted:
            self._terms = terms
        else:
            clean = {}
            for mono, c in (terms or {}).items():
                c = _coerce(c)
                if c:
                    a, b, g = mono
                    if a < 0 or b < 0 or g < 0:
                        raise ValueError(f"negative exponent in {mono}")
                    clean[(int(a), int(b), int(g))] = c
            self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, g: int = 0, c=1) -> "Poly":
        return cls({(a, b, g): c})

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        # terms must already be canonical: Fraction values, no zeros
        return cls(terms, _trusted=True)

    @classmethod
    def _from_accumulator(cls, acc: dict) -> "Poly":
        return cls._raw({m: Fraction(c) if isinstance(c, int) else c
                         for m, c in acc.items() if c})

    # inspection ---------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return MappingProxyType(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        for m in sorted(self._terms):
            yield m, self._terms[m]

    def coeff(self, a: int, b: int, g: int = 0) -> Fraction:
        return self._terms.get((a, b, g), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def degree(self) -> int:
        """Total degree in the first two variables (-1 for zero)."""
        return max((a + b for a, b, _ in self._terms), default=-1)

    def s_degree(self) -> int:
        return max((g for _, _, g in self._terms), default=-1)

    def s_coefficient(self, g: int) -> "Poly":
        """The coefficient of ``s**g``, as a polynomial free of ``s``."""
        return Poly._raw({(a, b, 0): c for (a, b, h), c in self._terms.items() if h == g})

    def s_slice(self, g: int) -> "Poly":
        """Keep only the ``s**g`` part (exponent of ``s`` preserved)."""
        return Poly._raw({m: c for m, c in self._terms.items() if m[2] == g})

    def map_coefficients(self, f: Callable[[Fraction], object]) -> "Poly":
        return Poly({m: f(c) for m, c in self._terms.items()})

    # arithmetic ---------------------------------------------------------

    def _other(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, 0) + c
        return Poly._raw({m: c for m, c in acc.items() if c})

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        if len(self._terms) > len(other._terms):
            big, small = self._terms, other._terms
        else:
            big, small = other._terms, self._terms
        acc: dict = {}
        get = acc.get
        for (a1, b1, g1), c1 in small.items():
            for (a2, b2, g2), c2 in big.items():
                key = (a1 + a2, b1 + b2, g1 + g2)
                acc[key] = get(key, 0) + c1 * c2
        return Poly._raw({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus -----------------------------------------------------------

    def diff(self, var: int) -> "Poly":
        """Plain partial derivative in variable ``var`` (0, 1 or 2)."""
        out = {}
        for m, c in self._terms.items():
            e = m[var]
            if e:
                mm = list(m)
                mm[var] -= 1
                out[tuple(mm)] = c * e
        return Poly._raw(out)

    def euler(self, var: int) -> "Poly":
        """Euler operator ``x d/dx`` in variable ``var``."""
        return Poly._raw({m: c * m[var] for m, c in self._terms.items() if m[var]})

    def shift(self, da: int = 0, db: int = 0, dg: int = 0) -> "Poly":
        """Multiply by a monomial."""
        return Poly._raw({(a + da, b + db, g + dg): c for (a, b, g), c in self._terms.items()})

    def swap_colors(self) -> "Poly":
        return Poly._raw({(b, a, g): c for (a, b, g), c in self._terms.items()})

    def evaluate(self, x, y, z):
        """Exact substitution of all three variables."""
        total = Fraction(0)
        for (a, b, g), c in self._terms.items():
            total += c * (Fraction(x) ** a) * (Fraction(y) ** b) * (Fraction(z) ** g)
        return total

    def __call__(self, x, y, z):
        return self.evaluate(x, y, z)

    # display ------------------------------------------------------------

    def to_string(self, names: Iterable[str] = _NAMES) -> str:
        names = tuple(names)
        if not self._terms:
            return "0"
        parts = []
        for mono in sorted(self._terms, key=lambda m: (m[2], m[0] + m[1], m)):
            c = self._terms[mono]
            factors = []
            for name, e in zip(names, mono):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            if not body:
                s = str(abs(c))
            elif abs(c) == 1:
                s = body
            else:
                s = f"{abs(c)}*{body}"
            parts.append(("-" if c < 0 else "+", s))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            text += f" {sign} {s}"
        return text

    def __repr__(self):
        return f"Poly({self.to_string()})"


ZERO = Poly._raw({})
ONE = Poly.const(1)
NB = Poly.monomial(1, 0, 0)
NW = Poly.monomial(0, 1, 0)
S = Poly.monomial(0, 0, 1)


def poly_arith(kind: str, p: Poly, q: Poly) -> Poly:
    if kind == "add":
        return p + q
    if kind == "sub":
        return p - q
    if kind == "mul":
        return p * q
    raise ValueError(f"unknown operation {kind!r}")


def poly_eval(p: Poly, nb, nw, s) -> Fraction:
    return p.evaluate(nb, nw, s)


def swap_colors(p: Poly) -> Poly:
    return p.swap_colors()


class TSeries:
    r"""
    Truncated series ``sum_{n <= trunc} c_n t^n`` with :class:`Poly` coefficients.

    Absent grades are zero; grades above ``trunc`` are never stored.
    """

    __slots__ = ("trunc", "_coeffs")

    def __init__(self, trunc: int, coeffs: Mapping[int, Poly] | None = None):
        if trunc < 0:
            raise ValueError("truncation order must be non-negative")
        self.trunc = trunc
        clean = {}
        for n, p in (coeffs or {}).items():
            if n < 0:
                raise ValueError("negative grade")
            if n <= trunc and p:
                clean[n] = p
        self._coeffs = clean

    @property
    def coeffs(self) -> Mapping[int, Poly]:
        return MappingProxyType(self._coeffs)

    def __getitem__(self, n: int) -> Poly:
        if n > self.trunc:
            raise IndexError(f"grade {n} beyond truncation {self.trunc}")
        return self._coeffs.get(n, ZERO)

    def grades(self) -> list[int]:
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def truncate(self, trunc: int) -> "TSeries":
        return TSeries(trunc, self._coeffs)

    def map(self, f: Callable[[Poly], Poly]) -> "TSeries":
        return TSeries(self.trunc, {n: f(p) for n, p in self._coeffs.items()})

    def _check(self, other: "TSeries"):
        if not isinstance(other, TSeries):
            raise TypeError("expected a TSeries")
        if other.trunc != self.trunc:
            raise ValueError(f"truncation mismatch: {self.trunc} vs {other.trunc}")

    def __add__(self, other: "TSeries") -> "TSeries":
        self._check(other)
        out = dict(self._coeffs)
        for n, p in other._coeffs.items():
            out[n] = out.get(n, ZERO) + p
        return TSeries(self.trunc, out)

    def __neg__(self):
        return self.map(lambda p: -p)

    def __sub__(self, other: "TSeries") -> "TSeries":
        return self + (-other)

    def scale(self, c) -> "TSeries":
        if isinstance(c, Poly):
            return self.map(lambda p: p * c)
        return self.map(lambda p: p * _coerce(c))

    def shift(self, k: int) -> "TSeries":
        """Multiply by ``t**k`` (grades pushed past ``trunc`` are dropped)."""
        return TSeries(self.trunc, {n + k: p for n, p in self._coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, TSeries):
            return tseries_mul(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return self.trunc == other.trunc and self._coeffs == other._coeffs

    def __repr__(self):
        body = ", ".join(f"{n}: {p.to_string()}" for n, p in sorted(self._coeffs.items()))
        return f"TSeries(trunc={self.trunc}, {{{body}}})"


def tseries_mul(f: TSeries, g: TSeries) -> TSeries:
    f._check(g)
    N = f.trunc
    out: dict[int, Poly] = {}
    gc = g._coeffs
    for i, p in f._coeffs.items():
        for j, q in gc.items():
            if i + j <= N:
                out[i + j] = out.get(i + j, ZERO) + p * q
    return TSeries(N, out)
