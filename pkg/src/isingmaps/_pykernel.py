"""Pure-Python implementation of the solver's hot kernels.

Integer polynomials are plain dicts ``{(a, b, g): int}``. ``prepare`` turns
one into an opaque operand for ``convolve_sum``; the compiled core exposes
the same two functions.
"""
from __future__ import annotations

NAME = "python"


class Prepared:
    __slots__ = ("by_genus", "amax", "bmax", "gmax")

    def __init__(self, poly: dict):
        by_genus: dict[int, list] = {}
        amax = bmax = gmax = 0
        for (a, b, g), c in sorted(poly.items(), key=lambda kv: (kv[0][2], kv[0][0], kv[0][1])):
            if c:
                by_genus.setdefault(g, []).append((a, b, c))
                amax, bmax, gmax = max(amax, a), max(bmax, b), max(gmax, g)
        self.by_genus = by_genus
        self.amax, self.bmax, self.gmax = amax, bmax, gmax

    def __len__(self):
        return sum(len(v) for v in self.by_genus.values())


def prepare(poly: dict) -> Prepared:
    return Prepared(poly)


def convolve_sum(pairs, gmax: int, threads: int = 1) -> dict:
    """Return ``sum(w * P * Q for w, P, Q in pairs)`` keeping only genera ``g <= gmax``."""
    width = 1 + max((P.bmax + Q.bmax for _, P, Q in pairs), default=0)
    acc: dict[tuple[int, int], dict[int, int]] = {}
    for w, P, Q in pairs:
        if not w:
            continue
        for g1, terms1 in P.by_genus.items():
            for g2, terms2 in Q.by_genus.items():
                g = g1 + g2
                if g > gmax:
                    continue
                slot = acc.setdefault(g, {})
                get = slot.get
                flat2 = [(a2 * width + b2, c2) for a2, b2, c2 in terms2]
                for a1, b1, c1 in terms1:
                    base = a1 * width + b1
                    wc = w * c1
                    for k2, c2 in flat2:
                        k = base + k2
                        slot[k] = get(k, 0) + wc * c2
    out = {}
    for g, slot in acc.items():
        for k, c in slot.items():
            if c:
                out[(k // width, k % width, g)] = c
    return out
