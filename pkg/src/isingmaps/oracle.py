"""
Brute-force enumeration of labeled Ising cubic maps.

A labeled cubic map on ``6n`` half-edges is a pair ``(sigma, alpha)``:
``sigma`` is a product of ``2n`` disjoint 3-cycles (rotations at the
vertices), ``alpha`` a fixed-point-free involution (the edges), and the
generated group is transitive. Faces are the cycles of ``sigma o alpha``.

All sigmas of cycle type ``3^(2n)`` are conjugate and the statistics counted
here are conjugation invariant, so it is enough to fix one canonical sigma
and multiply by the number of such sigmas.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .exact_poly import Poly

MAX_N = 3


@dataclass(frozen=True)
class PermPair:
    sigma: tuple[int, ...]
    alpha: tuple[int, ...]

    def __post_init__(self):
        m = len(self.sigma)
        if len(self.alpha) != m or m % 6:
            raise ValueError("sigma and alpha must act on 6n points")
        if sorted(cycle_type(self.sigma)) != [3] * (m // 3):
            raise ValueError("sigma must be a product of disjoint 3-cycles")
        if sorted(cycle_type(self.alpha)) != [2] * (m // 2):
            raise ValueError("alpha must be a fixed-point-free involution")

    @property
    def n(self) -> int:
        return len(self.sigma) // 6


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if not seen[start]:
            cyc, x = [], start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = perm[x]
            out.append(cyc)
    return out


def cycle_type(perm: Sequence[int]) -> list[int]:
    return [len(c) for c in cycles(perm)]


def canonical_sigma(n: int) -> tuple[int, ...]:
    """``(0 1 2)(3 4 5)...`` on ``6n`` points."""
    return tuple(3 * (x // 3) + (x + 1) % 3 for x in range(6 * n))


def sigma_count(n: int) -> int:
    """Number of permutations of ``6n`` points of cycle type ``3^(2n)``."""
    return math.factorial(6 * n) // (3 ** (2 * n) * math.factorial(2 * n))


def involutions(m: int) -> Iterator[list[int]]:
    """All fixed-point-free involutions of ``range(m)``."""
    alpha = [-1] * m

    def rec():
        try:
            i = alpha.index(-1)
        except ValueError:
            yield list(alpha)
            return
        for j in range(i + 1, m):
            if alpha[j] == -1:
                alpha[i], alpha[j] = j, i
                yield from rec()
                alpha[i] = alpha[j] = -1

    yield from rec()


def is_transitive(sigma: Sequence[int], alpha: Sequence[int]) -> bool:
    parent = list(range(len(sigma)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in (sigma, alpha):
        for x, y in enumerate(perm):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    root = find(0)
    return all(find(x) == root for x in range(len(sigma)))


def genus(pair: PermPair) -> int:
    """Genus from Euler's formula, faces being the cycles of ``sigma o alpha``."""
    return _genus(pair.sigma, pair.alpha)


def _genus(sigma, alpha) -> int:
    m = len(sigma)
    v, e = m // 3, m // 2
    f = len(cycles([sigma[alpha[x]] for x in range(m)]))
    twice = 2 + e - v - f
    if twice % 2 or twice < 0:
        raise ValueError(f"non-integral genus from v={v}, e={e}, f={f}")
    return twice // 2


def _edge_color_counts(sigma, alpha) -> dict[tuple[int, int], int]:
    """Multiset of ``(black mono edges, white mono edges)`` over all vertex colorings."""
    vertex = {}
    for k, cyc in enumerate(cycles(sigma)):
        for x in cyc:
            vertex[x] = k
    nv = len(sigma) // 3
    edges = [(vertex[x], vertex[alpha[x]]) for x in range(len(sigma)) if x < alpha[x]]
    counts: dict[tuple[int, int], int] = {}
    for colors in itertools.product((0, 1), repeat=nv):  # 0 black, 1 white
        eb = ew = 0
        for u, w in edges:
            if colors[u] == colors[w]:
                if colors[u]:
                    ew += 1
                else:
                    eb += 1
        counts[(eb, ew)] = counts.get((eb, ew), 0) + 1
    return counts


def _accumulate(sigma, alphas, factor: int) -> dict[int, Poly]:
    acc: dict[int, dict] = {}
    for alpha in alphas:
        if not is_transitive(sigma, alpha):
            continue
        slot = acc.setdefault(_genus(sigma, alpha), {})
        for (a, b), c in _edge_color_counts(sigma, alpha).items():
            slot[(a, b, 0)] = slot.get((a, b, 0), 0) + c
    return {g: Poly({m: c * factor for m, c in slot.items()}) for g, slot in sorted(acc.items())}


def ising_polynomials(n: int) -> dict[int, Poly]:
    """``{g: I_{n,g}}`` by enumeration against the canonical sigma."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"enumeration is only feasible for 1 <= n <= {MAX_N}")
    sigma = canonical_sigma(n)
    return _accumulate(sigma, involutions(6 * n), sigma_count(n))


def ising_polynomials_exhaustive(n: int = 1) -> dict[int, Poly]:
    """Same counts without the conjugacy reduction (every sigma enumerated); tiny ``n`` only."""
    if n != 1:
        raise ValueError("full double enumeration is only run for n = 1")
    m = 6 * n
    alphas = list(involutions(m))
    total: dict[int, Poly] = {}
    for perm in itertools.permutations(range(m)):
        if sorted(cycle_type(perm)) != [3] * (m // 3):
            continue
        for g, p in _accumulate(perm, alphas, 1).items():
            total[g] = total.get(g, Poly()) + p
    return dict(sorted(total.items()))


def map_counts(n: int) -> dict[int, int]:
    """Uncolored labeled maps by genus."""
    if not 1 <= n <= MAX_N:
        raise ValueError(f"enumeration is only feasible for 1 <= n <= {MAX_N}")
    sigma = canonical_sigma(n)
    out: dict[int, int] = {}
    for alpha in involutions(6 * n):
        if is_transitive(sigma, alpha):
            g = _genus(sigma, alpha)
            out[g] = out.get(g, 0) + sigma_count(n)
    return dict(sorted(out.items()))
