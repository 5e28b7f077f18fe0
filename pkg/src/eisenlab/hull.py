"""First-quadrant convex hull chains of shear sublattices, and the
finite pair-bijection check attached to their consecutive vectors.

The sublattice for level N and shear S is {(x, y) : x = S*y mod N}; the
chain walks the origin-facing boundary of its nonzero first-quadrant
points from (N, 0) to (0, N), listing every lattice point on that
boundary, so consecutive determinants all equal N.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class NonCoprimeShear(ValueError):
    """hull_chain requires gcd(S, N) = 1."""


class NotConsecutive(ValueError):
    """verify_pair_bijection got a pair with determinant != N."""


Vec = tuple[int, int]


@dataclass(frozen=True)
class HullChain:
    level: int
    shear: int
    vectors: tuple[Vec, ...]

    def pairs(self) -> tuple[tuple[Vec, Vec], ...]:
        return tuple(zip(self.vectors, self.vectors[1:]))


def _cross(u: Vec, v: Vec) -> int:
    return u[0] * v[1] - u[1] * v[0]


def sublattice_points(n: int, s: int) -> list[Vec]:
    """Nonzero points of the shear sublattice inside [0, n]^2."""
    pts = []
    for y in range(n + 1):
        for x in range(n + 1):
            if (x - s * y) % n == 0 and (x, y) != (0, 0):
                pts.append((x, y))
    return pts


def hull_chain(n: int, s: int) -> HullChain:
    """Gift-wrap the origin-facing hull boundary from (N, 0) to (0, N).

    >>> hull_chain(1, 0).vectors
    ((1, 0), (0, 1))
    >>> hull_chain(5, 3).vectors
    ((5, 0), (3, 1), (1, 2), (0, 5))
    """
    if n < 1:
        raise ValueError("level must be >= 1")
    s %= n
    if gcd(s, n) != 1:
        raise NonCoprimeShear(f"gcd({s}, {n}) != 1")
    points = sublattice_points(n, s)
    chain = [(n, 0)]
    current = (n, 0)
    while current != (0, n):
        # Hull vertices have strictly decreasing x, so only look left.
        best = None
        for pt in points:
            if pt[0] >= current[0]:
                continue
            if best is None:
                best = pt
                continue
            d_best = (best[0] - current[0], best[1] - current[1])
            d_pt = (pt[0] - current[0], pt[1] - current[1])
            c = _cross(d_best, d_pt)
            if c > 0:
                best = pt
            elif c == 0 and abs(d_pt[0]) < abs(d_best[0]):
                # Collinear: keep the nearest so edge-interior lattice
                # points stay in the chain.
                best = pt
        chain.append(best)
        current = best
    return HullChain(level=n, shear=s, vectors=tuple(chain))


def verify_pair_bijection(n: int, s: int, pair: tuple[Vec, Vec]) -> bool:
    """Check that a consecutive hull pair ((a,b), (c,d)) induces a
    bijection from the congruence lattice onto the integer lattice.

    Work in the finite shadow: over (Z/n)^2 x (Z/n)^2 with v, w standing
    for numerator vectors of n-torsion points, the constraint set is
    Lbar = {(v, w) : S v + w = 0 mod n}.  The pair passes iff the map
    (v, w) -> (a v + b w, c v + d w) mod n kills exactly Lbar, and
    |Lbar| = n^2 with determinant ad - bc = n; together these say the
    induced map on the full preimage lattice hits Z^4 bijectively.
    """
    (a, b), (c, d) = pair
    det = a * d - c * b
    if det != n:
        raise NotConsecutive(f"det {det} != level {n}")
    s %= n
    if gcd(s, n) != 1:
        raise NonCoprimeShear(f"gcd({s}, {n}) != 1")
    constrained = 0
    for v1 in range(n):
        for v2 in range(n):
            for w1 in range(n):
                for w2 in range(n):
                    in_lbar = (s * v1 + w1) % n == 0 and (s * v2 + w2) % n == 0
                    image_zero = (
                        (a * v1 + b * w1) % n == 0
                        and (a * v2 + b * w2) % n == 0
                        and (c * v1 + d * w1) % n == 0
                        and (c * v2 + d * w2) % n == 0
                    )
                    if in_lbar != image_zero:
                        return False
                    if in_lbar:
                        constrained += 1
    return constrained == n * n
