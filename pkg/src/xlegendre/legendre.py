"""Classical Legendre polynomials and their overlap antiderivatives.

The three-term recurrence generates the polynomials in the standard
normalization (P_i(1) = 1, leading coefficient (2i)! / (2^i (i!)^2)).  The
overlap of two indices is the antiderivative of P_{i1} P_{i2} that vanishes
at z = -1; evaluated at z = 1 it yields the classical orthogonality relations
(0 off the diagonal, 2/(2i+1) on it).  Everything here is the base case of
the deformation chains built in :mod:`xlegendre.xfamily`.

Both caches are append-only and guarded by a lock; entries are immutable
polynomials, so recomputation would give identical values (the cache is an
optimization, never semantics).
"""

from __future__ import annotations

import threading
from fractions import Fraction

from .polyring import Poly

__all__ = ["LegendreCache", "legendre_poly", "overlap_R", "classical_norm"]


class LegendreCache:
    """Growable cache of Legendre polynomials and pairwise overlaps."""

    def __init__(self) -> None:
        self._polys: list[Poly] = [Poly.one(), Poly.x()]
        self._overlaps: dict[tuple[int, int], Poly] = {}
        self._lock = threading.Lock()

    def poly(self, i: int) -> Poly:
        if i < 0:
            raise ValueError("polynomial index must be non-negative")
        polys = self._polys
        if i < len(polys):
            return polys[i]
        with self._lock:
            while len(self._polys) <= i:
                k = len(self._polys) - 1
                # (k+1) P_{k+1} = (2k+1) z P_k - k P_{k-1}
                nxt = self._polys[k].shift_mul_x().scale(
                    Fraction(2 * k + 1, k + 1)
                ) - self._polys[k - 1].scale(Fraction(k, k + 1))
                self._polys.append(nxt)
            return self._polys[i]

    def overlap(self, i1: int, i2: int) -> Poly:
        if i1 > i2:
            i1, i2 = i2, i1
        key = (i1, i2)
        hit = self._overlaps.get(key)
        if hit is not None:
            return hit
        product = self.poly(i1) * self.poly(i2)
        value = product.antiderivative_from_minus1()
        with self._lock:
            return self._overlaps.setdefault(key, value)


_CACHE = LegendreCache()


def legendre_poly(i: int) -> Poly:
    """The degree-i Legendre polynomial by the three-term recurrence."""
    return _CACHE.poly(i)


def overlap_R(i1: int, i2: int) -> Poly:
    """Antiderivative of P_{i1} P_{i2} vanishing at z = -1 (degree i1+i2+1)."""
    return _CACHE.overlap(i1, i2)


def classical_norm(i: int) -> Fraction:
    """Squared L2 norm of P_i on [-1, 1]: 2/(2i+1)."""
    if i < 0:
        raise ValueError("polynomial index must be non-negative")
    return Fraction(2, 2 * i + 1)
