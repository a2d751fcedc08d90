"""Shared test utilities: compact polynomial builders and parameter lattices."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from xlegendre import FamilyKey, Poly


def sparse_poly(pairs: dict[int, int], den: int = 1) -> Poly:
    """Polynomial from {power: integer numerator} over a common denominator."""
    top = max(pairs)
    return Poly([Fraction(pairs.get(k, 0), den) for k in range(top + 1)])


def rodrigues_legendre(i: int) -> Poly:
    """Independent generator: (1/(2^i i!)) * d^i/dz^i (z^2-1)^i."""
    p = Poly([-1, 0, 1]) ** i
    for _ in range(i):
        p = p.differentiate()
    return p.scale(Fraction(1, 2**i * math.factorial(i)))


LATTICE_T = (Fraction(1), Fraction(-1, 4), Fraction(7, 2))


def full_lattice(max_n: int = 3, max_m: int = 5, include_classical: bool = False):
    """Every key with n <= max_n distinct ascending levels <= max_m and
    parameters drawn independently from LATTICE_T."""
    keys = [FamilyKey.classical()] if include_classical else []
    for n in range(1, max_n + 1):
        for m in itertools.combinations(range(max_m + 1), n):
            for t in itertools.product(LATTICE_T, repeat=n):
                keys.append(FamilyKey(m, t))
    return keys
