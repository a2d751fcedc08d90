"""Exact admissibility decisions and orthogonality norms.

A key is admissible when every parameter satisfies t > -m - 1/2; exactly then
the deformation polynomial has no zeros on [-1, 1], the weight 1/tau^2 is
finite and positive there, and the family polynomials are orthogonal with

    norm(i) = 2/(1+2i)          for levels the key does not deform,
    norm(i) = 2/(1+2i+2*t_i)    for deformed levels.

The zero-free condition is decidable exactly with a Sturm chain, and the
package treats the equivalence of the two verdicts as an invariant: a
disagreement is a hard error, never a silent preference.  Since tau(-1) = 1,
"no zeros on [-1, 1]" and "positive on [-1, 1]" coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polyring import Poly, Rat, RatLike
from .xfamily import FamilyKey, family, tau

__all__ = [
    "InadmissibleKeyError",
    "SturmChain",
    "AdmissibilityRecord",
    "OrthogonalityEntry",
    "OrthogonalityReport",
    "admissibility_formula",
    "admissibility_record",
    "is_admissible",
    "norm_of",
    "norm_table",
    "orthogonality_check",
    "root_count",
]


class InadmissibleKeyError(ValueError):
    """Operation requires an admissible key (weight finite on [-1, 1])."""


@dataclass(frozen=True)
class SturmChain:
    """Sign-variation chain: p, p', then negated remainders down to the gcd.

    Every element is normalized to its primitive integer part (a positive
    rescaling, so sign patterns are untouched and coefficients stay small).
    """

    chain: tuple[Poly, ...]

    @classmethod
    def of(cls, p: Poly) -> "SturmChain":
        if p.is_zero:
            raise ValueError("Sturm chain of the zero polynomial")
        first = p.primitive_part()
        chain = [first]
        if first.degree > 0:
            chain.append(first.differentiate().primitive_part())
            while chain[-1].degree > 0:
                rem = chain[-2] % chain[-1]
                if rem.is_zero:
                    break
                chain.append((-rem).primitive_part())
        return cls(tuple(chain))

    def variations_at(self, x: RatLike) -> int:
        signs = []
        for p in self.chain:
            v = p.evaluate(x)
            if v:
                signs.append(v > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_count(p: Poly, lo: RatLike, hi: RatLike) -> int:
    """Number of distinct real roots of p in the closed interval [lo, hi]."""
    if p.is_zero:
        raise ValueError("root count of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise ValueError("interval must satisfy lo < hi")
    endpoint_roots = 0
    q = p
    for point in (lo, hi):
        if q.evaluate(point) == 0:
            endpoint_roots += 1
            linear = Poly([-point, 1])
            while q.evaluate(point) == 0:
                q = q.exact_div(linear)
    if q.degree <= 0:
        return endpoint_roots
    chain = SturmChain.of(q)
    return chain.variations_at(lo) - chain.variations_at(hi) + endpoint_roots


def admissibility_formula(key: FamilyKey) -> bool:
    """Parameter bounds t > -m - 1/2, one per deformation level."""
    return all(t > -Fraction(2 * m + 1, 2) for m, t in zip(key.m, key.t))


@dataclass(frozen=True)
class AdmissibilityRecord:
    """Formula verdict next to the Sturm root count of tau on [-1, 1]."""

    key: FamilyKey
    formula_verdict: bool
    roots_in_interval: int

    @property
    def consistent(self) -> bool:
        return self.formula_verdict == (self.roots_in_interval == 0)

    def to_json_obj(self) -> dict:
        return {
            "kind": "admissibility",
            "key": self.key.to_json_obj(),
            "formula_verdict": self.formula_verdict,
            "roots_in_interval": self.roots_in_interval,
            "pass": self.consistent,
        }


def admissibility_record(key: FamilyKey) -> AdmissibilityRecord:
    return AdmissibilityRecord(
        key, admissibility_formula(key), root_count(tau(key), -1, 1)
    )


def is_admissible(key: FamilyKey, cross_check: bool = False) -> bool:
    """Admissibility verdict by the parameter bounds.

    With ``cross_check`` the Sturm count of tau on [-1, 1] is computed as
    well and any disagreement with the formula raises: the equivalence of the
    two criteria is an invariant of the construction, not a choice.
    """
    verdict = admissibility_formula(key)
    if cross_check:
        record = admissibility_record(key)
        if not record.consistent:
            raise AssertionError(
                f"admissibility formula and Sturm count disagree for {key}: "
                f"formula={record.formula_verdict}, "
                f"roots={record.roots_in_interval}"
            )
    return verdict


def norm_of(key: FamilyKey, i: int) -> Fraction:
    """Squared weighted norm of the i-th family polynomial."""
    if not admissibility_formula(key):
        raise InadmissibleKeyError(f"{key} is not admissible")
    if i < 0:
        raise ValueError("polynomial index must be non-negative")
    shift = 2 * key.parameter_for(i) if i in key.m else Fraction(0)
    return Fraction(2) / (1 + 2 * i + shift)


def norm_table(key: FamilyKey, max_i: int) -> dict[int, Fraction]:
    """Norms for indices 0..max_i; all positive for admissible keys."""
    return {i: norm_of(key, i) for i in range(max_i + 1)}


@dataclass(frozen=True)
class OrthogonalityEntry:
    i1: int
    i2: int
    expected: Fraction
    actual: Fraction

    @property
    def passed(self) -> bool:
        return self.expected == self.actual

    def to_json_obj(self) -> dict:
        return {
            "i1": self.i1,
            "i2": self.i2,
            "expected": f"{self.expected.numerator}/{self.expected.denominator}",
            "actual": f"{self.actual.numerator}/{self.actual.denominator}",
            "pass": self.passed,
        }


@dataclass(frozen=True)
class OrthogonalityReport:
    key: FamilyKey
    max_index: int
    entries: tuple[OrthogonalityEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_json_obj(self) -> dict:
        return {
            "kind": "orthogonality",
            "key": self.key.to_json_obj(),
            "max_index": self.max_index,
            "pass": self.passed,
            "entries": [e.to_json_obj() for e in self.entries],
        }


def orthogonality_check(key: FamilyKey, max_i: int) -> OrthogonalityReport:
    """Evaluate every deformed overlap at z = 1 against the norm formulas.

    Off-diagonal overlaps must vanish there; diagonal ones must equal
    ``norm_of``.  Everything is exact rational arithmetic.
    """
    if not admissibility_formula(key):
        raise InadmissibleKeyError(f"{key} is not admissible")
    fam = family(key)
    overlaps = fam.recursive(max_i).overlaps
    entries = []
    for i1 in range(max_i + 1):
        for i2 in range(i1, max_i + 1):
            expected = norm_of(key, i1) if i1 == i2 else Fraction(0)
            actual = overlaps[(i1, i2)].evaluate(1)
            entries.append(OrthogonalityEntry(i1, i2, expected, actual))
    return OrthogonalityReport(key, max_i, tuple(entries))
