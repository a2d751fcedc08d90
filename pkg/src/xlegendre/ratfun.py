"""Reduced rational functions over the exact polynomial ring.

A ``RatFun`` is a quotient num/den of two :class:`~xlegendre.polyring.Poly`
values kept in canonical form: the denominator is nonzero and monic, the pair
has constant gcd, and the zero element is 0/1.  Canonical form makes equality
a plain coefficient comparison, which is what lets every verification in this
package assert with zero tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .polyring import InexactDivisionError, Poly, RatLike, poly_gcd

__all__ = ["PoleError", "RatFun"]


class PoleError(ZeroDivisionError):
    """Evaluation of a rational function at a pole."""


def _coerce(value: object) -> "RatFun | None":
    if isinstance(value, RatFun):
        return value
    if isinstance(value, Poly):
        return RatFun.from_poly(value)
    if isinstance(value, (int, Fraction)):
        return RatFun.from_poly(Poly.constant(value))
    return None


class RatFun:
    """Canonical quotient of two polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        # trusts canonical input; use RatFun.of for arbitrary pairs
        self.num = num
        self.den = den

    @classmethod
    def of(cls, num: Poly, den: Poly | None = None) -> "RatFun":
        """Build and canonicalize num/den (reduce, then make den monic)."""
        if den is None:
            den = Poly.one()
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero:
            return _ZERO
        g = poly_gcd(num, den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lc = den.leading_coefficient
        if lc != 1:
            inv = 1 / lc
            num = num.scale(inv)
            den = den.scale(inv)
        return cls(num, den)

    @classmethod
    def from_poly(cls, p: Poly) -> "RatFun":
        return cls(p, Poly.one())

    @classmethod
    def zero(cls) -> "RatFun":
        return _ZERO

    @classmethod
    def one(cls) -> "RatFun":
        return _ONE

    # -- queries ---------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    # -- arithmetic --------------------------------------------------------------

    def __add__(self, other: object) -> "RatFun":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.num, self.den
        c, d = other.num, other.den
        g = poly_gcd(b, d)
        if g.degree > 0:
            bb, dd = b.exact_div(g), d.exact_div(g)
        else:
            bb, dd = b, d
        return RatFun.of(a * dd + c * bb, b * dd)

    __radd__ = __add__

    def __sub__(self, other: object) -> "RatFun":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> "RatFun":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "RatFun":
        return RatFun(-self.num, self.den)

    def __mul__(self, other: object) -> "RatFun":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return _ZERO
        a, b = self.num, self.den
        c, d = other.num, other.den
        g1 = poly_gcd(a, d)
        if g1.degree > 0:
            a, d = a.exact_div(g1), d.exact_div(g1)
        g2 = poly_gcd(c, b)
        if g2.degree > 0:
            c, b = c.exact_div(g2), b.exact_div(g2)
        num = a * c
        den = b * d
        lc = den.leading_coefficient
        if lc != 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        return RatFun(num, den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RatFun":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("division by the zero rational function")
        return self * RatFun(other.den, other.num)._renormalized()

    def __rtruediv__(self, other: object) -> "RatFun":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def _renormalized(self) -> "RatFun":
        lc = self.den.leading_coefficient
        if lc == 1:
            return self
        inv = 1 / lc
        return RatFun(self.num.scale(inv), self.den.scale(inv))

    # -- analysis -----------------------------------------------------------------

    def derivative(self) -> "RatFun":
        u, v = self.num, self.den
        if self.is_polynomial:
            return RatFun.of(u.differentiate(), v)
        return RatFun.of(
            u.differentiate() * v - u * v.differentiate(), v * v
        )

    def evaluate(self, x: RatLike) -> Fraction:
        """Exact value at x; raises PoleError on a pole."""
        dv = self.den.evaluate(x)
        if dv == 0:
            raise PoleError(f"pole at z = {x}")
        return self.num.evaluate(x) / dv

    def as_polynomial(self) -> Poly:
        """The exact polynomial quotient; raises if the value is not polynomial."""
        if self.is_polynomial:
            return self.num.scale(1 / self.den.leading_coefficient)
        raise InexactDivisionError(
            "rational function is not a polynomial (nonconstant denominator)"
        )

    # -- identity ---------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        coerced = _coerce(other)
        if coerced is None:
            return NotImplemented
        return self.num == coerced.num and self.den == coerced.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __str__(self) -> str:
        if self.is_polynomial:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RatFun({self!s})"

    # -- serialization -------------------------------------------------------------

    def to_json(self) -> Mapping[str, Sequence[str]]:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: Mapping[str, Sequence[str]]) -> "RatFun":
        return cls.of(Poly.from_json(data["num"]), Poly.from_json(data["den"]))


_ZERO = RatFun(Poly.zero(), Poly.one())
_ONE = RatFun(Poly.one(), Poly.one())
