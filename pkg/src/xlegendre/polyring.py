"""Exact univariate polynomial arithmetic over the rationals.

A polynomial in ``z`` is stored densely as a tuple of integer coefficients
together with a single positive integer denominator, so that

    p(z) = (nums[0] + nums[1]*z + ... + nums[d]*z^d) / den.

The pair is kept normalized: trailing zero coefficients are trimmed, the
denominator is positive, and gcd(content(nums), den) == 1.  Externally every
coefficient is an exact ``fractions.Fraction``; the shared-denominator layout
just keeps the inner loops (convolutions, eliminations, remainder chains) in
pure integer arithmetic, which is what makes determinant expansion and the
deformation recursions fast enough to verify whole parameter lattices.

Scalars are ``fractions.Fraction`` throughout (aliased as ``Rat``): it already
guarantees lowest terms and a positive denominator, which is exactly the
canonical form we need.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
RatLike = Union[Fraction, int, str]

NEG_INFINITY = float("-inf")

__all__ = [
    "Rat",
    "RatLike",
    "NEG_INFINITY",
    "InexactDivisionError",
    "Poly",
    "parse_rat",
    "rat_str",
    "poly_gcd",
]


class InexactDivisionError(ArithmeticError):
    """A division that was required to be exact left a nonzero remainder."""


_RAT_PATTERN = re.compile(r"^-?\d+(?:/\d+)?$")


def parse_rat(text: str) -> Rat:
    """Parse an exact rational from the grammar ``['-'] digits ['/' digits]``."""
    text = text.strip()
    if not _RAT_PATTERN.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def rat_str(value: Rat) -> str:
    """Render a rational as ``p/q`` with the denominator always explicit."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def _content(nums: Iterable[int]) -> int:
    g = 0
    for v in nums:
        if v:
            g = math.gcd(g, v)
            if g == 1:
                return 1
    return g


# ---------------------------------------------------------------------------
# Kronecker-substitution multiplication.
#
# For large operands the coefficient convolution is done with a single big
# integer multiplication: coefficients are packed into fixed-width bit slots,
# multiplied, and unpacked with a bias so that negative digits decode
# correctly.  CPython's big-integer multiply runs at C speed, which beats a
# Python-level double loop by well over an order of magnitude at the degrees
# produced by determinant expansion.
# ---------------------------------------------------------------------------

_SCHOOLBOOK_CUTOFF = 900  # product of operand lengths below which looping wins


def _pack(nums: Sequence[int], slot_bytes: int) -> int:
    pos = bytearray(len(nums) * slot_bytes)
    neg = bytearray(len(nums) * slot_bytes)
    off = 0
    for v in nums:
        if v > 0:
            pos[off : off + slot_bytes] = v.to_bytes(slot_bytes, "little")
        elif v < 0:
            neg[off : off + slot_bytes] = (-v).to_bytes(slot_bytes, "little")
        off += slot_bytes
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    la, lb = len(a), len(b)
    amax = max(map(abs, a))
    bmax = max(map(abs, b))
    bound = amax * bmax * min(la, lb)
    slot_bits = bound.bit_length() + 2  # room for sign bias
    slot_bytes = (slot_bits + 7) // 8
    slot_bits = slot_bytes * 8
    product = _pack(a, slot_bytes) * _pack(b, slot_bytes)

    n_out = la + lb - 1
    half = 1 << (slot_bits - 1)
    bias_slot = half.to_bytes(slot_bytes, "little")
    bias = int.from_bytes(bias_slot * n_out, "little")
    raw = (product + bias).to_bytes(n_out * slot_bytes + slot_bytes, "little")

    # biased digits never overflow a slot, so chunks decode independently
    out = []
    for k in range(n_out):
        chunk = int.from_bytes(raw[k * slot_bytes : (k + 1) * slot_bytes], "little")
        out.append(chunk - half)
    return out


def _mul_nums(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) > len(b):
        a, b = b, a
    if len(a) * len(b) <= _SCHOOLBOOK_CUTOFF:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return out
    return _mul_kronecker(a, b)


# ---------------------------------------------------------------------------
# Long division on the shared-denominator representation.
#
# ``_divmod_nums`` divides an integer-coefficient polynomial by another and
# tracks the remainder as (integer list, denominator): the running denominator
# only grows by the reduced denominator of each quotient coefficient, so
# exact divisions (the common case in the deformation recursion, where the
# quotient is again a small-denominator polynomial) stay in small integers.
# ---------------------------------------------------------------------------


def _divmod_nums(
    an: Sequence[int], bn: Sequence[int]
) -> tuple[list[int], int, list[int], int]:
    """Divide integer-coefficient polynomials over Q.

    Returns (quotient nums, quotient den, remainder nums, remainder den);
    both parts are tracked as integer lists over a shared denominator.
    """
    rn = list(an)
    rd = 1
    db = len(bn) - 1
    bl = bn[-1]
    if len(rn) <= db:
        return [], 1, rn, 1
    qn = [0] * (len(rn) - db)
    qd = 1
    for k in range(len(rn) - 1, db - 1, -1):
        top = rn[k]
        if top:
            den = rd * bl
            g = math.gcd(top, den)
            cn, cd = top // g, den // g
            if cd < 0:
                cn, cd = -cn, -cd
            if cd != 1:
                gg = math.gcd(qd, cd)
                mult = cd // gg
                if mult != 1:
                    for idx in range(len(qn)):
                        if qn[idx]:
                            qn[idx] *= mult
                    qd *= mult
                qn[k - db] = cn * (qd // cd)
                for i in range(k):
                    rn[i] *= cd
            else:
                qn[k - db] = cn * qd
            f = cn * rd
            off = k - db
            for i in range(db):
                bi = bn[i]
                if bi:
                    rn[off + i] -= f * bi
            rn[k] = 0
            if cd != 1:
                rd *= cd
                if rd.bit_length() > 256:
                    g = rd
                    for v in rn:
                        if v:
                            g = math.gcd(g, v)
                            if g == 1:
                                break
                    if g > 1:
                        rd //= g
                        rn = [v // g for v in rn]
    del rn[db:]
    while rn and rn[-1] == 0:
        rn.pop()
    return qn, qd, rn, rd


_F0 = Fraction(0)


class Poly:
    """Immutable dense univariate polynomial with exact rational coefficients."""

    __slots__ = ("_nums", "_den")

    def __init__(self, coefficients: Iterable[RatLike] = ()):
        fracs = []
        for c in coefficients:
            if isinstance(c, str):
                c = parse_rat(c)
            else:
                c = Fraction(c)
            fracs.append(c)
        den = 1
        for c in fracs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [int(c.numerator * (den // c.denominator)) for c in fracs]
        while nums and nums[-1] == 0:
            nums.pop()
        self._nums = tuple(nums)
        self._den = den
        self._normalize_content()

    def _normalize_content(self) -> None:
        if not self._nums:
            self._den = 1
            return
        g = math.gcd(_content(self._nums), self._den)
        if g > 1:
            self._nums = tuple(v // g for v in self._nums)
            self._den //= g

    @classmethod
    def _raw(cls, nums: list[int], den: int) -> "Poly":
        """Build from integer coefficients over ``den``, normalizing in place."""
        while nums and nums[-1] == 0:
            nums.pop()
        self = object.__new__(cls)
        if not nums:
            self._nums = ()
            self._den = 1
            return self
        if den < 0:
            den = -den
            nums = [-v for v in nums]
        g = math.gcd(_content(nums), den)
        if g > 1:
            nums = [v // g for v in nums]
            den //= g
        self._nums = tuple(nums)
        self._den = den
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "Poly":
        return _ZERO

    @classmethod
    def one(cls) -> "Poly":
        return _ONE

    @classmethod
    def x(cls) -> "Poly":
        return _X

    @classmethod
    def constant(cls, value: RatLike) -> "Poly":
        c = parse_rat(value) if isinstance(value, str) else Fraction(value)
        return cls._raw([c.numerator], c.denominator)

    @classmethod
    def monomial(cls, power: int, coefficient: RatLike = 1) -> "Poly":
        c = parse_rat(coefficient) if isinstance(coefficient, str) else Fraction(coefficient)
        return cls._raw([0] * power + [c.numerator], c.denominator)

    # -- basic queries -------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._nums

    @property
    def degree(self) -> int | float:
        """Degree of the polynomial; the zero polynomial has degree -inf."""
        return len(self._nums) - 1 if self._nums else NEG_INFINITY

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        d = self._den
        return tuple(Fraction(n, d) for n in self._nums)

    def coefficient(self, power: int) -> Fraction:
        if 0 <= power < len(self._nums):
            return Fraction(self._nums[power], self._den)
        return _F0

    @property
    def leading_coefficient(self) -> Fraction:
        return Fraction(self._nums[-1], self._den) if self._nums else _F0

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: "Poly | RatLike") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        an, ad = self._nums, self._den
        bn, bd = other._nums, other._den
        g = math.gcd(ad, bd)
        ma, mb = bd // g, ad // g
        den = ad * ma
        if len(an) >= len(bn):
            out = [v * ma for v in an]
            for i, v in enumerate(bn):
                out[i] += v * mb
        else:
            out = [v * mb for v in bn]
            for i, v in enumerate(an):
                out[i] += v * ma
        return Poly._raw(out, den)

    __radd__ = __add__

    def __sub__(self, other: "Poly | RatLike") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: "Poly | RatLike") -> "Poly":
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __neg__(self) -> "Poly":
        if not self._nums:
            return self
        p = object.__new__(Poly)
        p._nums = tuple(-v for v in self._nums)
        p._den = self._den
        return p

    def __mul__(self, other: "Poly | RatLike") -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        if not self._nums or not other._nums:
            return _ZERO
        return Poly._raw(_mul_nums(self._nums, other._nums), self._den * other._den)

    def __rmul__(self, other: "Poly | RatLike") -> "Poly":
        return self.__mul__(other)

    def scale(self, factor: RatLike) -> "Poly":
        factor = Fraction(factor)
        if not factor:
            return _ZERO
        return Poly._raw(
            [v * factor.numerator for v in self._nums], self._den * factor.denominator
        )

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative power of a polynomial")
        result = _ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def shift_mul_x(self) -> "Poly":
        """Multiply by z (coefficient shift)."""
        if not self._nums:
            return self
        return Poly._raw([0, *self._nums], self._den)

    # -- calculus ------------------------------------------------------------

    def differentiate(self) -> "Poly":
        """Exact formal derivative."""
        nums = self._nums
        if len(nums) <= 1:
            return _ZERO
        return Poly._raw([k * nums[k] for k in range(1, len(nums))], self._den)

    def antiderivative_from_minus1(self) -> "Poly":
        """The antiderivative F with F' = self and F(-1) = 0, exactly."""
        d = self._den
        fracs = [_F0]
        for k, n in enumerate(self._nums):
            fracs.append(Fraction(n, d * (k + 1)))
        partial = Poly(fracs)
        return partial - partial.evaluate(-1)

    def evaluate(self, x: RatLike) -> Fraction:
        """Exact Horner evaluation."""
        x = Fraction(x)
        if not self._nums:
            return _F0
        xn, xd = x.numerator, x.denominator
        acc = 0
        pw = 1
        for k in range(len(self._nums) - 1, -1, -1):
            acc = acc * xn + self._nums[k] * pw
            if k:
                pw *= xd
        return Fraction(acc, self._den * pw)

    # -- division ------------------------------------------------------------

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not isinstance(other, Poly):
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if len(other._nums) == 1:
            return self.scale(Fraction(other._den, other._nums[0])), _ZERO
        if len(self._nums) < len(other._nums):
            return _ZERO, self
        qn, qd, rn, rd = _divmod_nums(self._nums, other._nums)
        q = Poly._raw([v * other._den for v in qn], qd * self._den)
        r = Poly._raw(rn, rd * self._den)
        return q, r

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        """Quotient self/other, raising InexactDivisionError on a remainder."""
        q = self.exact_div_or_none(other)
        if q is None:
            raise InexactDivisionError("polynomial division left a remainder")
        return q

    def exact_div_or_none(self, other: "Poly") -> "Poly | None":
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.is_zero:
            return _ZERO
        if len(other._nums) == 1:
            return self.scale(Fraction(other._den, other._nums[0]))
        if len(self._nums) < len(other._nums):
            return None
        qn, qd, rn, _ = _divmod_nums(self._nums, other._nums)
        if rn:
            return None
        return Poly._raw([v * other._den for v in qn], qd * self._den)

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        lc = self.leading_coefficient
        return self.scale(1 / lc) if lc != 1 else self

    def primitive_part(self) -> "Poly":
        """Integer-coefficient multiple with content 1 and the same sign."""
        if self.is_zero:
            return self
        c = _content(self._nums)
        return Poly._raw([v // c for v in self._nums], 1)

    # -- equality / hashing / rendering ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.constant(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._nums == other._nums and self._den == other._den

    def __hash__(self) -> int:
        return hash((self._nums, self._den))

    def __bool__(self) -> bool:
        return bool(self._nums)

    def __str__(self) -> str:
        if not self._nums:
            return "0"
        parts = []
        for k in range(len(self._nums) - 1, -1, -1):
            c = self.coefficient(k)
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "z" if k == 1 else f"z^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self!s})"

    # -- serialization ---------------------------------------------------------

    def to_json(self) -> list[str]:
        """Coefficient strings ``p/q``, index = power of z."""
        return [rat_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(parse_rat(s) for s in data)


def _coerce(value: object) -> Poly | None:
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return None


_ZERO = Poly()
_ONE = Poly([1])
_X = Poly([0, 1])


# ---------------------------------------------------------------------------
# Polynomial gcd over Q[z].
#
# Strategy: strip to primitive integer parts, then certify coprimality with a
# single gcd modulo a large prime (the modular gcd degree can only
# overestimate the true degree, so degree zero mod p proves coprimality).
# Only when the modular image is nonconstant do we run the exact Euclidean
# chain, normalizing every remainder to its primitive integer part to keep
# coefficient growth linear.
# ---------------------------------------------------------------------------

_GCD_PRIMES = (2305843009213693951, 2147483647, 618970019642690137449562111)


def _rem_mod_p(a: list[int], b: list[int], p: int) -> list[int]:
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    a = a[:]
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            c = c * inv % p
            off = k - db
            for i in range(db):
                bi = b[i]
                if bi:
                    a[off + i] = (a[off + i] - c * bi) % p
    del a[db:]
    while a and a[-1] == 0:
        a.pop()
    return a


def _gcd_degree_mod_p(an: Sequence[int], bn: Sequence[int], p: int) -> int | None:
    if an[-1] % p == 0 or bn[-1] % p == 0:
        return None
    fa = [v % p for v in an]
    fb = [v % p for v in bn]
    while fb:
        fa, fb = fb, _rem_mod_p(fa, fb, p)
    return len(fa) - 1


def _primitive_positive(nums: Sequence[int]) -> list[int]:
    g = _content(nums)
    if nums[-1] < 0:
        g = -g
    return [v // g for v in nums]


def _prem_int(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Integer pseudo-remainder of f by g (up to a positive constant factor)."""
    dg = len(g) - 1
    lg = g[-1]
    r = list(f)
    for k in range(len(r) - 1, dg - 1, -1):
        top = r[k]
        if top:
            for i in range(k):
                r[i] *= lg
            off = k - dg
            for i in range(dg):
                gi = g[i]
                if gi:
                    r[off + i] -= top * gi
            r[k] = 0
    del r[dg:]
    while r and r[-1] == 0:
        r.pop()
    return r


def _divides_int(num: Sequence[int], div: Sequence[int]) -> bool:
    _, _, rn, _ = _divmod_nums(num, div)
    return not rn


# Deterministic Miller-Rabin for 64-bit inputs; used to stream word-size
# primes for the modular gcd.

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime_64(n: int) -> bool:
    if n < 2:
        return False
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_PRIME_CACHE: list[int] = []


def _prime_stream():
    for p in _PRIME_CACHE:
        yield p
    n = _PRIME_CACHE[-1] + 2 if _PRIME_CACHE else (1 << 62) + 1
    while True:
        if _is_prime_64(n):
            _PRIME_CACHE.append(n)
            yield n
        n += 2


def _gcd_mod_p_monic(an: Sequence[int], bn: Sequence[int], p: int) -> list[int]:
    fa = [v % p for v in an]
    fb = [v % p for v in bn]
    while fb:
        fa, fb = fb, _rem_mod_p(fa, fb, p)
    inv = pow(fa[-1], -1, p)
    return [v * inv % p for v in fa]


def _centered(v: int, m: int) -> int:
    v %= m
    return v - m if 2 * v > m else v


def _gcd_modular(fa: list[int], fb: list[int]) -> list[int] | None:
    """Primitive integer gcd via CRT over word-size primes, division-verified."""
    lead = math.gcd(fa[-1], fb[-1])
    residues: list[int] | None = None
    modulus = 0
    best_deg: int | None = None
    prev_cand: list[int] | None = None
    for p in _prime_stream():
        if fa[-1] % p == 0 or fb[-1] % p == 0:
            continue
        gp = _gcd_mod_p_monic(fa, fb, p)
        d = len(gp) - 1
        if d == 0:
            return [1]
        scaled = [v * lead % p for v in gp]
        if best_deg is None or d < best_deg:
            residues, modulus, best_deg = scaled, p, d
            prev_cand = None
        elif d > best_deg:
            continue  # unlucky prime
        else:
            assert residues is not None
            inv = pow(modulus % p, -1, p)
            residues = [
                r + modulus * ((s - r) % p * inv % p)
                for r, s in zip(residues, scaled)
            ]
            modulus *= p
        cand = [_centered(v, modulus) for v in residues]
        while cand and cand[-1] == 0:
            cand.pop()
        if cand:
            cand = _primitive_positive(cand)
            # verify only once the lifted image has stabilized
            if cand == prev_cand and _divides_int(fa, cand) and _divides_int(fb, cand):
                return cand
            prev_cand = cand
        if modulus.bit_length() > 100_000:
            return None  # give up; exact chain fallback
    return None


def _gcd_int_full(fa: list[int], fb: list[int], stop_deg: int | None) -> list[int]:
    # primitive pseudo-remainder chain: every remainder is stripped to its
    # primitive part, so coefficient growth stays linear along the chain.
    # Across a large degree gap the pseudo-remainder scales by lc^gap, so
    # there the denominator-tracked rational remainder is used instead.
    # ``stop_deg`` is the gcd degree seen modulo a large prime: once the chain
    # reaches it, the current element is verified by division and, if it
    # divides both inputs, returned without walking the rest of the chain.
    fa0, fb0 = fa, fb
    while fb:
        if stop_deg is not None and len(fb) - 1 == stop_deg:
            if _divides_int(fa0, fb) and _divides_int(fb0, fb):
                return fb
            stop_deg = None  # unlucky prime: finish the chain exactly
        if len(fa) - len(fb) > 6:
            _, _, rn, _ = _divmod_nums(fa, fb)
        else:
            rn = _prem_int(fa, fb)
        if not rn:
            return fb
        fa, fb = fb, _primitive_positive(rn)
    return fa


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd of two polynomials over the rationals."""
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if len(a._nums) == 1 or len(b._nums) == 1:
        return _ONE
    fa = _primitive_positive(a._nums)
    fb = _primitive_positive(b._nums)
    if len(fa) < len(fb):
        fa, fb = fb, fa
    deg = None
    for p in _GCD_PRIMES:
        deg = _gcd_degree_mod_p(fa, fb, p)
        if deg is not None:
            if deg == 0:
                return _ONE
            break
    if deg == len(fb) - 1 and _divides_int(fa, fb):
        return Poly._raw(fb[:], 1).monic()
    g = _gcd_modular(fa, fb)
    if g is None:
        g = _gcd_int_full(fa, fb, deg)
    if len(g) == 1:
        return _ONE
    g = _primitive_positive(g)
    return Poly._raw(g[:], 1).monic()
