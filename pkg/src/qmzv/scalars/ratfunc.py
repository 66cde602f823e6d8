"""Exact rational functions in q.

Every denominator met in this library is a power of q times a product of
q-integers and factors ``1 - q**j``, i.e. a product of cyclotomic
polynomials.  A :class:`RationalFunction` therefore stores its denominator
factored::

    value = scale * q**shift * num(q) / (prod_d Phi_d(q)**e_d * rest(q))

with ``num`` a primitive integer polynomial with nonzero constant term and
positive leading coefficient.  ``rest`` carries whatever non-cyclotomic part a
caller introduces by dividing by an arbitrary polynomial; it stays ``(1,)`` on
all internal paths.  Sums take lcm denominators, and after every operation the
numerator is divided by each denominator cyclotomic it contains, so no general
polynomial gcd is needed.  Negative ``shift`` gives Laurent values, which the
q-difference operators need for intermediate terms like ``(q**-n; q)_i``.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable

from . import polynomial as P
from .polynomial import PolyQ


def _merge_exps(a: tuple, b: tuple, combine) -> dict:
    out = dict(a)
    for d, e in b:
        out[d] = combine(out.get(d, 0), e)
    return out


class RationalFunction:
    __slots__ = ("scale", "shift", "num", "cyc", "rest")

    def __init__(self, num=0, den=1):
        """Build ``num / den`` from polynomials, rationals or rational functions."""
        value = _coerce(num) / _coerce(den) if not _is_one(den) else _coerce(num)
        self.scale, self.shift, self.num = value.scale, value.shift, value.num
        self.cyc, self.rest = value.cyc, value.rest

    @classmethod
    def _make(cls, scale, shift: int, num: tuple, cyc: tuple, rest: tuple = (1,)):
        obj = object.__new__(cls)
        obj.scale = scale
        obj.shift = shift
        obj.num = num
        obj.cyc = cyc
        obj.rest = rest
        return obj

    @classmethod
    def _normalize(cls, scale, shift: int, num, cyc: dict, rest: tuple = (1,)):
        num = P.strip(num)
        if not num or not scale:
            return ZERO
        low = 0
        while not num[low]:
            low += 1
        if low:
            shift += low
            num = num[low:]
        g, num = P.primitive(num)
        scale = Fraction(scale) * g
        cyc_out = []
        for d in sorted(cyc):
            e = cyc[d]
            while e and len(num) > 1 and P.divides_cyclotomic(num, d):
                num = P.idivexact_monic(num, P.cyclotomic(d))
                e -= 1
            if e:
                cyc_out.append((d, e))
        if rest != (1,) and len(num) > 1:
            g = P.igcd(num, rest)
            if len(g) > 1:
                num = P.idivexact(num, g)
                rest = P.idivexact(rest, g)
                lead, rest = P.primitive(rest)
                lead2, num = P.primitive(num)
                scale = scale * lead2 / lead
        return cls._make(scale, shift, num, tuple(cyc_out), rest)

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "RationalFunction":
        c = Fraction(c)
        if not c:
            return ZERO
        return cls._make(c, 0, (1,), ())

    @classmethod
    def q_power(cls, k: int, c=1) -> "RationalFunction":
        """The Laurent monomial ``c * q**k``."""
        c = Fraction(c)
        if not c:
            return ZERO
        return cls._make(c, k, (1,), ())

    @classmethod
    def from_poly(cls, p) -> "RationalFunction":
        coeffs = p.coeffs if isinstance(p, PolyQ) else tuple(p)
        if not coeffs:
            return ZERO
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                den = den * c.denominator // gcd(den, c.denominator)
        ints = tuple(int(c * den) for c in coeffs)
        return cls._normalize(Fraction(1, den), 0, ints, {})

    @classmethod
    def from_factors(cls, scale=1, shift: int = 0, num: Iterable[int] = (1,),
                     cyclotomic_exps: dict | None = None) -> "RationalFunction":
        """``scale * q**shift * num / prod Phi_d**e`` (exponents may be negative)."""
        num = tuple(num)
        den_exps = {}
        for d, e in (cyclotomic_exps or {}).items():
            if e > 0:
                den_exps[d] = e
            elif e < 0:
                num = P.imul(num, P.ipow(P.cyclotomic(d), -e))
        return cls._normalize(Fraction(scale), shift, num, den_exps)

    @classmethod
    def one_minus_q_power(cls, k: int) -> "RationalFunction":
        """``1 - q**k`` for any integer k, in factored form."""
        if k == 0:
            return ZERO
        m = abs(k)
        exps = tuple((d, 1) for d in P.divisors(m))
        num = P.iexpand_cyclotomics(exps)
        # 1 - q^m = -(q^m - 1);  1 - q^-m = q^-m (q^m - 1)
        if k > 0:
            return cls._make(Fraction(-1), 0, num, ())
        return cls._make(Fraction(1), -m, num, ())

    # -- structure ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def den_int(self) -> tuple:
        """Integer denominator polynomial without the q-power and scale."""
        return P.imul(P.iexpand_cyclotomics(self.cyc), self.rest)

    def _den_sign(self) -> int:
        # present denominators with positive lowest-order coefficient
        den = self.den_int()
        return -1 if den[0] < 0 else 1

    def numerator(self) -> PolyQ:
        """Numerator of the reduced fraction; see :meth:`denominator`."""
        if not self.num:
            return PolyQ()
        num = self.num
        if self.shift > 0:
            num = (0,) * self.shift + num
        scale = self.scale * self._den_sign()
        return PolyQ(scale * c for c in num)

    def denominator(self) -> PolyQ:
        """Denominator with integer coefficients and positive lowest-order term."""
        if not self.num:
            return PolyQ((1,))
        den = self.den_int()
        if den[0] < 0:
            den = tuple(-c for c in den)
        if self.shift < 0:
            den = (0,) * (-self.shift) + den
        return PolyQ(den)

    def is_polynomial(self) -> bool:
        return not self.num or (not self.cyc and self.rest == (1,) and self.shift >= 0)

    def is_regular(self) -> bool:
        """True when the value lies in Q[[q]] (no pole at q = 0)."""
        return not self.num or self.shift >= 0

    def to_poly(self) -> PolyQ:
        if not self.is_polynomial():
            raise ValueError("not a polynomial")
        return self.numerator()

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self.num:
            return other
        if not other.num:
            return self
        shift = min(self.shift, other.shift)
        exps = _merge_exps(self.cyc, other.cyc, max)
        if self.rest == other.rest:
            rest = self.rest
            ra = rb = (1,)
        else:
            g = P.igcd(self.rest, other.rest)
            ra = P.idivexact(other.rest, g)
            rb = P.idivexact(self.rest, g)
            rest = P.imul(self.rest, ra)
        na = self._lift(shift, exps, ra)
        nb = other._lift(shift, exps, rb)
        sa, sb = self.scale, other.scale
        num = P.iadd(P.iscale(na, sa.numerator * sb.denominator),
                     P.iscale(nb, sb.numerator * sa.denominator))
        return RationalFunction._normalize(
            Fraction(1, sa.denominator * sb.denominator), shift, num, exps, rest)

    def _lift(self, shift, exps, extra) -> tuple:
        num = self.num
        missing = []
        mine = dict(self.cyc)
        for d, e in exps.items():
            diff = e - mine.get(d, 0)
            if diff:
                missing.append((d, diff))
        if missing:
            num = P.imul(num, P.iexpand_cyclotomics(missing))
        if extra != (1,):
            num = P.imul(num, extra)
        if self.shift > shift:
            num = (0,) * (self.shift - shift) + num
        return num

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return RationalFunction._make(-self.scale, self.shift, self.num, self.cyc, self.rest)

    def __sub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other or not self.num:
                return ZERO
            return RationalFunction._make(self.scale * other, self.shift, self.num,
                                          self.cyc, self.rest)
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        exps = _merge_exps(self.cyc, other.cyc, int.__add__)
        rest = self.rest if other.rest == (1,) else P.imul(self.rest, other.rest)
        if len(self.num) == 1 and len(other.num) == 1 and rest == (1,):
            # monomial numerators cannot cancel anything
            return RationalFunction._make(self.scale * other.scale,
                                          self.shift + other.shift, (1,),
                                          tuple(sorted(exps.items())))
        num = P.imul(self.num, other.num)
        return RationalFunction._normalize(self.scale * other.scale,
                                           self.shift + other.shift, num, exps, rest)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        rem = self.num
        peeled = {}
        bound = 2 * len(rem)
        for d in range(1, bound + 1):
            while len(rem) > 1 and P.divides_cyclotomic(rem, d):
                rem = P.idivexact_monic(rem, P.cyclotomic(d))
                peeled[d] = peeled.get(d, 0) + 1
            if len(rem) == 1:
                break
        new_num = P.imul(P.iexpand_cyclotomics(self.cyc), self.rest)
        lead, rest = P.primitive(rem)
        return RationalFunction._normalize(1 / (self.scale * lead), -self.shift,
                                           new_num, peeled, rest)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = ONE
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- comparison -----------------------------------------------------------

    def _key(self):
        return (self.scale, self.shift, self.num, self.cyc, self.rest)

    def __eq__(self, other):
        other = _coerce_or_none(other)
        if other is None:
            return NotImplemented
        if self._key() == other._key():
            return True
        # cross-multiplication: a - b has numerator a.num*b.den - b.num*a.den
        return not (self - other).num

    def __hash__(self):
        if not self.num:
            return hash(0)
        try:
            return hash(self.evaluate(Fraction(2)))
        except ZeroDivisionError:
            return hash((self.shift, len(self.num)))

    def evaluate(self, x):
        """Value at a rational point ``x``."""
        x = Fraction(x)
        numv = PolyQ._raw(self.num)(x)
        denv = PolyQ._raw(self.den_int())(x)
        if denv == 0 or (x == 0 and self.shift < 0):
            raise ZeroDivisionError("pole at evaluation point")
        return self.scale * numv * x ** self.shift / denv

    def __repr__(self):
        return f"RationalFunction({str(self)!r})"

    def __str__(self):
        n, d = self.numerator(), self.denominator()
        if d == 1:
            return str(n)
        return f"({n})/({d})"


def _is_one(x) -> bool:
    return isinstance(x, Rational) and x == 1


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Rational):
        return RationalFunction.const(x)
    if isinstance(x, PolyQ):
        return RationalFunction.from_poly(x)
    raise TypeError(f"cannot convert {type(x).__name__} to RationalFunction")


def _coerce_or_none(x):
    try:
        return _coerce(x)
    except TypeError:
        return None


ZERO = RationalFunction._make(Fraction(0), 0, (), ())
ONE = RationalFunction._make(Fraction(1), 0, (1,), ())
Q = RationalFunction._make(Fraction(1), 1, (1,), ())
