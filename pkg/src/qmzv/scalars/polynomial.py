"""Univariate polynomials over Q, plus the integer-coefficient kernels used by
the rational-function layer.

Polynomials are stored low degree first, trailing zeros stripped.  The module
level helpers (``imul``, ``iadd``, ...) work on plain lists/tuples of Python
ints; the public classes :class:`PolyQ` and :class:`HbarPoly` wrap tuples of
rationals (``int`` or ``Fraction``).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import Iterable, Sequence

IntPoly = tuple  # tuple[int, ...], low degree first

_KRONECKER_MIN = 24


def strip(coeffs: Sequence) -> tuple:
    """Drop trailing zeros."""
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def iadd(a: Sequence[int], b: Sequence[int]) -> tuple:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return strip(out)


def iscale(a: Sequence[int], c: int) -> tuple:
    if not c:
        return ()
    return tuple(x * c for x in a)


def _mul_schoolbook(a: Sequence[int], b: Sequence[int]) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _mul_kronecker(a: Sequence[int], b: Sequence[int]) -> list:
    # pack into one big integer at 2**bits, multiply, unpack signed digits
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    x = 0
    for c in reversed(a):
        x = (x << bits) + c
    y = 0
    for c in reversed(b):
        y = (y << bits) + c
    z = x * y
    n = len(a) + len(b) - 1
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    out = [0] * n
    for i in range(n):
        r = z & mask
        if r >= half:
            r -= full
        out[i] = r
        z = (z - r) >> bits
    return out


def imul(a: Sequence[int], b: Sequence[int]) -> tuple:
    if not a or not b:
        return ()
    if len(a) == 1:
        return iscale(b, a[0])
    if len(b) == 1:
        return iscale(a, b[0])
    if min(len(a), len(b)) < _KRONECKER_MIN:
        return strip(_mul_schoolbook(a, b))
    return strip(_mul_kronecker(a, b))


def ipow(a: Sequence[int], e: int) -> tuple:
    result: tuple = (1,)
    base = tuple(a)
    while e:
        if e & 1:
            result = imul(result, base)
        e >>= 1
        if e:
            base = imul(base, base)
    return result


def idivexact_monic(a: Sequence[int], m: Sequence[int]) -> tuple | None:
    """Quotient of ``a`` by the monic ``m`` if the division is exact, else None."""
    dm = len(m) - 1
    if len(a) - 1 < dm:
        return None if any(a) else ()
    rem = list(a)
    q = [0] * (len(a) - dm)
    for i in range(len(a) - 1, dm - 1, -1):
        c = rem[i]
        if c:
            q[i - dm] = c
            base = i - dm
            for j in range(dm):
                if m[j]:
                    rem[base + j] -= c * m[j]
    if any(rem[:dm]):
        return None
    return strip(q)


def content(a: Sequence[int]) -> int:
    return gcd(*a) if a else 0


def primitive(a: Sequence[int]) -> tuple[int, tuple]:
    """Split ``a`` as ``c * p`` with ``p`` primitive and positive leading term."""
    a = strip(a)
    if not a:
        return 0, ()
    g = gcd(*a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return 1, a
    return g, tuple(x // g for x in a)


def _ipseudo_rem(a: Sequence[int], b: Sequence[int]) -> tuple:
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(rem) - 1 >= db and rem:
        c = rem[-1]
        shift = len(rem) - 1 - db
        rem = [x * lb for x in rem]
        for j in range(db + 1):
            rem[shift + j] -= c * b[j]
        rem = list(strip(rem))
    return tuple(rem)


def igcd(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Primitive gcd of two integer polynomials (primitive PRS)."""
    _, a = primitive(a)
    _, b = primitive(b)
    if not a:
        return b
    if not b:
        return a
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _ipseudo_rem(a, b)
        a = b
        _, b = primitive(r)
    return primitive(a)[1]


def idivexact(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Exact quotient ``a / b`` over Z; raises if not exact."""
    if len(b) == 1:
        if any(x % b[0] for x in a):
            raise ArithmeticError("inexact division")
        return tuple(x // b[0] for x in a)
    rem = list(a)
    db = len(b) - 1
    lb = b[-1]
    q = [0] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = rem[i]
        if c:
            if c % lb:
                raise ArithmeticError("inexact division")
            c //= lb
            q[i - db] = c
            for j in range(db + 1):
                rem[i - db + j] -= c * b[j]
    if any(rem):
        raise ArithmeticError("inexact division")
    return strip(q)


def divides_cyclotomic(a: Sequence[int], d: int) -> bool:
    """Whether Phi_d divides ``a``; folds modulo q**d - 1 first."""
    if d == 1:
        return sum(a) == 0
    folded = [sum(a[i::d]) for i in range(d)]
    phi = cyclotomic(d)
    return idivexact_monic(folded, phi) is not None


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> tuple:
    """The d-th cyclotomic polynomial Phi_d as an integer tuple."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = (-1,) + (0,) * (d - 1) + (1,)
    for e in divisors(d):
        if e < d:
            p = idivexact_monic(p, cyclotomic(e))
    return p


@lru_cache(maxsize=None)
def divisors(n: int) -> tuple:
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return tuple(small + large[::-1])


def iexpand_cyclotomics(exps: Iterable[tuple[int, int]]) -> tuple:
    out: tuple = (1,)
    for d, e in exps:
        if e:
            out = imul(out, ipow(cyclotomic(d), e))
    return out


def _format_coeff_term(c, power: int, var: str, first: bool) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        c = c.numerator
    neg = c < 0
    mag = -c if neg else c
    if power == 0:
        body = str(mag)
    else:
        mono = var if power == 1 else f"{var}^{power}"
        if mag == 1:
            body = mono
        elif isinstance(mag, Fraction):
            body = f"({mag}){mono}"
        else:
            body = f"{mag}{mono}"
    if first:
        return f"-{body}" if neg else body
    return f" - {body}" if neg else f" + {body}"


def format_poly(coeffs: Sequence, var: str) -> str:
    parts = []
    for i, c in enumerate(coeffs):
        if c:
            parts.append(_format_coeff_term(c, i, var, not parts))
    return "".join(parts) if parts else "0"


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class _UniPoly:
    """Immutable univariate polynomial with rational coefficients."""

    __slots__ = ("coeffs",)
    var = "x"

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            if not isinstance(c, Rational):
                raise TypeError(f"non-rational coefficient {c!r}")
            cs.append(_norm(c))
        self.coeffs = strip(cs)

    @classmethod
    def _raw(cls, coeffs: tuple):
        obj = object.__new__(cls)
        obj.coeffs = strip(coeffs)
        return obj

    @classmethod
    def const(cls, c):
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, c=1):
        return cls._raw((0,) * power + (_norm(c),))

    def _coerce(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, Rational):
            return type(self).const(other)
        return None

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if len(self.coeffs) <= 1:
            return hash(self[0])
        return hash((self.var, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = _norm(out[i] + c)
        return self._raw(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return self._raw(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return self._raw(())
        if all(type(c) is int for c in a) and all(type(c) is int for c in b):
            return self._raw(imul(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._raw(tuple(_norm(c) for c in out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        result = type(self).const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def divmod(self, other):
        """Euclidean division over Q."""
        other = self._coerce(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        db = other.degree
        lead = Fraction(other.coeffs[-1])
        quot = [Fraction(0)] * max(len(rem) - db, 0)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - db] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - db + j] -= c * y
        return type(self)(quot), type(self)(rem[:db] if db else [])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"{type(self).__name__}({format_poly(self.coeffs, self.var)!r})"

    def __str__(self):
        return format_poly(self.coeffs, self.var)


class PolyQ(_UniPoly):
    """Polynomial in q over Q."""

    __slots__ = ()
    var = "q"

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.coeffs)


class HbarPoly(_UniPoly):
    """Polynomial in the deformation parameter hbar over Q (printed with ``h``)."""

    __slots__ = ()
    var = "h"

    def at_zero(self):
        return self[0]


HBAR = HbarPoly._raw((0, 1))
ONE_MINUS_Q = PolyQ._raw((1, -1))


def hbar_eval(c: HbarPoly) -> PolyQ:
    """Substitute hbar -> 1 - q."""
    acc = PolyQ._raw(())
    for coeff in reversed(c.coeffs):
        acc = acc * ONE_MINUS_Q + coeff
    return acc
