"""Power series in q truncated modulo q**P."""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from .polynomial import PolyQ, _format_coeff_term, _norm

DEFAULT_PRECISION = 40


class AtLeast:
    """Valuation report for a series whose stored coefficients all vanish."""

    __slots__ = ("bound",)

    def __init__(self, bound: int):
        self.bound = bound

    def __eq__(self, other):
        return isinstance(other, AtLeast) and other.bound == self.bound

    def __hash__(self):
        return hash(("AtLeast", self.bound))

    def __ge__(self, n: int):
        return self.bound >= n

    def __repr__(self):
        return f"AtLeast({self.bound})"

    def __str__(self):
        return f"≥{self.bound}"


class TruncatedSeries:
    """A residue class in Q[[q]] / q**P.

    Coefficients are Python ints while they stay integral and ``Fraction``
    otherwise.  Binary operations between series of different precision
    return the smaller precision.
    """

    __slots__ = ("precision", "coeffs")

    def __init__(self, coeffs: Iterable = (), precision: int = DEFAULT_PRECISION):
        if precision < 1:
            raise ValueError("precision must be positive")
        cs = [_norm(c) for c in coeffs][:precision]
        cs.extend([0] * (precision - len(cs)))
        self.precision = precision
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, coeffs, precision):
        obj = object.__new__(cls)
        obj.precision = precision
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def zero(cls, precision: int = DEFAULT_PRECISION):
        return cls._raw((0,) * precision, precision)

    @classmethod
    def one(cls, precision: int = DEFAULT_PRECISION):
        return cls.from_poly(PolyQ((1,)), precision)

    @classmethod
    def from_poly(cls, p, precision: int = DEFAULT_PRECISION):
        coeffs = p.coeffs if isinstance(p, PolyQ) else tuple(p)
        return cls(coeffs, precision)

    def __getitem__(self, i):
        return self.coeffs[i]

    def __len__(self):
        return self.precision

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise ValueError("cannot raise precision of a truncated series")
        return TruncatedSeries._raw(self.coeffs[:precision], precision)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return AtLeast(self.precision)

    def is_zero(self) -> bool:
        """Zero through q**(P-1); never a claim about the untracked tail."""
        return not any(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Rational):
            return TruncatedSeries((other,), self.precision)
        if isinstance(other, PolyQ):
            return TruncatedSeries.from_poly(other, self.precision)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.precision == other.precision and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.precision, self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.precision, other.precision)
        return TruncatedSeries._raw(
            [_norm(a + b) for a, b in zip(self.coeffs[:p], other.coeffs[:p])], p)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries._raw([-c for c in self.coeffs], self.precision)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.precision, other.precision)
        return TruncatedSeries._raw(
            [_norm(a - b) for a, b in zip(self.coeffs[:p], other.coeffs[:p])], p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return TruncatedSeries._raw([_norm(c * other) for c in self.coeffs],
                                        self.precision)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.precision, other.precision)
        a, b = self.coeffs, other.coeffs
        out = [0] * p
        for i in range(p):
            x = a[i]
            if x:
                for j in range(p - i):
                    y = b[j]
                    if y:
                        out[i + j] += x * y
        return TruncatedSeries._raw([_norm(c) for c in out], p)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = TruncatedSeries.one(self.precision)
        for _ in range(e):
            result = result * self
        return result

    def inverse(self) -> "TruncatedSeries":
        a = self.coeffs
        if not a[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        return divide_series(TruncatedSeries.one(self.precision).coeffs, a, self.precision)

    def __truediv__(self, other):
        if isinstance(other, Rational):
            return self * (1 / Fraction(other))
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        p = min(self.precision, other.precision)
        if not other.coeffs[0]:
            raise ZeroDivisionError("divisor has zero constant term")
        return divide_series(self.coeffs[:p], other.coeffs[:p], p)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q**k (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift leaves Q[[q]]")
        cs = ((0,) * k + self.coeffs)[:self.precision]
        return TruncatedSeries._raw(cs, self.precision)

    def __repr__(self):
        return f"TruncatedSeries({str(self)!r})"

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c:
                parts.append(_format_coeff_term(c, i, "q", not parts))
        tail = f"O(q^{self.precision})"
        if not parts:
            return tail
        return "".join(parts) + " + " + tail


def divide_series(num: Sequence, den: Sequence, precision: int) -> TruncatedSeries:
    """Solve den * x = num modulo q**precision (den[0] != 0)."""
    d0 = den[0]
    out = [0] * precision
    integral = d0 in (1, -1) and all(type(c) is int for c in num) and all(
        type(c) is int for c in den)
    nd = len(den)
    for i in range(precision):
        acc = num[i] if i < len(num) else 0
        for j in range(1, min(i, nd - 1) + 1):
            if den[j]:
                acc -= den[j] * out[i - j]
        out[i] = acc * d0 if integral else _norm(Fraction(acc) / d0)
    return TruncatedSeries._raw(out, precision)
