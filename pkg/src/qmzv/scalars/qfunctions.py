"""q-integers, q-shifted factorials, q-binomials and the exact -> truncated bridge."""
from __future__ import annotations

from fractions import Fraction

from . import polynomial as P
from .polynomial import HbarPoly, PolyQ, hbar_eval
from .ratfunc import ONE, RationalFunction
from .series import TruncatedSeries, divide_series

__all__ = [
    "q_integer", "q_integer_rf", "q_shifted_factorial", "q_pochhammer_q",
    "q_binomial", "series_expand", "valuation", "hbar_eval", "hbar_eval_rf",
]


def q_integer(n: int) -> PolyQ:
    """[n] = 1 + q + ... + q**(n-1); [0] = 0."""
    if n < 0:
        raise ValueError("q_integer expects n >= 0")
    return PolyQ._raw((1,) * n)


def q_integer_rf(n: int) -> RationalFunction:
    if n < 0:
        raise ValueError("q_integer expects n >= 0")
    if n == 0:
        return RationalFunction.const(0)
    num = P.iexpand_cyclotomics((d, 1) for d in P.divisors(n) if d > 1)
    return RationalFunction._make(Fraction(1), 0, num, ())


def harmonic_weight(m: int, k: int, q_exp: int) -> RationalFunction:
    """q**q_exp / [m]**k, built directly in factored form."""
    cyc = tuple((d, k) for d in P.divisors(m) if d > 1) if k else ()
    return RationalFunction._make(Fraction(1), q_exp, (1,), cyc)


def inv_one_minus_q_power(k: int) -> RationalFunction:
    """1 / (1 - q**k) for k != 0."""
    m = abs(k)
    cyc = tuple((d, 1) for d in P.divisors(m))
    if k > 0:
        return RationalFunction._make(Fraction(-1), 0, (1,), cyc)
    return RationalFunction._make(Fraction(1), m, (1,), cyc)


def q_pochhammer_q(n: int, inverse: bool = False) -> RationalFunction:
    """(q; q)_n, or its reciprocal, in factored form."""
    exps: dict[int, int] = {}
    for j in range(1, n + 1):
        for d in P.divisors(j):
            exps[d] = exps.get(d, 0) + 1
    sign = Fraction(-1) ** n
    if inverse:
        return RationalFunction._make(sign, 0, (1,), tuple(sorted(exps.items())))
    return RationalFunction._make(sign, 0, P.iexpand_cyclotomics(sorted(exps.items())), ())


def _as_monomial(x: RationalFunction):
    if x.num == (1,) and not x.cyc and x.rest == (1,):
        return x.scale, x.shift
    return None


def q_shifted_factorial(x, n: int) -> RationalFunction:
    """(x; q)_n = prod_{j<n} (1 - x q**j)."""
    if n < 0:
        raise ValueError("q_shifted_factorial expects n >= 0")
    x = x if isinstance(x, RationalFunction) else RationalFunction(x)
    mono = _as_monomial(x)
    if mono is not None and mono[0] == 1:
        # x = q**a: every factor is 1 - q**(a+j), known in factored form
        a = mono[1]
        result = ONE
        for j in range(n):
            result = result * RationalFunction.one_minus_q_power(a + j)
            if not result:
                return result
        return result
    result = ONE
    for j in range(n):
        result = result * (1 - x * RationalFunction.q_power(j))
    return result


def q_binomial(n: int, k: int) -> PolyQ:
    """Gaussian binomial coefficient as a polynomial in q."""
    if k < 0 or n < 0 or k > n:
        raise ValueError(f"q_binomial({n}, {k}) out of range")
    # exponent of Phi_d is floor(n/d) - floor(k/d) - floor((n-k)/d)
    exps = [(d, n // d - k // d - (n - k) // d) for d in range(2, n + 1)]
    return PolyQ._raw(P.iexpand_cyclotomics(exps))


def q_binomial_rf(n: int, k: int) -> RationalFunction:
    return RationalFunction._make(Fraction(1), 0, q_binomial(n, k).coeffs, ())


def series_expand(f, precision: int) -> TruncatedSeries:
    """Power-series expansion of an exact value at q = 0, modulo q**precision."""
    if isinstance(f, PolyQ):
        return TruncatedSeries.from_poly(f, precision)
    if not isinstance(f, RationalFunction):
        return TruncatedSeries((f,), precision)
    if not f.num:
        return TruncatedSeries.zero(precision)
    if f.shift < 0:
        raise ValueError("not q-adically regular: pole at q = 0")
    if f.shift >= precision:
        return TruncatedSeries.zero(precision)
    p = precision - f.shift
    den = f.den_int()
    num = f.num[:p]
    body = divide_series(num, den, p)
    coeffs = [0] * f.shift + [c * f.scale for c in body.coeffs]
    return TruncatedSeries(coeffs, precision)


def valuation(f: TruncatedSeries):
    """Order of the first nonzero coefficient, or ``AtLeast(P)``."""
    return f.valuation()


def hbar_eval_rf(c: HbarPoly) -> RationalFunction:
    return RationalFunction.from_poly(hbar_eval(c))
