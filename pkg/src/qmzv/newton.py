"""q-analogue of Newton series.

A sequence ``c`` with v(c(n)) >= n defines f_c(z) = sum_n c(n) B_n(z), where
B_n(z) = prod_{j=1}^{n} (z - q^(j-1)) / (1 - q^j).  We never build f_c as a
bivariate series; it is represented by its expansion in powers of
X = (z - 1) / (1 - q), whose m-th coefficient is sum_{n>=1} c(n) a_{z_1^m}(n-1).
"""
from __future__ import annotations

from dataclasses import dataclass

from .harmonic import SequenceFn, _as_sequence, nabla_weights
from .scalars import (
    ONE,
    ZERO,
    AtLeast,
    RationalFunction,
    TruncatedSeries,
    q_binomial_rf,
    q_shifted_factorial,
    series_expand,
)
from .scalars.qfunctions import inv_one_minus_q_power, q_pochhammer_q
from .scalars.series import divide_series

__all__ = [
    "B_at", "B_at_q_power", "interpolation_sides", "interpolation_check", "key_sum_lhs", "key_sum_rhs",
    "NewtonExpansion", "newton_expand", "b_connect_check", "newton_product_c3",
    "a_z1_series", "ConvergenceError",
]


class ConvergenceError(ValueError):
    """A sequence fails v(c(n)) >= n at some computed index."""


def _rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction(x)


def B_at(n: int, z) -> RationalFunction:
    """B_n(z) = prod_{j=1}^{n} (z - q^(j-1)) / (1 - q^j); B_0 = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    z = _rf(z)
    result = ONE
    for j in range(1, n + 1):
        factor = z - RationalFunction.q_power(j - 1)
        if not factor:
            return ZERO
        result = result * factor * inv_one_minus_q_power(j)
    return result


def B_at_q_power(n: int, k: int) -> RationalFunction:
    """B_n(q^k) = (-1)^n q^(n(n-1)/2) [k, n]_q for k >= 0 (zero when n > k)."""
    if n > k:
        return ZERO
    return RationalFunction.q_power(n * (n - 1) // 2, (-1) ** n) * q_binomial_rf(k, n)


def interpolation_sides(b, m: int, l: int = 0) -> tuple[RationalFunction, RationalFunction]:
    """Both sides of

        sum_{n<=m} nabla(b)(l+n) B_n(q^m) = q^(-lm) sum_{j<=l} q^j (q^-l)_j/(q)_j b(j+m).
    """
    if m < 0 or l < 0:
        raise ValueError("m and l must be >= 0")
    b = _as_sequence(b)
    qm = RationalFunction.q_power(m)
    lhs = ZERO
    for n in range(m + 1):
        weights = nabla_weights(l + n)
        coeff = ZERO
        for i, wt in enumerate(weights):
            v = b(i)
            if v:
                coeff = coeff + wt * v
        if coeff:
            lhs = lhs + coeff * B_at(n, qm)
    rhs = ZERO
    for j, wt in enumerate(nabla_weights(l)):
        v = b(j + m)
        if v:
            rhs = rhs + wt * v
    rhs = rhs * RationalFunction.q_power(-l * m)
    return lhs, rhs


def interpolation_check(b, m: int, l: int = 0) -> bool:
    lhs, rhs = interpolation_sides(b, m, l)
    return lhs == rhs


def key_sum_lhs(m: int, j: int, t) -> RationalFunction:
    """(1/(q)_j) sum_{n<=m} q^(mn) (q^-m)_n (t q^-n)_j / (q)_n."""
    t = _rf(t)
    qinv_m = RationalFunction.q_power(-m)
    total = ZERO
    for n in range(m + 1):
        term = (RationalFunction.q_power(m * n) * q_shifted_factorial(qinv_m, n)
                * q_pochhammer_q(n, inverse=True))
        if not term:
            continue
        term = term * q_shifted_factorial(t * RationalFunction.q_power(-n), j)
        total = total + term
    return total * q_pochhammer_q(j, inverse=True)


def key_sum_rhs(m: int, j: int, t) -> RationalFunction:
    """0 if j < m, else (t/q)^m (t)_{j-m} / (q)_{j-m}."""
    if j < m:
        return ZERO
    t = _rf(t)
    return ((t * RationalFunction.q_power(-1)) ** m * q_shifted_factorial(t, j - m)
            * q_pochhammer_q(j - m, inverse=True))


def b_connect_check(n: int, y, z) -> bool:
    """B_n(z) == y^n sum_{j<=n} (1/y)_{n-j}/(q)_{n-j} B_j(z/y)."""
    y, z = _rf(y), _rf(z)
    yinv = y.inverse()
    rhs = ZERO
    for j in range(n + 1):
        rhs = rhs + (q_shifted_factorial(yinv, n - j) * q_pochhammer_q(n - j, inverse=True)
                     * B_at(j, yinv * z))
    return B_at(n, z) == y ** n * rhs


# -- expansion at z = 1 ------------------------------------------------------------

def _inv_q_integer_series(j: int, precision: int) -> TruncatedSeries:
    # 1/[j] = (1 - q) / (1 - q^j)
    den = [1] + [0] * (j - 1) + [-1]
    return divide_series((1, -1), den, precision)


def a_z1_series(M: int, N: int, precision: int) -> list[list[TruncatedSeries]]:
    """``table[n][m] = a_{z_1^m}(n-1)`` mod q^precision for 1 <= n <= N, 1 <= m <= M.

    Uses B_n(z) = X/[n] prod_{j<n} (1 + X/[j]) with X = (z-1)/(1-q).
    """
    zero = TruncatedSeries.zero(precision)
    prod = [TruncatedSeries.one(precision)] + [zero] * M  # prod_{j<n}(1 + X/[j])
    table = [[zero] * (M + 1)]
    for n in range(1, N + 1):
        inv = _inv_q_integer_series(n, precision)
        row = [zero] + [prod[m - 1] * inv for m in range(1, M + 1)]
        table.append(row)
        prod = [prod[0]] + [prod[m] + prod[m - 1] * inv for m in range(1, M + 1)]
    return table


@dataclass(frozen=True)
class NewtonExpansion:
    """Coefficients of ((z-1)/(1-q))^m, m = 0..order, each mod q^q_precision."""

    coefficients: tuple
    order: int
    q_precision: int

    def __getitem__(self, m: int) -> TruncatedSeries:
        return self.coefficients[m]

    def cauchy_product(self, other: "NewtonExpansion") -> "NewtonExpansion":
        order = min(self.order, other.order)
        prec = min(self.q_precision, other.q_precision)
        coeffs = []
        for m in range(order + 1):
            acc = TruncatedSeries.zero(prec)
            for k in range(m + 1):
                acc = acc + self.coefficients[k] * other.coefficients[m - k]
            coeffs.append(acc)
        return NewtonExpansion(tuple(coeffs), order, prec)


def _to_series(v, precision: int) -> TruncatedSeries:
    if isinstance(v, TruncatedSeries):
        return v.truncate(precision)
    return series_expand(v, precision)


def newton_expand(c, M: int, P: int, N_terms: int | None = None) -> NewtonExpansion:
    """Expansion of f_c at z = 1 through X^M, mod q^P.

    Terms n <= N_terms (default P) are summed; v(c(n)) >= n is checked on each
    of them and makes the dropped tail O(q^P) once N_terms >= P - 1.
    """
    if M < 1 or P < 1:
        raise ValueError("M and P must be positive")
    N = P if N_terms is None else N_terms
    c = _as_sequence(c)
    a_tab = a_z1_series(M, N, P)
    coeffs = [_to_series(c(0), P)] + [TruncatedSeries.zero(P) for _ in range(M)]
    for n in range(1, N + 1):
        cn = _to_series(c(n), P)
        v = cn.valuation()
        if not isinstance(v, AtLeast) and v < n:
            raise ConvergenceError(f"convergence condition violated at n = {n} (valuation {v})")
        if isinstance(v, AtLeast):
            continue
        for m in range(1, min(M, n) + 1):
            coeffs[m] = coeffs[m] + cn * a_tab[n][m]
    return NewtonExpansion(tuple(coeffs), M, P)


def newton_product_c3(c1, c2, precision: int | None = None) -> SequenceFn:
    """c3(n) = sum_k [n,k]_q c1(k) sum_{j<=k} c2(n-k+j) B_j(q^k).

    With ``precision`` set, every ingredient is expanded mod q^precision and
    the sums are carried out on truncated series.
    """
    c1, c2 = _as_sequence(c1), _as_sequence(c2)
    cache: dict = {}

    def conv(x):
        return x if precision is None else _to_series(x, precision)

    def cached(key, make):
        if key not in cache:
            cache[key] = conv(make())
        return cache[key]

    def c3(n: int):
        total = ZERO if precision is None else TruncatedSeries.zero(precision)
        for k in range(n + 1):
            a = cached(("c1", k), lambda: c1(k))
            if not _nonzero(a):
                continue
            inner = ZERO if precision is None else TruncatedSeries.zero(precision)
            for j in range(k + 1):
                v = cached(("c2", n - k + j), lambda: c2(n - k + j))
                if _nonzero(v):
                    inner = inner + v * cached(("B", j, k), lambda: B_at_q_power(j, k))
            if _nonzero(inner):
                total = total + cached(("binom", n, k), lambda: q_binomial_rf(n, k)) * a * inner
        return total

    return SequenceFn(c3, name="c3")


def _nonzero(x) -> bool:
    if isinstance(x, TruncatedSeries):
        return not x.is_zero()
    return bool(x)
