"""Finite multiple harmonic q-series attached to word sums, and the q-difference
operator nabla_q.

Conventions for a word (k_1, ..., k_r), with [m] the q-integer:

* ``S``:  sum over n >= m_1 >= ... >= m_r >= 1 of q^(m_1+...+m_r) / prod [m_i]^k_i
* ``A``:  sum over n >= m_1 > ... > m_r > 0 of prod q^((k_i-1) m_i) / [m_i]^k_i
* ``A_star``: as ``A`` with weak inequalities
* ``s``, ``a``: as ``A_star`` / ``A`` with the first index pinned to n + 1
  (``s`` uses q^(k_1 m_1) for the first factor)

The unit word evaluates to 1 everywhere; hbar in coefficients acts as 1 - q.
"""
from __future__ import annotations

from typing import Callable, Sequence

from .scalars import ONE, ZERO, RationalFunction, hbar_eval_rf
from .scalars.qfunctions import harmonic_weight, inv_one_minus_q_power
from .words import WordSum

DEFAULT_MAX_N = 64

__all__ = [
    "SequenceFn", "S_eval", "A_eval", "A_star_eval", "s_eval", "a_eval",
    "S_seq", "A_seq", "A_star_seq", "s_seq", "a_seq",
    "harmonic_values", "nabla_q", "nabla_weights", "nabla_seq", "delta_t_tower",
]


class SequenceFn:
    """A sequence n -> value, evaluated lazily and memoised per instance.

    ``prefix`` (if given) computes all values for 0..N at once, which the
    nested-sum recursions do more cheaply than one index at a time.
    """

    def __init__(self, func: Callable[[int], object] | None = None,
                 prefix: Callable[[int], Sequence] | None = None, name: str = "b"):
        if func is None and prefix is None:
            raise ValueError("need func or prefix")
        self._func = func
        self._prefix = prefix
        self._values: list = []
        self._cache: dict = {}
        self.name = name

    def __call__(self, n: int):
        if n < 0:
            raise ValueError("sequence index must be >= 0")
        if self._prefix is not None:
            if n >= len(self._values):
                target = max(n, 2 * len(self._values))
                self._values = list(self._prefix(target))
            return self._values[n]
        if n not in self._cache:
            self._cache[n] = self._func(n)
        return self._cache[n]

    def values(self, n: int) -> list:
        return [self(k) for k in range(n + 1)]

    def __mul__(self, other: "SequenceFn") -> "SequenceFn":
        return SequenceFn(lambda n: self(n) * other(n), name=f"({self.name})({other.name})")

    def __add__(self, other: "SequenceFn") -> "SequenceFn":
        return SequenceFn(lambda n: self(n) + other(n), name=f"({self.name}+{other.name})")

    def __repr__(self):
        return f"SequenceFn({self.name})"


def _as_sequence(b) -> Callable[[int], object]:
    if callable(b):
        return b
    return lambda n: b[n]


# -- nested sums -------------------------------------------------------------------

_KINDS = {
    # (factor exponent of q as a function of (k, m), strict?)
    "S": (lambda k, m: m, False),
    "A": (lambda k, m: (k - 1) * m, True),
    "A_star": (lambda k, m: (k - 1) * m, False),
}


def _word_tables(words, upto: int, kind: str) -> dict:
    """Map each word (and each of its suffixes) to its values at 0..upto."""
    exponent, strict = _KINDS[kind]
    tables: dict = {(): [ONE] * (upto + 1)}

    def table(u):
        hit = tables.get(u)
        if hit is not None:
            return hit
        inner = table(u[1:])
        k = u[0]
        out = [ZERO] * (upto + 1)
        acc = ZERO
        for m in range(1, upto + 1):
            prev = inner[m - 1] if strict else inner[m]
            if prev:
                acc = acc + harmonic_weight(m, k, exponent(k, m)) * prev
            out[m] = acc
        tables[u] = out
        return out

    for u in words:
        table(u)
    return tables


def harmonic_values(w, upto: int, kind: str = "S") -> list:
    """Values of S_w, A_w or A_star_w at n = 0..upto, exactly."""
    w = WordSum.of(w)
    if upto < 0:
        return []
    tables = _word_tables(list(w.terms), upto, kind)
    out = [ZERO] * (upto + 1)
    for u, c in w.terms.items():
        coeff = hbar_eval_rf(c)
        vals = tables[u]
        for n in range(upto + 1):
            if vals[n]:
                out[n] = out[n] + coeff * vals[n]
    return out


def _check_n(n: int, max_n: int | None):
    if n < 0:
        raise ValueError("n must be >= 0")
    if max_n is not None and n > max_n:
        raise ValueError(f"n = {n} exceeds the configured limit {max_n}")


def S_eval(w, n: int, max_n: int | None = DEFAULT_MAX_N) -> RationalFunction:
    _check_n(n, max_n)
    return harmonic_values(w, n, "S")[n]


def A_eval(w, n: int, max_n: int | None = DEFAULT_MAX_N) -> RationalFunction:
    _check_n(n, max_n)
    return harmonic_values(w, n, "A")[n]


def A_star_eval(w, n: int, max_n: int | None = DEFAULT_MAX_N) -> RationalFunction:
    _check_n(n, max_n)
    return harmonic_values(w, n, "A_star")[n]


def _pinned(w, n: int, star: bool) -> RationalFunction:
    w = WordSum.of(w)
    if w.has_constant_term():
        raise ValueError(f"{'s' if star else 'a'}_eval requires non-constant argument")
    tails = {u[1:] for u in w.terms}
    upto = n + 1 if star else n
    tables = _word_tables(tails, upto, "A_star" if star else "A")
    m = n + 1
    total = ZERO
    for u, c in w.terms.items():
        i = u[0]
        head = harmonic_weight(m, i, i * m if star else (i - 1) * m)
        val = tables[u[1:]][upto]
        if val:
            total = total + hbar_eval_rf(c) * head * val
    return total


def s_eval(w, n: int) -> RationalFunction:
    """s_w(n): first index pinned at n + 1, weak inequalities."""
    _check_n(n, None)
    return _pinned(w, n, star=True)


def a_eval(w, n: int) -> RationalFunction:
    """a_w(n): first index pinned at n + 1, strict inequalities."""
    _check_n(n, None)
    return _pinned(w, n, star=False)


def S_seq(w) -> SequenceFn:
    return SequenceFn(prefix=lambda N: harmonic_values(w, N, "S"), name=f"S_{w}")


def A_seq(w) -> SequenceFn:
    return SequenceFn(prefix=lambda N: harmonic_values(w, N, "A"), name=f"A_{w}")


def A_star_seq(w) -> SequenceFn:
    return SequenceFn(prefix=lambda N: harmonic_values(w, N, "A_star"), name=f"A*_{w}")


def s_seq(w) -> SequenceFn:
    return SequenceFn(lambda n: s_eval(w, n), name=f"s_{w}")


def a_seq(w) -> SequenceFn:
    return SequenceFn(lambda n: a_eval(w, n), name=f"a_{w}")


# -- nabla_q ---------------------------------------------------------------------

def nabla_weights(n: int) -> list:
    """q^i (q^-n; q)_i / (q; q)_i for i = 0..n."""
    out = [ONE]
    cur = ONE
    for i in range(1, n + 1):
        cur = (cur * RationalFunction.one_minus_q_power(i - 1 - n)
               * inv_one_minus_q_power(i) * RationalFunction.q_power(1))
        out.append(cur)
    return out


def nabla_q(b, n: int) -> RationalFunction:
    """sum_{i=0}^{n} q^i (q^-n)_i / (q)_i * b(i)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    b = _as_sequence(b)
    total = ZERO
    for i, wt in enumerate(nabla_weights(n)):
        v = b(i)
        if v:
            total = total + wt * v
    return total


def nabla_seq(b) -> SequenceFn:
    return SequenceFn(lambda n: nabla_q(b, n), name=f"nabla({getattr(b, 'name', 'b')})")


def delta_t_tower(b, n: int) -> RationalFunction:
    """(D_{q^-(n-1)} o ... o D_{q^-1} o D_1)(b)(0) with D_t(b)(k) = b(k) - t b(k+1).

    D_1 is applied first.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    b = _as_sequence(b)
    vals = [b(k) for k in range(n + 1)]
    for step in range(n):
        t = RationalFunction.q_power(-step)
        vals = [vals[k] - t * vals[k + 1] for k in range(len(vals) - 1)]
    return vals[0]
