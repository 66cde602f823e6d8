"""Truncated q-MZVs and the Kawashima-type quadratic relations.

For an admissible word z_{k_1}...z_{k_r},

    zeta_q = sum_{m_1 > ... > m_r > 0} prod q^((k_i-1) m_i) / [m_i]^k_i

and every term with m_1 >= P vanishes mod q^P because k_1 >= 2, so the outer
index stops at P - 1.  The star version uses weak inequalities with the same
cutoff.  Sums are evaluated directly on integer coefficient lists:
1/[m]^k = (1-q)^k / (1-q^m)^k has integer coefficients.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .harmonic import a_eval, s_eval
from .newton import a_z1_series
from .scalars import AtLeast, DEFAULT_PRECISION, TruncatedSeries, series_expand
from .scalars.polynomial import format_poly, hbar_eval
from .words import (
    WordSum,
    circ,
    circledast_q,
    d,
    d_q,
    format_word,
    is_admissible,
    phi,
    psi,
    stuffle_bar,
    stuffle_minus,
    weight,
    word_key,
    words_up_to_weight,
)

VARIANTS = ("modified", "q-deformed")

__all__ = [
    "ZetaEvaluator", "zeta_q", "zeta_star_q", "zeta_q_exact", "F_expansion_coeff",
    "F_expansion_direct", "Relation", "make_relation", "kawashima_q",
    "kawashima_modified", "kawashima_paths", "linear_relation_arg", "star_relation_arg",
    "enumerate_relations", "NonAdmissibleError", "VARIANTS",
]


class NonAdmissibleError(ValueError):
    def __init__(self, word):
        super().__init__(f"non-admissible argument {format_word(word)}")
        self.word = word


def _apply_weight(x: list, k: int, m: int, P: int) -> list | None:
    """x * q^((k-1) m) / [m]^k truncated to length P."""
    s = (k - 1) * m
    if s >= P:
        return None
    y = [0] * s + x[:P - s]
    for _ in range(k):  # times (1 - q)
        for i in range(P - 1, 0, -1):
            y[i] -= y[i - 1]
    for _ in range(k):  # divided by (1 - q^m)
        for i in range(m, P):
            y[i] += y[i - m]
    return y


class ZetaEvaluator:
    """Truncated zeta_q / zeta*_q at a fixed precision, caching suffix sums.

    Not shared between threads or processes; each worker builds its own.
    """

    def __init__(self, precision: int = DEFAULT_PRECISION):
        if precision < 1:
            raise ValueError("precision must be positive")
        self.precision = precision
        self._tables: dict = {}

    def _table(self, u: tuple, strict: bool) -> list:
        """G_u(M) for M = 0..P-1: sum over M >= m_1 (>|>=) m_2 ... of the word's terms."""
        key = (u, strict)
        hit = self._tables.get(key)
        if hit is not None:
            return hit
        P = self.precision
        if not u:
            one = [1] + [0] * (P - 1)
            table = [one] * P
        else:
            inner = self._table(u[1:], strict)
            k = u[0]
            acc = [0] * P
            table = [list(acc)]
            for m in range(1, P):
                term = _apply_weight(inner[m - 1] if strict else inner[m], k, m, P)
                if term is not None:
                    acc = [a + b for a, b in zip(acc, term)]
                table.append(list(acc))
        self._tables[key] = table
        return table

    def _word_value(self, u: tuple, strict: bool) -> list:
        if not u:
            return [1] + [0] * (self.precision - 1)
        if not is_admissible(u):
            raise NonAdmissibleError(u)
        return self._table(u, strict)[self.precision - 1]

    def _evaluate(self, w, strict: bool) -> TruncatedSeries:
        w = WordSum.of(w)
        P = self.precision
        total = [0] * P
        for u, c in w.items():
            if not is_admissible(u):
                raise NonAdmissibleError(u)
        for u, c in w.items():
            val = self._word_value(u, strict)
            poly = hbar_eval(c).coeffs
            for i, pc in enumerate(poly[:P]):
                if pc:
                    for j in range(P - i):
                        if val[j]:
                            total[i + j] += pc * val[j]
        return TruncatedSeries(total, P)

    def zeta(self, w) -> TruncatedSeries:
        return self._evaluate(w, strict=True)

    def zeta_star(self, w) -> TruncatedSeries:
        return self._evaluate(w, strict=False)


def zeta_q(w, P: int = DEFAULT_PRECISION) -> TruncatedSeries:
    """zeta_q(w) mod q^P for w supported on admissible words and the unit."""
    return ZetaEvaluator(P).zeta(w)


def zeta_star_q(w, P: int = DEFAULT_PRECISION) -> TruncatedSeries:
    return ZetaEvaluator(P).zeta_star(w)


def zeta_q_exact(w, P: int) -> TruncatedSeries:
    """Same value as :func:`zeta_q`, summing exact a_w(n) for n < P and expanding.

    Slow; kept as an independent route for testing.
    """
    w = WordSum.of(w)
    for u in w.terms:
        if not is_admissible(u):
            raise NonAdmissibleError(u)
    const = w.constant_term()
    body = WordSum._raw({u: c for u, c in w.terms.items() if u})
    total = TruncatedSeries.from_poly(hbar_eval(const), P) if const else TruncatedSeries.zero(P)
    if body:
        for n in range(P):
            term = series_expand(a_eval(body, n), P)
            v = term.valuation()
            assert isinstance(v, AtLeast) or v >= n + 1, "valuation bound v(a_w(n)) >= n+1 failed"
            total = total + term
    return total


def _z1_power(m: int) -> WordSum:
    return WordSum.word(*([1] * m))


def F_expansion_coeff(w, m: int, P: int = DEFAULT_PRECISION, evaluator=None) -> TruncatedSeries:
    """-zeta_q(d_q(phi(w)) (*)_q z_1^m), the X^m coefficient of F_w."""
    ev = evaluator or ZetaEvaluator(P)
    return -ev.zeta(circledast_q(d_q(phi(w)), _z1_power(m)))


def F_expansion_direct(w, m: int, P: int) -> TruncatedSeries:
    """-sum_{n=1}^{P} s_{phi(w)}(n-1) a_{z_1^m}(n-1) mod q^P."""
    dual = phi(w)
    a_tab = a_z1_series(m, P, P)
    total = TruncatedSeries.zero(P)
    for n in range(1, P + 1):
        total = total + series_expand(s_eval(dual, n - 1), P) * a_tab[n][m]
    return -total


# -- relations -----------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """zeta_q(linear_arg) + sum_{k+l=n} zeta_q(left_k) zeta_q(right_l) = 0."""

    w1: tuple
    w2: tuple
    n: int
    variant: str
    linear_arg: WordSum
    quadratic_terms: tuple = field(default=())  # ((k, l, left, right), ...)

    def arguments(self):
        yield self.linear_arg
        for _, _, left, right in self.quadratic_terms:
            yield left
            yield right

    def check_admissible(self) -> None:
        for arg in self.arguments():
            for u in arg.terms:
                assert u and u[0] >= 2, f"generated argument not admissible: {format_word(u)}"

    def residual(self, P: int = DEFAULT_PRECISION, evaluator: ZetaEvaluator | None = None):
        ev = evaluator or ZetaEvaluator(P)
        total = ev.zeta(self.linear_arg)
        for _, _, left, right in self.quadratic_terms:
            total = total + ev.zeta(left) * ev.zeta(right)
        return total

    def to_json(self, precision: int, residual_valuation) -> dict:
        return {
            "w1": format_word(self.w1),
            "w2": format_word(self.w2),
            "n": self.n,
            "variant": self.variant,
            "linear_arg": _json_terms(self.linear_arg),
            "quadratic_terms": [
                {"k": k, "l": l, "left": _json_terms(a), "right": _json_terms(b)}
                for k, l, a, b in self.quadratic_terms
            ],
            "precision": precision,
            "residual_valuation": (str(residual_valuation)
                                   if isinstance(residual_valuation, AtLeast)
                                   else residual_valuation),
        }


def _json_terms(x: WordSum) -> list:
    return [{"word": format_word(u), "coeff": format_poly(hbar_eval(c).coeffs, "q")}
            for u, c in x.items()]


def _dual_side(w, variant: str) -> WordSum:
    return d(phi(w)) if variant == "modified" else d_q(phi(w))


def make_relation(w1, w2, n: int, variant: str = "modified") -> Relation:
    """Build the relation for (w1, w2, n).

    ``modified``:   zeta_q(d(phi(w1 *bar w2)) (*)_q z_1^n) + sum zeta_q(d(phi(w1)) (*)_q z_1^k) ...
    ``q-deformed``: the same with *- and d_q.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b = WordSum.of(w1), WordSum.of(w2)
    if a.has_constant_term() or b.has_constant_term() or not a or not b:
        raise ValueError("relation arguments must be non-constant")
    prod = stuffle_bar(a, b) if variant == "modified" else stuffle_minus(a, b)
    linear = circledast_q(_dual_side(prod, variant), _z1_power(n))
    left_dual, right_dual = _dual_side(a, variant), _dual_side(b, variant)
    quad = tuple(
        (k, n - k, circledast_q(left_dual, _z1_power(k)), circledast_q(right_dual, _z1_power(n - k)))
        for k in range(1, n)
    )
    rel = Relation(_key_word(w1), _key_word(w2), n, variant, linear, quad)
    rel.check_admissible()
    return rel


def _key_word(w) -> tuple:
    if isinstance(w, tuple):
        return w
    ws = WordSum.of(w)
    if len(ws) == 1:
        (u, c), = ws.terms.items()
        if c == 1:
            return u
    return tuple()


def kawashima_q(w1, w2, n: int, P: int = DEFAULT_PRECISION, evaluator=None) -> TruncatedSeries:
    """Left-hand side of the q-deformed relation (with *- and d_q), mod q^P."""
    return make_relation(w1, w2, n, "q-deformed").residual(P, evaluator)


def kawashima_modified(w1, w2, n: int, P: int = DEFAULT_PRECISION, evaluator=None,
                       check_paths: bool = True) -> TruncatedSeries:
    """Left-hand side of the relation with *bar and d, mod q^P.

    With ``check_paths`` the value is also computed as the q-deformed relation
    at (Psi(w1), Psi(w2)) and the two must agree coefficient by coefficient.
    """
    if check_paths:
        direct, via_psi, args_equal = kawashima_paths(w1, w2, n, P, evaluator)
        if direct != via_psi or not args_equal:
            raise AssertionError("Psi-substitution path disagrees with direct evaluation")
        return direct
    return make_relation(w1, w2, n, "modified").residual(P, evaluator)


def kawashima_paths(w1, w2, n: int, P: int = DEFAULT_PRECISION, evaluator=None):
    """(direct residual, residual via Psi substitution, arguments identical?)."""
    ev = evaluator or ZetaEvaluator(P)
    direct = make_relation(w1, w2, n, "modified")
    a, b = psi(WordSum.of(w1)), psi(WordSum.of(w2))
    via = make_relation(a, b, n, "q-deformed")
    same_args = direct.linear_arg == via.linear_arg and all(
        x[2] == y[2] and x[3] == y[3] for x, y in zip(direct.quadratic_terms, via.quadratic_terms))
    return direct.residual(P, ev), via.residual(P, ev), same_args


def linear_relation_arg(w1, w2) -> WordSum:
    """z_1 o d(phi(w1 *bar w2)); its zeta_q vanishes."""
    return circ(1, d(phi(stuffle_bar(w1, w2))))


def star_relation_arg(w1, w2) -> WordSum:
    """z_1 o phi(w1 *- w2); its zeta*_q vanishes."""
    return circ(1, phi(stuffle_minus(w1, w2)))


def _relation_job(args):
    w1, w2, n, P, variant = args
    rel = make_relation(w1, w2, n, variant)
    return rel, rel.residual(P).valuation()


def relation_pairs(max_total_weight: int):
    words = words_up_to_weight(max_total_weight - 1) if max_total_weight >= 2 else []
    pairs = [(u, v) for u in words for v in words if weight(u) + weight(v) <= max_total_weight]
    return sorted(pairs, key=lambda p: (word_key(p[0]), word_key(p[1])))


def enumerate_relations(max_total_weight: int, max_n: int, P: int = DEFAULT_PRECISION,
                        variant: str = "modified", workers: int = 1):
    """All relations with weight(w1) + weight(w2) <= bound and 1 <= n <= max_n.

    Returns ``[(Relation, residual valuation), ...]`` in canonical order
    (w1, then w2, then n) regardless of ``workers``.
    """
    if max_total_weight < 1 or max_n < 1:
        raise ValueError("bounds must be >= 1")
    jobs = [(u, v, n, P, variant) for u, v in relation_pairs(max_total_weight)
            for n in range(1, max_n + 1)]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_relation_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    ev = ZetaEvaluator(P)
    out = []
    for u, v, n, _, var in jobs:
        rel = make_relation(u, v, n, var)
        out.append((rel, rel.residual(P, ev).valuation()))
    return out


def relation_to_json_line(rel: Relation, precision: int, valuation) -> str:
    return json.dumps(rel.to_json(precision, valuation), ensure_ascii=False, sort_keys=False)
