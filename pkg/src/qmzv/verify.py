"""Identity-verification suites run by ``qmzv verify``.

Each suite is a generator of :class:`Case` results.  Exact suites compare
rational functions or word sums; truncated suites compare q-series modulo
q^precision.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from . import harmonic as H
from . import newton as N
from .relations import (
    ZetaEvaluator,
    F_expansion_coeff,
    F_expansion_direct,
    kawashima_paths,
    make_relation,
    relation_pairs,
    star_relation_arg,
)
from .scalars import HBAR, HbarPoly, PolyQ, RationalFunction, series_expand
from .scalars.qfunctions import harmonic_weight
from .words import (
    WordSum,
    circ,
    circ_plus,
    circledast,
    circledast_q,
    d,
    d_q,
    d_q_inv,
    depth_one,
    format_word,
    harmonic,
    letter_circ,
    phi,
    psi,
    psi_composite,
    set_hbar_zero,
    stuffle_bar,
    stuffle_minus,
    stuffle_plus,
    triangle,
    weight,
    words_up_to_weight,
    xi,
)


@dataclass(frozen=True)
class Case:
    suite: str
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"  ({self.detail})" if self.detail and not self.ok else ""
        return f"{status} {self.suite}: {self.name}{extra}"


@dataclass
class SuiteConfig:
    max_weight: int = 4
    max_n: int = 6
    precision: int = 30
    seed: int = 0
    circledast_variant: str = "plus-hbar0"


def _w(u) -> WordSum:
    return WordSum.of(u)


def _pairs(max_total: int):
    return relation_pairs(max_total)


def _fmt(*words) -> str:
    return ", ".join(format_word(u) for u in words)


# -- suites ---------------------------------------------------------------------

def suite_duality(cfg: SuiteConfig) -> Iterator[Case]:
    for u in words_up_to_weight(cfg.max_weight):
        S = H.S_seq(_w(u))
        dual = phi(_w(u))
        ok = H.nabla_q(S, 0) == 0
        bad = [] if ok else [0]
        for n in range(1, cfg.max_n + 1):
            if H.nabla_q(S, n) != -H.s_eval(dual, n - 1):
                bad.append(n)
        yield Case("duality", f"nabla S_{format_word(u)} = -s_phi", not bad,
                   f"fails at n={bad}")


def suite_products(cfg: SuiteConfig) -> Iterator[Case]:
    N_ = cfg.max_n
    for u, v in _pairs(cfg.max_weight):
        a, b = _w(u), _w(v)
        Su, Sv = H.harmonic_values(a, N_, "S"), H.harmonic_values(b, N_, "S")
        Sp = H.harmonic_values(stuffle_minus(a, b), N_, "S")
        yield Case("products", f"S*S=S(*-) {_fmt(u, v)}",
                   all(x * y == z for x, y, z in zip(Su, Sv, Sp)))
        Au, Av = H.harmonic_values(a, N_, "A"), H.harmonic_values(b, N_, "A")
        Ap = H.harmonic_values(stuffle_plus(a, b), N_, "A")
        yield Case("products", f"A*A=A(*+) {_fmt(u, v)}",
                   all(x * y == z for x, y, z in zip(Au, Av, Ap)))
        target = circledast_q(d_q(a), b)
        yield Case("products", f"a*A=a(triangle) {_fmt(u, v)}",
                   all(H.a_eval(a, n) * Av[n] == H.a_eval(triangle(a, b), n)
                       for n in range(N_ + 1)))
        yield Case("products", f"s*a=a(d_q (*)_q) {_fmt(u, v)}",
                   all(H.s_eval(a, n) * H.a_eval(b, n) == H.a_eval(target, n)
                       for n in range(N_ + 1)))
    for u in words_up_to_weight(cfg.max_weight, include_unit=True):
        a = _w(u)
        yield Case("products", f"A*=A(d_q) {format_word(u)}",
                   H.harmonic_values(a, N_, "A_star") == H.harmonic_values(d_q(a), N_, "A"))


def suite_a_to_a(cfg: SuiteConfig) -> Iterator[Case]:
    for i in range(1, 4):
        for u in words_up_to_weight(min(3, cfg.max_weight), include_unit=True):
            w = _w(u)
            arg = WordSum.word(i) * w + circ_plus(i, w)
            A = H.harmonic_values(w, cfg.max_n + 1, "A")
            ok = all(
                RationalFunction.q_power((i - 1) * (n + 1)) * _qint_pow_inv(n + 1, i) * A[n + 1]
                == H.a_eval(arg, n)
                for n in range(cfg.max_n + 1))
            yield Case("products", f"A -> a reduction i={i} w={format_word(u)}", ok)


def _qint_pow_inv(m: int, k: int) -> RationalFunction:
    return harmonic_weight(m, k, 0)


def suite_sa_final(cfg: SuiteConfig) -> Iterator[Case]:
    for i in range(1, 4):
        for j in range(1, 4):
            for u1 in words_up_to_weight(3, include_unit=True):
                for u2 in words_up_to_weight(3, include_unit=True):
                    lhs = triangle(d_q(WordSum.word(i + j) * _w(u1)), _w(u2))
                    rhs = circledast_q(d_q(WordSum.word(i) * _w(u1)), WordSum.word(j) * _w(u2))
                    if lhs != rhs:
                        yield Case("products", f"sa-final i={i} j={j} {_fmt(u1, u2)}", False)
                        return
    yield Case("products", "sa-final identity via triangle, i,j<=3, weights<=3", True)


def suite_star(cfg: SuiteConfig) -> Iterator[Case]:
    ev = ZetaEvaluator(cfg.precision)
    for u in words_up_to_weight(cfg.max_weight):
        if u[0] < 2:
            continue
        a = _w(u)
        yield Case("star", f"zeta*({format_word(u)}) = zeta(d_q)",
                   ev.zeta_star(a) == ev.zeta(d_q(a)))


def suite_interpolation(cfg: SuiteConfig) -> Iterator[Case]:
    for u in words_up_to_weight(min(cfg.max_weight, 4)):
        S = H.S_seq(_w(u))
        for l in range(0, 4):
            ok = all(N.interpolation_check(S, m, l) for m in range(cfg.max_n + 1))
            yield Case("interpolation", f"S_{format_word(u)} l={l}", ok)
    for l in range(0, 4):
        t = RationalFunction.q_power(-l)
        ok = all(N.key_sum_lhs(m, j, t) == N.key_sum_rhs(m, j, t)
                 for m in range(7) for j in range(7))
        yield Case("interpolation", f"key sum t=q^-{l}", ok)


def suite_newton(cfg: SuiteConfig) -> Iterator[Case]:
    words = words_up_to_weight(min(cfg.max_weight, 3))
    nab = {u: H.nabla_seq(H.S_seq(_w(u))) for u in words}
    for u in words:
        for v in words:
            if (v, u) < (u, v) and v in nab:
                continue
            c3 = N.newton_product_c3(nab[u], nab[v])
            target = H.nabla_seq(H.S_seq(stuffle_minus(_w(u), _w(v))))
            ok = all(c3(n) == target(n) for n in range(cfg.max_n + 1))
            yield Case("newton", f"c3 = nabla(S S) {_fmt(u, v)}", ok)
    P, M = min(cfg.precision, 25), 4
    for u, v in [((1,), (1,)), ((2,), (1,)), ((1, 1), (2,))]:
        c1, c2 = nab.get(u) or H.nabla_seq(H.S_seq(_w(u))), nab.get(v) or H.nabla_seq(H.S_seq(_w(v)))
        e1, e2 = N.newton_expand(c1, M, P), N.newton_expand(c2, M, P)
        e3 = N.newton_expand(N.newton_product_c3(c1, c2, precision=P), M, P)
        yield Case("newton", f"Cauchy product {_fmt(u, v)} M={M} P={P}",
                   e1.cauchy_product(e2) == e3)


def suite_psi(cfg: SuiteConfig) -> Iterator[Case]:
    for u in words_up_to_weight(min(cfg.max_weight, 4), include_unit=True):
        a = _w(u)
        inner = psi_composite(a)
        yield Case("psi", f"Psi(z_1 w) = z_1 Psi(w), w={format_word(u)}",
                   psi_composite(WordSum.word(1) * a) == WordSum.word(1) * inner)
        ok = all(psi_composite(WordSum.word(i) * a) == xi(i) * inner for i in range(1, 5))
        yield Case("psi", f"Psi(z_i w) = xi_i Psi(w), i<=4, w={format_word(u)}", ok)
    for u in words_up_to_weight(min(cfg.max_weight + 1, 6)):
        a = _w(u)
        yield Case("psi", f"composite = xi recursion {format_word(u)}",
                   psi(a) == psi_composite(a))
    for u, v in _pairs(cfg.max_weight):
        a, b = _w(u), _w(v)
        yield Case("psi", f"Psi intertwines {_fmt(u, v)}",
                   stuffle_minus(psi(a), psi(b)) == psi(stuffle_bar(a, b)))
    ok = all(letter_circ(depth_one(xi(i)), depth_one(xi(j)), "minus") == -xi(i + j)
             for i in range(1, 8) for j in range(1, 9 - i))
    yield Case("psi", "xi_i o- xi_j = -xi_{i+j}, i+j<=8", ok)
    shift = {1: HbarPoly.const(1), 0: -HBAR}
    ok = all(letter_circ(shift, depth_one(xi(i))) == xi(i + 1) for i in range(1, 8))
    yield Case("psi", "(z_1 - hbar z_0) o xi_i = xi_{i+1}, i<=7", ok)


def suite_hbar(cfg: SuiteConfig) -> Iterator[Case]:
    words = words_up_to_weight(cfg.max_weight)
    for u, v in _pairs(cfg.max_weight):
        a, b = _w(u), _w(v)
        yield Case("hbar", f"*- -> *bar {_fmt(u, v)}",
                   set_hbar_zero(stuffle_minus(a, b)) == stuffle_bar(a, b))
        yield Case("hbar", f"(*)_q -> (*) {_fmt(u, v)}",
                   set_hbar_zero(circledast_q(a, b))
                   == circledast(a, b, variant=cfg.circledast_variant))
    for u in words:
        yield Case("hbar", f"d_q -> d {format_word(u)}", set_hbar_zero(d_q(_w(u))) == d(_w(u)))


def suite_algebra(cfg: SuiteConfig) -> Iterator[Case]:
    products = {"*-": stuffle_minus, "*+": stuffle_plus, "*bar": stuffle_bar,
                "(*)_q": circledast_q, "harmonic": harmonic}
    for name, f in products.items():
        ok = all(f(_w(u), _w(v)) == f(_w(v), _w(u)) for u, v in _pairs(cfg.max_weight))
        yield Case("algebra", f"{name} commutative", ok)
    words = words_up_to_weight(max(cfg.max_weight - 2, 1))
    for name, f in products.items():
        ok = True
        for u in words:
            for v in words:
                for t in words:
                    if weight(u) + weight(v) + weight(t) > max(cfg.max_weight, 3):
                        continue
                    a, b, c = _w(u), _w(v), _w(t)
                    ok &= f(f(a, b), c) == f(a, f(b, c))
        yield Case("algebra", f"{name} associative", ok)
    ok = all(phi(phi(_w(u))) == _w(u) for u in words_up_to_weight(cfg.max_weight + 2))
    yield Case("algebra", "phi involution", ok)
    ok = all(d_q_inv(d_q(_w(u))) == _w(u) and d_q(d_q_inv(_w(u))) == _w(u)
             for u in words_up_to_weight(cfg.max_weight))
    yield Case("algebra", "d_q invertible", ok)
    ok = all(d_q(circ(i, _w(u))) == circ(i, d_q(_w(u)))
             for i in range(1, 5) for u in words_up_to_weight(cfg.max_weight))
    yield Case("algebra", "d_q commutes with o", ok)


def suite_relations(cfg: SuiteConfig) -> Iterator[Case]:
    ev = ZetaEvaluator(cfg.precision)
    for u, v in _pairs(cfg.max_weight):
        for n in range(1, min(cfg.max_n, 3) + 1):
            direct, via, same = kawashima_paths(u, v, n, cfg.precision, ev)
            yield Case("relations", f"modified {_fmt(u, v)} n={n}",
                       direct.is_zero() and direct == via and same,
                       f"valuation {direct.valuation()}")
            q_res = make_relation(u, v, n, "q-deformed").residual(cfg.precision, ev)
            yield Case("relations", f"q-deformed {_fmt(u, v)} n={n}", q_res.is_zero(),
                       f"valuation {q_res.valuation()}")
        star = ev.zeta_star(star_relation_arg(_w(u), _w(v)))
        yield Case("relations", f"zeta*(z1 o phi(w1 *- w2)) {_fmt(u, v)}", star.is_zero())


def suite_fexpansion(cfg: SuiteConfig) -> Iterator[Case]:
    P = min(cfg.precision, 25)
    ev = ZetaEvaluator(P)
    for u in words_up_to_weight(min(cfg.max_weight, 4)):
        for m in range(1, 4):
            yield Case("fexpansion", f"F_{format_word(u)} m={m}",
                       F_expansion_coeff(u, m, P, ev) == F_expansion_direct(u, m, P))


def suite_truncation(cfg: SuiteConfig) -> Iterator[Case]:
    P = cfg.precision
    lo, hi = ZetaEvaluator(P), ZetaEvaluator(P + 10)
    for u, v in _pairs(cfg.max_weight):
        for n in range(1, min(cfg.max_n, 3) + 1):
            rel = make_relation(u, v, n)
            ok = all(hi.zeta(x).truncate(P) == lo.zeta(x) for x in rel.arguments())
            yield Case("truncation", f"P+10 retruncation {_fmt(u, v)} n={n}", ok)


def suite_scalars(cfg: SuiteConfig) -> Iterator[Case]:
    rng = random.Random(cfg.seed)

    def rand_rf():
        num = PolyQ([rng.randint(-5, 5) for _ in range(rng.randint(1, 5))])
        den = PolyQ([rng.choice([-2, -1, 1, 2])] + [rng.randint(-5, 5) for _ in range(rng.randint(0, 4))])
        return RationalFunction(num, den)

    P = cfg.precision
    ok = True
    for _ in range(40):
        f, g = rand_rf(), rand_rf()
        ok &= series_expand(f * g, P) == series_expand(f, P) * series_expand(g, P)
        ok &= series_expand(f + g, P) == series_expand(f, P) + series_expand(g, P)
    yield Case("scalars", f"series_expand is a ring homomorphism (seed {cfg.seed})", ok)


SUITES: dict[str, Callable[[SuiteConfig], Iterator[Case]]] = {
    "duality": suite_duality,
    "products": lambda cfg: _chain(suite_products(cfg), suite_a_to_a(cfg), suite_sa_final(cfg)),
    "star": suite_star,
    "interpolation": suite_interpolation,
    "newton": suite_newton,
    "psi": suite_psi,
    "hbar": suite_hbar,
    "algebra": suite_algebra,
    "relations": suite_relations,
    "fexpansion": suite_fexpansion,
    "truncation": suite_truncation,
    "scalars": suite_scalars,
}


def _chain(*gens):
    for g in gens:
        yield from g


def run_suite(name: str, cfg: SuiteConfig) -> list[Case]:
    if name not in SUITES:
        raise KeyError(name)
    return list(SUITES[name](cfg))

