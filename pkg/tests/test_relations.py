import json
from fractions import Fraction

import pytest
import sympy
from sympy.parsing.sympy_parser import (
    implicit_multiplication,
    parse_expr,
    standard_transformations,
)

from qmzv.relations import (
    F_expansion_coeff,
    F_expansion_direct,
    NonAdmissibleError,
    ZetaEvaluator,
    enumerate_relations,
    kawashima_modified,
    kawashima_paths,
    kawashima_q,
    linear_relation_arg,
    make_relation,
    star_relation_arg,
    zeta_q,
    zeta_q_exact,
    zeta_star_q,
)
from qmzv.scalars import AtLeast, TruncatedSeries, hbar_eval
from qmzv.words import WordSum, d_q, parse_word, parse_wordsum, words_up_to_weight

import oracles

W = parse_wordsum


def vanishes(x: TruncatedSeries, P: int) -> bool:
    return x.valuation() == AtLeast(P)


def test_zeta_examples():
    assert zeta_q("[2]", 5) == TruncatedSeries([0, 1, 1, -1, 2], 5)
    assert zeta_q("[]", 7) == TruncatedSeries([1], 7)
    assert vanishes(zeta_q("[3]", 40) - zeta_q("[2,1]", 40), 40)


@pytest.mark.parametrize("word", [(2,), (3,), (2, 1), (3, 1), (2, 2), (2, 1, 1)])
def test_zeta_matches_brute_force(word):
    P = 10
    assert list(zeta_q(WordSum.of(word), P).coeffs) == oracles.zeta_brute(word, P)
    assert zeta_q_exact(WordSum.of(word), P) == zeta_q(WordSum.of(word), P)


def test_zeta_rejects_non_admissible():
    with pytest.raises(NonAdmissibleError, match="non-admissible argument"):
        zeta_q("[1]")
    with pytest.raises(NonAdmissibleError):
        zeta_q("[2] + [1,2]")


def test_zeta_star_examples():
    assert zeta_star_q("[2]", 20) == zeta_q("[2]", 20)
    assert zeta_star_q("[2,1]", 30) == zeta_q(d_q(W("[2,1]")), 30)
    assert zeta_star_q("[]", 4) == TruncatedSeries([1], 4)


def test_zeta_coefficients_stay_exact():
    # coefficients exceed 64 bits quickly; they must stay Python ints
    v = zeta_q("[2,1,1,1]", 40)
    assert all(isinstance(c, int) for c in v.coeffs)


def test_F_expansion_examples():
    P = 20
    assert F_expansion_coeff("[2]", 1, P) == -zeta_q(W("[2,1] + [3] + h[2]"), P)
    assert F_expansion_coeff("[1]", 1, P) == -zeta_q("[2]", P)
    assert F_expansion_coeff("[2]", 1, P) == F_expansion_direct("[2]", 1, P)


def test_F_expansion_small_range():
    P = 15
    ev = ZetaEvaluator(P)
    for u in words_up_to_weight(3):
        for m in range(1, 3):
            assert F_expansion_coeff(u, m, P, ev) == F_expansion_direct(u, m, P)


def test_linear_relation_arg_examples():
    assert linear_relation_arg(W("[1]"), W("[1]")) == W("[3] - [2,1]")
    for a, b in [("[1]", "[1,1]"), ("[2]", "[1]")]:
        arg = linear_relation_arg(W(a), W(b))
        assert vanishes(zeta_q(arg, 30), 30)


def test_star_relation_arg_vanishes():
    for a, b in [("[1]", "[1]"), ("[1]", "[2]"), ("[2]", "[1,1]")]:
        assert vanishes(zeta_star_q(star_relation_arg(W(a), W(b)), 30), 30)


def test_kawashima_examples():
    assert vanishes(kawashima_q("[1]", "[1]", 1, 30), 30)
    assert vanishes(kawashima_q("[1]", "[2]", 1, 30), 30)
    rel = make_relation("[1]", "[1]", 2, "q-deformed")
    assert len(rel.quadratic_terms) == 1
    assert vanishes(rel.residual(30), 30)
    assert vanishes(kawashima_modified("[1]", "[1]", 1, 40), 40)
    assert vanishes(kawashima_modified("[2]", "[1]", 1, 30), 30)


def test_n2_instance_expansion():
    rel = make_relation("[1]", "[1]", 2)
    assert rel.linear_arg == -W("2[2,1,1] + [2,2] + h[2,1] - [3,1]")
    ((k, l, left, right),) = rel.quadratic_terms
    assert (k, l) == (1, 1) and left == right == W("[2]")
    P = 30
    z = lambda s: zeta_q(W(s), P)
    residual = z("[2]") * z("[2]") - (
        2 * z("[2,1,1]") + z("[2,2]") + z("h[2,1]") - z("[3,1]"))
    assert vanishes(residual, P)


def test_paths_agree():
    for a, b in [("[1]", "[1]"), ("[2]", "[1,1]"), ("[1,2]", "[1]")]:
        for n in (1, 2, 3):
            direct, via, same = kawashima_paths(a, b, n, 20)
            assert same and direct == via and vanishes(direct, 20)


def test_relation_rejects_bad_input():
    with pytest.raises(ValueError):
        make_relation("[]", "[1]", 1)
    with pytest.raises(ValueError):
        make_relation("[1]", "[1]", 0)
    with pytest.raises(ValueError):
        make_relation("[1]", "[1]", 1, "other")


def test_generated_arguments_are_admissible():
    for variant in ("modified", "q-deformed"):
        for rel, _ in enumerate_relations(4, 3, 5, variant):
            for arg in rel.arguments():
                assert all(u and u[0] >= 2 for u in arg.words())


def test_enumerate_examples():
    res = enumerate_relations(2, 1, 30)
    assert len(res) == 1
    rel, val = res[0]
    assert (rel.w1, rel.w2, rel.n) == ((1,), (1,), 1) and val == AtLeast(30)
    pairs = {(r.w1, r.w2) for r, _ in enumerate_relations(3, 1, 30)}
    assert {((1,), (1,)), ((1,), (2,)), ((2,), (1,)), ((1,), (1, 1)), ((1, 1), (1,))} <= pairs
    assert any(r.n == 2 and r.quadratic_terms and v == AtLeast(30)
               for r, v in enumerate_relations(2, 2, 30))
    with pytest.raises(ValueError):
        enumerate_relations(0, 1, 30)


def test_enumerate_deterministic_across_workers():
    serial = [json.dumps(r.to_json(20, v)) for r, v in enumerate_relations(4, 2, 20)]
    parallel = [json.dumps(r.to_json(20, v)) for r, v in enumerate_relations(4, 2, 20, workers=2)]
    assert serial == parallel


def test_json_schema():
    rel = make_relation("[1]", "[1]", 2)
    doc = rel.to_json(30, AtLeast(30))
    assert list(doc) == ["w1", "w2", "n", "variant", "linear_arg", "quadratic_terms",
                         "precision", "residual_valuation"]
    assert doc["residual_valuation"] == "≥30"
    assert {"word": "[2,1]", "coeff": "-1 + q"} in doc["linear_arg"]
    assert doc["quadratic_terms"] == [{"k": 1, "l": 1, "left": [{"word": "[2]", "coeff": "1"}],
                                       "right": [{"word": "[2]", "coeff": "1"}]}]
    assert make_relation("[1]", "[1]", 1).to_json(30, 7)["residual_valuation"] == 7


def _parse_q_poly(text):
    expr = parse_expr(text.replace("^", "**"),
                      transformations=standard_transformations + (implicit_multiplication,))
    return [Fraction(int(c.p), int(c.q)) for c in sympy.Poly(expr, oracles.q).all_coeffs()[::-1]]


def test_json_round_trip():
    for rel, v in enumerate_relations(4, 3, 10):
        doc = json.loads(json.dumps(rel.to_json(10, v)))
        assert parse_word(doc["w1"]) == rel.w1 and parse_word(doc["w2"]) == rel.w2
        terms = {parse_word(t["word"]): _parse_q_poly(t["coeff"]) for t in doc["linear_arg"]}
        expected = {u: list(hbar_eval(c).coeffs) for u, c in rel.linear_arg.items()}
        assert terms == expected


def test_truncation_is_stable():
    P = 20
    lo, hi = ZetaEvaluator(P), ZetaEvaluator(P + 10)
    for u in words_up_to_weight(5):
        if u[0] >= 2:
            assert hi.zeta(WordSum.of(u)).truncate(P) == lo.zeta(WordSum.of(u))
            assert hi.zeta_star(WordSum.of(u)).truncate(P) == lo.zeta_star(WordSum.of(u))
