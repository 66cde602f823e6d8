import pytest

from qmzv.harmonic import (
    A_eval,
    A_star_eval,
    A_seq,
    S_eval,
    S_seq,
    SequenceFn,
    a_eval,
    delta_t_tower,
    harmonic_values,
    nabla_q,
    nabla_seq,
    s_eval,
)
from qmzv.scalars import ONE, Q, ZERO, AtLeast, PolyQ, RationalFunction, series_expand
from qmzv.words import (
    WordSum,
    circ_plus,
    circledast_q,
    d_q,
    parse_wordsum,
    phi,
    stuffle_minus,
    stuffle_plus,
    triangle,
    weight,
    words_up_to_weight,
)

import oracles

W = parse_wordsum


def rf(num, den=(1,)):
    return RationalFunction(PolyQ(num), PolyQ(den))


def test_S_examples():
    assert S_eval("[1]", 1) == Q
    assert S_eval("[2]", 2) == Q + rf([0, 0, 1], [1, 2, 1])
    assert S_eval("[2,1]", 0) == ZERO
    assert S_eval("[]", 5) == ONE


def test_A_examples():
    assert A_eval("[2,1]", 2) == rf([0, 0, 1], [1, 2, 1])
    assert A_star_eval("[1,1]", 1) == ONE
    assert A_eval("[3]", 1) == Q * Q


def test_pinned_examples():
    assert s_eval("[1,1]", 0) == Q
    assert s_eval("[2]", 1) == rf([0, 0, 0, 0, 1], [1, 2, 1])
    assert a_eval("[1]", 2) == rf([1], [1, 1, 1])
    with pytest.raises(ValueError, match="non-constant"):
        a_eval("[]", 1)


def test_values_print_as_fraction():
    assert str(S_eval("[1]", 2)) == "(q + 2q^2)/(1 + q)"


def test_hbar_acts_as_one_minus_q():
    assert S_eval("h[2]", 3) == rf([1, -1]) * S_eval("[2]", 3)


def test_max_n_guard():
    with pytest.raises(ValueError):
        S_eval("[1]", 65)
    assert S_eval("[1]", 65, max_n=None) is not None


@pytest.mark.parametrize("word", [(1,), (2,), (2, 1), (1, 2), (1, 1, 1), (3, 1), (2, 2)])
@pytest.mark.parametrize("x", oracles.POINTS)
def test_nested_sums_match_brute_force(word, x):
    w = WordSum.of(word)
    for n in range(6):
        assert S_eval(w, n).evaluate(x) == oracles.S_brute(word, n, x)
        assert A_eval(w, n).evaluate(x) == oracles.A_brute(word, n, x)
        assert A_star_eval(w, n).evaluate(x) == oracles.A_star_brute(word, n, x)
        assert s_eval(w, n).evaluate(x) == oracles.s_brute(word, n, x)
        assert a_eval(w, n).evaluate(x) == oracles.a_brute(word, n, x)


def test_wordsum_with_hbar_matches_brute_force():
    w = W("[2,1] - h[3] + (1/2)h^2[1,1]")
    x = oracles.POINTS[0]
    for n in range(5):
        assert S_eval(w, n).evaluate(x) == oracles.wordsum_brute(w, oracles.S_brute, n, x)


def test_nabla_examples():
    assert nabla_q(S_seq("[2]"), 1) == -Q
    b = SequenceFn(lambda n: RationalFunction.q_power(n) + 3)
    assert nabla_q(b, 0) == b(0)
    one = SequenceFn(lambda n: ONE)
    for n in range(1, 7):
        assert nabla_q(one, n) == ZERO


def test_delta_tower_examples():
    b = S_seq("[2,1]")
    assert delta_t_tower(b, 1) == b(0) - b(1)
    assert delta_t_tower(b, 0) == b(0)
    assert delta_t_tower(S_seq("[2]"), 2) == nabla_q(S_seq("[2]"), 2)


def test_delta_tower_equals_nabla():
    for u in words_up_to_weight(4):
        b = S_seq(WordSum.of(u))
        for n in range(7):
            assert delta_t_tower(b, n) == nabla_q(b, n)


def test_duality_small():
    for u in words_up_to_weight(4):
        nab = nabla_seq(S_seq(WordSum.of(u)))
        assert nab(0) == ZERO
        for n in range(1, 7):
            assert nab(n) == -s_eval(phi(WordSum.of(u)), n - 1)


def test_product_theorems_small():
    ws = words_up_to_weight(3)
    for u in ws:
        for v in ws:
            if weight(u) + weight(v) > 4:
                continue
            a, b = WordSum.of(u), WordSum.of(v)
            S3 = harmonic_values(stuffle_minus(a, b), 6, "S")
            A3 = harmonic_values(stuffle_plus(a, b), 6, "A")
            for n in range(7):
                assert S_eval(a, n) * S_eval(b, n) == S3[n]
                assert A_eval(a, n) * A_eval(b, n) == A3[n]
                assert s_eval(a, n) * a_eval(b, n) == a_eval(circledast_q(d_q(a), b), n)
                assert a_eval(a, n) * A_eval(b, n) == a_eval(triangle(a, b), n)


def test_star_reduction_small():
    for u in words_up_to_weight(4, include_unit=True):
        w = WordSum.of(u)
        assert harmonic_values(w, 6, "A_star") == harmonic_values(d_q(w), 6, "A")


def test_A_to_a_reduction():
    for i in range(1, 4):
        for u in words_up_to_weight(3, include_unit=True):
            w = WordSum.of(u)
            A = A_seq(w)
            arg = WordSum.word(i) * w + circ_plus(i, w)
            for n in range(7):
                head = RationalFunction.q_power((i - 1) * (n + 1)) / (
                    (ONE - RationalFunction.q_power(n + 1)) / (ONE - Q)) ** i
                assert head * A(n + 1) == a_eval(arg, n)


def test_valuation_bounds():
    P = 16
    for u in words_up_to_weight(4):
        w = WordSum.of(u)
        for n in range(8):
            if u[0] >= 2:
                v = series_expand(a_eval(w, n), P).valuation()
                assert isinstance(v, AtLeast) or v >= n + 1
            if n >= 1:
                v = series_expand(-s_eval(phi(w), n - 1), P).valuation()
                assert isinstance(v, AtLeast) or v >= n
