"""Products, module actions and linear maps on the word algebra.

All the stuffle-type products share one quasi-shuffle recursion

    (z_i u) * (z_j v) = z_i (u * z_j v) + z_j (z_i u * v) + [z_i . z_j] (u * v)

and differ only in the letter product ``[z_i . z_j]``.
"""
from __future__ import annotations

from math import comb
from typing import Callable

from ..scalars.polynomial import HBAR, HbarPoly
from .wordsum import Word, WordSum, linear_extend

_ONE = HbarPoly._raw((1,))
_MINUS_ONE = HbarPoly._raw((-1,))
_MINUS_HBAR = HbarPoly._raw((0, -1))

LetterRule = Callable[[int, int], tuple]

CIRCLEDAST_VARIANTS = ("plus-hbar0", "bar")


def _add_into(out: dict, w: Word, c: HbarPoly) -> None:
    if w in out:
        c = out[w] + c
        if c:
            out[w] = c
        else:
            del out[w]
    elif c:
        out[w] = c


def _require_nonconstant(x: WordSum, what: str) -> None:
    if x.has_constant_term():
        raise ValueError(f"{what} requires non-constant argument")


# -- the action of z_i on words ---------------------------------------------

def circ(i: int, w) -> WordSum:
    """z_i o w: add i to the first letter; z_i o 1 = 0, z_0 o w = w for w != 1."""
    if i < 0:
        raise ValueError("circ expects i >= 0")
    w = WordSum.of(w)
    out = {}
    for u, c in w.terms.items():
        if not u:
            continue
        out[u if i == 0 else (u[0] + i,) + u[1:]] = c
    return WordSum._raw(out)


def circ_plus(i: int, w) -> WordSum:
    """z_i o+ w = (z_i + hbar z_{i-1}) o w."""
    if i < 1:
        raise ValueError("circ_plus expects i >= 1")
    return circ(i, w) + circ(i - 1, w).scale(HBAR)


def circ_minus(i: int, w) -> WordSum:
    """z_i o- w = (-z_i + hbar z_{i-1}) o w."""
    if i < 1:
        raise ValueError("circ_minus expects i >= 1")
    return circ(i - 1, w).scale(HBAR) - circ(i, w)


def letter_circ(x, y, rule: str = "circ") -> WordSum:
    """Extend a letter product bilinearly to depth-one elements of the span of z_0, z_1, ...

    Depth-one elements are given as dicts ``{letter_index: HbarPoly}`` so
    that z_0 can appear (e.g. ``z_1 - hbar z_0``).
    """
    out: dict = {}
    for i, c in x.items():
        for j, d in y.items():
            for k, e in _LETTER_RULES[rule](i, j):
                _add_into(out, (k,), c * d * e)
    return WordSum._raw(out)


def _rule_plus(i, j):
    return ((i + j, _ONE), (i + j - 1, HBAR))


def _rule_minus(i, j):
    return ((i + j, _MINUS_ONE), (i + j - 1, HBAR))


def _rule_bar(i, j):
    return ((i + j, _MINUS_ONE),)


def _rule_harmonic(i, j):
    return ((i + j, _ONE),)


_LETTER_RULES = {
    "plus": _rule_plus,
    "minus": _rule_minus,
    "bar": _rule_bar,
    "harmonic": _rule_harmonic,
    "circ": _rule_harmonic,
}


def _quasi_shuffle(a: WordSum, b: WordSum, rule: LetterRule) -> WordSum:
    memo: dict = {}

    def prod(u: Word, v: Word) -> dict:
        if not u:
            return {v: _ONE}
        if not v:
            return {u: _ONE}
        key = (u, v) if u <= v else (v, u)
        hit = memo.get(key)
        if hit is not None:
            return hit
        i, j = u[0], v[0]
        out: dict = {}
        for w, c in prod(u[1:], v).items():
            _add_into(out, (i,) + w, c)
        for w, c in prod(u, v[1:]).items():
            _add_into(out, (j,) + w, c)
        tail = prod(u[1:], v[1:])
        for k, e in rule(i, j):
            for w, c in tail.items():
                _add_into(out, (k,) + w, c * e)
        memo[key] = out
        return out

    out: dict = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            cd = c * d
            for w, e in prod(u, v).items():
                _add_into(out, w, cd * e)
    return WordSum._raw(out)


def stuffle_plus(w1, w2) -> WordSum:
    """The product *+ (letter product z_{i+j} + hbar z_{i+j-1})."""
    return _quasi_shuffle(WordSum.of(w1), WordSum.of(w2), _rule_plus)


def stuffle_minus(w1, w2) -> WordSum:
    """The product *- (letter product -z_{i+j} + hbar z_{i+j-1})."""
    return _quasi_shuffle(WordSum.of(w1), WordSum.of(w2), _rule_minus)


def stuffle_bar(w1, w2) -> WordSum:
    """The hbar-free product with letter product -z_{i+j}."""
    return _quasi_shuffle(WordSum.of(w1), WordSum.of(w2), _rule_bar)


def harmonic(w1, w2) -> WordSum:
    """Ordinary harmonic product (*+ at hbar = 0)."""
    return _quasi_shuffle(WordSum.of(w1), WordSum.of(w2), _rule_harmonic)


def _circledast_with(a, b, inner: Callable) -> WordSum:
    a, b = WordSum.of(a), WordSum.of(b)
    _require_nonconstant(a, "circledast")
    _require_nonconstant(b, "circledast")
    out: dict = {}
    tails: dict = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            key = (u[1:], v[1:])
            if key not in tails:
                tails[key] = inner(WordSum._raw({u[1:]: _ONE}), WordSum._raw({v[1:]: _ONE}))
            head = u[0] + v[0]
            cd = c * d
            for w, e in tails[key].terms.items():
                _add_into(out, (head,) + w, cd * e)
    return WordSum._raw(out)


def circledast_q(w1, w2) -> WordSum:
    """(z_i u) (*)_q (z_j v) = z_{i+j} (u *+ v) on non-constant elements."""
    return _circledast_with(w1, w2, stuffle_plus)


def circledast(w1, w2, variant: str = "plus-hbar0") -> WordSum:
    """hbar-free analogue of circledast_q.

    ``variant="plus-hbar0"`` uses the harmonic product (*+ at hbar = 0);
    ``variant="bar"`` uses the product with letter term -z_{i+j}.
    """
    if variant == "plus-hbar0":
        return _circledast_with(w1, w2, harmonic)
    if variant == "bar":
        return _circledast_with(w1, w2, stuffle_bar)
    raise ValueError(f"unknown circledast variant {variant!r}; expected one of {CIRCLEDAST_VARIANTS}")


def triangle(w1, w2) -> WordSum:
    """(z_i u) /\\ v = z_i (u *+ v), first argument non-constant."""
    a, b = WordSum.of(w1), WordSum.of(w2)
    _require_nonconstant(a, "triangle")
    out: dict = {}
    for u, c in a.terms.items():
        for w, e in stuffle_plus(WordSum._raw({u[1:]: _ONE}), b).terms.items():
            _add_into(out, (u[0],) + w, c * e)
    return WordSum._raw(out)


# -- duality --------------------------------------------------------------

def phi_word(u: Word) -> Word:
    """Dual word from the complement of the partial sums of ``u``."""
    if not u:
        raise ValueError("phi requires non-constant argument")
    partial = set()
    s = 0
    for k in u[:-1]:
        s += k
        partial.add(s)
    total = s + u[-1]
    out = []
    prev = 0
    for p in range(1, total + 1):
        if p not in partial:
            out.append(p - prev)
            prev = p
    return tuple(out)


def phi(w) -> WordSum:
    w = WordSum.of(w)
    _require_nonconstant(w, "phi")
    out: dict = {}
    for u, c in w.terms.items():
        _add_into(out, phi_word(u), c)
    return WordSum._raw(out)


# -- d_q, its inverse, and d --------------------------------------------------

def _derivation_like(letter_step: Callable[[int, WordSum], WordSum]):
    def apply(x) -> WordSum:
        x = WordSum.of(x)
        memo: dict = {(): WordSum.unit()}

        def on_word(u: Word) -> WordSum:
            hit = memo.get(u)
            if hit is not None:
                return hit
            rest = on_word(u[1:])
            res = letter_step(u[0], rest)
            memo[u] = res
            return res

        out: dict = {}
        for u, c in x.terms.items():
            for v, d in on_word(u).terms.items():
                _add_into(out, v, c * d)
        return WordSum._raw(out)

    return apply


def _prepend(i: int, x: WordSum) -> WordSum:
    return WordSum._raw({(i,) + w: c for w, c in x.terms.items()})


d_q = _derivation_like(lambda i, r: _prepend(i, r) + circ_plus(i, r))
d_q.__doc__ = "d_q(1) = 1, d_q(z_i w) = z_i d_q(w) + z_i o+ d_q(w)."

d_q_inv = _derivation_like(lambda i, r: _prepend(i, r) - circ_plus(i, r))
d_q_inv.__doc__ = "Inverse of d_q: z_i w -> z_i d_q^-1(w) - z_i o+ d_q^-1(w)."

d = _derivation_like(lambda i, r: _prepend(i, r) + circ(i, r))
d.__doc__ = "d(1) = 1, d(z_i w) = z_i d(w) + z_i o d(w)."


# -- Psi ----------------------------------------------------------------------

def xi(i: int) -> WordSum:
    """sum_{k<i} C(i-1, k) (-hbar)^(i-1-k) z_{k+1}."""
    if i < 1:
        raise ValueError("xi expects i >= 1")
    out = {}
    for k in range(i):
        c = HbarPoly.monomial(i - 1 - k, comb(i - 1, k) * (-1) ** (i - 1 - k))
        out[(k + 1,)] = c
    return WordSum._raw(out)


def _psi_word(u: Word) -> WordSum:
    result = WordSum.unit()
    for k in reversed(u):
        result = xi(k) * result
    return result


psi = linear_extend(_psi_word)
psi.__doc__ = "Psi via the letterwise recursion Psi(z_i w) = xi_i Psi(w)."


def psi_composite(w) -> WordSum:
    """Psi = phi o d_q^-1 o d o phi, with Psi(1) = 1."""
    w = WordSum.of(w)
    const = w.constant_term()
    body = WordSum._raw({u: c for u, c in w.terms.items() if u})
    out = phi(d_q_inv(d(phi(body)))) if body else WordSum.zero()
    if const:
        out = out + WordSum._raw({(): const})
    return out


def set_hbar_zero(w) -> WordSum:
    return WordSum.of(w).map_coeffs(lambda c: HbarPoly._raw((c[0],)))


def depth_one(x: WordSum) -> dict:
    """View an element of the letter span as ``{letter: coeff}``."""
    out = {}
    for u, c in x.terms.items():
        if len(u) != 1:
            raise ValueError("expected a linear combination of single letters")
        out[u[0]] = c
    return out
