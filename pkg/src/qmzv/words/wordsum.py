"""Words in the letters z_1, z_2, ... and their Q[hbar]-linear combinations.

A word is a plain tuple of positive ints, ``()`` being the unit.  A
:class:`WordSum` maps words to nonzero :class:`HbarPoly` coefficients.

Text syntax: ``[3,1]`` for a word, ``[]`` for the unit, and sums such as
``2[1,1] - [2] + h[1]`` or ``(1 - h)[2]``.  Coefficients are polynomials in
``h`` (hbar); a coefficient that is not a signed monomial is parenthesised.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Mapping

from ..scalars.polynomial import HbarPoly, format_poly

Word = tuple

_ONE = HbarPoly._raw((1,))


def make_word(letters: Iterable[int]) -> Word:
    w = tuple(int(k) for k in letters)
    if any(k < 1 for k in w):
        raise ValueError(f"letters must be positive integers, got {w}")
    return w


def depth(w: Word) -> int:
    return len(w)


def weight(w: Word) -> int:
    return sum(w)


def word_key(w: Word):
    """Graded lexicographic order: weight, then depth, then letters."""
    return (sum(w), len(w), w)


def is_admissible(w: Word) -> bool:
    return not w or w[0] >= 2


def format_word(w: Word) -> str:
    return "[" + ",".join(map(str, w)) + "]"


def words_of_weight(n: int):
    """All compositions of n, in canonical order."""
    if n == 0:
        return [()]
    out = []

    def rec(rem, prefix):
        if rem == 0:
            out.append(tuple(prefix))
            return
        for k in range(1, rem + 1):
            prefix.append(k)
            rec(rem - k, prefix)
            prefix.pop()

    rec(n, [])
    return sorted(out, key=word_key)


def words_up_to_weight(n: int, include_unit: bool = False):
    out = [()] if include_unit else []
    for k in range(1, n + 1):
        out.extend(words_of_weight(k))
    return out


def _to_hbar(c) -> HbarPoly:
    if isinstance(c, HbarPoly):
        return c
    return HbarPoly((c,))


class WordSum:
    """Immutable finite linear combination of words over Q[hbar]."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        if isinstance(terms, Mapping):
            items = terms.items()
        else:
            items = terms
        acc: dict = {}
        for w, c in items:
            w = make_word(w)
            c = _to_hbar(c)
            if w in acc:
                acc[w] = acc[w] + c
            else:
                acc[w] = c
        self.terms = {w: c for w, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "WordSum":
        obj = object.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def word(cls, *letters: int, coeff=1) -> "WordSum":
        return cls({make_word(letters): coeff})

    @classmethod
    def unit(cls) -> "WordSum":
        return cls._raw({(): _ONE})

    @classmethod
    def zero(cls) -> "WordSum":
        return cls._raw({})

    @classmethod
    def of(cls, x) -> "WordSum":
        """Coerce a word tuple, WordSum, text, or scalar."""
        if isinstance(x, WordSum):
            return x
        if isinstance(x, str):
            return parse_wordsum(x)
        if isinstance(x, tuple):
            return cls({make_word(x): _ONE})
        if isinstance(x, list):
            return cls({make_word(x): _ONE})
        return cls({(): _to_hbar(x)})

    # -- structure ----------------------------------------------------------

    def items(self):
        """Terms in canonical order."""
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def words(self):
        return [w for w, _ in self.items()]

    def __iter__(self):
        return iter(self.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def coeff(self, w) -> HbarPoly:
        return self.terms.get(tuple(w), HbarPoly())

    def constant_term(self) -> HbarPoly:
        return self.coeff(())

    def has_constant_term(self) -> bool:
        return () in self.terms

    def is_admissible(self) -> bool:
        return all(is_admissible(w) for w in self.terms)

    def max_weight(self) -> int:
        return max((weight(w) for w in self.terms), default=0)

    # -- linear structure ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            if w in out:
                s = out[w] + c
                if s:
                    out[w] = s
                else:
                    del out[w]
            else:
                out[w] = c
        return WordSum._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return WordSum._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def scale(self, c) -> "WordSum":
        c = _to_hbar(c)
        if not c:
            return WordSum.zero()
        out = {}
        for w, x in self.terms.items():
            y = x * c
            if y:
                out[w] = y
        return WordSum._raw(out)

    def __mul__(self, other):
        # scalar multiplication, or concatenation with another WordSum
        if isinstance(other, WordSum):
            return concat(self, other)
        if isinstance(other, (int, Fraction, HbarPoly)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, HbarPoly)):
            return self.scale(other)
        return NotImplemented

    def map_coeffs(self, f) -> "WordSum":
        out = {}
        for w, c in self.terms.items():
            y = f(c)
            if y:
                out[w] = y
        return WordSum._raw(out)

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self):
        return f"WordSum({format_wordsum(self)!r})"

    def __str__(self):
        return format_wordsum(self)


def _coerce(x):
    if isinstance(x, WordSum):
        return x
    if isinstance(x, (int, Fraction, HbarPoly)):
        return WordSum.of(x)
    if isinstance(x, tuple):
        return WordSum.of(x)
    return None


def concat(a: WordSum, b: WordSum) -> WordSum:
    out: dict = {}
    for u, c in a.terms.items():
        for v, d in b.terms.items():
            w = u + v
            x = c * d
            if w in out:
                x = out[w] + x
            if x:
                out[w] = x
            else:
                out.pop(w, None)
    return WordSum._raw(out)


def linear_extend(f):
    """Lift a word -> WordSum map to WordSums; ``f`` receives word tuples."""

    def apply(x) -> WordSum:
        x = WordSum.of(x)
        out: dict = {}
        for w, c in x.terms.items():
            for v, d in f(w).terms.items():
                y = c * d
                if v in out:
                    y = out[v] + y
                if y:
                    out[v] = y
                else:
                    out.pop(v, None)
        return WordSum._raw(out)

    apply.__name__ = getattr(f, "__name__", "apply")
    apply.__doc__ = f.__doc__
    return apply


# -- text format --------------------------------------------------------------

def _format_coeff(c: HbarPoly) -> tuple[str, str]:
    """(sign, body) for a coefficient; body is '' for unit magnitude."""
    nz = [(i, x) for i, x in enumerate(c.coeffs) if x]
    if len(nz) == 1:
        i, x = nz[0]
        sign = "-" if x < 0 else "+"
        mag = -x if x < 0 else x
        if i == 0:
            if mag == 1:
                return sign, ""
            return sign, str(mag) if isinstance(mag, int) else f"({mag})"
        mono = "h" if i == 1 else f"h^{i}"
        if mag == 1:
            return sign, mono
        if isinstance(mag, int):
            return sign, f"{mag}{mono}"
        return sign, f"({mag}){mono}"
    return "+", "(" + format_poly(c.coeffs, "h") + ")"


def format_wordsum(x: WordSum) -> str:
    parts = []
    for w, c in x.items():
        sign, body = _format_coeff(c)
        term = body + format_word(w)
        if not parts:
            parts.append(("-" if sign == "-" else "") + term)
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts) if parts else "0"


_TOKEN = re.compile(r"\s*(?:(\[[^\]]*\])|(\d+(?:/\d+)?)|(h)|(\^)|([-+])|([()])|([*·]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word sum at {text[pos:]!r}")
        pos = m.end()
        kinds = ("word", "num", "h", "caret", "sign", "paren", "times")
        for kind, val in zip(kinds, m.groups()):
            if val is not None:
                out.append((kind, val))
                break
    return out


def parse_word(text: str) -> Word:
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")):
        raise ValueError(f"word must look like [k1,k2,...], got {text!r}")
    inner = s[1:-1].strip()
    if not inner:
        return ()
    try:
        letters = [int(p) for p in inner.split(",")]
    except ValueError:
        raise ValueError(f"bad word {text!r}") from None
    return make_word(letters)


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def monomial(self) -> HbarPoly:
        kind, val = self.peek()
        coeff = Fraction(1)
        got = False
        if (kind, val) == ("paren", "("):
            # rational coefficient inside a multi-term polynomial, e.g. (1/2)h
            self.take()
            k, v = self.take()
            if k != "num" or self.take() != ("paren", ")"):
                raise ValueError("bad parenthesised coefficient")
            coeff = Fraction(v)
            got = True
        elif kind == "num":
            self.take()
            coeff = Fraction(val)
            got = True
        kind, val = self.peek()
        if kind == "h":
            self.take()
            power = 1
            if self.peek()[0] == "caret":
                self.take()
                k, v = self.take()
                if k != "num" or "/" in v:
                    raise ValueError("bad exponent of h")
                power = int(v)
            return HbarPoly.monomial(power, coeff)
        if not got:
            raise ValueError(f"expected coefficient, got {val!r}")
        return HbarPoly((coeff,))

    def hpoly(self) -> HbarPoly:
        sign = 1
        if self.peek()[0] == "sign":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.monomial() * sign
        while self.peek()[0] == "sign":
            sign = -1 if self.take()[1] == "-" else 1
            acc = acc + self.monomial() * sign
        return acc

    def coefficient(self) -> HbarPoly:
        kind, val = self.peek()
        if kind == "paren" and val == "(":
            start = self.i
            try:  # a rational monomial such as (1/2)h^2
                c = self.monomial()
                if self.peek()[0] in ("word", "times"):
                    return self._skip_times(c)
            except ValueError:
                pass
            self.i = start
            self.take()
            c = self.hpoly()
            if self.take() != ("paren", ")"):
                raise ValueError("unbalanced parenthesis")
        elif kind in ("num", "h"):
            c = self.monomial()
        else:
            c = HbarPoly((1,))
        return self._skip_times(c)

    def _skip_times(self, c: HbarPoly) -> HbarPoly:
        if self.peek()[0] == "times":
            self.take()
        return c

    def term(self) -> tuple[Word, HbarPoly]:
        c = self.coefficient()
        kind, val = self.take()
        if kind != "word":
            raise ValueError(f"expected [..] word, got {val!r}")
        return parse_word(val), c

    def wordsum(self) -> WordSum:
        terms = []
        if self.peek() == (None, None):
            raise ValueError("empty word sum")
        if self.peek() == ("num", "0") and len(self.toks) == 1:
            self.take()
            return WordSum.zero()
        sign = 1
        if self.peek()[0] == "sign":
            sign = -1 if self.take()[1] == "-" else 1
        w, c = self.term()
        terms.append((w, c * sign))
        while self.peek()[0] == "sign":
            sign = -1 if self.take()[1] == "-" else 1
            w, c = self.term()
            terms.append((w, c * sign))
        if self.peek() != (None, None):
            raise ValueError(f"trailing input {self.peek()[1]!r}")
        return WordSum(terms)


def parse_wordsum(text: str) -> WordSum:
    """Parse the text syntax produced by :func:`format_wordsum`."""
    return _Parser(_tokenize(text)).wordsum()
