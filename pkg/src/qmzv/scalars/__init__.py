"""Exact scalars: rationals, polynomials and rational functions in q,
truncated q-series, and the hbar coefficient ring."""
from fractions import Fraction as Rational

from .polynomial import HBAR, HbarPoly, PolyQ, hbar_eval
from .qfunctions import (
    harmonic_weight,
    inv_one_minus_q_power,
    q_binomial,
    q_binomial_rf,
    q_integer,
    q_integer_rf,
    q_pochhammer_q,
    q_shifted_factorial,
    series_expand,
    valuation,
    hbar_eval_rf,
)
from .ratfunc import ONE, Q, ZERO, RationalFunction
from .series import DEFAULT_PRECISION, AtLeast, TruncatedSeries

__all__ = [
    "Rational", "PolyQ", "HbarPoly", "HBAR", "RationalFunction", "TruncatedSeries",
    "AtLeast", "DEFAULT_PRECISION", "ONE", "ZERO", "Q",
    "q_integer", "q_integer_rf", "q_shifted_factorial", "q_pochhammer_q",
    "q_binomial", "q_binomial_rf", "series_expand", "valuation", "hbar_eval",
    "hbar_eval_rf", "harmonic_weight", "inv_one_minus_q_power",
]
