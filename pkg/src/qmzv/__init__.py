"""q-analogues of multiple zeta values: word algebra, finite harmonic q-series,
q-Newton series and Kawashima-type relations."""

__version__ = "0.1.0"
