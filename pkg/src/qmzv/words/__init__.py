"""The noncommutative word algebra over Q[hbar] on letters z_1, z_2, ..."""
from .operations import (
    CIRCLEDAST_VARIANTS,
    circ,
    circ_minus,
    circ_plus,
    circledast,
    circledast_q,
    d,
    d_q,
    d_q_inv,
    depth_one,
    harmonic,
    letter_circ,
    phi,
    phi_word,
    psi,
    psi_composite,
    set_hbar_zero,
    stuffle_bar,
    stuffle_minus,
    stuffle_plus,
    triangle,
    xi,
)
from .wordsum import (
    Word,
    WordSum,
    concat,
    depth,
    format_word,
    format_wordsum,
    is_admissible,
    make_word,
    parse_word,
    parse_wordsum,
    weight,
    word_key,
    words_of_weight,
    words_up_to_weight,
)

__all__ = [name for name in dir() if not name.startswith("_")]
