"""
Free-algebra machinery for ncideals.

This package exports words, polynomials, the textual syntax and the
rewriting layer. Completion, endomorphisms and Grassmann evaluation live in
their own modules (``groebner``, ``endo``, ``grassmann``).
"""

from ncideals.algebra.core import Polynomial, Word, commutator, word_compare, x
from ncideals.algebra.parsing import format_polynomial, parse_polynomial
from ncideals.algebra.rewrite import GeneratorSet, enumerate_normal_words, normal_form

__all__ = [
    "Polynomial",
    "Word",
    "commutator",
    "word_compare",
    "x",
    "format_polynomial",
    "parse_polynomial",
    "GeneratorSet",
    "enumerate_normal_words",
    "normal_form",
]
