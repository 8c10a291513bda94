"""
Tests for words, the deg-lex order and polynomial arithmetic.
"""

import random
from fractions import Fraction

import pytest

from ncideals.algebra.core import (
    Ordering,
    Polynomial,
    commutator,
    count_words,
    leading_term,
    multidegree_of,
    multidegrees_up_to,
    poly_add,
    poly_mul,
    word_compare,
    words_of_multidegree,
    x,
)
from ncideals.errors import (
    OutOfRangeError,
    PreconditionError,
    ZeroPolynomialError,
)


def random_word(rng: random.Random, n: int = 3, max_length: int = 4) -> tuple[int, ...]:
    return tuple(rng.randint(1, n) for _ in range(rng.randint(0, max_length)))


def random_polynomial(rng: random.Random, terms: int = 3) -> Polynomial:
    return Polynomial({random_word(rng, 3, 3): rng.randint(-3, 3) for _ in range(terms)})


class TestWordCompare:
    """Tests for the deg-lex order."""

    def test_same_degree_is_lexicographic(self) -> None:
        """x1x2 comes before x2x1."""
        assert word_compare((1, 2), (2, 1)) is Ordering.LESS

    def test_empty_words_are_equal(self) -> None:
        """The unit word equals itself."""
        assert word_compare((), ()) is Ordering.EQUAL

    def test_degree_dominates(self) -> None:
        """A shorter word is smaller regardless of its letters."""
        assert word_compare((3,), (1, 1)) is Ordering.LESS
        assert word_compare((1, 1), (3,)) is Ordering.GREATER

    def test_multiplicative_compatibility(self) -> None:
        """u < v implies wu < wv and uw < vw on random words."""
        rng = random.Random(7)
        for _ in range(200):
            u, v, w = random_word(rng), random_word(rng), random_word(rng)
            if word_compare(u, v) is not Ordering.LESS:
                continue
            assert word_compare(w + u, w + v) is Ordering.LESS
            assert word_compare(u + w, v + w) is Ordering.LESS


class TestMultidegree:
    """Tests for multidegree helpers."""

    def test_counts_occurrences(self) -> None:
        """x2x1x2 in three variables has multidegree (1, 2, 0)."""
        assert multidegree_of((2, 1, 2), 3) == (1, 2, 0)
        assert multidegree_of((1, 2, 3), 3) == (1, 1, 1)

    def test_empty_word(self) -> None:
        """The unit word has multidegree zero."""
        assert multidegree_of((), 2) == (0, 0)

    def test_out_of_range(self) -> None:
        """An index above n is rejected."""
        with pytest.raises(OutOfRangeError):
            multidegree_of((1, 4), 3)

    def test_words_of_multidegree_match_count(self) -> None:
        """Enumeration and the multinomial count agree."""
        md = (2, 1, 1)
        words = list(words_of_multidegree(md))
        assert len(words) == count_words(md) == 12
        assert len(set(words)) == 12

    def test_multidegrees_up_to_is_ordered_by_degree(self) -> None:
        """Multidegrees come in total degree order, zero first."""
        mds = multidegrees_up_to(2, 2)
        assert mds == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


class TestPolynomialArithmetic:
    """Tests for addition, multiplication and commutators."""

    def test_addition_cancels(self) -> None:
        """(x1x2 - x2x1) + x2x1 == x1x2."""
        f = x(1) * x(2) - x(2) * x(1)
        assert poly_add(f, x(2) * x(1)) == x(1) * x(2)

    def test_add_zero_and_like_terms(self) -> None:
        """Zero is neutral and like terms combine."""
        f = x(1) * x(2)
        assert f + Polynomial.zero() == f
        assert 2 * x(1) + 3 * x(1) == 5 * x(1)

    def test_multiplication_is_noncommutative(self) -> None:
        """x1*x2 and x2*x1 are different words."""
        assert poly_mul(x(1), x(2)) == Polynomial.from_word((1, 2))
        assert x(1) * x(2) != x(2) * x(1)

    def test_expand_product(self) -> None:
        """(x1 + x2)(x1 - x2) expands into four words."""
        product = (x(1) + x(2)) * (x(1) - x(2))
        expected = Polynomial({(1, 1): 1, (1, 2): -1, (2, 1): 1, (2, 2): -1})
        assert product == expected
        assert product * 1 == product

    def test_no_zero_terms_stored(self) -> None:
        """Cancellation removes terms entirely."""
        f = x(1) - x(1)
        assert f.is_zero()
        assert len(f) == 0
        assert f == 0

    def test_commutator_values(self) -> None:
        """[x1,x2] = x1x2 - x2x1, [f,f] = 0 and the expanded double commutator."""
        assert commutator(x(1), x(2)) == x(1) * x(2) - x(2) * x(1)
        f = x(1) * x(2) + x(3)
        assert commutator(f, f).is_zero()
        expected = Polynomial({(3, 2, 1): 1, (3, 1, 2): -1, (2, 1, 3): -1, (1, 2, 3): 1})
        assert commutator(x(3), commutator(x(2), x(1))) == expected

    def test_commutator_is_left_normed(self) -> None:
        """Three arguments mean [[a, b], c]."""
        assert commutator(x(1), x(2), x(3)) == commutator(commutator(x(1), x(2)), x(3))

    def test_power(self) -> None:
        """Integer powers repeat multiplication; the zeroth power is 1."""
        assert x(1) ** 0 == Polynomial.constant(1)
        assert (x(2) * x(1)) ** 2 == Polynomial.from_word((2, 1, 2, 1))

    def test_associative_and_distributive(self) -> None:
        """Random small polynomials satisfy ring axioms."""
        rng = random.Random(11)
        for _ in range(30):
            f, g, h = (random_polynomial(rng) for _ in range(3))
            assert (f * g) * h == f * (g * h)
            assert f * (g + h) == f * g + f * h
            assert (f + g) * h == f * h + g * h

    def test_jacobi_identity(self) -> None:
        """[[f,g],h] + [[g,h],f] + [[h,f],g] vanishes."""
        rng = random.Random(13)
        for _ in range(20):
            f, g, h = (random_polynomial(rng) for _ in range(3))
            total = commutator(f, g, h) + commutator(g, h, f) + commutator(h, f, g)
            assert total.is_zero()


class TestLeadingTerm:
    """Tests for leading terms and derived properties."""

    def test_simple_commutator(self) -> None:
        """[x2,x1] leads with +x2x1."""
        assert leading_term(commutator(x(2), x(1))) == (Fraction(1), (2, 1))

    def test_nested_commutators(self) -> None:
        """Leading words of the two basic length-three commutators."""
        assert leading_term(commutator(x(3), commutator(x(2), x(1)))) == (1, (3, 2, 1))
        assert leading_term(commutator(x(2), x(1), x(1))) == (1, (2, 1, 1))

    def test_zero_has_no_leading_term(self) -> None:
        """Asking the zero polynomial for its leading term fails."""
        with pytest.raises(ZeroPolynomialError):
            Polynomial.zero().leading_term()

    def test_monic_and_degree(self) -> None:
        """monic divides by the leading coefficient."""
        f = 3 * x(2) * x(1) - x(1)
        assert f.monic().leading_coefficient == 1
        assert f.monic().coefficient((1,)) == Fraction(-1, 3)
        assert f.degree == 2
        assert Polynomial.zero().degree == -1

    def test_multidegree_requires_homogeneity(self) -> None:
        """Mixed multidegrees are rejected."""
        assert commutator(x(2), x(1), x(1)).multidegree(2) == (2, 1)
        with pytest.raises(PreconditionError):
            (x(1) + x(2)).multidegree(2)

    def test_lrmul(self) -> None:
        """Left and right word multiplication."""
        f = commutator(x(2), x(1))
        assert f.lrmul((3,), (1,)) == x(3) * f * x(1)
        assert f.lrmul() is f

    def test_variables(self) -> None:
        """Variables and the largest index."""
        f = x(3) * x(1) + x(1)
        assert f.variables() == frozenset({1, 3})
        assert f.max_variable() == 3
        assert Polynomial.constant(2).max_variable() == 0

    def test_invalid_variable(self) -> None:
        """Variables are numbered from 1."""
        with pytest.raises(OutOfRangeError):
            Polynomial.variable(0)

    def test_hash_matches_equality(self) -> None:
        """Equal polynomials hash alike, including scalars."""
        assert hash(x(1) * x(2) - x(2) * x(1)) == hash(commutator(x(1), x(2)))
        assert hash(Polynomial.constant(2)) == hash(2)
