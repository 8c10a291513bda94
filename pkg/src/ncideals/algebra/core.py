"""
Words, the deg-lex term order and exact noncommutative polynomials.

A word is a tuple of 1-based variable indices (``(2, 1)`` is x2*x1); the
empty tuple is the unit monomial. A ``Polynomial`` is an immutable map from
words to nonzero ``Fraction`` coefficients, stored in deg-lex descending
order so the leading term is always the first entry.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from enum import IntEnum
from fractions import Fraction
from math import factorial
from numbers import Rational
from typing import Optional, Union

from ncideals.errors import OutOfRangeError, PreconditionError, ZeroPolynomialError

Word = tuple[int, ...]
Multidegree = tuple[int, ...]
Coefficient = Union[int, Fraction]

ONE: Word = ()


# ============================================================================
# Words and the deg-lex order
# ============================================================================

class Ordering(IntEnum):
    """Result of comparing two words."""
    LESS = -1
    EQUAL = 0
    GREATER = 1


def deglex_key(word: Word) -> tuple[int, Word]:
    """Sort key realizing deg-lex: length first, then left-to-right indices."""
    return (len(word), word)


def word_compare(u: Word, v: Word) -> Ordering:
    """Compare two words in the deg-lex order with x1 < x2 < ...

    Example:
        >>> word_compare((1, 2), (2, 1))
        <Ordering.LESS: -1>
    """
    ku, kv = deglex_key(u), deglex_key(v)
    if ku < kv:
        return Ordering.LESS
    if ku > kv:
        return Ordering.GREATER
    return Ordering.EQUAL


def validate_word(word: Iterable[int], n: Optional[int] = None) -> Word:
    """Return ``word`` as a tuple after checking every index is in ``1..n``.

    Raises:
        OutOfRangeError: If an index is below 1 or above ``n``.
    """
    result = tuple(word)
    for letter in result:
        if letter < 1 or (n is not None and letter > n):
            bound = f"1..{n}" if n is not None else ">= 1"
            raise OutOfRangeError(f"variable index {letter} outside {bound}")
    return result


def multidegree_of(word: Word, n: int) -> Multidegree:
    """Count the occurrences of each variable x1..xn in ``word``.

    Raises:
        OutOfRangeError: If ``word`` uses an index above ``n``.
    """
    counts = [0] * n
    for letter in word:
        if letter < 1 or letter > n:
            raise OutOfRangeError(f"variable index {letter} outside 1..{n}")
        counts[letter - 1] += 1
    return tuple(counts)


def add_multidegrees(a: Multidegree, b: Multidegree) -> Multidegree:
    return tuple(x + y for x, y in zip(a, b))


def count_words(md: Multidegree) -> int:
    """Number of words with multidegree ``md`` (a multinomial coefficient)."""
    total = factorial(sum(md))
    for exponent in md:
        total //= factorial(exponent)
    return total


def words_of_multidegree(md: Multidegree) -> Iterator[Word]:
    """Yield every word with multidegree ``md`` in lexicographic order."""
    remaining = list(md)
    length = sum(md)
    prefix: list[int] = []

    def extend() -> Iterator[Word]:
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for index, left in enumerate(remaining):
            if left:
                remaining[index] -= 1
                prefix.append(index + 1)
                yield from extend()
                prefix.pop()
                remaining[index] += 1

    yield from extend()


def multidegrees_up_to(n: int, bound: int) -> list[Multidegree]:
    """All multidegrees in ``n`` variables of total degree ``<= bound``.

    Ordered by total degree, then lexicographically on the exponent vector.
    """
    result: list[Multidegree] = []

    def fill(prefix: list[int], left: int) -> None:
        if len(prefix) == n:
            result.append(tuple(prefix))
            return
        for exponent in range(left + 1):
            prefix.append(exponent)
            fill(prefix, left - exponent)
            prefix.pop()

    fill([], bound)
    return sorted(result, key=lambda md: (sum(md), md))


def format_word(word: Word, prefix: str = "x") -> str:
    """Render a word as ``x1*x2*x1``; the unit word renders as ``1``."""
    if not word:
        return "1"
    return "*".join(f"{prefix}{letter}" for letter in word)


# ============================================================================
# Polynomials
# ============================================================================

class Polynomial:
    """Element of the free associative algebra Q<x1, x2, ...>.

    Terms are kept deg-lex descending with no zero coefficients; the zero
    polynomial has no terms. Instances are immutable and hashable.

    Example:
        >>> f = Polynomial.variable(1) * Polynomial.variable(2)
        >>> f.leading_term()
        (Fraction(1, 1), (1, 2))
    """

    __slots__ = ("_terms", "_hash")

    def __init__(
        self,
        terms: Union[Mapping[Word, Coefficient], Iterable[tuple[Word, Coefficient]]] = (),
    ) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for word, coefficient in items:
            key = tuple(word)
            acc[key] = acc.get(key, 0) + Fraction(coefficient)
        ordered = sorted((w for w, c in acc.items() if c), key=deglex_key, reverse=True)
        self._terms: dict[Word, Fraction] = {w: acc[w] for w in ordered}
        self._hash: Optional[int] = None

    # ------------------------------------------------------------------ builders

    @classmethod
    def zero(cls) -> Polynomial:
        return cls()

    @classmethod
    def constant(cls, value: Coefficient) -> Polynomial:
        return cls({ONE: value})

    @classmethod
    def variable(cls, index: int) -> Polynomial:
        return cls({validate_word((index,)): 1})

    @classmethod
    def from_word(cls, word: Iterable[int], coefficient: Coefficient = 1) -> Polynomial:
        return cls({validate_word(word): coefficient})

    # ------------------------------------------------------------------ access

    def terms(self) -> Iterator[tuple[Word, Fraction]]:
        """Iterate ``(word, coefficient)`` pairs, deg-lex descending."""
        return iter(self._terms.items())

    def words(self) -> list[Word]:
        return list(self._terms)

    def coefficient(self, word: Word) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, word: object) -> bool:
        return word in self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def leading_term(self) -> tuple[Fraction, Word]:
        """Return ``(coefficient, word)`` of the deg-lex greatest monomial.

        Raises:
            ZeroPolynomialError: For the zero polynomial.
        """
        if not self._terms:
            raise ZeroPolynomialError("the zero polynomial has no leading term")
        word = next(iter(self._terms))
        return self._terms[word], word

    @property
    def leading_word(self) -> Word:
        return self.leading_term()[1]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[0]

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((len(w) for w in self._terms), default=-1)

    def variables(self) -> frozenset[int]:
        return frozenset(letter for word in self._terms for letter in word)

    def max_variable(self) -> int:
        return max(self.variables(), default=0)

    def multidegrees(self, n: int) -> set[Multidegree]:
        return {multidegree_of(word, n) for word in self._terms}

    def is_multihomogeneous(self, n: int) -> bool:
        return len(self.multidegrees(n)) <= 1

    def multidegree(self, n: int) -> Multidegree:
        """The common multidegree of all terms.

        Raises:
            PreconditionError: If the polynomial is zero or not multihomogeneous.
        """
        found = self.multidegrees(n)
        if len(found) != 1:
            raise PreconditionError("polynomial is zero or not multihomogeneous")
        return next(iter(found))

    # ------------------------------------------------------------------ arithmetic

    def monic(self) -> Polynomial:
        """Scale so that the leading coefficient is 1."""
        coefficient, _ = self.leading_term()
        if coefficient == 1:
            return self
        return self.scale(1 / coefficient)

    def scale(self, factor: Coefficient) -> Polynomial:
        factor = Fraction(factor)
        if not factor:
            return Polynomial()
        return _canonical({w: c * factor for w, c in self._terms.items()})

    def lrmul(self, left: Word = ONE, right: Word = ONE) -> Polynomial:
        """Return ``left * self * right`` for words ``left`` and ``right``."""
        if not left and not right:
            return self
        return _canonical({left + w + right: c for w, c in self._terms.items()})

    def __add__(self, other: object) -> Polynomial:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for word, coefficient in other._terms.items():
            acc[word] = acc.get(word, 0) + coefficient
        return Polynomial(acc)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return _canonical({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: object) -> Polynomial:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> Polynomial:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> Polynomial:
        if isinstance(other, Rational):
            return self.scale(Fraction(other))
        if not isinstance(other, Polynomial):
            return NotImplemented
        acc: dict[Word, Fraction] = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                word = u + v
                acc[word] = acc.get(word, 0) + a * b
        return Polynomial(acc)

    def __rmul__(self, other: object) -> Polynomial:
        if isinstance(other, Rational):
            return self.scale(Fraction(other))
        return NotImplemented

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            raise ValueError("negative powers are not defined in the free algebra")
        result = Polynomial.constant(1)
        for _ in range(exponent):
            result = result * self
        return result

    # ------------------------------------------------------------------ identity

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            if not self._terms:
                self._hash = hash(0)
            elif len(self._terms) == 1 and ONE in self._terms:
                # agrees with the hash of the equal scalar
                self._hash = hash(self._terms[ONE])
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)


def _canonical(terms: dict[Word, Fraction]) -> Polynomial:
    # Caller guarantees nonzero values already in deg-lex descending order.
    poly = Polynomial.__new__(Polynomial)
    poly._terms = terms
    poly._hash = None
    return poly


def _coerce(value: object) -> Optional[Polynomial]:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, Rational):
        return Polynomial.constant(Fraction(value))
    return None


def format_coefficient_term(coefficient: Fraction, word: Word, prefix: str = "x") -> str:
    body = format_word(word, prefix)
    magnitude = abs(coefficient)
    if not word:
        return str(magnitude)
    if magnitude == 1:
        return body
    return f"{magnitude}*{body}"


def format_polynomial(f: Polynomial, prefix: str = "x") -> str:
    """Render ``f`` deg-lex descending, e.g. ``x1*x2 - x2*x1``; zero is ``0``."""
    pieces: list[str] = []
    for word, coefficient in f.terms():
        text = format_coefficient_term(coefficient, word, prefix)
        if not pieces:
            pieces.append(f"-{text}" if coefficient < 0 else text)
        else:
            pieces.append(f"- {text}" if coefficient < 0 else f"+ {text}")
    return " ".join(pieces) if pieces else "0"


# ============================================================================
# Functional surface
# ============================================================================

def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def commutator(f: Polynomial, g: Polynomial, *more: Polynomial) -> Polynomial:
    """Left-normed commutator ``[[f, g], h, ...]`` with ``[f, g] = fg - gf``."""
    result = f * g - g * f
    for h in more:
        result = result * h - h * result
    return result


def leading_term(f: Polynomial) -> tuple[Fraction, Word]:
    return f.leading_term()


def x(index: int) -> Polynomial:
    """Shorthand for the variable ``x_index``."""
    return Polynomial.variable(index)
