"""
Textual syntax for free-algebra polynomials.

Grammar (whitespace ignored)::

    expr   := ['+' | '-'] term (('+' | '-') term)*
    term   := factor (['*'] factor)*          juxtaposition multiplies
    factor := atom ['^' INT]
    atom   := INT ['/' INT] | VAR | '(' expr ')' | '[' expr (',' expr)+ ']'

``VAR`` is the prefix letter followed by a positive index (``x1``, ``x12``).
Brackets with more than two entries are left-normed commutators and
exponents are capped at ``MAX_EXPONENT``. The printer in
:mod:`ncideals.algebra.core` emits text this parser reads back.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Optional

from ncideals.algebra.core import Polynomial, commutator, format_polynomial
from ncideals.errors import OutOfRangeError, PolynomialSyntaxError

__all__ = ["MAX_EXPONENT", "parse_polynomial", "format_polynomial", "tokenize"]

MAX_EXPONENT = 64

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z]\d+)|(?P<op>[-+*^/(),\[\]]))")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split ``text`` into ``(kind, value, position)`` tokens.

    Raises:
        PolynomialSyntaxError: On any character outside the grammar.
    """
    tokens: list[tuple[str, str, int]] = []
    position = 0
    stripped_end = len(text.rstrip())
    while position < stripped_end:
        match = _TOKEN.match(text, position)
        if match is None:
            offset = len(text) - len(text[position:].lstrip())
            raise PolynomialSyntaxError("unexpected character", text, offset)
        kind = match.lastgroup or "op"
        tokens.append((kind, match.group(kind), match.start(kind)))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, prefix: str, n: Optional[int] = None) -> None:
        self.text = text
        self.prefix = prefix
        self.n = n
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Optional[tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> tuple[str, str, int]:
        token = self.peek()
        if token is None:
            raise PolynomialSyntaxError("unexpected end of input", self.text, len(self.text))
        self.index += 1
        return token

    def expect(self, value: str) -> None:
        kind, found, position = self.take()
        if found != value:
            raise PolynomialSyntaxError(f"expected {value!r}, found {found!r}", self.text, position)

    def at(self, *values: str) -> bool:
        token = self.peek()
        return token is not None and token[0] == "op" and token[1] in values

    def starts_atom(self) -> bool:
        token = self.peek()
        return token is not None and (token[0] in ("num", "var") or token[1] in ("(", "["))

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise PolynomialSyntaxError("empty input", self.text, 0)
        result = self.expr()
        token = self.peek()
        if token is not None:
            raise PolynomialSyntaxError(f"unexpected {token[1]!r}", self.text, token[2])
        return result

    def expr(self) -> Polynomial:
        negate = False
        if self.at("+", "-"):
            negate = self.take()[1] == "-"
        result = self.term()
        if negate:
            result = -result
        while self.at("+", "-"):
            sign = self.take()[1]
            rhs = self.term()
            result = result + rhs if sign == "+" else result - rhs
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while True:
            if self.at("*"):
                self.take()
                result = result * self.factor()
            elif self.starts_atom():
                result = result * self.factor()
            else:
                return result

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.at("^"):
            self.take()
            kind, value, position = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be an integer", self.text, position)
            if int(value) > MAX_EXPONENT:
                raise PolynomialSyntaxError(f"exponent above {MAX_EXPONENT}", self.text, position)
            base = base ** int(value)
        return base

    def atom(self) -> Polynomial:
        kind, value, position = self.take()
        if kind == "num":
            number = Fraction(int(value))
            if self.at("/"):
                self.take()
                kind, denominator, position = self.take()
                if kind != "num" or int(denominator) == 0:
                    raise PolynomialSyntaxError("bad rational denominator", self.text, position)
                number = Fraction(int(value), int(denominator))
            return Polynomial.constant(number)
        if kind == "var":
            if value[0] != self.prefix:
                raise PolynomialSyntaxError(f"unknown variable {value!r}", self.text, position)
            index = int(value[1:])
            if index < 1:
                raise PolynomialSyntaxError(f"variable index must be >= 1 in {value!r}", self.text, position)
            if self.n is not None and index > self.n:
                raise OutOfRangeError(f"variable {value} outside 1..{self.n} in {self.text!r}")
            return Polynomial.variable(index)
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if value == "[":
            entries = [self.expr()]
            while self.at(","):
                self.take()
                entries.append(self.expr())
            self.expect("]")
            if len(entries) < 2:
                raise PolynomialSyntaxError("a commutator needs at least two entries", self.text, position)
            return commutator(*entries)
        raise PolynomialSyntaxError(f"unexpected {value!r}", self.text, position)


def parse_polynomial(text: str, n: Optional[int] = None, prefix: str = "x") -> Polynomial:
    """Parse ``text`` into a polynomial.

    Args:
        text: Polynomial in the textual syntax, e.g. ``"[x2,x1]*x3 - 1/2*x1^2"``.
        n: Optional ambient variable count; indices above it are rejected.
        prefix: Variable letter (``"x"`` for the free algebra, ``"e"`` for Grassmann input).

    Returns:
        The parsed polynomial.

    Raises:
        PolynomialSyntaxError: If the text does not follow the grammar.
        OutOfRangeError: If a variable index exceeds ``n``.

    Example:
        >>> str(parse_polynomial("[x1,x2]"))
        '-x2*x1 + x1*x2'
    """
    return _Parser(text, prefix, n).parse()
