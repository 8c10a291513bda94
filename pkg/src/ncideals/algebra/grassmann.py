"""
Exact arithmetic in the Grassmann algebra and evaluation of free-algebra
polynomials on it.

Elements are finite sums of basis monomials ``e_I`` indexed by strictly
increasing tuples ``I``; ``e_i e_j = -e_j e_i`` and ``e_i e_i = 0``.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from numbers import Rational
from typing import Optional, Union

from ncideals.algebra.core import Coefficient, Polynomial, Word
from ncideals.algebra.parsing import parse_polynomial
from ncideals.algebra.rewrite import GeneratorSet, reduce
from ncideals.errors import DomainError
from ncideals.families import tideal_basis
from ncideals.schemas import GrassmannCheckReport

logger = logging.getLogger(__name__)

Blade = tuple[int, ...]


def _merge_sign(left: Blade, right: Blade) -> Optional[tuple[int, Blade]]:
    """Sign and merged index set of ``e_left * e_right``; ``None`` on a repeat."""
    merged: list[int] = []
    inversions = 0
    a = b = 0
    while a < len(left) and b < len(right):
        if left[a] < right[b]:
            merged.append(left[a])
            a += 1
        elif left[a] > right[b]:
            # right[b] moves past every remaining letter of left
            inversions += len(left) - a
            merged.append(right[b])
            b += 1
        else:
            return None
    merged.extend(left[a:])
    merged.extend(right[b:])
    return (-1 if inversions % 2 else 1), tuple(merged)


class GrassmannElement:
    """Immutable element of the Grassmann algebra over the rationals.

    Example:
        >>> e1, e2 = GrassmannElement.generator(1), GrassmannElement.generator(2)
        >>> str(e2 * e1)
        '-e1*e2'
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[Blade, Coefficient], Iterable[tuple[Blade, Coefficient]]] = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Blade, Fraction] = {}
        for blade, coefficient in items:
            key = tuple(blade)
            if any(p >= q for p, q in zip(key, key[1:])):
                raise ValueError(f"blade {key} is not strictly increasing")
            acc[key] = acc.get(key, 0) + Fraction(coefficient)
        ordered = sorted((k for k, c in acc.items() if c), key=lambda k: (len(k), k))
        self._terms: dict[Blade, Fraction] = {k: acc[k] for k in ordered}

    @classmethod
    def scalar(cls, value: Coefficient) -> GrassmannElement:
        return cls({(): value})

    @classmethod
    def generator(cls, index: int) -> GrassmannElement:
        if index < 1:
            raise ValueError("Grassmann generators are numbered from 1")
        return cls({(index,): 1})

    @classmethod
    def parse(cls, text: str) -> GrassmannElement:
        """Read ``e``-syntax such as ``1 + e1 - 2*e1*e2`` through the polynomial parser."""
        return from_polynomial(parse_polynomial(text, prefix="e"))

    def terms(self) -> Iterator[tuple[Blade, Fraction]]:
        return iter(self._terms.items())

    def coefficient(self, blade: Blade) -> Fraction:
        return self._terms.get(tuple(blade), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: object) -> GrassmannElement:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        acc = dict(self._terms)
        for blade, coefficient in other._terms.items():
            acc[blade] = acc.get(blade, 0) + coefficient
        return GrassmannElement(acc)

    __radd__ = __add__

    def __neg__(self) -> GrassmannElement:
        return GrassmannElement({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: object) -> GrassmannElement:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> GrassmannElement:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other: object) -> GrassmannElement:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return grassmann_mul(self, other)

    def __rmul__(self, other: object) -> GrassmannElement:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return grassmann_mul(other, self)

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if not self._terms:
            return hash(0)
        if len(self._terms) == 1 and () in self._terms:
            # agrees with the hash of the equal scalar
            return hash(self._terms[()])
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"GrassmannElement({str(self)!r})"

    def __str__(self) -> str:
        pieces: list[str] = []
        for blade, coefficient in self._terms.items():
            body = "*".join(f"e{i}" for i in blade)
            magnitude = abs(coefficient)
            if not blade:
                text = str(magnitude)
            elif magnitude == 1:
                text = body
            else:
                text = f"{magnitude}*{body}"
            if not pieces:
                pieces.append(f"-{text}" if coefficient < 0 else text)
            else:
                pieces.append(f"- {text}" if coefficient < 0 else f"+ {text}")
        return " ".join(pieces) if pieces else "0"


def _coerce(value: object) -> Optional[GrassmannElement]:
    if isinstance(value, GrassmannElement):
        return value
    if isinstance(value, Rational):
        return GrassmannElement.scalar(Fraction(value))
    return None


def grassmann_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Bilinear product; basis products merge index sets with the parity sign."""
    acc: dict[Blade, Fraction] = {}
    for left, x in a.terms():
        for right, y in b.terms():
            merged = _merge_sign(left, right)
            if merged is None:
                continue
            sign, blade = merged
            acc[blade] = acc.get(blade, 0) + sign * x * y
    return GrassmannElement(acc)


def from_polynomial(f: Polynomial) -> GrassmannElement:
    """Image of ``f`` under ``x_i -> e_i``."""
    return evaluate(f, {v: GrassmannElement.generator(v) for v in f.variables()})


def evaluate(f: Polynomial, assignment: Mapping[int, GrassmannElement]) -> GrassmannElement:
    """Substitute ``assignment`` into ``f`` and multiply out in the Grassmann algebra.

    Args:
        f: Polynomial in ``x1, x2, ...``.
        assignment: Variable index to Grassmann element.

    Returns:
        The value of ``f``.

    Raises:
        DomainError: If a variable of ``f`` is not assigned.
    """
    missing = sorted(v for v in f.variables() if v not in assignment)
    if missing:
        raise DomainError(f"no Grassmann value for {', '.join(f'x{v}' for v in missing)}")
    prefixes: dict[Word, GrassmannElement] = {(): GrassmannElement.scalar(1)}

    def value(word: Word) -> GrassmannElement:
        known = prefixes.get(word)
        if known is None:
            known = value(word[:-1]) * assignment[word[-1]]
            prefixes[word] = known
        return known

    acc: dict[Blade, Fraction] = {}
    for word, coefficient in f.terms():
        for blade, c in value(word).terms():
            acc[blade] = acc.get(blade, 0) + coefficient * c
    return GrassmannElement(acc)


def random_element(rng: random.Random, generators: int, terms: int = 3) -> GrassmannElement:
    """Sparse element with up to ``terms`` monomials in ``e1..e_generators``."""
    acc: dict[Blade, Fraction] = {}
    for _ in range(terms):
        size = rng.randint(0, min(2, generators))
        blade = tuple(sorted(rng.sample(range(1, generators + 1), size)))
        acc[blade] = acc.get(blade, 0) + rng.choice((-3, -2, -1, 1, 2, 3))
    return GrassmannElement(acc)


def random_assignment(
    rng: random.Random,
    variables: Iterable[int],
    generators: int = 4,
    terms: int = 3,
) -> dict[int, GrassmannElement]:
    return {v: random_element(rng, generators, terms) for v in sorted(set(variables))}


def check_vanishing(
    polynomials: Union[GeneratorSet, Iterable[Polynomial]],
    samples: int = 50,
    seed: int = 0,
    generators: int = 4,
) -> dict[str, bool]:
    """Evaluate each polynomial under ``samples`` seeded random assignments.

    Returns:
        Generator id (or position) to whether every sample evaluated to zero.
    """
    if isinstance(polynomials, GeneratorSet):
        labelled = [(m.gid, m.polynomial) for m in polynomials]
    else:
        labelled = [(str(position), p) for position, p in enumerate(polynomials)]
    rng = random.Random(seed)
    result: dict[str, bool] = {}
    for gid, poly in labelled:
        ok = True
        for _ in range(samples):
            value = evaluate(poly, random_assignment(rng, poly.variables(), generators))
            if value:
                logger.warning("%s does not vanish: value %s", gid, value)
                ok = False
                break
        result[gid] = ok
    return result


def bml_assignment() -> dict[int, GrassmannElement]:
    """``x1 -> 1 + e1``, ``x2 -> 1 + e2``."""
    one = GrassmannElement.scalar(1)
    return {1: one + GrassmannElement.generator(1), 2: one + GrassmannElement.generator(2)}


def bml_polynomial() -> Polynomial:
    return parse_polynomial("(x2*x1)^2 - (x1*x2)^2")


def bml_counterexample(
    samples: int = 20,
    seed: int = 0,
    generators: int = 4,
    basis_bound: int = 6,
) -> GrassmannCheckReport:
    """Show that ``(x2x1)^2 - (x1x2)^2`` lies outside the T-ideal in two ways.

    The polynomial is evaluated at ``x1 -> 1 + e1``, ``x2 -> 1 + e2`` and
    reduced modulo ``tideal_basis(2, basis_bound)``; both must be nonzero.
    Every basis member is also checked to vanish on random assignments.
    """
    poly = bml_polynomial()
    assignment = bml_assignment()
    basis = tideal_basis(2, basis_bound)
    witness = evaluate(poly, assignment)
    remainder = reduce(poly, basis)
    logger.info("witness %s, normal form %s", witness, remainder)
    return GrassmannCheckReport(
        polynomial=str(poly),
        assignment={f"x{v}": str(value) for v, value in sorted(assignment.items())},
        witness=str(witness),
        normal_form=str(remainder),
        basis_n=2,
        basis_bound=basis_bound,
        samples=samples,
        vanishing=check_vanishing(basis, samples, seed, generators),
    )


__all__ = [
    "GrassmannElement",
    "bml_assignment",
    "bml_counterexample",
    "bml_polynomial",
    "check_vanishing",
    "evaluate",
    "from_polynomial",
    "grassmann_mul",
    "random_assignment",
    "random_element",
]
