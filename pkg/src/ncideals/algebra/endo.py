"""
Monomial endomorphisms of the free algebra and semigroup orbits.

An endomorphism is fixed by the words it assigns to finitely many
variables. The two semigroups used for S-bases are enumerated through
their generating maps, restricted to the variables that actually occur in
the polynomial being mapped.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ncideals.algebra.core import Polynomial, Word, format_word
from ncideals.algebra.rewrite import Generator, GeneratorSet, reduce
from ncideals.errors import DomainError
from ncideals.schemas import OrderPreservingSpec, TIdealSpec

logger = logging.getLogger(__name__)

AnySemigroupSpec = Union[OrderPreservingSpec, TIdealSpec]

# x5 is the slot of the T-ideal S-basis that takes monomial images
MONOMIAL_SLOT = 5


@dataclass(frozen=True)
class Endomorphism:
    """Substitution ``x_i -> images[i]`` extended multiplicatively.

    Attributes:
        images: Sorted ``(variable, word)`` pairs; variables not listed have no image.
    """
    images: tuple[tuple[int, Word], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, Sequence[int]]) -> Endomorphism:
        return cls(tuple(sorted((int(v), tuple(w)) for v, w in mapping.items())))

    @classmethod
    def identity(cls, variables: Iterable[int]) -> Endomorphism:
        return cls(tuple((v, (v,)) for v in sorted(set(variables))))

    @property
    def domain(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.images)

    def as_dict(self) -> dict[int, Word]:
        return dict(self.images)

    def image(self, variable: int) -> Word:
        for v, word in self.images:
            if v == variable:
                return word
        raise DomainError(f"x{variable} has no image under {self}")

    def apply_word(self, word: Word) -> Word:
        table = self.as_dict()
        out: list[int] = []
        for letter in word:
            try:
                out.extend(table[letter])
            except KeyError:
                raise DomainError(f"x{letter} has no image under {self}") from None
        return tuple(out)

    def apply(self, f: Polynomial) -> Polynomial:
        acc: dict[Word, Fraction] = {}
        for word, coefficient in f.terms():
            image = self.apply_word(word)
            acc[image] = acc.get(image, 0) + coefficient
        return Polynomial(acc)

    def compose(self, inner: Endomorphism) -> Endomorphism:
        """``self o inner``: apply ``inner`` first."""
        return Endomorphism(tuple((v, self.apply_word(w)) for v, w in inner.images))

    def is_identity(self) -> bool:
        return all(w == (v,) for v, w in self.images)

    def __str__(self) -> str:
        if not self.images:
            return "{}"
        return ", ".join(f"x{v}->{format_word(w)}" for v, w in self.images)


def apply_endo(phi: Endomorphism, f: Polynomial) -> Polynomial:
    """Substitute and expand.

    Raises:
        DomainError: If a variable of ``f`` has no image.

    Example:
        >>> from ncideals.algebra.core import commutator, x
        >>> phi = Endomorphism.of({1: (3,), 2: (5,)})
        >>> apply_endo(phi, commutator(x(2), x(1), x(1))) == commutator(x(5), x(3), x(3))
        True
    """
    return phi.apply(f)


def _ascending_monomials(n: int, max_degree: int) -> Iterator[Word]:
    for degree in range(max_degree + 1):
        yield from itertools.combinations_with_replacement(range(1, n + 1), degree)


def enumerate_maps(spec: AnySemigroupSpec, variables: Iterable[int]) -> Iterator[Endomorphism]:
    """Generating maps of ``spec`` restricted to ``variables``.

    Order-preserving maps send the sorted variables strictly increasingly
    into ``1..n`` and only apply when every variable is at most ``k``.
    T-ideal maps send each variable other than x5 anywhere in ``1..n`` and
    x5 to an ascending monomial (possibly 1) of degree at most ``x5_bound``.
    The identity is included whenever it stays inside ``1..n``.
    """
    ordered = sorted(set(variables))
    if isinstance(spec, OrderPreservingSpec):
        if ordered and ordered[-1] > spec.k:
            return
        for target in itertools.combinations(range(1, spec.n + 1), len(ordered)):
            yield Endomorphism(tuple((v, (t,)) for v, t in zip(ordered, target)))
        return

    identity = Endomorphism.identity(ordered)
    identity_seen = not ordered or ordered[-1] > spec.n
    choices: list[list[Word]] = []
    for v in ordered:
        if v == MONOMIAL_SLOT:
            choices.append(list(_ascending_monomials(spec.n, spec.x5_bound)))
        else:
            choices.append([(t,) for t in range(1, spec.n + 1)])
    for combo in itertools.product(*choices):
        phi = Endomorphism(tuple(zip(ordered, combo)))
        identity_seen = identity_seen or phi == identity
        yield phi
    if not identity_seen:
        yield identity


def enumerate_semigroup_images(
    spec: AnySemigroupSpec,
    basis: Sequence[Polynomial],
    bound: int,
) -> GeneratorSet:
    """All distinct nonzero images ``phi(b)`` of degree at most ``bound``, monic.

    Members are labelled ``b<index>.<count>`` with the map as description.
    """
    seen: set[Polynomial] = set()
    members: list[Generator] = []
    for index, b in enumerate(basis):
        count = 0
        for phi in enumerate_maps(spec, b.variables()):
            image = phi.apply(b)
            if not image or image.degree > bound:
                continue
            image = image.monic()
            if image in seen:
                continue
            seen.add(image)
            members.append(Generator(f"b{index}.{count}", image, family=f"b{index}", description=str(phi)))
            count += 1
    logger.info("semigroup orbit of %d polynomials: %d images up to degree %d", len(basis), len(members), bound)
    return GeneratorSet(members)


def check_s_invariance(generators: GeneratorSet, spec: AnySemigroupSpec, bound: int) -> bool:
    """Whether every map of ``spec`` sends each generator back into the ideal.

    Only images of degree at most ``bound`` are tested, by reduction modulo
    ``generators`` itself. Offending ``(generator, map)`` pairs are logged.
    """
    ok = True
    for member in generators:
        for phi in enumerate_maps(spec, member.polynomial.variables()):
            image = phi.apply(member.polynomial)
            if not image or image.degree > bound:
                continue
            if reduce(image, generators):
                logger.warning("image of %s under %s leaves the ideal", member.gid, phi)
                ok = False
    return ok


__all__ = [
    "Endomorphism",
    "apply_endo",
    "check_s_invariance",
    "enumerate_maps",
    "enumerate_semigroup_images",
]
