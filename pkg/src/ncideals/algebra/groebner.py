"""
Compositions, degree-truncated completion and dimension comparison.

Everything here is quantified over a total-degree bound: the T-ideal has no
finite Gröbner basis, so "Gröbner up to degree d" is the only finite
contract. Reports always carry the bound they were computed for.
"""

from __future__ import annotations

import itertools
import logging
import os
from collections.abc import Callable, Iterable, Iterator, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ncideals.algebra.core import (
    ONE,
    Multidegree,
    Polynomial,
    Word,
    commutator,
    count_words,
    deglex_key,
    format_word,
    multidegrees_up_to,
    words_of_multidegree,
    x,
)
from ncideals.algebra.endo import Endomorphism
from ncideals.algebra.rewrite import Generator, GeneratorSet, enumerate_normal_words, reduce
from ncideals.errors import InconsistencyError, PreconditionError, ResourceLimitError
from ncideals.schemas import (
    CompositionSummary,
    DimensionRow,
    FailedComposition,
    MinimalityEntry,
    VerificationReport,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_WORDS = 20000


# ============================================================================
# Obstructions
# ============================================================================

class ObstructionKind(str, Enum):
    OVERLAP = "overlap"
    INCLUSION = "inclusion"


@dataclass(frozen=True)
class Obstruction:
    """Superposition of two leading words.

    ``left1 * lt(first) * right1 == left2 * lt(second) * right2 == word``.
    For an overlap a proper suffix of ``lt(first)`` is a proper prefix of
    ``lt(second)``; for an inclusion ``lt(second)`` sits inside ``lt(first)``.
    """
    first: str
    second: str
    kind: ObstructionKind
    word: Word
    left1: Word
    right1: Word
    left2: Word
    right2: Word

    def __str__(self) -> str:
        return f"{self.kind.value}({self.first}, {self.second}) at {format_word(self.word)}"


def _occurrences(small: Word, big: Word) -> Iterator[int]:
    size = len(small)
    for start in range(len(big) - size + 1):
        if big[start:start + size] == small:
            yield start


def _obstructions_between(a: Generator, b: Generator, bound: int, same: bool) -> Iterator[Obstruction]:
    la, lb = a.lead, b.lead
    for k in range(1, min(len(la), len(lb))):
        if len(la) + len(lb) - k > bound:
            continue
        if la[-k:] == lb[:k]:
            yield Obstruction(
                a.gid, b.gid, ObstructionKind.OVERLAP, la + lb[k:],
                ONE, lb[k:], la[:-k], ONE,
            )
    if same or len(la) > bound or len(lb) > len(la):
        return
    if len(lb) == len(la) and a.gid > b.gid:
        # equal leading words: one inclusion per unordered pair
        return
    for start in _occurrences(lb, la):
        yield Obstruction(
            a.gid, b.gid, ObstructionKind.INCLUSION, la,
            ONE, ONE, la[:start], la[start + len(lb):],
        )


def find_obstructions(generators: GeneratorSet, bound: int) -> list[Obstruction]:
    """All overlaps (self-overlaps included) and inclusions of degree ``<= bound``.

    Ordered pairs ``(g1, g2)`` are scanned in member order.
    """
    found: list[Obstruction] = []
    for a in generators:
        for b in generators:
            found.extend(_obstructions_between(a, b, bound, same=a.gid == b.gid))
    return found


def s_polynomial(obstruction: Obstruction, generators: GeneratorSet) -> Polynomial:
    """``left1 * g1 * right1 - left2 * g2 * right2``; the superposition cancels."""
    g1 = generators.by_id(obstruction.first).polynomial
    g2 = generators.by_id(obstruction.second).polynomial
    return g1.lrmul(obstruction.left1, obstruction.right1) - g2.lrmul(obstruction.left2, obstruction.right2)


def check_compositions(generators: GeneratorSet, bound: int) -> CompositionSummary:
    """Reduce every S-polynomial of degree ``<= bound`` modulo ``generators``."""
    summary = CompositionSummary(bound=bound)
    for obstruction in find_obstructions(generators, bound):
        summary.checked += 1
        remainder = reduce(s_polynomial(obstruction, generators), generators)
        if remainder:
            logger.debug("composition %s leaves %s", obstruction, remainder)
            summary.failed.append(
                FailedComposition(
                    first=obstruction.first,
                    second=obstruction.second,
                    kind=obstruction.kind.value,
                    word=format_word(obstruction.word),
                    remainder=str(remainder),
                )
            )
    logger.info(
        "checked %d compositions up to degree %d, %d failed",
        summary.checked, bound, len(summary.failed),
    )
    return summary


# ============================================================================
# Completion
# ============================================================================

def _contains(small: Word, big: Word) -> bool:
    return next(_occurrences(small, big), None) is not None


def interreduce(polynomials: Iterable[Polynomial]) -> list[Polynomial]:
    """Monic inter-reduction.

    Returns a list, sorted by leading word, in which no leading word
    contains another and every member is fully reduced by the others.
    """
    pending = sorted(
        {p.monic() for p in polynomials if p},
        key=lambda p: deglex_key(p.leading_word),
    )
    basis: list[Polynomial] = []
    while pending:
        p = pending.pop(0)
        r = reduce(p, GeneratorSet.from_polynomials(basis)) if basis else p
        if not r:
            continue
        r = r.monic()
        keep: list[Polynomial] = []
        for b in basis:
            if _contains(r.leading_word, b.leading_word):
                pending.append(b)
            else:
                keep.append(b)
        if len(keep) != len(basis):
            pending.sort(key=lambda p: deglex_key(p.leading_word))
        basis = keep + [r]

    result: list[Polynomial] = []
    for index, p in enumerate(basis):
        others = basis[:index] + basis[index + 1:]
        result.append(reduce(p, GeneratorSet.from_polynomials(others)).monic() if others else p)
    result.sort(key=lambda p: deglex_key(p.leading_word))
    return result


@dataclass
class Completion:
    generators: GeneratorSet
    rounds: int


def complete(seed: Iterable[Polynomial], bound: int, family: str = "c") -> Completion:
    """Degree-truncated completion of ``seed``; see ``complete_up_to_degree``."""
    polys = [p for p in interreduce(seed) if p.degree <= bound]
    done: set[tuple[Polynomial, Polynomial, Word, Word, Word]] = set()
    rounds = 0
    while True:
        rounds += 1
        current = GeneratorSet.from_polynomials(polys, family=family)
        found: list[Polynomial] = []
        extended = current
        for obstruction in find_obstructions(current, bound):
            g1 = current.by_id(obstruction.first).polynomial
            g2 = current.by_id(obstruction.second).polynomial
            key = (g1, g2, obstruction.word, obstruction.left2, obstruction.right2)
            if key in done:
                continue
            done.add(key)
            remainder = reduce(s_polynomial(obstruction, current), extended)
            if remainder:
                found.append(remainder.monic())
                extended = GeneratorSet.from_polynomials([*polys, *found], family=family)
        logger.info("completion round %d: %d generators, %d new", rounds, len(polys), len(found))
        if not found:
            return Completion(current, rounds)
        polys = interreduce([*polys, *found])


def complete_up_to_degree(seed: GeneratorSet | Sequence[Polynomial], bound: int) -> GeneratorSet:
    """Add reduced S-polynomials until every composition of degree ``<= bound`` vanishes.

    Args:
        seed: Generators of the ideal.
        bound: Degree bound; seed members above it are ignored.

    Returns:
        A monic, inter-reduced generator set whose leading words of degree
        ``<= bound`` generate the initial ideal in those degrees.
    """
    polys = seed.polynomials() if isinstance(seed, GeneratorSet) else list(seed)
    return complete(polys, bound).generators


def gamma3_commutator_seed(n: int) -> GeneratorSet:
    """All nonzero ``[[x_i, x_j], x_k]`` with indices in ``1..n``, up to scalars."""
    members: list[Generator] = []
    seen: set[Polynomial] = set()
    for i, j, k in itertools.product(range(1, n + 1), repeat=3):
        poly = commutator(x(i), x(j), x(k))
        if not poly:
            continue
        poly = poly.monic()
        if poly in seen:
            continue
        seen.add(poly)
        gid = f"[[x{i},x{j}],x{k}]"
        members.append(Generator(gid, poly, family="seed", description=gid))
    return GeneratorSet(members)


def tideal_commutator_seed() -> list[Polynomial]:
    """``[x1, x2, x3]``, the seed of the T-ideal; close it under ``ClosureKind.MONOMIALS``."""
    return [commutator(x(1), x(2), x(3))]


# ============================================================================
# Dimension oracle
# ============================================================================

class ClosureKind(str, Enum):
    """Substitutions applied to the seed before spanning an ideal component."""
    NONE = "none"
    VARIABLES = "variables"
    MONOMIALS = "monomials"


def _fits(md: Sequence[int], cap: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(md, cap))


def _word_images(capacity: list[int], multiplicity: int) -> Iterator[Word]:
    # nonempty words w with multiplicity * mdeg(w) <= capacity
    n = len(capacity)
    word: list[int] = []

    def extend() -> Iterator[Word]:
        if word:
            yield tuple(word)
        for letter in range(1, n + 1):
            if capacity[letter - 1] >= multiplicity:
                capacity[letter - 1] -= multiplicity
                word.append(letter)
                yield from extend()
                word.pop()
                capacity[letter - 1] += multiplicity

    yield from extend()


def _closure_images(f: Polynomial, md: Multidegree, closure: ClosureKind) -> Iterator[Polynomial]:
    n = len(md)
    variables = sorted(f.variables())
    if closure is ClosureKind.NONE:
        if not variables or variables[-1] <= n:
            yield f
        return
    if closure is ClosureKind.VARIABLES:
        for target in itertools.product(range(1, n + 1), repeat=len(variables)):
            yield Endomorphism(tuple((v, (t,)) for v, t in zip(variables, target))).apply(f)
        return

    lead = f.leading_word
    multiplicity = {v: lead.count(v) for v in variables}
    capacity = list(md)
    chosen: list[Word] = []

    def assign(position: int) -> Iterator[Polynomial]:
        if position == len(variables):
            yield Endomorphism(tuple(zip(variables, chosen))).apply(f)
            return
        v = variables[position]
        for image in _word_images(list(capacity), multiplicity[v]):
            for letter in image:
                capacity[letter - 1] -= multiplicity[v]
            chosen.append(image)
            yield from assign(position + 1)
            chosen.pop()
            for letter in image:
                capacity[letter - 1] += multiplicity[v]

    yield from assign(0)


def ideal_dimension_oracle(
    seed: Iterable[Polynomial],
    md: Multidegree,
    closure: ClosureKind = ClosureKind.NONE,
    max_words: int = DEFAULT_MAX_WORDS,
) -> int:
    """Dimension of the ``md`` component of the ideal generated by ``seed``.

    Spans every ``u * g * v`` of multidegree ``md`` (``g`` ranging over the
    seed, optionally closed under substitutions first) and takes the rank
    over the rationals.

    Args:
        seed: Multihomogeneous generators.
        md: Target multidegree; its length fixes the variable count.
        closure: Substitutions applied to the seed.
        max_words: Refuse components with more words than this.

    Returns:
        The dimension, between 0 and the number of words of ``md``.

    Raises:
        ResourceLimitError: If the component has more than ``max_words`` words.
        PreconditionError: If a seed polynomial is not multihomogeneous.

    Example:
        >>> from ncideals.algebra.core import commutator, x
        >>> ideal_dimension_oracle([commutator(x(1), x(2), x(3))], (1, 1, 1), ClosureKind.VARIABLES)
        2
    """
    md = tuple(md)
    total_words = count_words(md)
    if total_words > max_words:
        raise ResourceLimitError(
            f"component {md} has {total_words} words, above the limit of {max_words}"
        )
    n = len(md)
    columns = {word: index for index, word in enumerate(words_of_multidegree(md))}

    rows: set[Polynomial] = set()
    for f in seed:
        if not f:
            continue
        if not f.is_multihomogeneous(max(f.max_variable(), n)):
            raise PreconditionError(f"seed polynomial {f} is not multihomogeneous")
        for g in _closure_images(f, md, closure):
            if not g or g.max_variable() > n:
                continue
            g_md = g.multidegree(n)
            if not _fits(g_md, md):
                continue
            rest = tuple(a - b for a, b in zip(md, g_md))
            for word in words_of_multidegree(rest):
                for cut in range(len(word) + 1):
                    rows.add(g.lrmul(word[:cut], word[cut:]).monic())

    if not rows:
        return 0
    entries = {
        r: {columns[w]: QQ(c.numerator, c.denominator) for w, c in row.terms()}
        for r, row in enumerate(rows)
    }
    matrix = DomainMatrix(entries, (len(entries), len(columns)), QQ)
    rank = matrix.rank()
    logger.debug("oracle %s: %d rows, %d columns, rank %d", md, len(entries), len(columns), rank)
    return rank


# ============================================================================
# Verification by dimension
# ============================================================================

def _worker_count(jobs: Optional[int]) -> int:
    return jobs if jobs else (os.cpu_count() or 1)


def verify_by_dimension(
    generators: GeneratorSet,
    reference_counter: Callable[[Multidegree], int],
    n: int,
    bound: int,
    jobs: Optional[int] = None,
    oracle_seed: Optional[Sequence[Polynomial]] = None,
    oracle_closure: ClosureKind = ClosureKind.NONE,
    oracle_bound: Optional[int] = None,
    max_words: int = DEFAULT_MAX_WORDS,
) -> VerificationReport:
    """Compare normal-word counts with a reference basis of the quotient.

    Rows are computed concurrently (``jobs`` threads) and reported in
    deg-lex order of multidegrees.

    Args:
        generators: Candidate Gröbner basis (truncation is harmless).
        reference_counter: Size of a known basis of each component.
        n: Number of variables.
        bound: Total degree bound.
        jobs: Worker cap; ``None`` uses all cores.
        oracle_seed: If given, also fill the oracle column from these generators
            and add a ``seed_reduces`` check for the seed members within range.
        oracle_closure: Substitution closure for the oracle.
        oracle_bound: Only rows of total degree up to this get an oracle value.
        max_words: Size guard passed to the oracle.

    Raises:
        InconsistencyError: If a normal-word count is below the reference count.
    """
    census = enumerate_normal_words(generators, n, bound)
    multidegrees = multidegrees_up_to(n, bound)
    oracle_limit = bound if oracle_bound is None else oracle_bound

    def build_row(md: Multidegree) -> DimensionRow:
        oracle = None
        if oracle_seed is not None and sum(md) <= oracle_limit:
            oracle = ideal_dimension_oracle(oracle_seed, md, oracle_closure, max_words)
        return DimensionRow(
            multidegree=list(md),
            words=count_words(md),
            normal=census.count(md),
            reference=reference_counter(md),
            oracle=oracle,
        )

    with ThreadPoolExecutor(max_workers=_worker_count(jobs)) as pool:
        rows = list(pool.map(build_row, multidegrees))

    for row in rows:
        if row.normal < row.reference:
            raise InconsistencyError(
                f"multidegree {tuple(row.multidegree)}: {row.normal} normal words "
                f"but the reference basis has {row.reference} elements"
            )
        if not row.matches:
            logger.info(
                "row %s mismatch: normal=%d reference=%d oracle=%s",
                tuple(row.multidegree), row.normal, row.reference, row.oracle,
            )

    report = VerificationReport(n=n, bound=bound, rows=rows)
    if oracle_seed is not None:
        in_range = [f for f in oracle_seed if f and f.degree <= bound and f.max_variable() <= n]
        report.add_check("seed_reduces", all(not reduce(f, generators) for f in in_range))
    return report


def check_minimality(generators: GeneratorSet, n: int, bound: int) -> list[MinimalityEntry]:
    """For each member in ``x1..xn`` of degree ``<= bound``: is its leading word reducible by the others?"""
    automaton = generators.automaton
    entries: list[MinimalityEntry] = []
    for position, member in enumerate(generators):
        if member.degree > bound or member.polynomial.max_variable() > n:
            continue
        redundant = any(index != position for _, index in automaton.occurrences(member.lead))
        entries.append(MinimalityEntry(gid=member.gid, redundant=redundant))
    return entries


def check_reduced(generators: GeneratorSet) -> list[tuple[str, Word]]:
    """Every ``(id, monomial)`` where a monomial of a member is reducible by another member."""
    automaton = generators.automaton
    offending: list[tuple[str, Word]] = []
    for position, member in enumerate(generators):
        for word in member.polynomial.words():
            if any(index != position for _, index in automaton.occurrences(word)):
                offending.append((member.gid, word))
    return offending


def leading_words(generators: GeneratorSet | Iterable[Polynomial]) -> list[Word]:
    """Distinct leading words, deg-lex ascending."""
    if isinstance(generators, GeneratorSet):
        found = set(generators.leading_words())
    else:
        found = {p.leading_word for p in generators if p}
    return sorted(found, key=deglex_key)


def initial_ideals_agree(first: GeneratorSet, second: GeneratorSet, n: int, bound: int) -> bool:
    """Whether both sets have the same normal words in ``x1..xn`` up to ``bound``."""
    a = enumerate_normal_words(first, n, bound)
    b = enumerate_normal_words(second, n, bound)
    if a.by_degree != b.by_degree:
        return False
    return a.words == b.words


__all__ = [
    "ClosureKind",
    "Completion",
    "Obstruction",
    "ObstructionKind",
    "check_compositions",
    "check_minimality",
    "check_reduced",
    "complete",
    "complete_up_to_degree",
    "find_obstructions",
    "gamma3_commutator_seed",
    "ideal_dimension_oracle",
    "initial_ideals_agree",
    "interreduce",
    "leading_words",
    "s_polynomial",
    "tideal_commutator_seed",
    "verify_by_dimension",
]
