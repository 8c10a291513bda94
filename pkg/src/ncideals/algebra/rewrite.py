"""
Rewriting against a set of monic generators.

A ``GeneratorSet`` is read as a rewriting system ``lt(g) -> lt(g) - g``.
Subword search over all leading words goes through a ``SubwordAutomaton``
(goto/fail/output tables), which also drives the prefix-pruned depth-first
enumeration of normal words.
"""

from __future__ import annotations

import heapq
import logging
from collections import defaultdict, deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Union

from ncideals.algebra.core import (
    ONE,
    Multidegree,
    Polynomial,
    Word,
    deglex_key,
    format_word,
)
from ncideals.errors import PreconditionError, ZeroPolynomialError

logger = logging.getLogger(__name__)

MATCH_CACHE_SIZE = 1 << 16


# ============================================================================
# Subword automaton
# ============================================================================

class SubwordAutomaton:
    """Multi-pattern subword matcher over integer alphabets.

    State 0 is the root. ``output[s]`` lists every pattern that ends when the
    automaton is in state ``s`` (fail-chain outputs merged in), so a state
    with nonempty output means "the text read so far contains a pattern".
    """

    def __init__(self, patterns: Sequence[Word]) -> None:
        self.patterns: tuple[Word, ...] = tuple(tuple(p) for p in patterns)
        self._goto: list[dict[int, int]] = [{}]
        self._fail: list[int] = [0]
        self._output: list[tuple[int, ...]] = [()]
        self._empty: Optional[int] = None
        for index, pattern in enumerate(self.patterns):
            self._add(index, pattern)
        self._link()

    def _add(self, index: int, pattern: Word) -> None:
        if not pattern:
            if self._empty is None:
                self._empty = index
            return
        state = 0
        for letter in pattern:
            nxt = self._goto[state].get(letter)
            if nxt is None:
                nxt = len(self._goto)
                self._goto.append({})
                self._fail.append(0)
                self._output.append(())
                self._goto[state][letter] = nxt
            state = nxt
        self._output[state] += (index,)

    def _link(self) -> None:
        queue: deque[int] = deque(self._goto[0].values())
        while queue:
            state = queue.popleft()
            for letter, child in self._goto[state].items():
                queue.append(child)
                back = self._fail[state]
                while back and letter not in self._goto[back]:
                    back = self._fail[back]
                target = self._goto[back].get(letter, 0)
                self._fail[child] = target if target != child else 0
                self._output[child] += self._output[self._fail[child]]

    @property
    def size(self) -> int:
        return len(self._goto)

    def step(self, state: int, letter: int) -> int:
        while state and letter not in self._goto[state]:
            state = self._fail[state]
        return self._goto[state].get(letter, 0)

    def is_dead(self, state: int) -> bool:
        """True when reaching ``state`` means some pattern has occurred."""
        return self._empty is not None or bool(self._output[state])

    def occurrences(self, word: Word) -> Iterator[tuple[int, int]]:
        """Yield ``(start, pattern_index)`` for every occurrence in ``word``."""
        if self._empty is not None:
            for start in range(len(word) + 1):
                yield start, self._empty
        state = 0
        for end, letter in enumerate(word, start=1):
            state = self.step(state, letter)
            for index in self._output[state]:
                yield end - len(self.patterns[index]), index

    def leftmost(self, word: Word) -> Optional[tuple[int, int]]:
        """Leftmost occurrence; ties at one start go to the smallest pattern index."""
        return min(self.occurrences(word), default=None)

    def contains_any(self, word: Word) -> bool:
        if self._empty is not None:
            return True
        state = 0
        for letter in word:
            state = self.step(state, letter)
            if self._output[state]:
                return True
        return False


# ============================================================================
# Generators
# ============================================================================

@dataclass(frozen=True)
class Generator:
    """A monic member of a generator set.

    Attributes:
        gid: Stable short identifier, e.g. ``f'[2,1]`` or ``v'[4,2,1;1,0]``.
        polynomial: The monic polynomial.
        family: Family name used by ``GeneratorSet.without`` (``f'``, ``t``, ...).
        description: Long form in index notation, e.g. ``t[i=2,j=1]``.
    """
    gid: str
    polynomial: Polynomial
    family: str = ""
    description: str = ""
    lead: Word = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.polynomial.is_zero():
            raise ZeroPolynomialError(f"generator {self.gid} is zero")
        if self.polynomial.leading_coefficient != 1:
            object.__setattr__(self, "polynomial", self.polynomial.monic())
        object.__setattr__(self, "lead", self.polynomial.leading_word)

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    def __str__(self) -> str:
        return f"{self.gid}: {self.polynomial}"


class SubwordMatch(NamedTuple):
    position: int
    gid: str


class GeneratorSet:
    """Immutable indexed family of monic generators with cached leading words.

    Member order is significant: when two leading words occur at the same
    leftmost position, the earlier member wins.
    """

    def __init__(self, members: Iterable[Generator] = ()) -> None:
        self._members: tuple[Generator, ...] = tuple(members)
        self._index: dict[str, int] = {}
        for position, member in enumerate(self._members):
            if member.gid in self._index:
                raise ValueError(f"duplicate generator id {member.gid!r}")
            self._index[member.gid] = position
        self._automaton = SubwordAutomaton([m.lead for m in self._members])
        self._leftmost = lru_cache(maxsize=MATCH_CACHE_SIZE)(self._automaton.leftmost)

    @classmethod
    def from_polynomials(
        cls,
        polynomials: Iterable[Polynomial],
        family: str = "g",
        ids: Optional[Sequence[str]] = None,
    ) -> GeneratorSet:
        """Wrap plain polynomials, normalizing each to monic form.

        Raises:
            ZeroPolynomialError: If any polynomial is zero.
        """
        members = []
        for position, poly in enumerate(polynomials):
            gid = ids[position] if ids is not None else f"{family}[{position}]"
            members.append(Generator(gid, poly, family=family, description=gid))
        return cls(members)

    # ------------------------------------------------------------------ access

    def __len__(self) -> int:
        return len(self._members)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self._members)

    def __getitem__(self, position: int) -> Generator:
        return self._members[position]

    def __contains__(self, gid: object) -> bool:
        return gid in self._index

    def by_id(self, gid: str) -> Generator:
        return self._members[self._index[gid]]

    def ids(self) -> list[str]:
        return [m.gid for m in self._members]

    def polynomials(self) -> list[Polynomial]:
        return [m.polynomial for m in self._members]

    def leading_words(self) -> list[Word]:
        return [m.lead for m in self._members]

    @property
    def max_degree(self) -> int:
        return max((m.degree for m in self._members), default=0)

    @property
    def automaton(self) -> SubwordAutomaton:
        return self._automaton

    # ------------------------------------------------------------------ derived sets

    def without(self, *selectors: str) -> GeneratorSet:
        """Drop members whose id or family equals one of ``selectors``.

        Raises:
            PreconditionError: If a selector matches no member.
        """
        wanted = set(selectors)
        unmatched = wanted - {m.gid for m in self._members} - {m.family for m in self._members}
        if unmatched:
            raise PreconditionError(f"no generator id or family named {', '.join(sorted(unmatched))}")
        return GeneratorSet(m for m in self._members if m.gid not in wanted and m.family not in wanted)

    def extended(self, members: Iterable[Generator]) -> GeneratorSet:
        return GeneratorSet((*self._members, *members))

    def truncated(self, bound: int) -> GeneratorSet:
        return GeneratorSet(m for m in self._members if m.degree <= bound)

    # ------------------------------------------------------------------ matching

    def match(self, word: Word) -> Optional[tuple[int, Generator]]:
        """Leftmost leading-word occurrence in ``word`` as ``(position, member)``."""
        hit = self._leftmost(word)
        if hit is None:
            return None
        start, index = hit
        return start, self._members[index]

    def __repr__(self) -> str:
        return f"GeneratorSet({len(self)} members)"


# ============================================================================
# Reduction
# ============================================================================

@dataclass(frozen=True)
class ReductionStep:
    """One rewrite: ``coefficient * left * g * right`` was subtracted."""
    word: Word
    gid: str
    left: Word
    right: Word
    coefficient: Fraction

    def __str__(self) -> str:
        return (
            f"{format_word(self.word)} -> {self.coefficient} * "
            f"({format_word(self.left)}) {self.gid} ({format_word(self.right)})"
        )


@dataclass(frozen=True)
class ReductionTrace:
    steps: tuple[ReductionStep, ...] = ()

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[ReductionStep]:
        return iter(self.steps)

    def replay(self, generators: GeneratorSet) -> Polynomial:
        """Rebuild ``f - normal_form(f)`` as the sum of the recorded multiples."""
        acc: dict[Word, Fraction] = {}
        for step in self.steps:
            g = generators.by_id(step.gid).polynomial
            for word, coefficient in g.terms():
                key = step.left + word + step.right
                acc[key] = acc.get(key, 0) + step.coefficient * coefficient
        return Polynomial(acc)


class NormalForm(NamedTuple):
    polynomial: Polynomial
    trace: ReductionTrace


def find_lt_subword(word: Word, generators: GeneratorSet) -> Optional[SubwordMatch]:
    """Leftmost position where some leading word occurs in ``word``.

    Ties at the same position go to the earliest member. ``None`` means
    ``word`` is normal.

    Example:
        >>> from ncideals.algebra.core import x, commutator
        >>> G = GeneratorSet.from_polynomials([commutator(x(2), x(1), x(1))])
        >>> find_lt_subword((1, 2, 1, 1, 3), G)
        SubwordMatch(position=1, gid='g[0]')
    """
    hit = generators.match(tuple(word))
    if hit is None:
        return None
    return SubwordMatch(hit[0], hit[1].gid)


def is_normal_word(word: Word, generators: GeneratorSet) -> bool:
    return generators.match(tuple(word)) is None


def _heap_key(word: Word) -> tuple[int, tuple[int, ...]]:
    # min-heap key that pops the deg-lex greatest word first
    return (-len(word), tuple(-letter for letter in word))


def normal_form(
    f: Polynomial,
    generators: GeneratorSet,
    record: bool = True,
) -> NormalForm:
    """Fully reduce ``f`` modulo ``generators``.

    The deg-lex greatest reducible monomial is rewritten first, at its
    leftmost reducible position, by the earliest matching member. Every
    rewrite replaces a word by strictly smaller ones, so the loop ends.

    Args:
        f: Polynomial to reduce.
        generators: Monic rewriting system.
        record: Keep the reduction trace (``False`` returns an empty trace).

    Returns:
        ``NormalForm(polynomial, trace)`` where no monomial of ``polynomial``
        contains a leading word of ``generators``.
    """
    work: dict[Word, Fraction] = dict(f.terms())
    heap = [(_heap_key(w), w) for w in work]
    heapq.heapify(heap)
    queued = set(work)
    remainder: dict[Word, Fraction] = {}
    steps: list[ReductionStep] = []

    while heap:
        _, word = heapq.heappop(heap)
        queued.discard(word)
        coefficient = work.pop(word, 0)
        if not coefficient:
            continue
        hit = generators.match(word)
        if hit is None:
            remainder[word] = coefficient
            continue
        position, member = hit
        left = word[:position]
        right = word[position + len(member.lead):]
        if record:
            steps.append(ReductionStep(word, member.gid, left, right, coefficient))
        for tail_word, tail_coefficient in member.polynomial.terms():
            if tail_word == member.lead:
                continue
            key = left + tail_word + right
            value = work.get(key, 0) - coefficient * tail_coefficient
            if value:
                work[key] = value
                if key not in queued:
                    queued.add(key)
                    heapq.heappush(heap, (_heap_key(key), key))
            else:
                work.pop(key, None)

    return NormalForm(Polynomial(remainder), ReductionTrace(tuple(steps)))


def reduce(f: Polynomial, generators: GeneratorSet) -> Polynomial:
    """``normal_form`` without the trace."""
    return normal_form(f, generators, record=False).polynomial


# ============================================================================
# Normal words
# ============================================================================

@dataclass
class NormalWordCensus:
    """Normal words up to a degree bound with their multidegree counts."""
    n: int
    bound: int
    words: list[Word]
    counts: dict[Multidegree, int]
    by_degree: list[int]

    def count(self, md: Multidegree) -> int:
        return self.counts.get(tuple(md), 0)

    def __len__(self) -> int:
        return len(self.words)


def enumerate_normal_words(
    generators: Union[GeneratorSet, Sequence[Word]],
    n: int,
    bound: int,
) -> NormalWordCensus:
    """All words of degree ``<= bound`` in x1..xn avoiding every leading word.

    Depth-first over the automaton: a prefix that already contains a
    leading word is abandoned together with all of its extensions.

    Args:
        generators: A generator set, or bare leading words.
        n: Number of variables.
        bound: Total degree bound (``>= 0``).

    Returns:
        The census; ``words`` is sorted deg-lex ascending.
    """
    if bound < 0:
        raise ValueError("degree bound must be nonnegative")
    automaton = (
        generators.automaton
        if isinstance(generators, GeneratorSet)
        else SubwordAutomaton(list(generators))
    )
    words: list[Word] = []
    counts: dict[Multidegree, int] = defaultdict(int)
    by_degree = [0] * (bound + 1)
    if automaton.is_dead(0):
        return NormalWordCensus(n, bound, words, dict(counts), by_degree)

    prefix: list[int] = []
    md = [0] * n

    def visit(state: int) -> None:
        words.append(tuple(prefix))
        counts[tuple(md)] += 1
        by_degree[len(prefix)] += 1
        if len(prefix) == bound:
            return
        for letter in range(1, n + 1):
            nxt = automaton.step(state, letter)
            if automaton.is_dead(nxt):
                continue
            prefix.append(letter)
            md[letter - 1] += 1
            visit(nxt)
            md[letter - 1] -= 1
            prefix.pop()

    visit(0)
    words.sort(key=deglex_key)
    logger.debug("enumerated %d normal words (n=%d, bound=%d)", len(words), n, bound)
    return NormalWordCensus(n, bound, words, dict(counts), by_degree)


__all__ = [
    "MATCH_CACHE_SIZE",
    "ONE",
    "Generator",
    "GeneratorSet",
    "NormalForm",
    "NormalWordCensus",
    "ReductionStep",
    "ReductionTrace",
    "SubwordAutomaton",
    "SubwordMatch",
    "enumerate_normal_words",
    "find_lt_subword",
    "is_normal_word",
    "normal_form",
    "reduce",
]
